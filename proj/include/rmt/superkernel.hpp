#pragma once

#include <complex>
#include <vector>

#include "rmt/dyson.hpp"
#include "rmt/jet.hpp"
#include "rmt/multipoly.hpp"
#include "rmt/quadrature.hpp"

namespace rmt {

// --- constants of the Ingham-Siegel machinery ------------------------------

/// lambda = (n-m)/gamma1 - (gamma1-gamma2)/2 for Herm(beta, m).
double is_lambda(int n, int m, int beta);

/// G_{n-m,m}^(beta), the ordinary Ingham-Siegel constant (Gamma product).
double is_g_big(int n_minus_m, int m, int beta);

/// g_n^(beta): flat-to-eigenvalue measure constant of Herm(beta, n).
double is_g_small(int n, double beta);

/// Gaussian cross-check values for g: int exp(-tr H^2) d[H] over Herm(beta,n)
/// and the eigenvalue-side integral.
double gaussian_flat_integral(int n, int beta);
double gaussian_eigen_integral(int n, int beta);

struct ISConstants {
  double lambda;  // exponent of det R in the ordinary closed form (n = N+k1, m = k1)
  double kappa;   // N/gamma1 + (gamma2-gamma1)/2
  double G;       // G_{N,k1}
  double g;       // g_{k2}^{(4/beta)}
  Cplx w1, w2;    // Statement-t1 constants
  Cplx W;         // combined supersymmetric Ingham-Siegel constant
  Cplx C;         // operator-form constant
};

ISConstants is_constants(const DysonParams& p, double psi);

// --- ordinary Ingham-Siegel -------------------------------------------------

/// Closed form of int exp(-i tr R S^+) det^{-n/gamma1} S^+ d[S] over
/// Herm(beta, m): i^{-beta m n / 2} G det^lambda R Theta(R).  R is given by
/// its m distinct eigenvalues; the determinant is taken in the complex
/// gamma2*m-dimensional representation.
Cplx ordinary_is_closed(const std::vector<double>& r_eigs, int n, int beta, double eps);

struct ISNumericOptions {
  double core_halfwidth = 30.0;
  int tail_half_periods = 60;
  double tol = 1e-9;
};

/// The same integral by direct quadrature (m = 1 Cartesian, m = 2 spectral
/// coordinates with the exact group kernels), including the e^{+eps tr R}
/// convention factor of the S^+ form.
Cplx ordinary_is_numeric(const std::vector<double>& r_eigs, int n, int beta, double eps,
                         const ISNumericOptions& opt = {});

// --- Sekiguchi-analog operator ----------------------------------------------

/// Symbolic application of D^{(beta')}_{k2,x}(B=0) to an exact polynomial.
MultiPoly sekiguchi_apply_poly(const MultiPoly& f, int k2, const Rational& beta_prime);

/// Jet application of D^{(beta')}_{k2,x}(B) at the given centers (k2 = 1 or 2).
/// Coincident centers use the divided-difference rule (antisymmetric
/// numerator), distinct centers plain jet division.
Jet sekiguchi_apply_jet(const Jet& f, const std::vector<Cplx>& centers, double beta_prime,
                        Cplx B);

/// Exact Vandermonde derivative identities: prod_j d^{(p/2)(n-1)}/dx_j -
/// applied to Delta_n^p for p in {2,4}; returns the constant.
Rational vandermonde_derivative(int n, int power);

// --- supersymmetric Ingham-Siegel fermionic pairing --------------------------

enum class PairingMode { direct, finite_part };

/// Pairing of the fermionic part of I_k^{(beta,N)} with a test-function jet
/// centered at r2 = 0 (k2 variables, per-variable order >= N - k1):
///   beta in {1,2}: Eq. 4.19/4.20 constants times the prescribed mixed
///   derivative of the test at 0;
///   beta = 4 (k=1): Eq. 6.6 operator form, the test must be antisymmetric
///   and the 1/(r12 - r22) factor is handled by the divided-difference rule
///   after moving (4 e^{-2 i psi} D)^N onto the test.
Cplx is_super_pair(const Jet& test, const DysonParams& p, double psi,
                   PairingMode mode = PairingMode::direct);

}  // namespace rmt
