#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rmt {

using Cplx = std::complex<double>;

struct QuadResult {
  Cplx value{0.0};
  double error = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (15-point) on [a, b].
QuadResult integrate_gk(const std::function<Cplx(double)>& f, double a, double b,
                        double abs_tol = 1e-10, double rel_tol = 1e-10,
                        int max_intervals = 4000);

/// Integral over [a, infinity) of an eventually oscillatory integrand with
/// dominant angular frequency omega: adaptive core on whole half-periods,
/// then repeated averaging (Euler transformation) of the partial-sum
/// sequence.  Suitable for conditionally convergent tails.
QuadResult integrate_oscillatory_tail(const std::function<Cplx(double)>& f, double a,
                                      double omega, int half_periods = 48,
                                      double cell_tol = 1e-11);

/// Hadamard finite part of int_0^w r^alpha dr: w^{alpha+1}/(alpha+1), with the
/// log convention ln(w) at alpha = -1.
double fp_monomial_0w(double alpha, double w);

/// Laurent coefficients c_{-pole_order} ... c_{n_terms-1-pole_order} of a
/// function meromorphic near 0, from the trapezoid rule on |z| = rho
/// (spectrally accurate).
std::vector<Cplx> laurent_coeffs(const std::function<Cplx(Cplx)>& f, double rho,
                                 int pole_order, int n_terms, int n_points = 256);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Path integral of f along the circular arc z = rho e^{i theta},
/// theta from t0 to t1.
QuadResult integrate_arc(const std::function<Cplx(Cplx)>& f, double rho, double t0, double t1,
                         double abs_tol = 1e-11, double rel_tol = 1e-11);

}  // namespace rmt
