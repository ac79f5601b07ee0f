#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rmt/dyson.hpp"
#include "rmt/ensemble_spec.hpp"
#include "rmt/jet.hpp"

namespace rmt {

/// Diagonal super-eigenvalue point: k1 bosonic and k2 fermionic eigenvalues,
/// Wick angle psi, regulator eps.
struct DiagSuperPoint {
  std::vector<double> r1;
  std::vector<double> r2;
  double psi = 1.5707963267948966;
  double eps = 0.0;
};

/// A supersymmetric representation Phi_0 of a characteristic function: a
/// function of the power sums p_m = Str sigma^m, evaluable on jets.  The
/// fermionic eigenvalues enter the power sums with weight gamma1 and phase
/// e^{i psi}, the bosonic ones with weight gamma2; for beta = 1, k = 1 this
/// gives Str r = r11 + r21 - 2 e^{i psi} r2.
struct CharFunRepr {
  std::function<Jet(const std::vector<Jet>&)> eval = nullptr;
  int max_power = 2;
  std::string label;
  /// Factorizing form (product of a scalar function over super-eigenvalues);
  /// empty when the representation does not factorize.
  std::function<Cplx(Cplx)> hat = nullptr;
  /// Wick angles for which the underlying superfunction converges.
  std::function<bool(double)> admissible = nullptr;

  bool factorizing() const { return static_cast<bool>(hat); }

  Cplx eval_scalar(const std::vector<Cplx>& p) const;
};

/// Power sums p_m, m = 1..max_power, of a diagonal super point whose entries
/// are already materialized as jets (bosonic entries unrotated, fermionic
/// entries rotated by e^{i psi} inside).
std::vector<Jet> power_sum_jets(const DysonParams& p, const std::vector<Jet>& bosonic,
                                const std::vector<Jet>& fermionic, double psi, int max_power);

/// Gaussian representation Phi_0 = exp(i c p_1 - (v^2/2) p_2).  The
/// coefficient v^2/2 is pinned by the Fourier oracle tests at N = 1, 2.
CharFunRepr gaussian_charfun(double variance, double shift, const DysonParams& p);

/// Mixture of Gaussian components; not of the factorizing form for two or
/// more distinct components.
CharFunRepr mixture_charfun(const std::vector<GaussianComponent>& comps, const DysonParams& p);

CharFunRepr make_charfun(const EnsembleSpec& e, const DysonParams& p);

/// Taylor jet of Phi_0 at a diagonal super point, seeded in the fermionic
/// coordinates with the given per-variable truncation orders.
Jet jet_evaluate(const CharFunRepr& f, const DysonParams& p, const DiagSuperPoint& pt,
                 const std::vector<int>& orders);

struct McEstimate {
  Cplx mean{0.0, 0.0};
  double stderr_abs = 0.0;
};

/// Monte-Carlo estimate of Phi(K) = E exp(i tr H K) over the ensemble.
/// K is a gamma2*N x gamma2*N complex matrix (hermitian, in the right
/// symmetry class); row-major storage.
McEstimate mc_charfun_estimate(const EnsembleSpec& e, const DysonParams& p,
                               const std::vector<Cplx>& K, int samples, std::uint64_t seed);

}  // namespace rmt
