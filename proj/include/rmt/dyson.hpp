#pragma once

#include <stdexcept>

namespace rmt {

/// Symmetry-class bookkeeping for the three Dyson indices.
///
/// gamma2 = 1 for beta in {1,2} and 2 for beta = 4, gamma1 = 2*gamma2/beta,
/// gtilde = gamma1*gamma2.  A k-point calculation uses k1 = gamma1*k bosonic
/// and k2 = gamma2*k fermionic eigenvalues.  `deg_inv` is the inverse averaged
/// eigenvalue degeneracy (1/2 in the quaternion case, else 1).
struct DysonParams {
  int beta = 2;
  int N = 1;
  int k = 1;
  int gamma1 = 1;
  int gamma2 = 1;
  int gtilde = 1;
  int k1 = 1;
  int k2 = 1;
  int ktilde = 1;
  double deg_inv = 1.0;
};

inline DysonParams make_dyson(int beta, int N, int k = 1) {
  if (beta != 1 && beta != 2 && beta != 4)
    throw std::invalid_argument("dyson: beta must be 1, 2 or 4");
  if (N < 1 || k < 1) throw std::invalid_argument("dyson: N, k must be >= 1");
  DysonParams p;
  p.beta = beta;
  p.N = N;
  p.k = k;
  p.gamma2 = (beta == 4) ? 2 : 1;
  p.gamma1 = 2 * p.gamma2 / beta;
  p.gtilde = p.gamma1 * p.gamma2;
  p.k1 = p.gamma1 * k;
  p.k2 = p.gamma2 * k;
  p.ktilde = p.gtilde * k;
  p.deg_inv = (beta == 4) ? 0.5 : 1.0;
  return p;
}

/// The superspace formulas require N >= gamma1*k; sampling does not.
inline void require_susy_domain(const DysonParams& p) {
  if (p.N < p.gamma1 * p.k)
    throw std::invalid_argument("dyson: superspace formulas require N >= gamma1*k");
}

}  // namespace rmt
