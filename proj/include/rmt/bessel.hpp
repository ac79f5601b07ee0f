#pragma once

#include <complex>
#include <vector>

#include "rmt/charfun.hpp"
#include "rmt/dyson.hpp"

namespace rmt {

enum class BerezinianForm { interleaved, blocked };

/// B_k^(beta)(s1, e^{i psi} s2) = Delta^beta(s1) Delta^{4/beta}(e^{i psi}s2) / V^2.
/// s1 has k1 entries, s2 has k2 entries.
Cplx berezinian_ratio(const std::vector<double>& s1, const std::vector<double>& s2, int beta,
                      double psi);

/// Determinantal form of the Berezinian (Eq.-5.7 style).  The interleaved
/// column order equals the ratio form exactly; the blocked order carries the
/// extra (-1)^{k(k-1)/2} for beta in {1,4}.
Cplx berezinian_det(const std::vector<double>& s1, const std::vector<double>& s2, int beta,
                    double psi, BerezinianForm form = BerezinianForm::interleaved);

/// Ordinary matrix Bessel function phi^(beta)(y, x) = int exp(i tr y U x U+)
/// dmu(U) by quadrature over the eigenvector manifold; sizes 1 and 2.
/// y, x are the distinct eigenvalues; traces are taken in the complex
/// gamma2*n-dimensional representation.
Cplx matrix_bessel_numeric(int beta, const std::vector<double>& y, const std::vector<double>& x,
                           int grid_points = 256);

/// Closed forms of the same kernels (size 2), complex-argument friendly.
Cplx bessel2_closed(int beta, Cplx y1, Cplx y2, Cplx x1, Cplx x2);

/// k = 1 supermatrix Bessel function of U(1/1) (beta = 2), Eq.-5.12 type:
/// phi = (i/2pi) e^{-eps Str r} e^{-i r1 (x - J)} e^{i e^{i psi} r2 (x + J)}
///       * (r1 - e^{i psi} r2) * (-2 J).
Cplx super_bessel_u11(const DiagSuperPoint& r, double x, double J);

/// k = 1 supermatrix Bessel function of UOSp(2/1) (beta = 1), Eq.-6.2 type.
Cplx super_bessel_uosp21(const DiagSuperPoint& r, double x, double J);

}  // namespace rmt
