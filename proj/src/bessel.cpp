#include "rmt/bessel.hpp"

#include "rmt/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

Cplx wick(double psi) { return std::exp(Cplx(0.0, psi)); }

using CplxL = std::complex<long double>;

CplxL det_small(std::vector<CplxL>& a, int n) {
  // Gaussian elimination with partial pivoting (long double for headroom in
  // the ill-conditioned Cauchy blocks)
  CplxL det(1.0L);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[static_cast<size_t>(r) * n + c]) > std::abs(a[static_cast<size_t>(piv) * n + c]))
        piv = r;
    if (a[static_cast<size_t>(piv) * n + c] == CplxL(0.0L)) return CplxL(0.0L);
    if (piv != c) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(c) * n + j]);
      det = -det;
    }
    det *= a[static_cast<size_t>(c) * n + c];
    for (int r = c + 1; r < n; ++r) {
      CplxL f = a[static_cast<size_t>(r) * n + c] / a[static_cast<size_t>(c) * n + c];
      for (int j = c; j < n; ++j)
        a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(c) * n + j];
    }
  }
  return det;
}

}  // namespace

Cplx berezinian_ratio(const std::vector<double>& s1, const std::vector<double>& s2, int beta,
                      double psi) {
  if (beta != 1 && beta != 2 && beta != 4) throw std::invalid_argument("berezinian: beta");
  CplxL w = std::exp(CplxL(0.0L, static_cast<long double>(psi)));
  std::vector<CplxL> f2;
  for (double v : s2) f2.push_back(w * static_cast<long double>(v));
  long double v1 = 1.0L;
  for (size_t a = 0; a < s1.size(); ++a)
    for (size_t b = a + 1; b < s1.size(); ++b)
      v1 *= static_cast<long double>(s1[a]) - static_cast<long double>(s1[b]);
  CplxL v2(1.0L);
  for (size_t a = 0; a < f2.size(); ++a)
    for (size_t b = a + 1; b < f2.size(); ++b) v2 *= f2[a] - f2[b];
  CplxL num1 = std::pow(CplxL(v1), static_cast<long double>(beta));
  CplxL num2 = std::pow(v2, 4.0L / beta);
  CplxL V(1.0L);
  for (double a : s1)
    for (auto& b : f2) {
      CplxL d = CplxL(static_cast<long double>(a)) - b;
      if (std::abs(d) < 1e-14L) throw std::domain_error("berezinian: coincident eigenvalues");
      V *= d;
    }
  CplxL r = num1 * num2 / (V * V);
  return Cplx(static_cast<double>(r.real()), static_cast<double>(r.imag()));
}

Cplx berezinian_det(const std::vector<double>& s1, const std::vector<double>& s2, int beta,
                    double psi, BerezinianForm form) {
  CplxL w = std::exp(CplxL(0.0L, static_cast<long double>(psi)));
  if (beta == 2) {
    int k = static_cast<int>(s1.size());
    if (s2.size() != s1.size()) throw std::invalid_argument("berezinian_det: beta=2 needs (k,k)");
    std::vector<CplxL> m(static_cast<size_t>(k) * k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        CplxL d = CplxL(static_cast<long double>(s1[a])) - w * static_cast<long double>(s2[b]);
        if (std::abs(d) < 1e-14L) throw std::domain_error("berezinian_det: pole");
        m[static_cast<size_t>(a) * k + b] = CplxL(1.0L) / d;
      }
    CplxL d = det_small(m, k);
    d = d * d;
    return Cplx(static_cast<double>(d.real()), static_cast<double>(d.imag()));
  }
  // beta = 1: x1 = s1 (2k entries), x2 = e^{i psi} s2 (k entries);
  // beta = 4: mirrored, x1 = e^{i psi} s2 (2k entries), x2 = s1 (k entries).
  std::vector<CplxL> x1, x2;
  if (beta == 1) {
    for (double v : s1) x1.push_back(CplxL(static_cast<long double>(v)));
    for (double v : s2) x2.push_back(w * static_cast<long double>(v));
  } else {
    for (double v : s2) x1.push_back(w * static_cast<long double>(v));
    for (double v : s1) x2.push_back(CplxL(static_cast<long double>(v)));
  }
  int k = static_cast<int>(x2.size());
  if (static_cast<int>(x1.size()) != 2 * k)
    throw std::invalid_argument("berezinian_det: shape must be (2k, k)");
  int n = 2 * k;
  std::vector<CplxL> m(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < k; ++b) {
      CplxL d = x1[a] - x2[b];
      if (std::abs(d) < 1e-14L) throw std::domain_error("berezinian_det: pole");
      int c1, c2;
      if (form == BerezinianForm::interleaved) {
        c1 = 2 * b;
        c2 = 2 * b + 1;
      } else {
        c1 = b;
        c2 = k + b;
      }
      m[static_cast<size_t>(a) * n + c1] = CplxL(1.0L) / d;
      m[static_cast<size_t>(a) * n + c2] = CplxL(1.0L) / (d * d);
    }
  CplxL d = det_small(m, n);
  return Cplx(static_cast<double>(d.real()), static_cast<double>(d.imag()));
}

namespace {

// beta = 4 size-2 angular average over the USp(4) orbit (an S^4):
// phi = int_0^1 6 q(1-q) exp(i [q a + (1-q) b]) dq
// with a = 2(y1 x1 + y2 x2), b = 2(y1 x2 + y2 x1).
Cplx beta4_profile(Cplx a, Cplx b) {
  Cplx d = a - b;
  if (std::abs(d) < 1e-3) {
    // series around coincidence
    Cplx acc(0.0), term(1.0);
    // int_0^1 6 q(1-q) q^m dq = 6 (1/(m+2) - 1/(m+3))
    for (int m = 0; m <= 12; ++m) {
      if (m > 0) term *= Cplx(0.0, 1.0) * d / static_cast<double>(m);
      acc += term * (6.0 / ((m + 2.0) * (m + 3.0)));
    }
    return std::exp(Cplx(0.0, 1.0) * b) * acc;
  }
  Cplx u = Cplx(0.0, 1.0) * d;
  Cplx eu = std::exp(u);
  Cplx i1 = ((u - 1.0) * eu + 1.0) / (u * u);
  Cplx i2 = ((u * u - 2.0 * u + 2.0) * eu - 2.0) / (u * u * u);
  return std::exp(Cplx(0.0, 1.0) * b) * 6.0 * (i1 - i2);
}

}  // namespace

Cplx bessel2_closed(int beta, Cplx y1, Cplx y2, Cplx x1, Cplx x2) {
  if (beta == 2) {
    Cplx dy = y1 - y2, dx = x1 - x2;
    Cplx p1 = y1 * x1 + y2 * x2, p2 = y1 * x2 + y2 * x1;
    if (std::abs(dy * dx) < 1e-6) {
      // expand around coincidence: (e^{i p1} - e^{i p2})/(i (p1 - p2))
      Cplx dp = p1 - p2;
      Cplx mid = std::exp(Cplx(0.0, 0.5) * (p1 + p2));
      // sinc(dp/2)
      Cplx h = 0.5 * dp;
      Cplx sinc = std::abs(h) < 1e-5 ? Cplx(1.0) - h * h / 6.0 : std::sin(h) / h;
      return mid * sinc;
    }
    return (std::exp(Cplx(0.0, 1.0) * p1) - std::exp(Cplx(0.0, 1.0) * p2)) /
           (Cplx(0.0, 1.0) * dy * dx);
  }
  if (beta == 1) {
    // O(2) average: e^{i (y1+y2)(x1+x2)/2} J_0((y1-y2)(x1-x2)/2)
    Cplx s = 0.5 * (y1 + y2) * (x1 + x2);
    Cplx d = 0.5 * (y1 - y2) * (x1 - x2);
    if (std::abs(d.imag()) > 1e-12) {
      // J_0 of a complex argument via the integral representation
      // (only needed for complex continuation; real cases use std)
      int n = 64;
      Cplx acc(0.0);
      for (int i = 0; i < n; ++i) {
        double th = M_PI * (i + 0.5) / n;
        acc += std::exp(Cplx(0.0, 1.0) * d * std::cos(th));
      }
      return std::exp(Cplx(0.0, 1.0) * s) * acc / static_cast<double>(n);
    }
    return std::exp(Cplx(0.0, 1.0) * s) * std::cyl_bessel_j(0.0, std::abs(d.real()));
  }
  if (beta == 4) {
    Cplx a = 2.0 * (y1 * x1 + y2 * x2), b = 2.0 * (y1 * x2 + y2 * x1);
    return beta4_profile(a, b);
  }
  throw std::invalid_argument("bessel2_closed: beta");
}

Cplx matrix_bessel_numeric(int beta, const std::vector<double>& y, const std::vector<double>& x,
                           int grid_points) {
  if (y.size() != x.size()) throw std::invalid_argument("matrix_bessel: size mismatch");
  size_t n = y.size();
  if (n == 1) {
    int gamma2 = beta == 4 ? 2 : 1;
    return std::exp(Cplx(0.0, gamma2 * y[0] * x[0]));
  }
  if (n != 2) throw std::invalid_argument("matrix_bessel: sizes 1 and 2 only");
  if (beta == 2) {
    // U(2): tr y U x U+ depends on q = |U11|^2, uniform on [0,1]; average on
    // the Bloch angle with Haar weight sin(2 theta) d theta (Gauss-Legendre
    // nodes for spectral accuracy on the non-periodic angle).
    std::vector<double> nodes, weights;
    gauss_legendre(grid_points, nodes, weights);
    Cplx acc(0.0);
    double wsum = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      double th = 0.25 * M_PI * (nodes[i] + 1.0);
      double q = std::cos(th) * std::cos(th);
      double w = weights[i] * std::sin(2.0 * th);
      double tr = q * (y[0] * x[0] + y[1] * x[1]) + (1.0 - q) * (y[0] * x[1] + y[1] * x[0]);
      acc += w * std::exp(Cplx(0.0, tr));
      wsum += w;
    }
    return acc / wsum;
  }
  if (beta == 1) {
    // O(2) = SO(2) plus the reflection component; both give the same average
    // for diagonal arguments.
    Cplx acc(0.0);
    for (int i = 0; i < grid_points; ++i) {
      double th = 2.0 * M_PI * (i + 0.5) / grid_points;
      double c = std::cos(th), s = std::sin(th);
      double tr = y[0] * (x[0] * c * c + x[1] * s * s) + y[1] * (x[0] * s * s + x[1] * c * c);
      acc += std::exp(Cplx(0.0, tr));
    }
    return acc / static_cast<double>(grid_points);
  }
  if (beta == 4) {
    // USp(4) orbit of a diagonal quaternion pair is S^4; polar-angle grid
    // with weight sin^3(theta) on Gauss-Legendre nodes.
    std::vector<double> nodes, weights;
    gauss_legendre(grid_points, nodes, weights);
    Cplx acc(0.0);
    double wsum = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      double th = 0.5 * M_PI * (nodes[i] + 1.0);
      double q = 0.5 * (1.0 + std::cos(th));
      double w = weights[i] * std::pow(std::sin(th), 3);
      double tr = 2.0 * (q * (y[0] * x[0] + y[1] * x[1]) + (1.0 - q) * (y[0] * x[1] + y[1] * x[0]));
      acc += w * std::exp(Cplx(0.0, tr));
      wsum += w;
    }
    return acc / wsum;
  }
  throw std::invalid_argument("matrix_bessel: beta");
}

Cplx super_bessel_u11(const DiagSuperPoint& r, double x, double J) {
  if (r.r1.size() != 1 || r.r2.size() != 1)
    throw std::invalid_argument("super_bessel_u11: k = 1 point expected");
  Cplx w = wick(r.psi);
  Cplx fr = w * r.r2[0];
  Cplx den = Cplx(r.r1[0]) - fr;
  if (std::abs(den) < 1e-14) throw std::domain_error("super_bessel_u11: Berezinian pole");
  Cplx strr = Cplx(r.r1[0]) - fr;
  Cplx phase = std::exp(Cplx(0.0, -1.0) * Cplx(r.r1[0]) * (x - J)) *
               std::exp(Cplx(0.0, 1.0) * fr * (x + J));
  return Cplx(0.0, 1.0) / (2.0 * M_PI) * std::exp(-r.eps * strr) * phase * den * (-2.0 * J);
}

Cplx super_bessel_uosp21(const DiagSuperPoint& r, double x, double J) {
  if (r.r1.size() != 2 || r.r2.size() != 1)
    throw std::invalid_argument("super_bessel_uosp21: beta=1, k=1 point expected");
  Cplx w = wick(r.psi);
  Cplx fr = w * r.r2[0];
  Cplx strr = Cplx(r.r1[0] + r.r1[1]) - 2.0 * fr;
  Cplx xm(x, -r.eps);
  // Str r (x^- + J): bosonic entries carry x^- - J, fermionic x^- + J
  Cplx strrx = (xm - J) * Cplx(r.r1[0] + r.r1[1]) - (xm + J) * 2.0 * fr;
  Cplx bracket = Cplx(0.0, 1.0) * strr + J * (Cplx(r.r1[0]) - fr) * (Cplx(r.r1[1]) - fr);
  return (-2.0 * J / M_PI) * std::exp(Cplx(0.0, -1.0) * strrx) * bracket;
}

}  // namespace rmt
