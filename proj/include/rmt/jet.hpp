#pragma once

#include <array>
#include <complex>
#include <vector>

namespace rmt {

using Cplx = std::complex<double>;

/// Dense truncated multivariate Taylor jet in up to three variables, complex
/// coefficients.  Coefficients are indexed by the per-variable monomial
/// degrees.  Because truncated products only determine low-order output
/// coefficients from low-order inputs, every jet carries `valid_total`: the
/// largest total degree up to which its coefficients are exact.  Operations
/// propagate it; reading beyond it is a bug.
class Jet {
 public:
  Jet() = default;
  Jet(int nvars, std::array<int, 3> orders);

  static Jet constant(int nvars, std::array<int, 3> orders, Cplx v);
  /// x0 + t_var (the coordinate seeded as a jet around x0).
  static Jet variable(int nvars, std::array<int, 3> orders, int var, Cplx x0);

  int nvars() const { return nvars_; }
  int order(int v) const { return ord_[v]; }
  int valid_total() const { return valid_total_; }
  void set_valid_total(int t) { valid_total_ = t; }

  Cplx& at(int i, int j = 0, int k = 0) { return c_[idx(i, j, k)]; }
  const Cplx& at(int i, int j = 0, int k = 0) const { return c_[idx(i, j, k)]; }
  Cplx value() const { return c_[0]; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(Cplx s) { c_[0] += s; return *this; }
  Jet& operator-=(Cplx s) { c_[0] -= s; return *this; }
  Jet& operator*=(Cplx s);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Cplx s) { return a *= s; }
  friend Jet operator*(Cplx s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, Cplx s) { return a += s; }
  friend Jet operator+(Cplx s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Cplx s) { return a -= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }

  Jet inverse() const;           // constant term must be nonzero
  Jet exp() const;
  Jet pow_int(int n) const;      // n >= 0
  Jet pow_real(double alpha) const;  // constant term nonzero; binomial series

  /// Partial derivative d/dx_var as a jet (valid_total drops by one).
  Jet deriv(int var) const;
  /// m-th pure derivative value at the expansion point.
  Cplx deriv_at_center(int var, int m) const;

  /// Antisymmetric quotient: for g antisymmetric under swap of variables
  /// (va, vb), returns h with g = (x_va - x_vb) h.  Smoothness of h is the
  /// divided-difference rule; valid_total drops by one.
  Jet divided_difference(int va, int vb) const;

 private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(k) * (ord_[1] + 1) + j) * (ord_[0] + 1) + i;
  }
  void check_shape(const Jet& o) const;

  int nvars_ = 0;
  std::array<int, 3> ord_{0, 0, 0};
  int valid_total_ = 0;
  std::vector<Cplx> c_;
};

}  // namespace rmt
