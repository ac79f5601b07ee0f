#include "rmt/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

Jet::Jet(int nvars, std::array<int, 3> orders) : nvars_(nvars), ord_{0, 0, 0} {
  if (nvars < 1 || nvars > 3) throw std::invalid_argument("jet: 1..3 variables");
  for (int v = 0; v < nvars; ++v) ord_[v] = orders[v];
  valid_total_ = ord_[0] + ord_[1] + ord_[2];
  c_.assign(static_cast<size_t>(ord_[0] + 1) * (ord_[1] + 1) * (ord_[2] + 1), Cplx(0.0));
}

Jet Jet::constant(int nvars, std::array<int, 3> orders, Cplx v) {
  Jet j(nvars, orders);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(int nvars, std::array<int, 3> orders, int var, Cplx x0) {
  Jet j(nvars, orders);
  j.c_[0] = x0;
  if (j.ord_[var] >= 1) {
    int i = var == 0 ? 1 : 0, jj = var == 1 ? 1 : 0, k = var == 2 ? 1 : 0;
    j.at(i, jj, k) = Cplx(1.0);
  }
  return j;
}

void Jet::check_shape(const Jet& o) const {
  if (nvars_ != o.nvars_ || ord_ != o.ord_)
    throw std::invalid_argument("jet: shape mismatch");
}

Jet& Jet::operator+=(const Jet& o) {
  check_shape(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  valid_total_ = std::min(valid_total_, o.valid_total_);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_shape(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  valid_total_ = std::min(valid_total_, o.valid_total_);
  return *this;
}

Jet& Jet::operator*=(Cplx s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_shape(b);
  Jet r(a.nvars_, a.ord_);
  r.valid_total_ = std::min(a.valid_total_, b.valid_total_);
  int o0 = a.ord_[0], o1 = a.ord_[1], o2 = a.ord_[2];
  for (int k1 = 0; k1 <= o2; ++k1)
    for (int j1 = 0; j1 <= o1; ++j1)
      for (int i1 = 0; i1 <= o0; ++i1) {
        Cplx ca = a.at(i1, j1, k1);
        if (ca == Cplx(0.0)) continue;
        for (int k2 = 0; k1 + k2 <= o2; ++k2)
          for (int j2 = 0; j1 + j2 <= o1; ++j2)
            for (int i2 = 0; i1 + i2 <= o0; ++i2) {
              Cplx cb = b.at(i2, j2, k2);
              if (cb == Cplx(0.0)) continue;
              r.at(i1 + i2, j1 + j2, k1 + k2) += ca * cb;
            }
      }
  return r;
}

Jet Jet::inverse() const {
  Cplx c0 = c_[0];
  if (c0 == Cplx(0.0)) throw std::domain_error("jet: inverse with zero constant term");
  Jet n = *this;
  n.c_[0] = Cplx(0.0);
  n *= Cplx(1.0) / c0;  // strictly positive-degree part
  Jet acc = Jet::constant(nvars_, ord_, Cplx(1.0));
  acc.valid_total_ = valid_total_;
  Jet pw = acc;
  int maxk = ord_[0] + ord_[1] + ord_[2];
  for (int k = 1; k <= maxk; ++k) {
    pw = pw * n;
    acc += pw * ((k % 2) ? Cplx(-1.0) : Cplx(1.0));
  }
  acc *= Cplx(1.0) / c0;
  acc.valid_total_ = valid_total_;
  return acc;
}

Jet Jet::exp() const {
  Cplx c0 = c_[0];
  Jet n = *this;
  n.c_[0] = Cplx(0.0);
  Jet acc = Jet::constant(nvars_, ord_, Cplx(1.0));
  acc.valid_total_ = valid_total_;
  Jet term = acc;
  int maxk = ord_[0] + ord_[1] + ord_[2];
  for (int k = 1; k <= maxk; ++k) {
    term = term * n;
    term *= Cplx(1.0 / k);
    acc += term;
  }
  acc *= std::exp(c0);
  acc.valid_total_ = valid_total_;
  return acc;
}

Jet Jet::pow_int(int n) const {
  if (n < 0) throw std::invalid_argument("jet: pow_int expects n >= 0");
  Jet acc = Jet::constant(nvars_, ord_, Cplx(1.0));
  acc.valid_total_ = valid_total_;
  for (int i = 0; i < n; ++i) acc = acc * (*this);
  return acc;
}

Jet Jet::pow_real(double alpha) const {
  Cplx c0 = c_[0];
  if (c0 == Cplx(0.0)) throw std::domain_error("jet: pow_real with zero constant term");
  Jet n = *this;
  n.c_[0] = Cplx(0.0);
  n *= Cplx(1.0) / c0;
  Jet acc = Jet::constant(nvars_, ord_, Cplx(1.0));
  acc.valid_total_ = valid_total_;
  Jet term = acc;
  int maxk = ord_[0] + ord_[1] + ord_[2];
  double binom = 1.0;
  for (int k = 1; k <= maxk; ++k) {
    binom *= (alpha - (k - 1)) / k;
    term = term * n;
    acc += term * Cplx(binom);
  }
  acc *= std::pow(c0, Cplx(alpha));
  acc.valid_total_ = valid_total_;
  return acc;
}

Jet Jet::deriv(int var) const {
  Jet r(nvars_, ord_);
  int o0 = ord_[0], o1 = ord_[1], o2 = ord_[2];
  for (int k = 0; k <= o2; ++k)
    for (int j = 0; j <= o1; ++j)
      for (int i = 0; i <= o0; ++i) {
        int ii = i + (var == 0), jj = j + (var == 1), kk = k + (var == 2);
        if (ii > o0 || jj > o1 || kk > o2) continue;
        double mult = var == 0 ? ii : (var == 1 ? jj : kk);
        r.at(i, j, k) = at(ii, jj, kk) * Cplx(mult);
      }
  r.valid_total_ = valid_total_ - 1;
  return r;
}

Cplx Jet::deriv_at_center(int var, int m) const {
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  int i = var == 0 ? m : 0, j = var == 1 ? m : 0, k = var == 2 ? m : 0;
  return at(i, j, k) * Cplx(fact);
}

Jet Jet::divided_difference(int va, int vb) const {
  if (nvars_ < 2) throw std::invalid_argument("jet: divided difference needs 2 variables");
  if (ord_[va] != ord_[vb])
    throw std::invalid_argument("jet: divided difference needs equal orders in the pair");
  Jet h(nvars_, ord_);
  // In the (va, vb) plane, g = (x_a - x_b) h gives g_{i,j} = h_{i-1,j} - h_{i,j-1},
  // i.e. h_{i,j} = g_{i+1,j} + h_{i+1,j-1}; fill by increasing j, decreasing i.
  int oa = ord_[va], ob = ord_[vb];
  int spect = 3 - va - vb;
  int os = (nvars_ == 3) ? ord_[spect] : 0;
  auto index = [&](int ia, int ib, int is) {
    int ijk[3] = {0, 0, 0};
    ijk[va] = ia;
    ijk[vb] = ib;
    if (nvars_ == 3) ijk[spect] = is;
    return std::array<int, 3>{ijk[0], ijk[1], ijk[2]};
  };
  for (int is = 0; is <= os; ++is)
    for (int ib = 0; ib <= ob; ++ib)
      for (int ia = oa; ia >= 0; --ia) {
        Cplx v(0.0);
        if (ia + 1 <= oa) {
          auto g = index(ia + 1, ib, is);
          v = at(g[0], g[1], g[2]);
          if (ib - 1 >= 0) {
            auto hprev = index(ia + 1, ib - 1, is);
            v += h.at(hprev[0], hprev[1], hprev[2]);
          }
        }
        auto t = index(ia, ib, is);
        h.at(t[0], t[1], t[2]) = v;
      }
  // A coefficient of pair-total T needs g up to per-variable degree T+1.
  h.valid_total_ = std::min(valid_total_ - 1, oa - 1);
  return h;
}

}  // namespace rmt
