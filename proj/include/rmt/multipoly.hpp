#pragma once

#include <array>
#include <map>
#include <stdexcept>

#include "rmt/rational.hpp"

namespace rmt {

/// Sparse exact polynomial in up to four variables with rational
/// coefficients; just enough ring operations for the symbolic differential
/// identities (Vandermonde derivatives, Sekiguchi det-power relation).
class MultiPoly {
 public:
  using Expo = std::array<int, 4>;

  explicit MultiPoly(int nvars = 1) : nvars_(nvars) {
    if (nvars < 1 || nvars > 4) throw std::invalid_argument("multipoly: 1..4 variables");
  }
  static MultiPoly constant(int nvars, Rational c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[{0, 0, 0, 0}] = std::move(c);
    return p;
  }
  static MultiPoly variable(int nvars, int v) {
    MultiPoly p(nvars);
    Expo e{0, 0, 0, 0};
    e[v] = 1;
    p.terms_[e] = Rational(1);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, Rational>& terms() const { return terms_; }

  Rational constant_term() const {
    auto it = terms_.find({0, 0, 0, 0});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expo{0, 0, 0, 0});
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.nvars_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (s == 0) return r;
    for (auto& [e, c] : a.terms_) r.terms_[e] = s * c;
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }

  MultiPoly pow(int n) const {
    MultiPoly r = constant(nvars_, Rational(1));
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
  }

  MultiPoly deriv(int v) const {
    MultiPoly r(nvars_);
    for (auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Expo d = e;
      d[v] -= 1;
      r.add_term(d, c * e[v]);
    }
    return r;
  }

  MultiPoly mul_power(int v, int k) const {
    MultiPoly r(nvars_);
    for (auto& [e, c] : terms_) {
      Expo d = e;
      d[v] += k;
      if (d[v] < 0) throw std::domain_error("multipoly: negative exponent");
      r.add_term(d, c);
    }
    return r;
  }

  /// Exact division by (x_a - x_b); throws when the remainder is nonzero.
  MultiPoly divide_linear_diff(int a, int b) const {
    // Synthetic division treating the polynomial as a polynomial in x_a with
    // coefficients in the remaining variables: p = (x_a - x_b) q + r(x_b,...),
    // remainder = p at x_a = x_b.
    MultiPoly q(nvars_);
    MultiPoly rem = *this;
    while (true) {
      // pick the term of highest x_a-degree
      int maxdeg = -1;
      for (auto& [e, c] : rem.terms_) maxdeg = std::max(maxdeg, e[a]);
      if (maxdeg <= 0) break;
      MultiPoly chunk(nvars_);
      for (auto& [e, c] : rem.terms_)
        if (e[a] == maxdeg) {
          Expo d = e;
          d[a] -= 1;
          chunk.add_term(d, c);
        }
      q += chunk;
      // rem -= (x_a - x_b) * chunk
      MultiPoly xa = variable(nvars_, a), xb = variable(nvars_, b);
      rem -= (xa - xb) * chunk;
    }
    if (!rem.is_zero()) throw std::domain_error("multipoly: division by (x_a - x_b) not exact");
    return q;
  }

  void add_term(const Expo& e, Rational c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  int nvars_;
  std::map<Expo, Rational> terms_;
};

/// Vandermonde determinant Delta_n(x) = prod_{a<b} (x_a - x_b).
inline MultiPoly vandermonde_poly(int n) {
  MultiPoly p = MultiPoly::constant(n, Rational(1));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      p = p * (MultiPoly::variable(n, a) - MultiPoly::variable(n, b));
  return p;
}

}  // namespace rmt
