#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <ostream>
#include <stdexcept>

namespace rmt {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary part.  Used as the
/// coefficient field of the exact Grassmann algebra so that identity checks
/// distinguish a true zero from rounding noise.
struct RationalComplex {
  Rational re{0};
  Rational im{0};

  RationalComplex() = default;
  RationalComplex(long n) : re(n) {}
  RationalComplex(Rational r) : re(std::move(r)) {}
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex conj() const { return {re, -im}; }

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("RationalComplex: division by zero");
    RationalComplex p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalComplex& c) {
    return os << "(" << c.re << (c.im >= 0 ? "+" : "") << c.im << "i)";
  }
};

inline RationalComplex rc_i() { return {Rational(0), Rational(1)}; }

/// Minimal coefficient traits so the Grassmann layer works both in exact
/// rational mode and in double-complex mode.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<RationalComplex> {
  static bool is_zero(const RationalComplex& c) { return c.is_zero(); }
  static RationalComplex conj(const RationalComplex& c) { return c.conj(); }
  static RationalComplex one() { return RationalComplex(1); }
};

template <>
struct CoeffOps<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }
  static std::complex<double> conj(const std::complex<double>& c) { return std::conj(c); }
  static std::complex<double> one() { return {1.0, 0.0}; }
};

}  // namespace rmt
