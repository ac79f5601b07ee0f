#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "rmt/dyson.hpp"
#include "rmt/rational.hpp"

namespace rmt {

// ---------------------------------------------------------------------------
// Exact finite Grassmann algebra.
//
// Elements are multivectors over n anticommuting generators g_0 .. g_{n-1},
// stored as a sparse map from the generator subset (bitmask, ascending order)
// to a coefficient.  Coefficients are exact complex rationals in identity
// suites and complex doubles where speed matters.
//
// Conjugation conventions: generators come in pairs (g, g*).  star() is the
// antiautomorphism (ab)* = b* a* with (g)* = g* and (g*)* = -g.  This sign
// makes the dyadic matrices of the duality construction reproduce each other
// under the adjoint and makes v^dagger v = Str v v^dagger hold exactly; it is
// pinned by the convention tests.
// ---------------------------------------------------------------------------

using GenMask = std::uint32_t;

inline int popcount_mask(GenMask m) { return __builtin_popcount(m); }

/// Parity of the number of transpositions needed to merge the ascending
/// monomials S and T (disjoint): +1 or -1.
inline int merge_sign(GenMask s, GenMask t) {
  int inv = 0;
  while (t) {
    GenMask low = t & (~t + 1u);
    int j = __builtin_ctz(low);
    inv += popcount_mask(s >> (j + 1));
    t ^= low;
  }
  return (inv & 1) ? -1 : 1;
}

template <class C>
class Multivector {
 public:
  static constexpr int kMaxGenerators = 24;

  Multivector() : n_gen_(0) {}
  explicit Multivector(int n_gen) : n_gen_(n_gen) { check_gen_count(n_gen); }
  Multivector(int n_gen, C scalar) : n_gen_(n_gen) {
    check_gen_count(n_gen);
    if (!CoeffOps<C>::is_zero(scalar)) terms_[0] = std::move(scalar);
  }

  static Multivector generator(int n_gen, int i) {
    Multivector m(n_gen);
    m.terms_[GenMask(1) << i] = CoeffOps<C>::one();
    return m;
  }
  static Multivector monomial(int n_gen, GenMask mask, C coeff) {
    Multivector m(n_gen);
    if (!CoeffOps<C>::is_zero(coeff)) m.terms_[mask] = std::move(coeff);
    return m;
  }

  int num_generators() const { return n_gen_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<GenMask, C>& terms() const { return terms_; }

  C body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// True when every term has even (odd) degree.
  bool is_even() const {
    for (auto& [m, c] : terms_)
      if (popcount_mask(m) & 1) return false;
    return true;
  }
  bool is_odd() const {
    for (auto& [m, c] : terms_)
      if (!(popcount_mask(m) & 1)) return false;
    return true;
  }

  int max_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, popcount_mask(m));
    return d;
  }

  Multivector& operator+=(const Multivector& o) {
    merge_space(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    merge_space(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  Multivector operator-() const {
    Multivector r(n_gen_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    if (a.n_gen_ != b.n_gen_ && !a.terms_.empty() && !b.terms_.empty() &&
        a.n_gen_ != 0 && b.n_gen_ != 0 && a.n_gen_ != b.n_gen_)
      throw std::invalid_argument("grassmann: mismatched generator spaces");
    Multivector r(std::max(a.n_gen_, b.n_gen_));
    for (auto& [ma, ca] : a.terms_) {
      for (auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;  // nilpotency
        C prod = ca * cb;
        if (CoeffOps<C>::is_zero(prod)) continue;
        if (merge_sign(ma, mb) < 0) prod = -prod;
        r.add_term(ma | mb, prod);
      }
    }
    return r;
  }

  Multivector& operator*=(const Multivector& o) { return *this = *this * o; }

  friend Multivector operator*(const C& s, const Multivector& a) {
    Multivector r(a.n_gen_);
    if (CoeffOps<C>::is_zero(s)) return r;
    for (auto& [m, c] : a.terms_) {
      C v = s * c;
      if (!CoeffOps<C>::is_zero(v)) r.terms_[m] = v;
    }
    return r;
  }
  friend Multivector operator*(const Multivector& a, const C& s) { return s * a; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return (a - b).is_zero();
  }

  /// Multiplicative inverse; requires an invertible body.  Uses the finite
  /// geometric series in the nilpotent part.
  Multivector inverse() const {
    C b = body();
    if (CoeffOps<C>::is_zero(b)) throw std::domain_error("grassmann: inverse of element with zero body");
    C binv = CoeffOps<C>::one() / b;
    Multivector nil = *this;
    nil.add_term(0, -b);          // nilpotent part n
    nil = binv * nil;             // n / b
    Multivector acc(n_gen_, binv);
    Multivector pow(n_gen_, binv);
    int max_iter = n_gen_ / 2 + 1;
    for (int j = 1; j <= max_iter; ++j) {
      pow = -(pow * nil);
      if (pow.is_zero()) break;
      acc += pow;
    }
    return acc;
  }

  friend Multivector operator/(const Multivector& a, const Multivector& b) {
    return a * b.inverse();
  }

  friend std::ostream& operator<<(std::ostream& os, const Multivector& a) {
    if (a.terms_.empty()) return os << "0";
    bool first = true;
    for (auto& [m, c] : a.terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (int i = 0; i < a.n_gen_; ++i)
        if (m & (GenMask(1) << i)) os << "*g" << i;
    }
    return os;
  }

  void add_term(GenMask m, C c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!CoeffOps<C>::is_zero(c)) terms_.emplace(m, std::move(c));
    } else {
      it->second += c;
      if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

 private:
  static void check_gen_count(int n) {
    if (n < 0 || n > kMaxGenerators)
      throw std::invalid_argument("grassmann: generator count out of range");
  }
  void merge_space(const Multivector& o) {
    if (n_gen_ == o.n_gen_) return;
    if (terms_.empty() || o.terms_.empty() || n_gen_ == 0 || o.n_gen_ == 0) {
      n_gen_ = std::max(n_gen_, o.n_gen_);
      return;
    }
    throw std::invalid_argument("grassmann: mismatched generator spaces");
  }

  int n_gen_;
  std::map<GenMask, C> terms_;
};

/// Conjugation structure: partner[i] is the index of the generator conjugate
/// to g_i, starred[i] says whether g_i is itself a starred generator.
struct StarTable {
  std::vector<int> partner;
  std::vector<bool> starred;

  /// n pairs laid out as (g_0, g_0*, g_1, g_1*, ...).
  static StarTable pairs(int n_pairs) {
    StarTable t;
    t.partner.resize(2 * n_pairs);
    t.starred.resize(2 * n_pairs);
    for (int i = 0; i < n_pairs; ++i) {
      t.partner[2 * i] = 2 * i + 1;
      t.partner[2 * i + 1] = 2 * i;
      t.starred[2 * i] = false;
      t.starred[2 * i + 1] = true;
    }
    return t;
  }
};

/// Complex conjugation, the automorphism convention: (ab)* = a* b*,
/// (g)* = g*, (g*)* = -g, coefficients conjugated.  Together with the graded
/// supertranspose this makes the dyadic supermatrices of the duality
/// construction self-adjoint; the convention tests pin it down.
template <class C>
Multivector<C> star(const Multivector<C>& a, const StarTable& t) {
  Multivector<C> r(a.num_generators());
  for (auto& [mask, coeff] : a.terms()) {
    std::vector<int> mapped;
    int sign = 1;
    for (int i = 0; i < a.num_generators(); ++i) {
      if (!(mask & (GenMask(1) << i))) continue;
      if (t.starred[i]) sign = -sign;  // (g*)* = -g
      mapped.push_back(t.partner[i]);
    }
    // Sort mapped sequence to canonical ascending order, tracking parity.
    GenMask out = 0;
    for (size_t i = 0; i < mapped.size(); ++i) {
      int inversions = 0;
      for (size_t j = 0; j < i; ++j)
        if (mapped[j] > mapped[i]) ++inversions;
      if (inversions & 1) sign = -sign;
      out |= GenMask(1) << mapped[i];
    }
    C c = CoeffOps<C>::conj(coeff);
    if (sign < 0) c = -c;
    r.add_term(out, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Graded matrices.  Rows and columns each split into a bosonic and a fermionic
// range; square matrices with equal gradings are supermatrices.
// ---------------------------------------------------------------------------

template <class C>
class GradedMatrix {
 public:
  using Elem = Multivector<C>;

  GradedMatrix() = default;
  GradedMatrix(int row_bos, int row_fer, int col_bos, int col_fer, int n_gen)
      : rb_(row_bos), rf_(row_fer), cb_(col_bos), cf_(col_fer), n_gen_(n_gen),
        entries_(static_cast<size_t>(rows()) * cols(), Elem(n_gen)) {}

  static GradedMatrix super_square(int bos, int fer, int n_gen) {
    return GradedMatrix(bos, fer, bos, fer, n_gen);
  }
  static GradedMatrix identity(int bos, int fer, int n_gen) {
    GradedMatrix m = super_square(bos, fer, n_gen);
    for (int i = 0; i < m.rows(); ++i) m.at(i, i) = Elem(n_gen, CoeffOps<C>::one());
    return m;
  }

  int rows() const { return rb_ + rf_; }
  int cols() const { return cb_ + cf_; }
  int row_bos() const { return rb_; }
  int row_fer() const { return rf_; }
  int col_bos() const { return cb_; }
  int col_fer() const { return cf_; }
  int num_generators() const { return n_gen_; }
  bool is_super_square() const { return rb_ == cb_ && rf_ == cf_; }

  Elem& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols() + j]; }
  const Elem& at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols() + j]; }

  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.cols() != b.rows() || a.cb_ != b.rb_ || a.cf_ != b.rf_)
      throw std::invalid_argument("graded matrix: dimension mismatch");
    GradedMatrix r(a.rb_, a.rf_, b.cb_, b.cf_, std::max(a.n_gen_, b.n_gen_));
    for (int i = 0; i < a.rows(); ++i)
      for (int l = 0; l < a.cols(); ++l) {
        if (a.at(i, l).is_zero()) continue;
        for (int j = 0; j < b.cols(); ++j) {
          if (b.at(l, j).is_zero()) continue;
          r.at(i, j) += a.at(i, l) * b.at(l, j);
        }
      }
    return r;
  }
  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a.at(i, j) += b.at(i, j);
    return a;
  }
  friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) a.at(i, j) -= b.at(i, j);
    return a;
  }
  friend GradedMatrix operator*(const C& s, const GradedMatrix& a) {
    GradedMatrix r = a;
    for (auto& e : r.entries_) e = s * e;
    return r;
  }

  bool is_zero() const {
    for (auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  GradedMatrix pow(int m) const {
    GradedMatrix acc = identity_like(*this);
    for (int i = 0; i < m; ++i) acc = acc * (*this);
    return acc;
  }

  /// Plain transpose (no graded signs).  Appropriate for ordinary matrices of
  /// even elements.
  GradedMatrix transpose_plain() const {
    GradedMatrix r(cb_, cf_, rb_, rf_, n_gen_);
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) r.at(j, i) = at(i, j);
    return r;
  }

  /// Graded transpose: [[A,B],[C,D]] -> [[A^T, C^T],[-B^T, D^T]].
  GradedMatrix transpose_graded() const {
    GradedMatrix r(cb_, cf_, rb_, rf_, n_gen_);
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) {
        bool bf_block = i < rb_ && j >= cb_;
        r.at(j, i) = bf_block ? -at(i, j) : at(i, j);
      }
    return r;
  }

  /// Supersymmetric adjoint: star o graded transpose.
  GradedMatrix adjoint(const StarTable& t) const {
    GradedMatrix r = transpose_graded();
    for (auto& e : r.entries_) e = star(e, t);
    return r;
  }

  /// Elementwise conjugation (no transpose).
  GradedMatrix conj_elementwise(const StarTable& t) const {
    GradedMatrix r = *this;
    for (auto& e : r.entries_) e = star(e, t);
    return r;
  }

  static GradedMatrix identity_like(const GradedMatrix& m) {
    if (!m.is_super_square()) throw std::invalid_argument("identity_like: not super-square");
    return identity(m.rb_, m.rf_, m.n_gen_);
  }

 private:
  int rb_ = 0, rf_ = 0, cb_ = 0, cf_ = 0, n_gen_ = 0;
  std::vector<Elem> entries_;
};

// ---------------------------------------------------------------------------
// Supertrace, determinants, superdeterminant.
// ---------------------------------------------------------------------------

template <class C>
Multivector<C> supertrace(const GradedMatrix<C>& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("supertrace: matrix not square");
  Multivector<C> s(m.num_generators());
  for (int i = 0; i < m.row_bos(); ++i) s += m.at(i, i);
  for (int i = m.row_bos(); i < m.rows(); ++i) s -= m.at(i, i);
  return s;
}

template <class C>
Multivector<C> trace(const GradedMatrix<C>& m) {
  Multivector<C> s(m.num_generators());
  for (int i = 0; i < m.rows(); ++i) s += m.at(i, i);
  return s;
}

/// Determinant of a square block of commuting (even) elements, by Leibniz
/// expansion.  Sizes here never exceed a handful.
template <class C>
Multivector<C> det_even(const std::vector<Multivector<C>>& a, int n, int n_gen) {
  Multivector<C> result(n_gen);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  // permutation sign via iterative next_permutation with explicit parity
  do {
    int sign = 1;
    std::vector<int> p = perm;
    for (int i = 0; i < n; ++i) {
      while (p[i] != i) {
        std::swap(p[i], p[p[i]]);
        sign = -sign;
      }
    }
    Multivector<C> term(n_gen, CoeffOps<C>::one());
    for (int i = 0; i < n; ++i) term = term * a[static_cast<size_t>(i) * n + perm[i]];
    result += sign < 0 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

namespace detail {

template <class C>
std::vector<Multivector<C>> block_of(const GradedMatrix<C>& m, int r0, int r1, int c0, int c1) {
  std::vector<Multivector<C>> out;
  out.reserve(static_cast<size_t>(r1 - r0) * (c1 - c0));
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) out.push_back(m.at(i, j));
  return out;
}

/// Inverse of a square matrix of even (mutually commuting) elements by
/// Gauss-Jordan elimination with exact division.
template <class C>
std::vector<Multivector<C>> inv_even(std::vector<Multivector<C>> a, int n, int n_gen) {
  std::vector<Multivector<C>> inv(static_cast<size_t>(n) * n, Multivector<C>(n_gen));
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = Multivector<C>(n_gen, CoeffOps<C>::one());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!CoeffOps<C>::is_zero(a[static_cast<size_t>(r) * n + col].body())) { piv = r; break; }
    if (piv < 0) throw std::domain_error("inv_even: singular body");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(col) * n + j]);
        std::swap(inv[static_cast<size_t>(piv) * n + j], inv[static_cast<size_t>(col) * n + j]);
      }
    Multivector<C> pinv = a[static_cast<size_t>(col) * n + col].inverse();
    for (int j = 0; j < n; ++j) {
      a[static_cast<size_t>(col) * n + j] = pinv * a[static_cast<size_t>(col) * n + j];
      inv[static_cast<size_t>(col) * n + j] = pinv * inv[static_cast<size_t>(col) * n + j];
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Multivector<C> f = a[static_cast<size_t>(r) * n + col];
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        a[static_cast<size_t>(r) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
        inv[static_cast<size_t>(r) * n + j] -= f * inv[static_cast<size_t>(col) * n + j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Sdet(M) = det(BB - BF FF^{-1} FB) / det(FF).  Requires the FF block body
/// to be invertible.
template <class C>
Multivector<C> superdeterminant(const GradedMatrix<C>& m) {
  if (!m.is_super_square()) throw std::invalid_argument("sdet: not super-square");
  int p = m.row_bos(), q = m.row_fer(), ng = m.num_generators();
  auto A = detail::block_of(m, 0, p, 0, p);
  auto B = detail::block_of(m, 0, p, p, p + q);
  auto Cb = detail::block_of(m, p, p + q, 0, p);
  auto D = detail::block_of(m, p, p + q, p, p + q);
  Multivector<C> detD = det_even(D, q, ng);
  if (CoeffOps<C>::is_zero(detD.body()))
    throw std::domain_error("sdet: fermion-fermion block body is singular");
  auto Dinv = detail::inv_even(D, q, ng);
  // S = A - B Dinv Cb
  std::vector<Multivector<C>> S(static_cast<size_t>(p) * p, Multivector<C>(ng));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Multivector<C> acc = A[static_cast<size_t>(i) * p + j];
      for (int l = 0; l < q; ++l)
        for (int r = 0; r < q; ++r)
          acc -= B[static_cast<size_t>(i) * q + l] * Dinv[static_cast<size_t>(l) * q + r] *
                 Cb[static_cast<size_t>(r) * p + j];
      S[static_cast<size_t>(i) * p + j] = acc;
    }
  return det_even(S, p, ng) / detD;
}

/// Block inverse of a super-square matrix (both Schur complements invertible).
template <class C>
GradedMatrix<C> super_inverse(const GradedMatrix<C>& m) {
  if (!m.is_super_square()) throw std::invalid_argument("super_inverse: not super-square");
  int p = m.row_bos(), q = m.row_fer(), ng = m.num_generators();
  auto A = detail::block_of(m, 0, p, 0, p);
  auto B = detail::block_of(m, 0, p, p, p + q);
  auto Cb = detail::block_of(m, p, p + q, 0, p);
  auto D = detail::block_of(m, p, p + q, p, p + q);
  auto Dinv = detail::inv_even(D, q, ng);
  std::vector<Multivector<C>> S(static_cast<size_t>(p) * p, Multivector<C>(ng));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Multivector<C> acc = A[static_cast<size_t>(i) * p + j];
      for (int l = 0; l < q; ++l)
        for (int r = 0; r < q; ++r)
          acc -= B[static_cast<size_t>(i) * q + l] * Dinv[static_cast<size_t>(l) * q + r] *
                 Cb[static_cast<size_t>(r) * p + j];
      S[static_cast<size_t>(i) * p + j] = acc;
    }
  auto Sinv = detail::inv_even(S, p, ng);
  GradedMatrix<C> r = GradedMatrix<C>::super_square(p, q, ng);
  // top-left: Sinv ; top-right: -Sinv B Dinv ; bottom-left: -Dinv Cb Sinv ;
  // bottom-right: Dinv + Dinv Cb Sinv B Dinv
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) r.at(i, j) = Sinv[static_cast<size_t>(i) * p + j];
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      Multivector<C> acc(ng);
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b)
          acc -= Sinv[static_cast<size_t>(i) * p + a] * B[static_cast<size_t>(a) * q + b] *
                 Dinv[static_cast<size_t>(b) * q + j];
      r.at(i, p + j) = acc;
    }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j) {
      Multivector<C> acc(ng);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < p; ++b)
          acc -= Dinv[static_cast<size_t>(i) * q + a] * Cb[static_cast<size_t>(a) * p + b] *
                 Sinv[static_cast<size_t>(b) * p + j];
      r.at(p + i, j) = acc;
    }
  // bottom-right: Dinv + (Dinv Cb) Sinv (B Dinv)
  std::vector<Multivector<C>> T1(static_cast<size_t>(q) * p, Multivector<C>(ng));  // Dinv Cb
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j)
      for (int a = 0; a < q; ++a)
        T1[static_cast<size_t>(i) * p + j] +=
            Dinv[static_cast<size_t>(i) * q + a] * Cb[static_cast<size_t>(a) * p + j];
  std::vector<Multivector<C>> T2(static_cast<size_t>(p) * q, Multivector<C>(ng));  // B Dinv
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int a = 0; a < q; ++a)
        T2[static_cast<size_t>(i) * q + j] +=
            B[static_cast<size_t>(i) * q + a] * Dinv[static_cast<size_t>(a) * q + j];
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      Multivector<C> acc = Dinv[static_cast<size_t>(i) * q + j];
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
          acc += T1[static_cast<size_t>(i) * p + a] * Sinv[static_cast<size_t>(a) * p + b] *
                 T2[static_cast<size_t>(b) * q + j];
      r.at(p + i, p + j) = acc;
    }
  return r;
}

}  // namespace rmt
