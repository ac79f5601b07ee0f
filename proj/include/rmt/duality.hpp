#pragma once

#include <random>

#include "rmt/grassmann.hpp"

namespace rmt {

// ---------------------------------------------------------------------------
// The ordinary <-> superspace duality for Herm(beta, N).
//
// For k source pairs one forms the (gamma2 N) x (2k+2k) matrix V^dagger whose
// columns are the complex vectors z_p, Y z_p^* and the anticommuting vectors
// zeta_p, Y zeta_p^*, with Y = 1 (beta=1), absent (beta=2) or the symplectic
// unit (beta=4).  Then K = V^dagger V / gtilde is the projected dyadic matrix
// in ordinary space and B = V V^dagger / gtilde its dual supermatrix, and
// tr (V^dagger V)^m = Str (V V^dagger)^m ties the two spaces together.
// ---------------------------------------------------------------------------

using GrassmannElement = Multivector<RationalComplex>;
using SuperMatrix = GradedMatrix<RationalComplex>;

/// Commuting + anticommuting source vectors for the dyadic construction.
/// z holds k columns of gamma2*N exact complex scalars; the zeta generators
/// are indexed as pairs: zeta_{j,p} -> 2*(p*gamma2*N + j), its star -> +1.
struct SuperVectors {
  DysonParams p;
  int dim = 0;     // gamma2 * N
  int n_gen = 0;   // 2 * k * dim
  std::vector<std::vector<RationalComplex>> z;  // [k][dim]

  static SuperVectors make(const DysonParams& p) {
    SuperVectors v;
    v.p = p;
    v.dim = p.gamma2 * p.N;
    v.n_gen = 2 * p.k * v.dim;
    v.z.assign(p.k, std::vector<RationalComplex>(v.dim, RationalComplex(0)));
    return v;
  }

  int zeta_index(int j, int pcol) const { return 2 * (pcol * dim + j); }
  int zeta_star_index(int j, int pcol) const { return 2 * (pcol * dim + j) + 1; }
  StarTable star_table() const { return StarTable::pairs(p.k * dim); }

  GrassmannElement zeta(int j, int pcol) const {
    return GrassmannElement::generator(n_gen, zeta_index(j, pcol));
  }
  GrassmannElement zeta_star(int j, int pcol) const {
    return GrassmannElement::generator(n_gen, zeta_star_index(j, pcol));
  }
};

/// Symplectic unit Y_s = [[0,1],[-1,0]] tensored with 1_N, or the identity,
/// as a numeric matrix acting on length gamma2*N vectors.
std::vector<std::vector<RationalComplex>> y_matrix(const DysonParams& p);

/// V (rows: z*_p, Y z_p, -zeta*_p, Y zeta_p) of shape (2k|2k) x (dim|0);
/// for beta = 2 the Y columns are dropped and the shape is (k|k) x (dim|0).
SuperMatrix build_v(const SuperVectors& v);
/// V^dagger (columns: z_p, Y z*_p, zeta_p, Y zeta*_p), shape (dim|0) x (2k|2k).
SuperMatrix build_v_dagger(const SuperVectors& v);

/// K = V^dagger V / gtilde: ordinary (dim|0)-square matrix of even elements.
SuperMatrix build_dyadic_k(const SuperVectors& v);
/// B = V V^dagger / gtilde: (2k|2k) (or (k|k) for beta=2) supermatrix.
SuperMatrix build_dual_b(const SuperVectors& v);

/// Y-hat symmetry map of Eq.-(3.11) type on ordinary matrices:
/// K^T (beta=1), K (beta=2), (Y_s x 1) K^T (Y_s^T x 1) (beta=4).
SuperMatrix apply_y_hat(const SuperMatrix& k, const DysonParams& p);

/// The odd-symmetry matrix of the dual supermatrix, acting on the
/// (2k+2k)-dimensional index space of B (beta = 1 or 4 only).
std::vector<std::vector<RationalComplex>> y_tilde_matrix(const DysonParams& p);

/// tr (V^dagger V)^m - Str (V V^dagger)^m; exactly zero by the duality.
GrassmannElement duality_residual(const SuperVectors& v, int m);

/// Entrywise residual of the U(1/1) quadratic Cayley-Hamilton relation
///   s^2 - (Str s^2/Str s) s - (Str^2 s - Str^2 s^2 / Str^2 s)/4 = 0.
SuperMatrix u11_cayley_hamilton_residual(const SuperMatrix& sigma);

// --- random exact data for property tests -------------------------------

Rational random_small_rational(std::mt19937_64& rng);
RationalComplex random_rational_complex(std::mt19937_64& rng);

/// Random even element: scalar + quadratic generator terms (body optional).
GrassmannElement random_even_element(int n_gen, std::mt19937_64& rng, bool with_body = true);
/// Random odd element: linear combination of generators.
GrassmannElement random_odd_element(int n_gen, std::mt19937_64& rng);

/// Fill the commuting vectors with random rationals.
void randomize_vectors(SuperVectors& v, std::mt19937_64& rng);

/// Random graded rectangular matrix with even diagonal-type blocks and odd
/// off-diagonal blocks, for the supertrace circularity checks.
GradedMatrix<RationalComplex> random_graded_rect(int rb, int rf, int cb, int cf, int n_gen,
                                                 std::mt19937_64& rng);

/// Random U(1/1)-type supermatrix with invertible Str body: diag even parts
/// plus generator off-diagonals.
SuperMatrix random_u11_supermatrix(std::mt19937_64& rng);

}  // namespace rmt
