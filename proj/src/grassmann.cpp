#include "rmt/duality.hpp"

namespace rmt {

std::vector<std::vector<RationalComplex>> y_matrix(const DysonParams& p) {
  int dim = p.gamma2 * p.N;
  std::vector<std::vector<RationalComplex>> y(dim, std::vector<RationalComplex>(dim, RationalComplex(0)));
  if (p.beta == 1) {
    for (int i = 0; i < dim; ++i) y[i][i] = RationalComplex(1);
  } else if (p.beta == 4) {
    // Y_s^T x 1_N with Y_s = [[0,1],[-1,0]]; index (a,j) -> a*N + j, a in {0,1}.
    for (int j = 0; j < p.N; ++j) {
      y[0 * p.N + j][1 * p.N + j] = RationalComplex(-1);
      y[1 * p.N + j][0 * p.N + j] = RationalComplex(1);
    }
  }
  // beta == 2: zero matrix (columns are dropped by the builders).
  return y;
}

namespace {

std::vector<RationalComplex> apply_numeric(const std::vector<std::vector<RationalComplex>>& m,
                                           const std::vector<RationalComplex>& x) {
  std::vector<RationalComplex> r(m.size(), RationalComplex(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
  return r;
}

GrassmannElement apply_numeric_gr(const std::vector<std::vector<RationalComplex>>& m,
                                  const std::vector<GrassmannElement>& x, int row) {
  GrassmannElement r(x.empty() ? 0 : x[0].num_generators());
  for (size_t j = 0; j < x.size(); ++j) r += m[row][j] * x[j];
  return r;
}

}  // namespace

SuperMatrix build_v_dagger(const SuperVectors& v) {
  const DysonParams& p = v.p;
  int dim = v.dim, k = p.k, ng = v.n_gen;
  bool with_y = p.beta != 2;
  int nb = with_y ? 2 * k : k;
  SuperMatrix m(dim, 0, nb, nb, ng);
  auto y = y_matrix(p);
  for (int pc = 0; pc < k; ++pc) {
    for (int j = 0; j < dim; ++j) {
      // z_p column
      m.at(j, pc) = GrassmannElement(ng, v.z[pc][j]);
      // zeta_p column
      m.at(j, nb + pc) = v.zeta(j, pc);
    }
    if (with_y) {
      for (int j = 0; j < dim; ++j) {
        // (Y z_p^*)_j
        RationalComplex acc(0);
        for (int l = 0; l < dim; ++l) acc += y[j][l] * v.z[pc][l].conj();
        m.at(j, k + pc) = GrassmannElement(ng, acc);
        // (Y zeta_p^*)_j
        GrassmannElement g(ng);
        for (int l = 0; l < dim; ++l) g += y[j][l] * v.zeta_star(l, pc);
        m.at(j, nb + k + pc) = g;
      }
    }
  }
  return m;
}

SuperMatrix build_v(const SuperVectors& v) {
  const DysonParams& p = v.p;
  int dim = v.dim, k = p.k, ng = v.n_gen;
  bool with_y = p.beta != 2;
  int nb = with_y ? 2 * k : k;
  SuperMatrix m(nb, nb, dim, 0, ng);
  auto y = y_matrix(p);
  for (int pc = 0; pc < k; ++pc) {
    for (int j = 0; j < dim; ++j) {
      // z*_p row
      m.at(pc, j) = GrassmannElement(ng, v.z[pc][j].conj());
      // -zeta*_p row
      m.at(nb + pc, j) = -v.zeta_star(j, pc);
    }
    if (with_y) {
      std::vector<RationalComplex> yz = apply_numeric(y, v.z[pc]);
      for (int j = 0; j < dim; ++j) {
        m.at(k + pc, j) = GrassmannElement(ng, yz[j]);
        std::vector<GrassmannElement> zeta_col(dim, GrassmannElement(ng));
        for (int l = 0; l < dim; ++l) zeta_col[l] = v.zeta(l, pc);
        m.at(nb + k + pc, j) = apply_numeric_gr(y, zeta_col, j);
      }
    }
  }
  return m;
}

namespace {

SuperMatrix scale(const SuperMatrix& m, const RationalComplex& s) {
  return s * m;
}

}  // namespace

SuperMatrix build_dyadic_k(const SuperVectors& v) {
  RationalComplex inv_gt(Rational(1, v.p.gtilde));
  return scale(build_v_dagger(v) * build_v(v), inv_gt);
}

SuperMatrix build_dual_b(const SuperVectors& v) {
  RationalComplex inv_gt(Rational(1, v.p.gtilde));
  return scale(build_v(v) * build_v_dagger(v), inv_gt);
}

SuperMatrix apply_y_hat(const SuperMatrix& k, const DysonParams& p) {
  if (p.beta == 2) return k;
  if (p.beta == 1) return k.transpose_plain();
  // beta = 4: (Y_s x 1_N) K^T (Y_s^T x 1_N).  y_matrix() holds Y_s^T x 1_N,
  // so its plain transpose is Y_s x 1_N.
  auto y = y_matrix(p);
  int dim = p.gamma2 * p.N;
  SuperMatrix kt = k.transpose_plain();
  SuperMatrix r(dim, 0, dim, 0, k.num_generators());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      GrassmannElement acc(k.num_generators());
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          // (Y^T)_{ia} = y[a][i]; Y_{bj}... careful: r = Y_s K^T Y_s^T with
          // Y_s = (y)^T: r_ij = sum_ab y[a][i] kt_ab y[b][j].
          if (y[a][i].is_zero() || y[b][j].is_zero()) continue;
          acc += (y[a][i] * y[b][j]) * kt.at(a, b);
        }
      r.at(i, j) = acc;
    }
  return r;
}

std::vector<std::vector<RationalComplex>> y_tilde_matrix(const DysonParams& p) {
  int k = p.k;
  int n = 4 * k;
  std::vector<std::vector<RationalComplex>> y(n, std::vector<RationalComplex>(n, RationalComplex(0)));
  if (p.beta == 1) {
    // [[0,1_k,0],[1_k,0,0],[0,0,Y_s x 1_k]] on basis (z, Yz*, zeta, Yzeta*).
    for (int i = 0; i < k; ++i) {
      y[i][k + i] = RationalComplex(1);
      y[k + i][i] = RationalComplex(1);
      y[2 * k + i][3 * k + i] = RationalComplex(1);
      y[3 * k + i][2 * k + i] = RationalComplex(-1);
    }
  } else if (p.beta == 4) {
    // [[Y_s x 1_k,0,0],[0,0,1_k],[0,1_k,0]]
    for (int i = 0; i < k; ++i) {
      y[i][k + i] = RationalComplex(1);
      y[k + i][i] = RationalComplex(-1);
      y[2 * k + i][3 * k + i] = RationalComplex(1);
      y[3 * k + i][2 * k + i] = RationalComplex(1);
    }
  } else {
    throw std::invalid_argument("y_tilde_matrix: defined for beta in {1,4}");
  }
  return y;
}

GrassmannElement duality_residual(const SuperVectors& v, int m) {
  if (m < 1) throw std::invalid_argument("duality_residual: m >= 1 required");
  SuperMatrix k_side = build_v_dagger(v) * build_v(v);
  SuperMatrix b_side = build_v(v) * build_v_dagger(v);
  return trace(k_side.pow(m)) - supertrace(b_side.pow(m));
}

SuperMatrix u11_cayley_hamilton_residual(const SuperMatrix& sigma) {
  if (sigma.row_bos() != 1 || sigma.row_fer() != 1 || !sigma.is_super_square())
    throw std::invalid_argument("u11 residual: expected a (1|1) supermatrix");
  int ng = sigma.num_generators();
  GrassmannElement s1 = supertrace(sigma);
  if (CoeffOps<RationalComplex>::is_zero(s1.body()))
    throw std::domain_error("u11 residual: Str sigma has zero body");
  SuperMatrix sq = sigma * sigma;
  GrassmannElement s2 = supertrace(sq);
  GrassmannElement ratio = s2 / s1;                     // Str s^2 / Str s
  GrassmannElement c = s1 * s1 - (s2 * s2) / (s1 * s1); // Str^2 s - Str^2 s^2/Str^2 s
  RationalComplex quarter(Rational(1, 4));
  SuperMatrix r = sq;
  SuperMatrix id = SuperMatrix::identity(1, 1, ng);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r.at(i, j) -= ratio * sigma.at(i, j);
      if (i == j) r.at(i, j) -= quarter * c;
    }
  return r;
}

Rational random_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

RationalComplex random_rational_complex(std::mt19937_64& rng) {
  return {random_small_rational(rng), random_small_rational(rng)};
}

GrassmannElement random_even_element(int n_gen, std::mt19937_64& rng, bool with_body) {
  GrassmannElement e(n_gen);
  if (with_body) {
    RationalComplex b = random_rational_complex(rng);
    if (b.is_zero()) b = RationalComplex(1);
    e += GrassmannElement(n_gen, b);
  }
  std::uniform_int_distribution<int> pick(0, n_gen - 1);
  for (int t = 0; t < 2; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    GenMask m = (GenMask(1) << i) | (GenMask(1) << j);
    e += GrassmannElement::monomial(n_gen, m, random_rational_complex(rng));
  }
  return e;
}

GrassmannElement random_odd_element(int n_gen, std::mt19937_64& rng) {
  GrassmannElement e(n_gen);
  std::uniform_int_distribution<int> pick(0, n_gen - 1);
  for (int t = 0; t < 2; ++t) {
    int i = pick(rng);
    e += GrassmannElement::monomial(n_gen, GenMask(1) << i, random_rational_complex(rng));
  }
  return e;
}

void randomize_vectors(SuperVectors& v, std::mt19937_64& rng) {
  for (auto& col : v.z)
    for (auto& e : col) e = random_rational_complex(rng);
}

GradedMatrix<RationalComplex> random_graded_rect(int rb, int rf, int cb, int cf, int n_gen,
                                                 std::mt19937_64& rng) {
  GradedMatrix<RationalComplex> m(rb, rf, cb, cf, n_gen);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      bool row_f = i >= rb, col_f = j >= cb;
      m.at(i, j) = (row_f == col_f) ? random_even_element(n_gen, rng)
                                    : random_odd_element(n_gen, rng);
    }
  return m;
}

SuperMatrix random_u11_supermatrix(std::mt19937_64& rng) {
  const int ng = 4;
  SuperMatrix s = SuperMatrix::super_square(1, 1, ng);
  GrassmannElement a = random_even_element(ng, rng);
  GrassmannElement d = random_even_element(ng, rng);
  // ensure Str body nonzero
  if ((a.body() - d.body()).is_zero()) a += GrassmannElement(ng, RationalComplex(3));
  s.at(0, 0) = a;
  s.at(1, 1) = d;
  s.at(0, 1) = random_odd_element(ng, rng);
  s.at(1, 0) = random_odd_element(ng, rng);
  return s;
}

}  // namespace rmt
