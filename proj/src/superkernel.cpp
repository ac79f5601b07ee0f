#include "rmt/superkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rmt/bessel.hpp"

namespace rmt {

namespace {

Cplx ipow(double e) { return std::exp(Cplx(0.0, M_PI * 0.5 * e)); }  // i^e, principal

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double is_lambda(int n, int m, int beta) {
  int gamma2 = beta == 4 ? 2 : 1;
  int gamma1 = 2 * gamma2 / beta;
  return static_cast<double>(n - m) / gamma1 - 0.5 * (gamma1 - gamma2);
}

double is_g_big(int n_minus_m, int m, int beta) {
  int gamma2 = beta == 4 ? 2 : 1;
  double expo = 0.5 * beta * m * (n_minus_m + 1) - m;
  double val = std::pow(gamma2 / M_PI, expo);
  for (int j = n_minus_m + 1; j <= n_minus_m + m; ++j)
    val *= 2.0 * std::pow(M_PI, 0.5 * beta * j) / std::tgamma(0.5 * beta * j);
  return val;
}

double is_g_small(int n, double beta) {
  double val = 1.0 / factorial(n);
  for (int j = 1; j <= n; ++j)
    val *= std::pow(M_PI, 0.5 * beta * (j - 1)) * std::tgamma(0.5 * beta) /
           std::tgamma(0.5 * beta * j);
  return val;
}

double gaussian_flat_integral(int n, int beta) {
  int gamma2 = beta == 4 ? 2 : 1;
  return std::pow(gamma2, -0.5 * n * (2 * n - 1)) * std::pow(2.0, -0.25 * beta * n * (n - 1)) *
         std::pow(M_PI, 0.5 * n + 0.25 * beta * n * (n - 1));
}

double gaussian_eigen_integral(int n, int beta) {
  double val = 0.0;
  if (beta == 1) {
    val = std::pow(2.0, -0.25 * n * (n - 5));
    for (int j = 1; j <= n; ++j) val *= std::tgamma(0.5 * j + 1.0);
  } else if (beta == 2) {
    val = std::pow(2.0, -0.5 * n * (n - 1)) * std::pow(M_PI, 0.5 * n);
    for (int j = 1; j <= n; ++j) val *= std::tgamma(j + 1.0);
  } else if (beta == 4) {
    val = std::pow(2.0, -n * (2.0 * n - 0.5)) * std::pow(M_PI, 0.5 * n);
    for (int j = 1; j <= n; ++j) val *= std::tgamma(2.0 * j + 1.0);
  } else {
    throw std::invalid_argument("gaussian_eigen_integral: beta");
  }
  return val;
}

ISConstants is_constants(const DysonParams& p, double psi) {
  require_susy_domain(p);
  ISConstants c{};
  c.lambda = is_lambda(p.N + p.k1, p.k1, p.beta);
  c.kappa = static_cast<double>(p.N) / p.gamma1 + 0.5 * (p.gamma2 - p.gamma1);
  c.G = is_g_big(p.N, p.k1, p.beta);
  c.g = is_g_small(p.k2, 4.0 / p.beta);
  double ang = std::pow(2.0 * M_PI / p.gamma1, p.k2) *
               std::pow(M_PI / p.gamma1, 2.0 * p.k2 * (p.k2 - 1) / p.beta);
  Cplx phase_n = std::exp(Cplx(0.0, -psi * p.N));
  // w1 = ang (i^N e^{-i psi N})^{k2} / g * prod_{b,a} (a/gamma1 + (b-1)/gamma2)
  Cplx w1 = ang * std::pow(ipow(p.N) * phase_n, p.k2) / c.g;
  for (int b = 1; b <= p.k2; ++b)
    for (int a = 1; a <= p.N; ++a)
      w1 *= Cplx(static_cast<double>(a) / p.gamma1 + static_cast<double>(b - 1) / p.gamma2);
  c.w1 = w1;
  double gammaprod = 1.0;
  for (int j = 0; j <= p.k2 - 1; ++j)
    gammaprod *= std::tgamma(p.N + 1.0 + 2.0 * j / p.beta) / std::tgamma(1.0 + 2.0 * j / p.beta);
  Cplx w2 = std::pow(-1.0, p.k1 * p.k2) / c.g * ang *
            std::pow(ipow(-p.N) * phase_n / (factorial(p.N - p.k1) * std::pow(p.gamma1, p.N)),
                     p.k2) *
            gammaprod;
  c.w2 = w2;
  Cplx W = std::pow(p.gtilde / (2.0 * M_PI), p.k1 * p.k2) * ang *
           std::pow(std::pow(-1.0, p.N) * phase_n / (factorial(p.N - p.k1) * std::pow(p.gamma1, p.N)),
                    p.k2) *
           c.G / c.g * gammaprod;
  c.W = W;
  Cplx C = std::pow(-std::exp(Cplx(0.0, -psi)) / static_cast<double>(p.gamma1),
                    p.k2 * p.N) *
           std::pow(-static_cast<double>(p.gtilde) / (2.0 * M_PI), p.k1 * p.k2) * ang * c.G / c.g;
  c.C = C;
  return c;
}

Cplx ordinary_is_closed(const std::vector<double>& r_eigs, int n, int beta, double eps) {
  (void)eps;  // the S^+ convention makes the closed form eps-independent
  int m = static_cast<int>(r_eigs.size());
  if (m < 1) throw std::invalid_argument("ordinary_is_closed: empty R");
  double cond = m - 1 + 2.0 / beta;
  if (n < cond - 1e-12) throw std::domain_error("ordinary_is_closed: requires n >= m-1+2/beta");
  for (double r : r_eigs)
    if (r <= 0.0) return Cplx(0.0);  // Theta(R)
  int gamma2 = beta == 4 ? 2 : 1;
  double lam = is_lambda(n, m, beta);
  double detpow = 1.0;
  for (double r : r_eigs) detpow *= std::pow(r, gamma2 * lam);
  return ipow(-0.5 * beta * m * n) * is_g_big(n - m, m, beta) * detpow;
}

namespace {

Cplx det_power_term(double s, double eps, double q) {
  // (s + i eps)^{-q}, principal branch
  return std::pow(Cplx(s, eps), -q);
}

}  // namespace

Cplx ordinary_is_numeric(const std::vector<double>& r_eigs, int n, int beta, double eps,
                         const ISNumericOptions& opt) {
  int m = static_cast<int>(r_eigs.size());
  int gamma2 = beta == 4 ? 2 : 1;
  int gamma1 = 2 * gamma2 / beta;
  double q = static_cast<double>(n) * gamma2 / gamma1;
  if (m == 1) {
    double r = r_eigs[0];
    double omega = std::max(0.2, std::abs(gamma2 * r));
    auto f = [&](double s) {
      return std::exp(Cplx(0.0, -gamma2 * r * s)) * det_power_term(s, eps, q);
    };
    double c0 = opt.core_halfwidth;
    auto core = integrate_gk(f, -c0, c0, opt.tol, opt.tol, 6000);
    auto tp = integrate_oscillatory_tail(f, c0, omega, opt.tail_half_periods);
    auto fm = [&](double s) { return f(-s); };
    auto tm = integrate_oscillatory_tail(fm, c0, omega, opt.tail_half_periods);
    Cplx val = core.value + tp.value + tm.value;
    return val * std::exp(eps * gamma2 * r);
  }
  if (m != 2) throw std::invalid_argument("ordinary_is_numeric: m <= 2 only");
  double r1 = r_eigs[0], r2 = r_eigs[1];
  double omega = std::max(0.3, gamma2 * std::max(std::abs(r1), std::abs(r2)));
  auto h = [&](double s1, double s2) {
    Cplx kern = bessel2_closed(beta, Cplx(-r1), Cplx(-r2), Cplx(s1), Cplx(s2));
    Cplx pw = det_power_term(s1, eps, q) * det_power_term(s2, eps, q);
    double dd = std::pow(std::abs(s1 - s2), beta);
    return kern * pw * dd;
  };
  double c0 = opt.core_halfwidth;
  double inner_tol = opt.tol;
  auto inner = [&](double s1) {
    auto g = [&](double s2) { return h(s1, s2); };
    Cplx acc(0.0);
    if (s1 > -c0 && s1 < c0) {
      // split at the |Delta| kink
      acc += integrate_gk(g, -c0, s1, inner_tol, inner_tol, 3000).value;
      acc += integrate_gk(g, s1, c0, inner_tol, inner_tol, 3000).value;
    } else {
      acc += integrate_gk(g, -c0, c0, inner_tol, inner_tol, 3000).value;
    }
    acc += integrate_oscillatory_tail(g, c0, omega, opt.tail_half_periods).value;
    auto gm = [&](double s2) { return g(-s2); };
    acc += integrate_oscillatory_tail(gm, c0, omega, opt.tail_half_periods).value;
    return acc;
  };
  auto outer_core = integrate_gk(inner, -c0, c0, opt.tol * 10, 1e-7, 600);
  auto op = integrate_oscillatory_tail(inner, c0, omega, opt.tail_half_periods / 2);
  auto outer_m = [&](double s1) { return inner(-s1); };
  auto om = integrate_oscillatory_tail(outer_m, c0, omega, opt.tail_half_periods / 2);
  Cplx val = outer_core.value + op.value + om.value;
  return val * is_g_small(2, beta) * std::exp(eps * gamma2 * (r1 + r2));
}

MultiPoly sekiguchi_apply_poly(const MultiPoly& f, int k2, const Rational& beta_prime) {
  int nv = f.nvars();
  if (k2 > nv) throw std::invalid_argument("sekiguchi_apply_poly: k2 exceeds variable count");
  std::vector<int> perm(k2);
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly num(nv);
  Rational half_bp = beta_prime / 2;
  do {
    int sign = 1;
    std::vector<int> p = perm;
    for (int i = 0; i < k2; ++i)
      while (p[i] != i) {
        std::swap(p[i], p[p[i]]);
        sign = -sign;
      }
    MultiPoly term = f;
    for (int a = 0; a < k2; ++a) {
      int b = perm[a] + 1;  // column index, 1-based
      int e = k2 - b;
      // x_a^e d/dx_a + (beta'/2) e x_a^{e-1}
      MultiPoly d = term.deriv(a).mul_power(a, e);
      if (e > 0) d += (half_bp * Rational(e)) * term.mul_power(a, e - 1);
      term = d;
    }
    num += sign < 0 ? (Rational(-1) * term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  // divide by the Vandermonde determinant
  for (int a = 0; a < k2; ++a)
    for (int b = a + 1; b < k2; ++b) num = num.divide_linear_diff(a, b);
  return num;
}

Jet sekiguchi_apply_jet(const Jet& f, const std::vector<Cplx>& centers, double beta_prime,
                        Cplx B) {
  int k2 = static_cast<int>(centers.size());
  Cplx iB = Cplx(0.0, 1.0) * B;
  if (k2 == 1) return f.deriv(0) + f * iB;
  if (k2 != 2) throw std::invalid_argument("sekiguchi_apply_jet: k2 = 1 or 2");
  std::array<int, 3> ord{f.order(0), f.order(1), f.order(2)};
  Jet x1 = Jet::variable(f.nvars(), ord, 0, centers[0]);
  Jet x2 = Jet::variable(f.nvars(), ord, 1, centers[1]);
  auto m_col1 = [&](const Jet& g, int var, const Jet& xv) {
    return xv * g.deriv(var) + g * Cplx(0.5 * beta_prime) + xv * g * iB;
  };
  auto m_col2 = [&](const Jet& g, int var) { return g.deriv(var) + g * iB; };
  Jet t1 = m_col1(m_col2(f, 1), 0, x1);
  Jet t2 = m_col1(m_col2(f, 0), 1, x2);
  Jet num = t1 - t2;
  if (std::abs(centers[0] - centers[1]) > 1e-9) return num * (x1 - x2).inverse();
  return num.divided_difference(0, 1);
}

Rational vandermonde_derivative(int n, int power) {
  if (power != 2 && power != 4) throw std::invalid_argument("vandermonde_derivative: power 2 or 4");
  if (n < 1) throw std::invalid_argument("vandermonde_derivative: n >= 1");
  MultiPoly d = vandermonde_poly(n).pow(power);
  int order = (power / 2) * (n - 1);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < order; ++t) d = d.deriv(j);
  if (!d.is_constant()) throw std::logic_error("vandermonde_derivative: result not constant");
  return d.constant_term();
}

Cplx is_super_pair(const Jet& test, const DysonParams& p, double psi, PairingMode mode) {
  (void)mode;  // the fermionic pairing itself is mode-independent; the mode
               // selects the bosonic-side regularization in the consumers
  require_susy_domain(p);
  Cplx phase = std::exp(Cplx(0.0, -psi));
  if (p.beta == 1 || p.beta == 2) {
    int order = p.N - p.gamma1;
    int k2 = p.k2;
    if (test.nvars() != k2)
      throw std::invalid_argument("is_super_pair: test must have k2 variables");
    for (int v = 0; v < k2; ++v)
      if (test.order(v) < order)
        throw std::invalid_argument("is_super_pair: insufficient jet order");
    if (test.valid_total() < k2 * order)
      throw std::invalid_argument("is_super_pair: insufficient valid jet total");
    // mixed derivative of the test at 0 times (e^{-i psi})^{order} per variable
    int idx[3] = {0, 0, 0};
    for (int v = 0; v < k2; ++v) idx[v] = order;
    Cplx coeff = test.at(idx[0], idx[1], idx[2]);
    double factpow = std::pow(factorial(order), k2);
    Cplx val = coeff * factpow * std::pow(phase, k2 * order);
    Cplx cN = std::exp(Cplx(0.0, -psi * p.N));
    if (p.beta == 2) {
      Cplx cst = std::pow(-1.0, 0.5 * p.k * (p.k + 1)) * std::pow(2.0, -p.k * (p.k - 1)) *
                 std::pow(2.0 * M_PI * cN / factorial(p.N - 1), p.k);
      return cst * val;
    }
    Cplx cst = std::pow(2.0, -p.k * (p.k - 2)) *
               std::pow(2.0 * M_PI * cN / factorial(p.N - 2), p.k);
    return cst * val;
  }
  // beta = 4, k = 1: Eq. 6.6 operator form.
  if (p.k != 1) throw std::invalid_argument("is_super_pair: beta=4 implemented for k=1");
  if (test.nvars() != 2) throw std::invalid_argument("is_super_pair: beta=4 test needs 2 variables");
  // contract: the test must be antisymmetric under r12 <-> r22
  double maxc = 0.0, asym = 0.0;
  for (int i = 0; i <= test.order(0); ++i)
    for (int j = 0; j <= test.order(1); ++j) {
      if (i + j > test.valid_total()) continue;
      if (j > test.order(0) || i > test.order(1)) continue;
      maxc = std::max(maxc, std::abs(test.at(i, j)));
      asym = std::max(asym, std::abs(test.at(i, j) + test.at(j, i)));
    }
  if (asym > 1e-8 * std::max(1.0, maxc))
    throw std::invalid_argument("is_super_pair: beta=4 test must be antisymmetric");
  Jet s = test.divided_difference(0, 1);
  std::vector<Cplx> centers{Cplx(0.0), Cplx(0.0)};
  Cplx op_factor = 4.0 * std::exp(Cplx(0.0, -2.0 * psi));
  for (int t = 0; t < p.N; ++t) s = sekiguchi_apply_jet(s, centers, 1.0, Cplx(0.0));
  if (s.valid_total() < 0)
    throw std::invalid_argument("is_super_pair: insufficient jet order for beta=4");
  return std::pow(op_factor, p.N) * phase * s.value();
}

}  // namespace rmt
