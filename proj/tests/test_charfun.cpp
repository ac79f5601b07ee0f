#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmt/charfun.hpp"
#include "rmt/ensembles.hpp"

using namespace rmt;

namespace {

// 1-D trapezoid Fourier oracle for the N = 1 member of each symmetry class:
// the flat-measure density exp(-tr H^2/(2 v^2)) reduced to the single real
// parameter h, paired against exp(i tr H K).
Cplx fourier_oracle_n1(int beta, double v2, double shift, double y) {
  // tr H^2 = gamma2 * h^2 (complex representation), tr HK = gamma2 * h * y
  int gamma2 = beta == 4 ? 2 : 1;
  double a = gamma2 / (2.0 * v2);
  double lo = shift - 12.0 / std::sqrt(2.0 * a), hi = shift + 12.0 / std::sqrt(2.0 * a);
  int n = 8000;
  double w = (hi - lo) / n;
  Cplx num(0.0);
  double den = 0.0;
  for (int i = 0; i <= n; ++i) {
    double h = lo + i * w;
    double weight = (i == 0 || i == n) ? 0.5 : 1.0;
    double p = std::exp(-a * (h - shift) * (h - shift));
    num += weight * p * std::exp(Cplx(0.0, gamma2 * h * y));
    den += weight * p;
  }
  return num / den;
}

std::vector<Cplx> matpow_trace(const std::vector<Cplx>& K, int dim, int maxp) {
  std::vector<Cplx> ps;
  std::vector<Cplx> cur(K), tmp(K.size());
  for (int m = 1; m <= maxp; ++m) {
    if (m > 1) {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          Cplx acc(0.0);
          for (int l = 0; l < dim; ++l)
            acc += cur[static_cast<size_t>(i) * dim + l] * K[static_cast<size_t>(l) * dim + j];
          tmp[static_cast<size_t>(i) * dim + j] = acc;
        }
      cur.swap(tmp);
    }
    Cplx tr(0.0);
    for (int i = 0; i < dim; ++i) tr += cur[static_cast<size_t>(i) * dim + i];
    ps.push_back(tr);
  }
  return ps;
}

}  // namespace

TEST_CASE("Gaussian coefficient a(beta, v2) = v2/2 against the N=1 Fourier oracle") {
  for (int beta : {1, 2, 4}) {
    for (double v2 : {1.0, 2.5}) {
      auto p = make_dyson(beta, 1, 1);
      auto f = gaussian_charfun(v2, 0.0, p);
      for (double y : {0.3, 0.9}) {
        // K = y (x identity in the quaternion case)
        int dim = p.gamma2;
        std::vector<Cplx> K(static_cast<size_t>(dim) * dim, Cplx(0.0));
        for (int i = 0; i < dim; ++i) K[static_cast<size_t>(i) * dim + i] = Cplx(y);
        auto ps = matpow_trace(K, dim, 2);
        Cplx pred = f.eval_scalar(ps);
        Cplx oracle = fourier_oracle_n1(beta, v2, 0.0, y);
        CHECK(std::abs(pred - oracle) < 1e-8);
      }
    }
  }
}

TEST_CASE("shifted Gaussian at N=1: exp(i c k - v2 k^2/2)") {
  auto p = make_dyson(2, 1, 1);
  auto f = gaussian_charfun(1.0, 1.3, p);
  double k = 0.7;
  Cplx pred = f.eval_scalar({Cplx(k), Cplx(k * k)});
  Cplx expect = std::exp(Cplx(0.0, 1.3 * k) - Cplx(0.5 * k * k));
  CHECK(std::abs(pred - expect) < 1e-14);
  Cplx oracle = fourier_oracle_n1(2, 1.0, 1.3, k);
  CHECK(std::abs(pred - oracle) < 1e-8);
}

TEST_CASE("Phi_0(0) = 1 for all representations") {
  auto p = make_dyson(2, 3, 1);
  auto g = gaussian_charfun(2.0, 0.5, p);
  CHECK(std::abs(g.eval_scalar({Cplx(0.0), Cplx(0.0)}) - Cplx(1.0)) < 1e-15);
  auto m = mixture_charfun({{0.5, 1.0, 0.0}, {0.5, 4.0, 0.0}}, p);
  CHECK(std::abs(m.eval_scalar({Cplx(0.0), Cplx(0.0)}) - Cplx(1.0)) < 1e-15);
}

TEST_CASE("mixture examples") {
  auto p = make_dyson(2, 1, 1);
  SUBCASE("single component equals gaussian_charfun") {
    auto m = mixture_charfun({{1.0, 2.0, 0.3}}, p);
    auto g = gaussian_charfun(2.0, 0.3, p);
    for (double k : {0.0, 0.5, 1.7}) {
      CHECK(std::abs(m.eval_scalar({Cplx(k), Cplx(k * k)}) -
                     g.eval_scalar({Cplx(k), Cplx(k * k)})) < 1e-15);
    }
    CHECK(m.factorizing());
  }
  SUBCASE("two components, N=1: (1/2)e^{-k^2/2} + (1/2)e^{-2k^2}") {
    auto m = mixture_charfun({{0.5, 1.0, 0.0}, {0.5, 4.0, 0.0}}, p);
    double k = 0.8;
    Cplx expect = 0.5 * std::exp(-0.5 * k * k) + 0.5 * std::exp(-2.0 * k * k);
    CHECK(std::abs(m.eval_scalar({Cplx(k), Cplx(k * k)}) - expect) < 1e-14);
    CHECK(!m.factorizing());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(mixture_charfun({}, p), std::invalid_argument);
    CHECK_THROWS_AS(mixture_charfun({{-0.2, 1.0, 0.0}, {1.2, 1.0, 0.0}}, p),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_charfun(-1.0, 0.0, p), std::invalid_argument);
  }
}

TEST_CASE("jet evaluation: hand-derived second-order coefficient") {
  // Phi_0 = exp(-p_2/2), beta=2, k=1, r1 = 0: p_2 = -(e^{i psi} r2)^2, so the
  // jet is exp(e^{2 i psi} r2^2 / 2) and the r2^2 coefficient is e^{2 i psi}/2.
  auto p = make_dyson(2, 1, 1);
  auto f = gaussian_charfun(1.0, 0.0, p);
  for (double psi : {1.5707963267948966, 1.0471975511965976}) {
    DiagSuperPoint pt;
    pt.r1 = {0.0};
    pt.r2 = {0.0};
    pt.psi = psi;
    auto j = jet_evaluate(f, p, pt, {4});
    Cplx expect = 0.5 * std::exp(Cplx(0.0, 2.0 * psi));
    CHECK(std::abs(j.at(2) - expect) < 1e-14);
    CHECK(std::abs(j.value() - Cplx(1.0)) < 1e-14);
    CHECK(std::abs(j.at(1)) < 1e-14);
  }
}

TEST_CASE("jet evaluation vs central finite differences to order 4") {
  auto p = make_dyson(1, 2, 1);  // k1=2 bosonic, k2=1 fermionic
  auto f = gaussian_charfun(1.5, 0.4, p);
  DiagSuperPoint pt;
  pt.r1 = {0.7, -0.3};
  pt.r2 = {0.0};
  pt.psi = 1.2;
  auto j = jet_evaluate(f, p, pt, {6});
  auto scalar_eval = [&](double t) {
    Cplx wick = std::exp(Cplx(0.0, pt.psi));
    std::vector<Cplx> ps;
    for (int m = 1; m <= f.max_power; ++m) {
      Cplx acc(0.0);
      for (double b : pt.r1) acc += std::pow(Cplx(b), m);
      acc -= 2.0 * std::pow(wick * t, m);
      ps.push_back(acc);
    }
    return f.eval_scalar(ps);
  };
  // Richardson-extrapolated central differences
  auto diff_once = [](const std::function<Cplx(double)>& g, double x, double h) {
    return (g(x + h / 2) - g(x - h / 2)) / Cplx(h);
  };
  std::function<Cplx(std::function<Cplx(double)>, int, double)> dm =
      [&](std::function<Cplx(double)> g, int m, double h) -> Cplx {
    if (m == 0) return g(0.0);
    std::function<Cplx(double)> gg = [&, g](double x) { return diff_once(g, x, h); };
    return dm(gg, m - 1, h);
  };
  for (int m = 0; m <= 4; ++m) {
    Cplx d1 = dm(scalar_eval, m, 0.08), d2 = dm(scalar_eval, m, 0.04), d4 = dm(scalar_eval, m, 0.02);
    Cplx r1 = (Cplx(4.0) * d2 - d1) / Cplx(3.0), r2 = (Cplx(4.0) * d4 - d2) / Cplx(3.0);
    Cplx fd = (Cplx(16.0) * r2 - r1) / Cplx(15.0);
    Cplx jv = j.deriv_at_center(0, m);
    CHECK(std::abs(fd - jv) <= 1e-6 * std::max(1.0, std::abs(jv)));
  }
}

TEST_CASE("MC characteristic function estimates") {
  SUBCASE("K = 0 gives 1 +- 0") {
    auto p = make_dyson(2, 2, 1);
    std::vector<Cplx> K(4, Cplx(0.0));
    auto est = mc_charfun_estimate(EnsembleSpec::gaussian(1.0), p, K, 200, 5);
    CHECK(std::abs(est.mean - Cplx(1.0)) < 1e-15);
    CHECK(est.stderr_abs < 1e-15);
  }
  SUBCASE("beta=2, N=2 Gaussian matches exp(-tr K^2 / 2) within 3 stderr") {
    auto p = make_dyson(2, 2, 1);
    std::vector<Cplx> K = {Cplx(1.0), Cplx(0.0), Cplx(0.0), Cplx(0.0)};
    auto est = mc_charfun_estimate(EnsembleSpec::gaussian(1.0), p, K, 20000, 11);
    Cplx expect = std::exp(Cplx(-0.5));
    CHECK(std::abs(est.mean - expect) < 3.0 * est.stderr_abs + 1e-12);
  }
  SUBCASE("representation-restriction consistency, all beta, random K") {
    std::mt19937_64 krng(17);
    for (int beta : {1, 2, 4}) {
      auto p = make_dyson(beta, 2, 1);
      int dim = p.gamma2 * p.N;
      EnsembleSpec uni = EnsembleSpec::gaussian(1.0);
      EnsembleSpec tgt = EnsembleSpec::mixture({{0.3, 0.5, -0.4}, {0.7, 1.5, 0.6}});
      auto f = make_charfun(tgt, p);
      for (int rep = 0; rep < 6; ++rep) {
        auto K = sample_matrix(uni, p, krng);  // random matrix in the class
        auto ps = matpow_trace(K, dim, 2);
        Cplx pred = f.eval_scalar(ps);
        auto est = mc_charfun_estimate(tgt, p, K, 20000, 1000 + rep);
        CHECK(std::abs(est.mean - pred) < 3.5 * est.stderr_abs + 1e-12);
      }
    }
  }
  SUBCASE("hermiticity: Phi(-K) = conj Phi(K)") {
    auto p = make_dyson(1, 3, 1);
    std::mt19937_64 krng(23);
    auto K = sample_matrix(EnsembleSpec::gaussian(1.0), p, krng);
    std::vector<Cplx> Kneg(K);
    for (auto& v : Kneg) v = -v;
    EnsembleSpec e = EnsembleSpec::gaussian(1.2, 0.5);
    auto a = mc_charfun_estimate(e, p, K, 20000, 31);
    auto b = mc_charfun_estimate(e, p, Kneg, 20000, 31);
    CHECK(std::abs(a.mean - std::conj(b.mean)) < 1e-12);  // same seed, same draws
  }
  SUBCASE("sample count < 100 refused") {
    auto p = make_dyson(2, 1, 1);
    std::vector<Cplx> K(1, Cplx(0.0));
    CHECK_THROWS_AS(mc_charfun_estimate(EnsembleSpec::gaussian(1.0), p, K, 50, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("Wick admissibility gate") {
  auto p = make_dyson(2, 2, 1);
  auto f = gaussian_charfun(1.0, 0.0, p);
  CHECK(f.admissible(M_PI / 2));
  CHECK(f.admissible(M_PI / 3));
  CHECK(!f.admissible(M_PI / 5));
}

TEST_CASE("ensemble JSON round trip") {
  auto g = parse_ensemble_json(R"({"type":"gaussian","variance":2.0,"shift":0.5})");
  CHECK(g.is_single_gaussian());
  CHECK(g.components[0].variance == 2.0);
  auto s = ensemble_to_json(g);
  auto g2 = parse_ensemble_json(s);
  CHECK(g2.components[0].shift == 0.5);

  auto m = parse_ensemble_json(
      R"({"type":"mixture","components":[{"w":0.5,"variance":1.0,"shift":0.0},{"w":0.5,"variance":4.0,"shift":0.0}]})");
  CHECK(m.components.size() == 2);
  auto m2 = parse_ensemble_json(ensemble_to_json(m));
  CHECK(m2.components[1].variance == 4.0);
  CHECK_THROWS(parse_ensemble_json(R"({"type":"quartic"})"));
}
