#include "rmt/charfun.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rmt/ensembles.hpp"

namespace rmt {

Cplx CharFunRepr::eval_scalar(const std::vector<Cplx>& p) const {
  std::vector<Jet> jets;
  jets.reserve(p.size());
  for (auto& v : p) jets.push_back(Jet::constant(1, {0, 0, 0}, v));
  return eval(jets).value();
}

std::vector<Jet> power_sum_jets(const DysonParams& p, const std::vector<Jet>& bosonic,
                                const std::vector<Jet>& fermionic, double psi, int max_power) {
  if (bosonic.empty() && fermionic.empty())
    throw std::invalid_argument("power_sum_jets: no eigenvalues");
  const Jet* shape = bosonic.empty() ? &fermionic[0] : &bosonic[0];
  std::array<int, 3> ord{shape->order(0), shape->order(1), shape->order(2)};
  int nv = shape->nvars();
  Cplx wick = std::exp(Cplx(0.0, psi));
  std::vector<Jet> ps;
  ps.reserve(max_power);
  std::vector<Jet> bpow(bosonic.size(), Jet::constant(nv, ord, Cplx(1.0)));
  std::vector<Jet> fpow(fermionic.size(), Jet::constant(nv, ord, Cplx(1.0)));
  for (int m = 1; m <= max_power; ++m) {
    Jet acc = Jet::constant(nv, ord, Cplx(0.0));
    for (size_t j = 0; j < bosonic.size(); ++j) {
      bpow[j] = bpow[j] * bosonic[j];
      acc += bpow[j] * Cplx(static_cast<double>(p.gamma2));
    }
    for (size_t j = 0; j < fermionic.size(); ++j) {
      fpow[j] = fpow[j] * (fermionic[j] * wick);
      acc -= fpow[j] * Cplx(static_cast<double>(p.gamma1));
    }
    ps.push_back(acc);
  }
  return ps;
}

namespace {

bool gaussian_wick_ok(double psi) {
  // Phi_0 contains exp(+a e^{2 i psi} r2^2) on the fermionic side; the
  // superintegral converges when Re(e^{2 i psi}) <= 0.
  return std::cos(2.0 * psi) <= 1e-12;
}

}  // namespace

CharFunRepr gaussian_charfun(double variance, double shift, const DysonParams& p) {
  if (variance <= 0) throw std::invalid_argument("gaussian_charfun: variance must be positive");
  (void)p;
  CharFunRepr f;
  f.max_power = 2;
  f.label = "gaussian(v2=" + std::to_string(variance) + ",c=" + std::to_string(shift) + ")";
  double a = 0.5 * variance;
  Cplx ic(0.0, shift);
  f.eval = [a, ic](const std::vector<Jet>& ps) {
    return (ps[0] * ic - ps[1] * Cplx(a)).exp();
  };
  f.hat = [a, shift](Cplx z) { return std::exp(Cplx(0.0, shift) * z - Cplx(a) * z * z); };
  f.admissible = gaussian_wick_ok;
  return f;
}

CharFunRepr mixture_charfun(const std::vector<GaussianComponent>& comps, const DysonParams& p) {
  if (comps.empty()) throw std::invalid_argument("mixture_charfun: empty component list");
  double wsum = 0.0;
  for (auto& c : comps) {
    if (c.weight < 0) throw std::invalid_argument("mixture_charfun: negative weight");
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("mixture_charfun: weights must sum to 1");
  if (comps.size() == 1) return gaussian_charfun(comps[0].variance, comps[0].shift, p);
  CharFunRepr f;
  f.max_power = 2;
  f.label = "mixture(" + std::to_string(comps.size()) + ")";
  auto local = comps;
  f.eval = [local](const std::vector<Jet>& ps) {
    Jet acc = (ps[0] * Cplx(0.0, local[0].shift) - ps[1] * Cplx(0.5 * local[0].variance)).exp() *
              Cplx(local[0].weight);
    for (size_t i = 1; i < local.size(); ++i)
      acc += (ps[0] * Cplx(0.0, local[i].shift) - ps[1] * Cplx(0.5 * local[i].variance)).exp() *
             Cplx(local[i].weight);
    return acc;
  };
  f.admissible = gaussian_wick_ok;
  return f;
}

CharFunRepr make_charfun(const EnsembleSpec& e, const DysonParams& p) {
  if (e.is_single_gaussian())
    return gaussian_charfun(e.components[0].variance, e.components[0].shift, p);
  return mixture_charfun(e.components, p);
}

Jet jet_evaluate(const CharFunRepr& f, const DysonParams& p, const DiagSuperPoint& pt,
                 const std::vector<int>& orders) {
  if (static_cast<int>(pt.r1.size()) != p.k1 || static_cast<int>(pt.r2.size()) != p.k2)
    throw std::invalid_argument("jet_evaluate: point dimensions disagree with DysonParams");
  if (orders.size() != pt.r2.size())
    throw std::invalid_argument("jet_evaluate: one truncation order per fermionic variable");
  int nv = static_cast<int>(pt.r2.size());
  if (nv < 1 || nv > 3) throw std::invalid_argument("jet_evaluate: 1..3 fermionic variables");
  std::array<int, 3> shape{0, 0, 0};
  for (int v = 0; v < nv; ++v) shape[v] = orders[v];
  std::vector<Jet> bos, fer;
  for (double b : pt.r1) bos.push_back(Jet::constant(nv, shape, Cplx(b)));
  for (int v = 0; v < nv; ++v) fer.push_back(Jet::variable(nv, shape, v, Cplx(pt.r2[v])));
  auto ps = power_sum_jets(p, bos, fer, pt.psi, f.max_power);
  return f.eval(ps);
}

McEstimate mc_charfun_estimate(const EnsembleSpec& e, const DysonParams& p,
                               const std::vector<Cplx>& K, int samples, std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("mc_charfun_estimate: need at least 100 samples");
  int dim = p.gamma2 * p.N;
  if (K.size() != static_cast<size_t>(dim) * dim)
    throw std::invalid_argument("mc_charfun_estimate: K has the wrong dimension");
  std::mt19937_64 rng(splitmix64(seed));
  Cplx sum(0.0);
  double sum2 = 0.0;
  std::vector<Cplx> vals(samples);
  for (int s = 0; s < samples; ++s) {
    auto H = sample_matrix(e, p, rng);
    Cplx tr(0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        tr += H[static_cast<size_t>(i) * dim + j] * K[static_cast<size_t>(j) * dim + i];
    Cplx v = std::exp(Cplx(0.0, 1.0) * tr);
    vals[s] = v;
    sum += v;
  }
  Cplx mean = sum / Cplx(static_cast<double>(samples));
  for (auto& v : vals) sum2 += std::norm(v - mean);
  McEstimate out;
  out.mean = mean;
  out.stderr_abs = std::sqrt(sum2 / (static_cast<double>(samples) - 1.0) / samples);
  return out;
}

// --- EnsembleSpec JSON ----------------------------------------------------

EnsembleSpec parse_ensemble_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::string type = j.at("type").get<std::string>();
  if (type == "gaussian" || type == "shifted_gaussian") {
    double v2 = j.at("variance").get<double>();
    double c = j.value("shift", 0.0);
    return EnsembleSpec::gaussian(v2, c);
  }
  if (type == "mixture" || type == "gaussian_mixture") {
    std::vector<GaussianComponent> comps;
    for (auto& cj : j.at("components")) {
      GaussianComponent c;
      c.weight = cj.at("w").get<double>();
      c.variance = cj.at("variance").get<double>();
      c.shift = cj.value("shift", 0.0);
      comps.push_back(c);
    }
    return EnsembleSpec::mixture(std::move(comps));
  }
  throw std::invalid_argument("ensemble json: unknown type '" + type + "'");
}

std::string ensemble_to_json(const EnsembleSpec& e) {
  nlohmann::json j;
  if (e.kind == EnsembleSpec::Kind::gaussian && e.is_single_gaussian()) {
    j["type"] = "gaussian";
    j["variance"] = e.components[0].variance;
    j["shift"] = e.components[0].shift;
  } else {
    j["type"] = "mixture";
    auto arr = nlohmann::json::array();
    for (auto& c : e.components)
      arr.push_back({{"w", c.weight}, {"variance", c.variance}, {"shift", c.shift}});
    j["components"] = arr;
  }
  return j.dump();
}

}  // namespace rmt
