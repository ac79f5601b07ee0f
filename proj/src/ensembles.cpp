#include "rmt/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace rmt {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x51ab5e3cull)));
}

int pick_component(const EnsembleSpec& e, std::mt19937_64& rng) {
  if (e.components.size() == 1) return 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng), acc = 0.0;
  for (size_t i = 0; i < e.components.size(); ++i) {
    acc += e.components[i].weight;
    if (x <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(e.components.size()) - 1;
}

}  // namespace

std::vector<Cplx> sample_matrix(const EnsembleSpec& e, const DysonParams& p, std::mt19937_64& rng) {
  int comp = pick_component(e, rng);
  double v = std::sqrt(e.components[comp].variance);
  double c = e.components[comp].shift;
  std::normal_distribution<double> n01(0.0, 1.0);
  int N = p.N;
  int dim = p.gamma2 * N;
  std::vector<Cplx> H(static_cast<size_t>(dim) * dim, Cplx(0.0));
  auto at = [&](int i, int j) -> Cplx& { return H[static_cast<size_t>(i) * dim + j]; };
  if (p.beta == 1) {
    for (int i = 0; i < N; ++i) {
      at(i, i) = Cplx(v * n01(rng) + c);
      for (int j = i + 1; j < N; ++j) {
        double x = v / std::sqrt(2.0) * n01(rng);
        at(i, j) = at(j, i) = Cplx(x);
      }
    }
  } else if (p.beta == 2) {
    for (int i = 0; i < N; ++i) {
      at(i, i) = Cplx(v * n01(rng) + c);
      for (int j = i + 1; j < N; ++j) {
        Cplx z(v / std::sqrt(2.0) * n01(rng), v / std::sqrt(2.0) * n01(rng));
        at(i, j) = z;
        at(j, i) = std::conj(z);
      }
    }
  } else {
    // beta = 4, complex 2N x 2N representation H = [[X, Y], [-Y*, X*]],
    // X hermitian, Y antisymmetric; entry variances fixed by
    // P ~ exp(-tr H^2/(2 v^2)) over the independent parameters.
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(N, N), Y = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
      X(i, i) = v / std::sqrt(2.0) * n01(rng) + c;
      for (int j = i + 1; j < N; ++j) {
        X(i, j) = Cplx(v / 2.0 * n01(rng), v / 2.0 * n01(rng));
        X(j, i) = std::conj(X(i, j));
        Y(i, j) = Cplx(v / 2.0 * n01(rng), v / 2.0 * n01(rng));
        Y(j, i) = -Y(i, j);
      }
    }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        at(i, j) = X(i, j);
        at(i, N + j) = Y(i, j);
        at(N + i, j) = -std::conj(Y(i, j));
        at(N + i, N + j) = std::conj(X(i, j));
      }
  }
  return H;
}

namespace {

void eigenvalues_of(const std::vector<Cplx>& H, int dim, std::vector<double>& out) {
  Eigen::MatrixXcd M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = H[static_cast<size_t>(i) * dim + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
  out.resize(dim);
  for (int i = 0; i < dim; ++i) out[i] = es.eigenvalues()(i);
}

}  // namespace

SampleBatch sample(const EnsembleSpec& e, const DysonParams& p, int n_samples,
                   std::uint64_t seed, int workers) {
  if (n_samples <= 0) throw std::invalid_argument("sample: n_samples must be positive");
  workers = std::max(1, workers);
  SampleBatch b;
  b.beta = p.beta;
  b.N = p.N;
  b.seed = seed;
  b.levels_per_sample = p.N;  // Kramers doublets deduplicated for beta = 4
  b.eigenvalues.assign(static_cast<size_t>(n_samples) * p.N, 0.0);
  b.label = "beta" + std::to_string(p.beta) + "_N" + std::to_string(p.N);
  int dim = p.gamma2 * p.N;

  auto work = [&](int w) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(w));
    std::vector<double> ev;
    for (int s = w; s < n_samples; s += workers) {
      auto H = sample_matrix(e, p, rng);
      eigenvalues_of(H, dim, ev);
      if (p.beta == 4) {
        // doubly degenerate spectrum: store each doublet once
        for (int l = 0; l < p.N; ++l) {
          double a = ev[2 * l], bb = ev[2 * l + 1];
          if (std::abs(a - bb) > 1e-8 * std::max(1.0, std::abs(a)))
            throw std::runtime_error("sample: Kramers degeneracy violated");
          b.eigenvalues[static_cast<size_t>(s) * p.N + l] = 0.5 * (a + bb);
        }
      } else {
        for (int l = 0; l < p.N; ++l) b.eigenvalues[static_cast<size_t>(s) * p.N + l] = ev[l];
      }
    }
  };
  std::vector<std::thread> ts;
  for (int w = 0; w < workers; ++w) ts.emplace_back(work, w);
  for (auto& t : ts) t.join();
  return b;
}

void mc_density_fill(const SampleBatch& batch, int bins, double lo, double hi,
                     std::vector<double>& centers, std::vector<double>& density,
                     std::vector<double>& stderr_out) {
  if (batch.eigenvalues.empty()) throw std::invalid_argument("mc_density: empty batch");
  if (bins < 2 || hi <= lo) throw std::invalid_argument("mc_density: bad binning");
  double w = (hi - lo) / bins;
  int ns = batch.num_samples();
  // per-sample counts for the variance estimate
  std::vector<double> counts(bins, 0.0), counts2(bins, 0.0);
  std::vector<double> local(bins);
  for (int s = 0; s < ns; ++s) {
    std::fill(local.begin(), local.end(), 0.0);
    for (int l = 0; l < batch.levels_per_sample; ++l) {
      double x = batch.eigenvalues[static_cast<size_t>(s) * batch.levels_per_sample + l];
      int bin = static_cast<int>(std::floor((x - lo) / w));
      if (bin >= 0 && bin < bins) local[bin] += 1.0;
    }
    for (int bb = 0; bb < bins; ++bb) {
      counts[bb] += local[bb];
      counts2[bb] += local[bb] * local[bb];
    }
  }
  centers.resize(bins);
  density.resize(bins);
  stderr_out.resize(bins);
  // one stored level per distinct eigenvalue: R_1 mass is N for every beta
  for (int bb = 0; bb < bins; ++bb) {
    centers[bb] = lo + (bb + 0.5) * w;
    double mean = counts[bb] / ns;
    double var = std::max(0.0, counts2[bb] / ns - mean * mean);
    density[bb] = mean / w;
    stderr_out[bb] = std::sqrt(var / ns) / w;
  }
}

McResolvent mc_resolvent(const SampleBatch& batch, double x, double eps, int L) {
  if (eps <= 0) throw std::invalid_argument("mc_resolvent: eps must be positive");
  if (batch.eigenvalues.empty()) throw std::invalid_argument("mc_resolvent: empty batch");
  int ns = batch.num_samples();
  double d = batch.beta == 4 ? 0.5 : 1.0;
  int mult = batch.beta == 4 ? 2 : 1;  // each stored level counts gamma2 times
  Cplx z(x, L * eps);
  Cplx sum(0.0);
  double sum2 = 0.0;
  std::vector<Cplx> vals(ns);
  for (int s = 0; s < ns; ++s) {
    Cplx acc(0.0);
    for (int l = 0; l < batch.levels_per_sample; ++l)
      acc += Cplx(1.0) / (z - batch.eigenvalues[static_cast<size_t>(s) * batch.levels_per_sample + l]);
    vals[s] = d * static_cast<double>(mult) * acc;
    sum += vals[s];
  }
  Cplx mean = sum / Cplx(static_cast<double>(ns));
  for (auto& v : vals) sum2 += std::norm(v - mean);
  return {mean, std::sqrt(sum2 / (ns - 1.0) / ns)};
}

namespace {

// orthonormal Hermite functions h_j(t) = (2^j j! sqrt(pi))^{-1/2} H_j(t) e^{-t^2/2}
void hermite_functions(int N, double t, std::vector<double>& h) {
  h.resize(N);
  double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
  if (N > 0) h[0] = h0;
  if (N > 1) h[1] = std::sqrt(2.0) * t * h0;
  for (int j = 2; j < N; ++j)
    h[j] = std::sqrt(2.0 / j) * t * h[j - 1] - std::sqrt((j - 1.0) / j) * h[j - 2];
}

}  // namespace

double hermite_kernel(int N, double v2, double shift, double x, double y) {
  double s = std::sqrt(2.0 * v2);
  std::vector<double> hx, hy;
  hermite_functions(N, (x - shift) / s, hx);
  hermite_functions(N, (y - shift) / s, hy);
  double acc = 0.0;
  for (int j = 0; j < N; ++j) acc += hx[j] * hy[j];
  return acc / s;
}

std::vector<double> hermite_kernel_density(int N, double v2, double shift,
                                           const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out[i] = hermite_kernel(N, v2, shift, grid[i], grid[i]);
  return out;
}

McR2 mc_r2(const SampleBatch& batch, double x1, double x2, double binwidth) {
  if (batch.eigenvalues.empty()) throw std::invalid_argument("mc_r2: empty batch");
  int ns = batch.num_samples();
  double d = batch.beta == 4 ? 0.5 : 1.0;
  int mult = batch.beta == 4 ? 2 : 1;
  double pref = d * mult;  // one trace-count weight per stored level
  std::vector<double> vals(ns);
  double sum = 0.0;
  for (int s = 0; s < ns; ++s) {
    double c1 = 0.0, c2 = 0.0;
    for (int l = 0; l < batch.levels_per_sample; ++l) {
      double x = batch.eigenvalues[static_cast<size_t>(s) * batch.levels_per_sample + l];
      if (std::abs(x - x1) <= 0.5 * binwidth) c1 += 1.0;
      if (std::abs(x - x2) <= 0.5 * binwidth) c2 += 1.0;
    }
    vals[s] = pref * pref * c1 * c2 / (binwidth * binwidth);
    sum += vals[s];
  }
  double mean = sum / ns;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / (ns - 1.0) / ns)};
}

}  // namespace rmt
