#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rmt/charfun.hpp"
#include "rmt/dyson.hpp"
#include "rmt/ensemble_spec.hpp"

namespace rmt {

/// Deterministic per-stream RNG: splitmix64-scrambled (seed, stream) pair.
std::uint64_t splitmix64(std::uint64_t x);

/// Eigenvalue batch.  For beta = 4 each Kramers doublet is stored once
/// (levels_per_sample = N, not 2N); deg_inv in DysonParams carries the 1/2.
struct SampleBatch {
  int beta = 2;
  int N = 1;
  std::uint64_t seed = 0;
  int levels_per_sample = 1;
  std::vector<double> eigenvalues;  // samples x levels_per_sample, row-major
  std::string label;

  int num_samples() const {
    return levels_per_sample ? static_cast<int>(eigenvalues.size()) / levels_per_sample : 0;
  }
};

/// Draw one matrix H from the ensemble in the complex gamma2*N representation
/// (row-major, size (gamma2 N)^2).  Exposed for the characteristic-function
/// Monte Carlo.
std::vector<Cplx> sample_matrix(const EnsembleSpec& e, const DysonParams& p, std::mt19937_64& rng);

/// i.i.d. eigenvalue draws, reproducible for fixed (seed, workers).
SampleBatch sample(const EnsembleSpec& e, const DysonParams& p, int n_samples,
                   std::uint64_t seed, int workers = 2);

struct DensityCurve;  // correlators.hpp

/// Histogram estimate of R_1 scaled so the trapezoid mass equals N.
void mc_density_fill(const SampleBatch& batch, int bins, double lo, double hi,
                     std::vector<double>& centers, std::vector<double>& density,
                     std::vector<double>& stderr_out);

struct McResolvent {
  Cplx mean;
  double stderr_abs;
};

/// MC average of deg_inv * sum_j (x + L i eps - lambda_j)^{-1} (all gamma2*N
/// levels counted, i.e. doublets twice for beta = 4).
McResolvent mc_resolvent(const SampleBatch& batch, double x, double eps, int L);

/// Exact beta = 2 Gaussian one-point function: R_1(x) = sum_{j<N} phi_j(x)^2
/// with harmonic oscillator functions scaled to the v^2 weight, shifted by c.
std::vector<double> hermite_kernel_density(int N, double v2, double shift,
                                           const std::vector<double>& grid);

/// Hermite kernel K_N(x, y) in the same scaling (diagonal = density).
double hermite_kernel(int N, double v2, double shift, double x, double y);

struct McR2 {
  double value;
  double stderr_abs;
};

/// R_2 estimator from the product of two one-point counts in bins around
/// x1 and x2 (self-terms included when the bins coincide).
McR2 mc_r2(const SampleBatch& batch, double x1, double x2, double binwidth);

}  // namespace rmt
