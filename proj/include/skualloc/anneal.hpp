#pragma once

#include <cstdint>
#include <vector>

#include "skualloc/qubo.hpp"

namespace skualloc {

struct AnnealConfig {
  int num_reads = 500;
  // Full Metropolis sweeps per read (n_vars flip attempts each); 0 selects
  // the per-solver default (SA 400, SQA 100).
  int sweeps_per_read = 0;
  double beta_start = 0.1;
  double beta_end = 50.0;
  int sqa_trotter_slices = 8;   // M
  double sqa_beta = 10.0;       // fixed inverse temperature for SQA
  double sqa_gamma_start = 3.0;
  double sqa_gamma_end = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct Sample {
  std::vector<std::uint8_t> bits;
  double energy = 0;
  int read_index = 0;
};

struct SampleSet {
  std::vector<Sample> samples;  // ordered by read index
  int best_index = 0;

  const Sample& best() const { return samples[best_index]; }
};

// Adjacency view of a QuboModel for O(degree) single-flip energy deltas.
struct QuboGraph {
  int n_vars = 0;
  double offset = 0;
  std::vector<double> diag;
  std::vector<int> nbr_offsets;  // CSR, size n_vars+1
  std::vector<int> nbr_index;
  std::vector<double> nbr_weight;

  explicit QuboGraph(const QuboModel& model);
  double energy_of(const std::vector<std::uint8_t>& bits) const;
};

// Independent-restart single-bit-flip Metropolis annealing over a geometric
// beta schedule. Each read owns a private stream derived from (seed, read),
// so results are identical whether reads run serially or in parallel. The
// reported sample is the best state seen during the read, with its energy
// recomputed exactly from the bits.
SampleSet solve_sa(const QuboModel& model, const AnnealConfig& config);

// Path-integral Monte Carlo with M Trotter replicas of the classical energy,
// inter-replica coupling J_perp(Gamma) = -(1/(2 beta)) ln tanh(beta Gamma / M)
// and a geometric Gamma schedule. Each read returns the lowest classical
// energy state observed in any replica during the anneal, recomputed exactly
// from the bits.
SampleSet solve_sqa(const QuboModel& model, const AnnealConfig& config);

}  // namespace skualloc
