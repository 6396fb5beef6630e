#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "skualloc/anneal.hpp"
#include "skualloc/metaheuristic.hpp"
#include "skualloc/qubo.hpp"

namespace skualloc {

// Fully resolved run configuration. Loadable from a flat `key = value` file
// (# comments); command-line flags override file values.
struct RunConfig {
  // instance dimensions and weights
  int periods = 8;
  int slack_bits = 13;
  double capacity = 28392.0;
  int sku_target = 50;
  PenaltyWeights qubo_weights;
  ClassicalWeights classical_weights;

  // kernel
  std::string similarity_method = "quantum";  // quantum | cosine
  double angle_scale = 1.0;
  bool unit_cost_ratio = true;  // kernel input 0: margin/cost vs raw margin

  // solver
  std::string solver = "sa";  // sa | sqa | pso | ga | aco
  int reads = 500;
  int sweeps = 0;
  int threads = 0;
  double beta_start = 0.1;
  double beta_end = 50.0;
  int trotter_slices = 8;
  double sqa_beta = 10.0;
  double gamma_start = 3.0;
  double gamma_end = 0.05;
  int pop_size = 50;
  int iterations = 100;

  // data generation
  int skus = 500;       // synthesis target
  int base_count = 100;
  std::string base_catalog;  // optional path; empty = built-in base

  // audit / ablation
  double tau = 0.0;
  int repeats = 5;
  std::string variants;  // comma-separated, empty = all

  // io
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool fold_offset = false;

  AnnealConfig anneal_config() const;
  MetaheuristicConfig metaheuristic_config() const;
};

// Applies one config key; throws ArgumentError on unknown keys or bad values.
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

void load_config_file(RunConfig& cfg, const std::string& path);

// Resolved key -> value snapshot, used as the config echo in artifacts.
std::map<std::string, std::string> config_echo(const RunConfig& cfg);

}  // namespace skualloc
