#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "skualloc/kernel.hpp"

namespace skualloc {

struct PenaltyWeights {
  double margin = 0.02;        // reward per unit-margin * demand
  double similarity = 1.0;     // pairwise diversity penalty
  double risk = 0.02;          // unified risk * demand
  double inventory = 50.0;
  double defect = 50.0;
  double capacity = 5000.0;    // squared slack-encoded capacity penalty
  double cardinality = 1000.0;
  double sku_limit = 5000.0;   // linear fine-tune, enters as sku_limit/K
  double top5 = -1.0;          // negative = derive as 1e9 * max |U_i D_i|
};

struct ProblemInstance {
  int n_skus = 0;
  int periods = 8;
  int slack_bits = 13;
  double capacity = 28392.0;  // units per period
  int sku_target = 50;        // K
  PenaltyWeights weights;
  std::vector<double> unit_margin;     // U_i
  std::vector<double> demand;          // D_i
  std::vector<double> unified_risk;    // r_i in [0,1]
  std::vector<double> inventory_risk;  // may be negative
  std::vector<double> defect_risk;
  SimilarityMatrix similarity;
  std::vector<int> top5;  // indices, |top5| = min(5, n_skus)

  int n_vars() const { return periods * (n_skus + slack_bits); }
  int var_decision(int t, int i) const {
    return t * (n_skus + slack_bits) + i;
  }
  int var_slack(int t, int b) const {
    return t * (n_skus + slack_bits) + n_skus + b;
  }
  // Effective top-5 weight: explicit value, or 1e9 * max |U_i D_i|.
  double top5_weight() const;
};

// Top-5 SKUs by U_i * D_i, ties broken toward the lowest index.
std::vector<int> compute_top5(const std::vector<double>& unit_margin,
                              const std::vector<double>& demand);

// Validates dimensions and fills top5 if empty.
void finalize_instance(ProblemInstance& inst);

struct QuboModel {
  int n_vars = 0;
  // key = (u << 32) | v with u <= v; entries below 1e-12 magnitude dropped
  std::unordered_map<std::uint64_t, double> coefficients;
  double offset = 0;  // lambda_c C^2 T + lambda_k K^2 T

  static std::uint64_t key(int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  }
  void add(int u, int v, double c);
  double get(int u, int v) const;
};

// Assembles the per-period QUBO: margin, similarity, risk, inventory, defect,
// slack-encoded capacity, cardinality and top-5 terms. Periods are not
// coupled. The slack sum enters the capacity residual with a plus sign, so
// slack encodes unused capacity and the penalty enforces demand <= C.
QuboModel build_qubo(const ProblemInstance& inst);

double energy(const QuboModel& model, const std::vector<std::uint8_t>& bits);

struct AllocationPlan {
  std::vector<std::vector<int>> selected;  // per period, ascending indices
  std::vector<long long> slack;            // per period decoded slack integer
};

AllocationPlan decode(const std::vector<std::uint8_t>& bits,
                      const ProblemInstance& inst);

// Plan from a slack-free T*N decision vector (metaheuristic output).
AllocationPlan decode_decisions(const std::vector<std::uint8_t>& bits,
                                const ProblemInstance& inst);

// Deterministic local refinement of a sampled state. Per period the slack
// bits are re-encoded to the closest representable residual, then single
// decision toggles (with the slack re-encoded each time) are accepted while
// they lower the objective. This crosses the binary-carry barriers (for
// example slack 1024 -> 998) that single-bit-flip samplers cannot, and never
// increases the energy of the corresponding QUBO.
std::vector<std::uint8_t> refine_solution(const ProblemInstance& inst,
                                          std::vector<std::uint8_t> bits);

// Text format: `#vars <T> <N> <B>`, `#offset <value>`, then `u v coeff` lines
// with u <= v in ascending key order, 17 significant digits.
// fold_offset_into_origin additionally adds the offset onto entry (0,0) for
// parity with dictionaries that store the constant there.
void write_qubo(const QuboModel& model, const ProblemInstance& inst,
                std::ostream& out, bool fold_offset_into_origin = false);
void write_qubo(const QuboModel& model, const ProblemInstance& inst,
                const std::string& path, bool fold_offset_into_origin = false);

struct QuboFile {
  QuboModel model;
  int periods = 0;
  int n_skus = 0;
  int slack_bits = 0;
};
QuboFile read_qubo(std::istream& in);
QuboFile read_qubo(const std::string& path);

}  // namespace skualloc
