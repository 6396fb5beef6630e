#pragma once

#include <cstdint>
#include <vector>

#include "skualloc/qubo.hpp"

namespace skualloc {

// Weights for the penalized classical objective. Defaults follow the
// metaheuristic parameterization (similarity 3.0, capacity 5000 scaled by
// 1e7); the QUBO path has its own PenaltyWeights.
struct ClassicalWeights {
  double similarity = 3.0;
  double margin = 0.02;
  double risk = 0.02;
  double inventory = 50.0;
  double defect = 50.0;
  double cardinality = 1000.0;   // lambda_k, ((sum x)^2 - 2K sum x) form
  double sku_excess = 5000.0;    // squared excess over K
  double capacity = 5000.0;      // 6th-order overload penalty base weight
  double capacity_scale = 1e7;   // multiplier on the capacity term
  double top5 = -1.0;            // negative = derive as 1e9 * max |U_i D_i|
};

struct MetaheuristicConfig {
  int pop_size = 50;
  int iterations = 100;
  struct {
    double omega = 0.7;
    double c1 = 1.5;
    double c2 = 1.5;
  } pso;
  struct {
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
  } ga;
  struct {
    double alpha = 1.0;
    double beta = 2.0;
    double rho = 0.5;
    double q = 100.0;
    double pheromone_floor = 1e-6;
  } aco;
  ClassicalWeights weights;
  std::uint64_t seed = 0;
};

enum class FitnessVariant {
  // Penalized objective with 1e7-scaled 6th-order capacity term, squared
  // SKU-count excess, and top-5 omission penalty +lambda (1 - x).
  GaAco,
  // Variant without the capacity scaling and excess term; cardinality is the
  // full square (sum x - K)^2 and top-5 enters as a negative reward.
  Pso,
};

// Evaluates the penalized objective on a T*N decision vector (no slack bits).
double classical_fitness(const std::vector<std::uint8_t>& bits,
                         const ProblemInstance& inst,
                         const ClassicalWeights& weights,
                         FitnessVariant variant);

// Greedy feasibility repair: per period, repeatedly deselect the non-top-5
// SKU with the largest demand until demand <= C. Throws InfeasibleError when
// the top-5 demand alone exceeds C.
std::vector<std::uint8_t> repair_capacity(std::vector<std::uint8_t> bits,
                                          const ProblemInstance& inst);

struct MetaheuristicResult {
  std::vector<std::uint8_t> bits;  // length T*N
  double fitness = 0;
};

// Binary PSO: velocity update with inertia/cognitive/social terms, clipped
// continuous position as auxiliary state, stochastic sigmoid binarization,
// top-5 forced after every update. No capacity repair.
MetaheuristicResult solve_pso(const ProblemInstance& inst,
                              const MetaheuristicConfig& config);

// Elitist GA with single-point crossover, bit-flip mutation (top-5 immune),
// and greedy capacity repair on the final best individual.
MetaheuristicResult solve_ga(const ProblemInstance& inst,
                             const MetaheuristicConfig& config);

// Binary ACO with per-variable two-choice pheromones, profit-ratio heuristic,
// per-ant and final greedy capacity repair.
MetaheuristicResult solve_aco(const ProblemInstance& inst,
                              const MetaheuristicConfig& config);

}  // namespace skualloc
