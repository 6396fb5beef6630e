// Shared fixtures and independent oracles for the test suite. The evaluators
// here are written straight from the closed-form objective, on purpose not
// sharing code with the production QUBO assembly.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "skualloc/qubo.hpp"

namespace testutil {

// Random dense instance with symmetric unit-diagonal similarity.
inline skualloc::ProblemInstance random_instance(int n, int periods,
                                                 int slack_bits,
                                                 double capacity,
                                                 int sku_target,
                                                 unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> margin(1.0, 20.0);
  std::uniform_int_distribution<int> demand(10, 100);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> inv(-0.8, 2.0);

  skualloc::ProblemInstance inst;
  inst.n_skus = n;
  inst.periods = periods;
  inst.slack_bits = slack_bits;
  inst.capacity = capacity;
  inst.sku_target = sku_target;
  for (int i = 0; i < n; ++i) {
    inst.unit_margin.push_back(margin(rng));
    inst.demand.push_back(demand(rng));
    inst.unified_risk.push_back(unit(rng));
    inst.inventory_risk.push_back(inv(rng));
    inst.defect_risk.push_back(unit(rng) < 0.3 ? 0.03 * unit(rng) : 0.0);
  }
  inst.similarity.n = n;
  inst.similarity.values.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    inst.similarity.values[static_cast<size_t>(i) * n + i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double s = unit(rng);
      inst.similarity.values[static_cast<size_t>(i) * n + j] = s;
      inst.similarity.values[static_cast<size_t>(j) * n + i] = s;
    }
  }
  skualloc::finalize_instance(inst);
  return inst;
}

// Closed-form objective evaluated per period, including the QUBO's constant
// offset, so it is directly comparable with energy(model, bits).
inline double direct_energy(const skualloc::ProblemInstance& inst,
                            const std::vector<std::uint8_t>& bits) {
  const auto& w = inst.weights;
  const double l5 = inst.top5_weight();
  double h = 0;
  for (int t = 0; t < inst.periods; ++t) {
    double load = 0;
    int count = 0;
    for (int i = 0; i < inst.n_skus; ++i) {
      if (!bits[inst.var_decision(t, i)]) continue;
      h += -w.margin * inst.unit_margin[i] * inst.demand[i];
      h += w.risk * inst.unified_risk[i] * inst.demand[i];
      h += w.inventory * inst.inventory_risk[i];
      h += w.defect * inst.defect_risk[i];
      load += inst.demand[i];
      ++count;
    }
    for (int i = 0; i < inst.n_skus; ++i)
      for (int j = i + 1; j < inst.n_skus; ++j)
        if (bits[inst.var_decision(t, i)] && bits[inst.var_decision(t, j)])
          h += w.similarity * inst.similarity.at(i, j);
    double slack = 0;
    for (int b = 0; b < inst.slack_bits; ++b)
      if (bits[inst.var_slack(t, b)]) slack += std::ldexp(1.0, b);
    const double resid = load + slack - inst.capacity;
    h += w.capacity * resid * resid;
    const double dk = count - inst.sku_target;
    h += w.cardinality * dk * dk;
    h += w.sku_limit / inst.sku_target * count;
    for (int i : inst.top5)
      if (bits[inst.var_decision(t, i)]) h -= l5;
  }
  return h;
}

// Exhaustive minimum of an arbitrary evaluator over n-bit strings.
template <typename Eval>
std::pair<double, std::vector<std::uint8_t>> brute_force(int n_bits,
                                                         Eval&& eval) {
  std::vector<std::uint8_t> bits(n_bits, 0), best_bits(n_bits, 0);
  double best = eval(bits);
  const std::uint64_t limit = 1ULL << n_bits;
  for (std::uint64_t code = 1; code < limit; ++code) {
    for (int b = 0; b < n_bits; ++b) bits[b] = (code >> b) & 1u;
    const double e = eval(bits);
    if (e < best) {
      best = e;
      best_bits = bits;
    }
  }
  return {best, best_bits};
}

inline std::vector<std::uint8_t> random_bits(int n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
  return bits;
}

}  // namespace testutil
