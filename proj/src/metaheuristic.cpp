#include "skualloc/metaheuristic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skualloc/errors.hpp"
#include "skualloc/rng.hpp"

namespace skualloc {

namespace {

double derived_top5_weight(const ProblemInstance& inst,
                           const ClassicalWeights& w) {
  if (w.top5 >= 0) return w.top5;
  double mx = 0;
  for (int i = 0; i < inst.n_skus; ++i)
    mx = std::max(mx, std::abs(inst.unit_margin[i] * inst.demand[i]));
  return 1e9 * mx;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<char> top5_mask(const ProblemInstance& inst) {
  std::vector<char> mask(inst.n_skus, 0);
  for (int i : inst.top5) mask[i] = 1;
  return mask;
}

void force_top5(std::vector<std::uint8_t>& bits, const ProblemInstance& inst) {
  for (int t = 0; t < inst.periods; ++t)
    for (int i : inst.top5) bits[static_cast<size_t>(t) * inst.n_skus + i] = 1;
}

}  // namespace

double classical_fitness(const std::vector<std::uint8_t>& bits,
                         const ProblemInstance& inst,
                         const ClassicalWeights& w, FitnessVariant variant) {
  const int N = inst.n_skus, T = inst.periods;
  if (static_cast<int>(bits.size()) != T * N)
    throw ArgumentError("classical_fitness: expected T*N bits");
  const double K = inst.sku_target;
  const double C = inst.capacity;
  const double top5_w = derived_top5_weight(inst, w);

  double f = 0;
  std::vector<int> selected;
  for (int t = 0; t < T; ++t) {
    const std::uint8_t* x = bits.data() + static_cast<size_t>(t) * N;
    selected.clear();
    double count = 0, load = 0;
    for (int i = 0; i < N; ++i) {
      if (!x[i]) continue;
      selected.push_back(i);
      count += 1;
      load += inst.demand[i];
      f += -w.margin * inst.unit_margin[i] * inst.demand[i] +
           w.risk * inst.unified_risk[i] * inst.demand[i] +
           w.inventory * inst.inventory_risk[i] +
           w.defect * inst.defect_risk[i];
    }
    for (size_t a = 0; a < selected.size(); ++a)
      for (size_t b = a + 1; b < selected.size(); ++b)
        f += w.similarity * inst.similarity.at(selected[a], selected[b]);

    const double over_count = std::max(0.0, count - K);
    const double over_load = std::max(0.0, load - C);
    if (variant == FitnessVariant::GaAco) {
      f += w.cardinality * (count * count - 2.0 * K * count);
      f += w.sku_excess * over_count * over_count;
      f += w.capacity * w.capacity_scale * std::pow(over_load, 6);
      for (int i : inst.top5) f += top5_w * (1.0 - x[i]);
    } else {
      f += w.cardinality * (count - K) * (count - K);
      f += w.capacity * std::pow(over_load, 6);
      for (int i : inst.top5) f -= top5_w * x[i];
    }
  }
  return f;
}

std::vector<std::uint8_t> repair_capacity(std::vector<std::uint8_t> bits,
                                          const ProblemInstance& inst) {
  const int N = inst.n_skus, T = inst.periods;
  if (static_cast<int>(bits.size()) != T * N)
    throw ArgumentError("repair_capacity: expected T*N bits");
  const auto mask = top5_mask(inst);

  for (int t = 0; t < T; ++t) {
    std::uint8_t* x = bits.data() + static_cast<size_t>(t) * N;
    double load = 0;
    for (int i = 0; i < N; ++i)
      if (x[i]) load += inst.demand[i];
    while (load > inst.capacity) {
      int victim = -1;
      for (int i = 0; i < N; ++i) {
        if (!x[i] || mask[i]) continue;
        if (victim < 0 || inst.demand[i] > inst.demand[victim]) victim = i;
      }
      if (victim < 0)
        throw InfeasibleError(
            "repair_capacity: top-5 demand alone exceeds capacity in period " +
            std::to_string(t));
      x[victim] = 0;
      load -= inst.demand[victim];
    }
  }
  return bits;
}

MetaheuristicResult solve_pso(const ProblemInstance& inst,
                              const MetaheuristicConfig& cfg) {
  const int N = inst.n_skus, T = inst.periods;
  const int dims = T * N;
  auto rng = make_rng(cfg.seed, 0x50534fULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Particle {
    std::vector<std::uint8_t> x;
    std::vector<double> pos;  // clipped continuous position, auxiliary
    std::vector<double> vel;
    std::vector<std::uint8_t> pbest;
    double pbest_fit;
  };

  auto eval = [&](const std::vector<std::uint8_t>& x) {
    return classical_fitness(x, inst, cfg.weights, FitnessVariant::Pso);
  };

  std::vector<Particle> swarm(cfg.pop_size);
  std::vector<std::uint8_t> gbest;
  double gbest_fit = 0;
  for (int p = 0; p < cfg.pop_size; ++p) {
    auto& pt = swarm[p];
    pt.x.resize(dims);
    pt.vel.resize(dims);
    for (int j = 0; j < dims; ++j) {
      pt.x[j] = unit(rng) < 0.5 ? 1 : 0;
      pt.vel[j] = 2.0 * unit(rng) - 1.0;
    }
    force_top5(pt.x, inst);
    pt.pos.assign(pt.x.begin(), pt.x.end());
    pt.pbest = pt.x;
    pt.pbest_fit = eval(pt.x);
    if (gbest.empty() || pt.pbest_fit < gbest_fit) {
      gbest = pt.x;
      gbest_fit = pt.pbest_fit;
    }
  }

  for (int it = 0; it < cfg.iterations; ++it) {
    for (auto& pt : swarm) {
      for (int j = 0; j < dims; ++j) {
        const double r1 = unit(rng), r2 = unit(rng);
        pt.vel[j] = cfg.pso.omega * pt.vel[j] +
                    cfg.pso.c1 * r1 * (pt.pbest[j] - double(pt.x[j])) +
                    cfg.pso.c2 * r2 * (gbest[j] - double(pt.x[j]));
        pt.pos[j] = std::clamp(pt.pos[j] + pt.vel[j], 0.0, 1.0);
        pt.x[j] = sigmoid(pt.vel[j]) > unit(rng) ? 1 : 0;
      }
      force_top5(pt.x, inst);
      const double fit = eval(pt.x);
      if (fit < pt.pbest_fit) {
        pt.pbest_fit = fit;
        pt.pbest = pt.x;
      }
      if (fit < gbest_fit) {
        gbest_fit = fit;
        gbest = pt.x;
      }
    }
  }
  return {gbest, gbest_fit};
}

MetaheuristicResult solve_ga(const ProblemInstance& inst,
                             const MetaheuristicConfig& cfg) {
  const int N = inst.n_skus, T = inst.periods;
  const int dims = T * N;
  auto rng = make_rng(cfg.seed, 0x4741ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto mask = top5_mask(inst);

  auto eval = [&](const std::vector<std::uint8_t>& x) {
    return classical_fitness(x, inst, cfg.weights, FitnessVariant::GaAco);
  };

  std::vector<std::vector<std::uint8_t>> pop(cfg.pop_size);
  std::vector<double> fit(cfg.pop_size);
  for (int k = 0; k < cfg.pop_size; ++k) {
    pop[k].resize(dims);
    for (int j = 0; j < dims; ++j) pop[k][j] = unit(rng) < 0.5 ? 1 : 0;
    force_top5(pop[k], inst);
    fit[k] = eval(pop[k]);
  }

  const int n_parents = cfg.pop_size / 2;
  std::vector<int> order(cfg.pop_size);
  for (int gen = 0; gen < cfg.iterations; ++gen) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fit[a] < fit[b]; });

    std::vector<std::vector<std::uint8_t>> next;
    std::vector<double> next_fit;
    next.reserve(cfg.pop_size);
    // elitist: the top half survives unchanged
    for (int k = 0; k < n_parents; ++k) {
      next.push_back(pop[order[k]]);
      next_fit.push_back(fit[order[k]]);
    }
    while (static_cast<int>(next.size()) < cfg.pop_size) {
      const auto& p1 = next[static_cast<size_t>(unit(rng) * n_parents) % n_parents];
      const auto& p2 = next[static_cast<size_t>(unit(rng) * n_parents) % n_parents];
      std::vector<std::uint8_t> child = p1;
      if (unit(rng) < cfg.ga.crossover_rate && dims > 1) {
        const int cut = 1 + static_cast<int>(unit(rng) * (dims - 1)) % (dims - 1);
        std::copy(p2.begin() + cut, p2.end(), child.begin() + cut);
      }
      for (int j = 0; j < dims; ++j) {
        if (mask[j % N]) continue;  // top-5 positions immune
        if (unit(rng) < cfg.ga.mutation_rate) child[j] ^= 1;
      }
      force_top5(child, inst);
      next_fit.push_back(eval(child));
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    fit = std::move(next_fit);
  }

  int best = 0;
  for (int k = 1; k < cfg.pop_size; ++k)
    if (fit[k] < fit[best]) best = k;
  auto repaired = repair_capacity(pop[best], inst);
  return {repaired, eval(repaired)};
}

MetaheuristicResult solve_aco(const ProblemInstance& inst,
                              const MetaheuristicConfig& cfg) {
  const int N = inst.n_skus, T = inst.periods;
  const int dims = T * N;
  auto rng = make_rng(cfg.seed, 0x41434fULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto mask = top5_mask(inst);

  auto eval = [&](const std::vector<std::uint8_t>& x) {
    return classical_fitness(x, inst, cfg.weights, FitnessVariant::GaAco);
  };

  // heuristic: profit ratio per SKU, repeated across periods
  double max_ud = 0;
  for (int i = 0; i < N; ++i)
    max_ud = std::max(max_ud, inst.unit_margin[i] * inst.demand[i]);
  std::vector<double> eta(N, 1.0);
  if (max_ud > 0)
    for (int i = 0; i < N; ++i)
      eta[i] = std::max(0.0, inst.unit_margin[i] * inst.demand[i] / max_ud);

  std::vector<double> tau0(dims, 1.0), tau1(dims, 1.0);
  std::vector<std::uint8_t> best;
  double best_fit = 0;

  for (int it = 0; it < cfg.iterations; ++it) {
    std::vector<std::uint8_t> iter_best;
    double iter_best_fit = 0;
    for (int ant = 0; ant < cfg.pop_size; ++ant) {
      std::vector<std::uint8_t> x(dims);
      for (int j = 0; j < dims; ++j) {
        const double num = std::pow(tau1[j], cfg.aco.alpha) *
                           std::pow(eta[j % N], cfg.aco.beta);
        const double den = std::pow(tau0[j], cfg.aco.alpha) + num;
        const double p = den > 0 ? num / den : 0.0;
        x[j] = unit(rng) < p ? 1 : 0;
      }
      force_top5(x, inst);
      x = repair_capacity(std::move(x), inst);
      const double f = eval(x);
      if (iter_best.empty() || f < iter_best_fit) {
        iter_best_fit = f;
        iter_best = std::move(x);
      }
    }
    if (best.empty() || iter_best_fit < best_fit) {
      best_fit = iter_best_fit;
      best = iter_best;
    }
    // evaporate, then deposit along the iteration-best solution
    double deposit = 0;
    if (std::abs(1.0 + iter_best_fit) > 1e-12)
      deposit = cfg.aco.q / (1.0 + iter_best_fit);
    for (int j = 0; j < dims; ++j) {
      tau0[j] *= 1.0 - cfg.aco.rho;
      tau1[j] *= 1.0 - cfg.aco.rho;
      (iter_best[j] ? tau1[j] : tau0[j]) += deposit;
      tau0[j] = std::max(tau0[j], cfg.aco.pheromone_floor);
      tau1[j] = std::max(tau1[j], cfg.aco.pheromone_floor);
    }
  }

  best = repair_capacity(std::move(best), inst);
  return {best, eval(best)};
}

}  // namespace skualloc
