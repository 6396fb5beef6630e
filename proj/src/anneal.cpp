#include "skualloc/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "skualloc/errors.hpp"
#include "skualloc/rng.hpp"

namespace skualloc {

namespace {
constexpr int kDefaultSaSweeps = 400;
constexpr int kDefaultSqaSweeps = 100;
}  // namespace

QuboGraph::QuboGraph(const QuboModel& model) : n_vars(model.n_vars) {
  offset = model.offset;
  diag.assign(n_vars, 0.0);
  std::vector<int> degree(n_vars, 0);
  for (const auto& [k, c] : model.coefficients) {
    const int u = static_cast<int>(k >> 32);
    const int v = static_cast<int>(k & 0xffffffffu);
    if (u == v) {
      diag[u] += c;
    } else {
      ++degree[u];
      ++degree[v];
    }
  }
  nbr_offsets.assign(n_vars + 1, 0);
  for (int i = 0; i < n_vars; ++i) nbr_offsets[i + 1] = nbr_offsets[i] + degree[i];
  nbr_index.resize(nbr_offsets[n_vars]);
  nbr_weight.resize(nbr_offsets[n_vars]);
  std::vector<int> fill(nbr_offsets.begin(), nbr_offsets.end() - 1);
  for (const auto& [k, c] : model.coefficients) {
    const int u = static_cast<int>(k >> 32);
    const int v = static_cast<int>(k & 0xffffffffu);
    if (u == v) continue;
    nbr_index[fill[u]] = v;
    nbr_weight[fill[u]++] = c;
    nbr_index[fill[v]] = u;
    nbr_weight[fill[v]++] = c;
  }
}

double QuboGraph::energy_of(const std::vector<std::uint8_t>& bits) const {
  double e = offset;
  for (int v = 0; v < n_vars; ++v) {
    if (!bits[v]) continue;
    e += diag[v];
    for (int k = nbr_offsets[v]; k < nbr_offsets[v + 1]; ++k) {
      const int u = nbr_index[k];
      if (u > v && bits[u]) e += nbr_weight[k];
    }
  }
  return e;
}

namespace {

// local fields h[v] = sum over neighbors u with bit set of w(u,v)
void init_fields(const QuboGraph& g, const std::vector<std::uint8_t>& bits,
                 std::vector<double>& h) {
  h.assign(g.n_vars, 0.0);
  for (int v = 0; v < g.n_vars; ++v) {
    if (!bits[v]) continue;
    for (int k = g.nbr_offsets[v]; k < g.nbr_offsets[v + 1]; ++k)
      h[g.nbr_index[k]] += g.nbr_weight[k];
  }
}

void apply_flip(const QuboGraph& g, std::vector<std::uint8_t>& bits,
                std::vector<double>& h, int v) {
  const double sign = bits[v] ? -1.0 : 1.0;
  bits[v] ^= 1;
  for (int k = g.nbr_offsets[v]; k < g.nbr_offsets[v + 1]; ++k)
    h[g.nbr_index[k]] += sign * g.nbr_weight[k];
}

Sample run_sa_read(const QuboGraph& g, const AnnealConfig& cfg, int read) {
  auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(read));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n = g.n_vars;
  std::vector<std::uint8_t> bits(n);
  for (int v = 0; v < n; ++v) bits[v] = unit(rng) < 0.5 ? 1 : 0;
  std::vector<double> h;
  init_fields(g, bits, h);

  const int sweeps =
      cfg.sweeps_per_read > 0 ? cfg.sweeps_per_read : kDefaultSaSweeps;
  double e = g.energy_of(bits);
  double best_e = e;
  std::vector<std::uint8_t> best_bits = bits;

  for (int s = 0; s < sweeps; ++s) {
    const double frac = sweeps > 1 ? double(s) / (sweeps - 1) : 1.0;
    const double beta =
        cfg.beta_start * std::pow(cfg.beta_end / cfg.beta_start, frac);
    for (int v = 0; v < n; ++v) {
      const double delta = (bits[v] ? -1.0 : 1.0) * (g.diag[v] + h[v]);
      if (delta <= 0 || unit(rng) < std::exp(-beta * delta)) {
        apply_flip(g, bits, h, v);
        e += delta;
        if (e < best_e) {
          best_e = e;
          best_bits = bits;
        }
      }
    }
  }

  Sample out;
  out.bits = std::move(best_bits);
  out.energy = g.energy_of(out.bits);  // exact, no incremental drift
  out.read_index = read;
  return out;
}

Sample run_sqa_read(const QuboGraph& g, const AnnealConfig& cfg, int read) {
  auto rng = make_rng(cfg.seed, 0x5351410000ULL + static_cast<std::uint64_t>(read));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n = g.n_vars;
  const int M = std::max(1, cfg.sqa_trotter_slices);
  const double beta = cfg.sqa_beta;

  std::vector<std::vector<std::uint8_t>> bits(M, std::vector<std::uint8_t>(n));
  std::vector<std::vector<double>> h(M);
  for (int m = 0; m < M; ++m) {
    for (int v = 0; v < n; ++v) bits[m][v] = unit(rng) < 0.5 ? 1 : 0;
    init_fields(g, bits[m], h[m]);
  }

  const int sweeps =
      cfg.sweeps_per_read > 0 ? cfg.sweeps_per_read : kDefaultSqaSweeps;

  // track the lowest classical energy seen in any replica during the anneal
  std::vector<double> e_cl(M);
  for (int m = 0; m < M; ++m) e_cl[m] = g.energy_of(bits[m]);
  double best_e = e_cl[0];
  std::vector<std::uint8_t> best_bits = bits[0];
  for (int m = 1; m < M; ++m)
    if (e_cl[m] < best_e) {
      best_e = e_cl[m];
      best_bits = bits[m];
    }

  for (int s = 0; s < sweeps; ++s) {
    const double frac = sweeps > 1 ? double(s) / (sweeps - 1) : 1.0;
    const double gamma = cfg.sqa_gamma_start *
                         std::pow(cfg.sqa_gamma_end / cfg.sqa_gamma_start, frac);
    const double j_perp =
        M > 1 ? -(1.0 / (2.0 * beta)) * std::log(std::tanh(beta * gamma / M))
              : 0.0;
    for (int m = 0; m < M; ++m) {
      const auto& prev = bits[(m + M - 1) % M];
      const auto& next = bits[(m + 1) % M];
      for (int v = 0; v < n; ++v) {
        const double delta_cl =
            (bits[m][v] ? -1.0 : 1.0) * (g.diag[v] + h[m][v]);
        double delta = delta_cl / M;
        if (M > 1) {
          const double spin = bits[m][v] ? 1.0 : -1.0;
          const double nb = (prev[v] ? 1.0 : -1.0) + (next[v] ? 1.0 : -1.0);
          delta += 2.0 * j_perp * spin * nb;
        }
        if (delta <= 0 || unit(rng) < std::exp(-beta * delta)) {
          apply_flip(g, bits[m], h[m], v);
          e_cl[m] += delta_cl;
          if (e_cl[m] < best_e) {
            best_e = e_cl[m];
            best_bits = bits[m];
          }
        }
      }
    }
  }

  Sample out;
  out.bits = std::move(best_bits);
  out.energy = g.energy_of(out.bits);  // exact, no incremental drift
  out.read_index = read;
  return out;
}

template <typename ReadFn>
SampleSet run_reads(const QuboModel& model, const AnnealConfig& cfg,
                    ReadFn&& fn) {
  if (model.n_vars < 1) throw ArgumentError("solver: empty model");
  if (cfg.num_reads < 1) throw ArgumentError("solver: num_reads must be >= 1");

  QuboGraph graph(model);
  SampleSet set;
  set.samples.resize(cfg.num_reads);

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.num_reads);

  auto worker = [&](int first) {
    for (int r = first; r < cfg.num_reads; r += threads)
      set.samples[r] = fn(graph, cfg, r);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  set.best_index = 0;
  for (int r = 1; r < cfg.num_reads; ++r)
    if (set.samples[r].energy < set.samples[set.best_index].energy)
      set.best_index = r;
  return set;
}

}  // namespace

SampleSet solve_sa(const QuboModel& model, const AnnealConfig& config) {
  return run_reads(model, config, run_sa_read);
}

SampleSet solve_sqa(const QuboModel& model, const AnnealConfig& config) {
  return run_reads(model, config, run_sqa_read);
}

}  // namespace skualloc
