#include "skualloc/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

namespace {
constexpr double kDropThreshold = 1e-12;
}

double ProblemInstance::top5_weight() const {
  if (weights.top5 >= 0) return weights.top5;
  double mx = 0;
  for (int i = 0; i < n_skus; ++i)
    mx = std::max(mx, std::abs(unit_margin[i] * demand[i]));
  return 1e9 * mx;
}

std::vector<int> compute_top5(const std::vector<double>& unit_margin,
                              const std::vector<double>& demand) {
  const int n = static_cast<int>(unit_margin.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    double va = unit_margin[a] * demand[a];
    double vb = unit_margin[b] * demand[b];
    if (va != vb) return va > vb;
    return a < b;  // ties toward the lowest index
  });
  idx.resize(std::min(n, 5));
  std::sort(idx.begin(), idx.end());
  return idx;
}

void finalize_instance(ProblemInstance& inst) {
  const size_t n = static_cast<size_t>(inst.n_skus);
  if (n == 0) throw BuildError("instance has no SKUs");
  if (inst.unit_margin.size() != n || inst.demand.size() != n ||
      inst.unified_risk.size() != n || inst.inventory_risk.size() != n ||
      inst.defect_risk.size() != n)
    throw BuildError("per-SKU array length mismatch");
  if (inst.similarity.n != inst.n_skus)
    throw BuildError("similarity matrix dimension mismatch");
  if (inst.periods < 1 || inst.slack_bits < 0)
    throw BuildError("invalid periods/slack_bits");
  if (inst.sku_target < 1) throw BuildError("sku_target must be positive");
  if (inst.top5.empty()) inst.top5 = compute_top5(inst.unit_margin, inst.demand);
  for (int i : inst.top5)
    if (i < 0 || i >= inst.n_skus) throw BuildError("top5 index out of range");
}

void QuboModel::add(int u, int v, double c) {
  if (u > v) std::swap(u, v);
  coefficients[key(u, v)] += c;
}

double QuboModel::get(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = coefficients.find(key(u, v));
  return it == coefficients.end() ? 0.0 : it->second;
}

QuboModel build_qubo(const ProblemInstance& inst) {
  ProblemInstance checked = inst;
  finalize_instance(checked);
  const ProblemInstance& p = checked;
  const auto& w = p.weights;
  const int N = p.n_skus, T = p.periods, B = p.slack_bits;
  const double C = p.capacity;
  const double K = p.sku_target;
  const double top5_w = p.top5_weight();

  std::vector<char> in_top5(N, 0);
  for (int i : p.top5) in_top5[i] = 1;

  QuboModel model;
  model.n_vars = p.n_vars();
  model.coefficients.reserve(
      static_cast<size_t>(T) *
      (static_cast<size_t>(N) * (N + 1) / 2 + static_cast<size_t>(N) * B +
       static_cast<size_t>(B) * (B + 1) / 2));

  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < N; ++i) {
      const int vi = p.var_decision(t, i);
      double diag = -w.margin * p.unit_margin[i] * p.demand[i] +
                    w.risk * p.unified_risk[i] * p.demand[i] +
                    w.inventory * p.inventory_risk[i] +
                    w.defect * p.defect_risk[i];
      if (in_top5[i]) diag -= top5_w;
      diag += w.cardinality + w.sku_limit / K - 2.0 * w.cardinality * K;
      diag += w.capacity * (p.demand[i] * p.demand[i] - 2.0 * C * p.demand[i]);
      model.add(vi, vi, diag);

      for (int j = i + 1; j < N; ++j) {
        const int vj = p.var_decision(t, j);
        double off = w.similarity * p.similarity.at(i, j) +
                     2.0 * w.capacity * p.demand[i] * p.demand[j] +
                     2.0 * w.cardinality;
        model.add(vi, vj, off);
      }
      // the slack sum enters the capacity residual with a plus sign, so the
      // demand-slack cross term is positive
      for (int b = 0; b < B; ++b) {
        const double pow_b = std::ldexp(1.0, b);  // 2^b
        model.add(vi, p.var_slack(t, b),
                  2.0 * w.capacity * p.demand[i] * pow_b);
      }
    }
    for (int b = 0; b < B; ++b) {
      const int vb = p.var_slack(t, b);
      const double pow_b = std::ldexp(1.0, b);
      model.add(vb, vb, w.capacity * (pow_b * pow_b - 2.0 * C * pow_b));
      for (int b2 = b + 1; b2 < B; ++b2)
        model.add(vb, p.var_slack(t, b2),
                  2.0 * w.capacity * pow_b * std::ldexp(1.0, b2));
    }
  }
  model.offset = w.capacity * C * C * T + w.cardinality * K * K * T;

  for (auto it = model.coefficients.begin(); it != model.coefficients.end();) {
    if (std::abs(it->second) < kDropThreshold ||
        !std::isfinite(it->second))
      it = model.coefficients.erase(it);
    else
      ++it;
  }
  return model;
}

double energy(const QuboModel& model, const std::vector<std::uint8_t>& bits) {
  if (static_cast<int>(bits.size()) != model.n_vars)
    throw ArgumentError("energy: bit vector length mismatch");
  double e = model.offset;
  for (const auto& [k, c] : model.coefficients) {
    const int u = static_cast<int>(k >> 32);
    const int v = static_cast<int>(k & 0xffffffffu);
    if (bits[u] && bits[v]) e += c;
  }
  return e;
}

AllocationPlan decode(const std::vector<std::uint8_t>& bits,
                      const ProblemInstance& inst) {
  if (static_cast<int>(bits.size()) != inst.n_vars())
    throw ArgumentError("decode: bit vector length mismatch");
  AllocationPlan plan;
  plan.selected.resize(inst.periods);
  plan.slack.assign(inst.periods, 0);
  for (int t = 0; t < inst.periods; ++t) {
    for (int i = 0; i < inst.n_skus; ++i)
      if (bits[inst.var_decision(t, i)]) plan.selected[t].push_back(i);
    for (int b = 0; b < inst.slack_bits; ++b)
      if (bits[inst.var_slack(t, b)]) plan.slack[t] += 1LL << b;
  }
  return plan;
}

AllocationPlan decode_decisions(const std::vector<std::uint8_t>& bits,
                                const ProblemInstance& inst) {
  if (static_cast<int>(bits.size()) != inst.periods * inst.n_skus)
    throw ArgumentError("decode_decisions: bit vector length mismatch");
  AllocationPlan plan;
  plan.selected.resize(inst.periods);
  plan.slack.assign(inst.periods, 0);
  for (int t = 0; t < inst.periods; ++t)
    for (int i = 0; i < inst.n_skus; ++i)
      if (bits[static_cast<size_t>(t) * inst.n_skus + i])
        plan.selected[t].push_back(i);
  return plan;
}

std::vector<std::uint8_t> refine_solution(const ProblemInstance& inst,
                                          std::vector<std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != inst.n_vars())
    throw ArgumentError("refine_solution: bit vector length mismatch");
  const auto& w = inst.weights;
  const int N = inst.n_skus, T = inst.periods, B = inst.slack_bits;
  const double C = inst.capacity;
  const double K = inst.sku_target;
  const double top5_w = inst.top5_weight();
  const double max_slack = std::ldexp(1.0, B) - 1.0;

  std::vector<char> in_top5(N, 0);
  for (int i : inst.top5) in_top5[i] = 1;

  // capacity cost of a period once the slack is optimally re-encoded
  auto capacity_cost = [&](double load) {
    const double want = C - load;
    const double slack = std::clamp(std::round(want), 0.0, max_slack);
    const double resid = load + slack - C;
    return w.capacity * resid * resid;
  };
  auto linear_cost = [&](int i) {
    double c = -w.margin * inst.unit_margin[i] * inst.demand[i] +
               w.risk * inst.unified_risk[i] * inst.demand[i] +
               w.inventory * inst.inventory_risk[i] +
               w.defect * inst.defect_risk[i] + w.sku_limit / K;
    if (in_top5[i]) c -= top5_w;
    return c;
  };

  for (int t = 0; t < T; ++t) {
    std::uint8_t* x = bits.data() + static_cast<size_t>(t) * (N + B);
    double load = 0;
    int count = 0;
    for (int i = 0; i < N; ++i)
      if (x[i]) {
        load += inst.demand[i];
        ++count;
      }
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < N; ++i) {
        const double sign = x[i] ? -1.0 : 1.0;
        double sim = 0;
        for (int j = 0; j < N; ++j)
          if (j != i && x[j]) sim += inst.similarity.at(i, j);
        const double new_load = load + sign * inst.demand[i];
        const double c0 = count - K, c1 = count + sign - K;
        const double delta = sign * (linear_cost(i) + w.similarity * sim) +
                             w.cardinality * (c1 * c1 - c0 * c0) +
                             capacity_cost(new_load) - capacity_cost(load);
        if (delta < -1e-9) {
          x[i] ^= 1;
          load = new_load;
          count += x[i] ? 1 : -1;
          improved = true;
        }
      }
    }
    if (w.capacity > 0) {
      const long long slack = static_cast<long long>(
          std::clamp(std::round(C - load), 0.0, max_slack));
      for (int b = 0; b < B; ++b) x[N + b] = (slack >> b) & 1;
    }
  }
  return bits;
}

void write_qubo(const QuboModel& model, const ProblemInstance& inst,
                std::ostream& out, bool fold_offset_into_origin) {
  out << "#vars " << inst.periods << ' ' << inst.n_skus << ' '
      << inst.slack_bits << "\n";
  out << "#offset "
      << format_double(fold_offset_into_origin ? 0.0 : model.offset) << "\n";
  std::vector<std::uint64_t> keys;
  keys.reserve(model.coefficients.size());
  for (const auto& [k, c] : model.coefficients) keys.push_back(k);
  bool have_origin = model.coefficients.count(0) > 0;
  if (fold_offset_into_origin && !have_origin) keys.push_back(0);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    auto it = model.coefficients.find(k);
    double c = it == model.coefficients.end() ? 0.0 : it->second;
    if (fold_offset_into_origin && k == 0) c += model.offset;
    out << (k >> 32) << ' ' << (k & 0xffffffffu) << ' ' << format_double(c)
        << "\n";
  }
}

void write_qubo(const QuboModel& model, const ProblemInstance& inst,
                const std::string& path, bool fold_offset_into_origin) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write qubo file: " + path);
  write_qubo(model, inst, out, fold_offset_into_origin);
}

QuboFile read_qubo(std::istream& in) {
  QuboFile qf;
  std::string line;
  bool have_vars = false, have_offset = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream iss(line);
    if (line.rfind("#vars", 0) == 0) {
      std::string tag;
      iss >> tag >> qf.periods >> qf.n_skus >> qf.slack_bits;
      if (!iss) throw IoError("bad #vars header line");
      have_vars = true;
      continue;
    }
    if (line.rfind("#offset", 0) == 0) {
      std::string tag;
      iss >> tag >> qf.model.offset;
      if (!iss) throw IoError("bad #offset header line");
      have_offset = true;
      continue;
    }
    if (line[0] == '#') continue;  // embedded config echo
    long long u, v;
    double c;
    iss >> u >> v >> c;
    if (!iss) throw IoError("bad qubo entry line: " + line);
    qf.model.add(static_cast<int>(u), static_cast<int>(v), c);
  }
  if (!have_vars || !have_offset) throw IoError("missing qubo header lines");
  qf.model.n_vars = qf.periods * (qf.n_skus + qf.slack_bits);
  return qf;
}

QuboFile read_qubo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open qubo file: " + path);
  return read_qubo(in);
}

}  // namespace skualloc
