#include "skualloc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

using ordered_json = nlohmann::ordered_json;

CapacityAudit capacity_audit(const AllocationPlan& plan,
                             const ProblemInstance& inst) {
  CapacityAudit audit;
  for (const auto& sel : plan.selected) {
    double load = 0;
    for (int i : sel) load += inst.demand[i];
    if (load > inst.capacity) {
      ++audit.violations;
      audit.excess += load - inst.capacity;
    }
  }
  return audit;
}

KpiReport compute_kpis(const AllocationPlan& plan, const FeatureSet& features,
                       const ProblemInstance& inst, double tau) {
  if (static_cast<int>(plan.selected.size()) != inst.periods)
    throw ArgumentError("compute_kpis: plan period count mismatch");
  if (static_cast<int>(features.rows.size()) != inst.n_skus)
    throw ArgumentError("compute_kpis: feature row count mismatch");

  std::vector<double> margins(inst.n_skus);
  for (int i = 0; i < inst.n_skus; ++i)
    margins[i] = features.rows[i].unit_margin;
  const auto z_margin = zscore_normalize(margins);

  KpiReport r;
  r.capacity = inst.capacity;
  r.period_demand.assign(inst.periods, 0.0);

  std::set<int> distinct;
  long long pairs = 0;
  double redundancy_sum = 0;
  bool top5_ok = true;

  for (int t = 0; t < inst.periods; ++t) {
    const auto& sel = plan.selected[t];
    for (int i : sel) {
      if (i < 0 || i >= inst.n_skus)
        throw ArgumentError("compute_kpis: SKU index out of range");
      distinct.insert(i);
      r.total_units += inst.demand[i];
      r.net_profit += inst.unit_margin[i] * inst.demand[i];
      r.total_cost += features.rows[i].norm_total_cost * inst.demand[i];
      r.period_demand[t] += inst.demand[i];
    }
    for (size_t a = 0; a < sel.size(); ++a) {
      for (size_t b = a + 1; b < sel.size(); ++b) {
        const double s = inst.similarity.at(sel[a], sel[b]);
        ++pairs;
        redundancy_sum += s * (z_margin[sel[a]] + z_margin[sel[b]]) / 2.0;
        if (s >= tau) ++r.redundant_pairs;
      }
    }
    for (int i : inst.top5)
      if (!std::binary_search(sel.begin(), sel.end(), i)) top5_ok = false;
  }
  r.distinct_skus = static_cast<int>(distinct.size());
  r.redundancy_score = pairs > 0 ? redundancy_sum / pairs : 0.0;
  r.top5_present_all_periods = top5_ok;

  const auto cap = capacity_audit(plan, inst);
  r.capacity_violations = cap.violations;
  r.capacity_excess = cap.excess;
  return r;
}

TuneResult tune_penalties(const ProblemInstance& inst,
                          const FeatureSet& features, const QuboSolver& solver,
                          int max_rounds) {
  if (max_rounds < 1) throw ArgumentError("tune_penalties: max_rounds >= 1");
  TuneResult result;
  result.instance = inst;
  for (int round = 1; round <= max_rounds; ++round) {
    result.rounds = round;
    const auto model = build_qubo(result.instance);
    const auto samples = solver(model);
    const auto plan = decode(samples.best().bits, result.instance);
    result.report = compute_kpis(plan, features, result.instance);
    if (result.report.capacity_violations == 0) {
      result.feasible = true;
      return result;
    }
    if (round == max_rounds) break;
    result.instance.weights.capacity *= 2.0;
    double max_count = 0;
    for (const auto& sel : plan.selected)
      max_count = std::max(max_count, double(sel.size()));
    if (max_count > 1.2 * result.instance.sku_target)
      result.instance.weights.cardinality *= 2.0;
  }
  result.feasible = false;
  return result;
}

namespace {

ordered_json kpi_to_json(const KpiReport& r) {
  ordered_json j;
  j["Total SKUs Selected"] = r.distinct_skus;
  j["Units Selected"] = r.total_units;
  j["Net Profit"] = r.net_profit;
  j["Total Cost"] = r.total_cost;
  j["Cap. Violations"] = r.capacity_violations;
  j["Cap. Excess"] = r.capacity_excess;
  j["Redundant Pairs"] = r.redundant_pairs;
  j["Avg. Redundancy"] = r.redundancy_score;
  j["Top5 Present All Periods"] = r.top5_present_all_periods;
  j["Capacity Per Period"] = r.capacity;
  j["Period Demand"] = r.period_demand;
  return j;
}

}  // namespace

void write_kpi_json(const KpiReport& report, std::ostream& out) {
  out << kpi_to_json(report).dump(2) << "\n";
}

void write_kpi_json(const KpiReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write KPI file: " + path);
  write_kpi_json(report, out);
}

void write_utilization_csv(const KpiReport& report, std::ostream& out) {
  out << "period,demand,capacity\n";
  for (size_t t = 0; t < report.period_demand.size(); ++t)
    out << t << ',' << format_double(report.period_demand[t]) << ','
        << format_double(report.capacity) << "\n";
}

void write_utilization_csv(const KpiReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write utilization file: " + path);
  write_utilization_csv(report, out);
}

void write_selected_similarity_csv(const AllocationPlan& plan,
                                   const ProblemInstance& inst,
                                   std::ostream& out) {
  std::set<int> distinct;
  for (const auto& sel : plan.selected) distinct.insert(sel.begin(), sel.end());
  std::vector<int> idx(distinct.begin(), distinct.end());
  out << "sku_index";
  for (int i : idx) out << ',' << i;
  out << "\n";
  for (int i : idx) {
    out << i;
    for (int j : idx) out << ',' << format_double(inst.similarity.at(i, j));
    out << "\n";
  }
}

void write_selected_similarity_csv(const AllocationPlan& plan,
                                   const ProblemInstance& inst,
                                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write similarity submatrix file: " + path);
  write_selected_similarity_csv(plan, inst, out);
}

}  // namespace skualloc
