#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "skualloc/anneal.hpp"
#include "skualloc/features.hpp"
#include "skualloc/qubo.hpp"

namespace skualloc {

struct KpiReport {
  double total_units = 0;
  int distinct_skus = 0;
  double net_profit = 0;
  double total_cost = 0;  // min-max normalized cost weighted by demand
  std::vector<double> period_demand;  // length T
  double capacity = 0;
  int capacity_violations = 0;  // periods with demand > C
  double capacity_excess = 0;   // total units over C
  bool top5_present_all_periods = false;
  long long redundant_pairs = 0;  // within-period selected pairs with S >= tau
  double redundancy_score = 0;    // mean S_ij * (z_margin_i + z_margin_j)/2
};

// KPIs are pure functions of (plan, features, similarity). Margin z-scores
// are computed across the whole catalog; tau is the redundant-pair threshold.
KpiReport compute_kpis(const AllocationPlan& plan, const FeatureSet& features,
                       const ProblemInstance& inst, double tau = 0.0);

struct CapacityAudit {
  int violations = 0;
  double excess = 0;
};
CapacityAudit capacity_audit(const AllocationPlan& plan,
                             const ProblemInstance& inst);

using QuboSolver = std::function<SampleSet(const QuboModel&)>;

struct TuneResult {
  ProblemInstance instance;  // final (possibly escalated) weights
  KpiReport report;
  int rounds = 0;       // solves performed
  bool feasible = false;
};

// Solve/audit loop: after each infeasible solve the capacity weight doubles
// (and the cardinality weight too, when the largest per-period SKU count
// exceeds K by more than 20%), then the QUBO is rebuilt and re-solved. Stops
// at feasibility or max_rounds; never throws on residual infeasibility.
TuneResult tune_penalties(const ProblemInstance& inst,
                          const FeatureSet& features, const QuboSolver& solver,
                          int max_rounds);

void write_kpi_json(const KpiReport& report, std::ostream& out);
void write_kpi_json(const KpiReport& report, const std::string& path);

// period, demand, capacity rows for plotting.
void write_utilization_csv(const KpiReport& report, std::ostream& out);
void write_utilization_csv(const KpiReport& report, const std::string& path);

// Similarity submatrix restricted to the distinct selected SKUs.
void write_selected_similarity_csv(const AllocationPlan& plan,
                                   const ProblemInstance& inst,
                                   std::ostream& out);
void write_selected_similarity_csv(const AllocationPlan& plan,
                                   const ProblemInstance& inst,
                                   const std::string& path);

}  // namespace skualloc
