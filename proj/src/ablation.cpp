#include "skualloc/ablation.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

using ordered_json = nlohmann::ordered_json;

const char* to_string(AblationVariant v) {
  switch (v) {
    case AblationVariant::Full:
      return "Full";
    case AblationVariant::NoCapacity:
      return "NoCapacity";
    case AblationVariant::NoSimilarity:
      return "NoSimilarity";
    case AblationVariant::NoMarginWeight:
      return "NoMarginWeight";
    case AblationVariant::NoLegacyInvRisk:
      return "NoLegacyInvRisk";
    case AblationVariant::NoSkuLimit:
      return "NoSkuLimit";
    case AblationVariant::NoTop5:
      return "NoTop5";
    case AblationVariant::NoPCA:
      return "NoPCA";
  }
  return "?";
}

AblationVariant ablation_variant_from_string(const std::string& s) {
  for (auto v : all_ablation_variants())
    if (s == to_string(v)) return v;
  throw ArgumentError("unknown ablation variant: " + s);
}

std::vector<AblationVariant> all_ablation_variants() {
  return {AblationVariant::Full,           AblationVariant::NoCapacity,
          AblationVariant::NoSimilarity,   AblationVariant::NoMarginWeight,
          AblationVariant::NoLegacyInvRisk, AblationVariant::NoSkuLimit,
          AblationVariant::NoTop5,         AblationVariant::NoPCA};
}

ProblemInstance apply_variant(const AblationInput& input, AblationVariant v) {
  ProblemInstance inst = input.instance;
  switch (v) {
    case AblationVariant::Full:
      break;
    case AblationVariant::NoCapacity:
      inst.weights.capacity = 0;
      break;
    case AblationVariant::NoSimilarity:
      inst.weights.similarity = 0;
      break;
    case AblationVariant::NoMarginWeight:
      inst.weights.margin = 0;
      break;
    case AblationVariant::NoLegacyInvRisk:
      inst.weights.inventory = 0;
      inst.weights.defect = 0;
      inst.weights.risk = 0;
      break;
    case AblationVariant::NoSkuLimit:
      inst.weights.cardinality = 0;
      inst.weights.sku_limit = 0;
      break;
    case AblationVariant::NoTop5:
      inst.weights.top5 = 0;
      break;
    case AblationVariant::NoPCA: {
      // similarity recomputed from the raw z-scored features, bypassing PCA
      EmbeddingMatrix raw;
      raw.n = input.raw_kernel_features.rows;
      raw.dims = input.raw_kernel_features.cols;
      raw.values = input.raw_kernel_features.values;
      inst.similarity =
          similarity_matrix(raw, input.method, input.angle_scale);
      break;
    }
  }
  return inst;
}

namespace {

struct Welford {
  int n = 0;
  double mean = 0, m2 = 0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double std() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

}  // namespace

AblationSummary run_ablation(const AblationInput& input,
                             const std::vector<AblationVariant>& variants,
                             int repeats, std::uint64_t base_seed,
                             const AnnealConfig& anneal) {
  if (repeats < 2) throw ArgumentError("run_ablation: repeats must be >= 2");

  AblationSummary summary;
  for (auto v : variants) {
    ProblemInstance inst = apply_variant(input, v);
    const auto model = build_qubo(inst);
    Welford profit, units, distinct, violations, excess, pairs, redundancy;
    for (int r = 0; r < repeats; ++r) {
      AnnealConfig cfg = anneal;
      cfg.seed = base_seed + static_cast<std::uint64_t>(r);
      const auto samples = solve_sa(model, cfg);
      const auto bits = refine_solution(inst, samples.best().bits);
      AblationCell cell;
      cell.variant = v;
      cell.repeat = r;
      cell.seed = cfg.seed;
      cell.best_energy = energy(model, bits);
      const auto plan = decode(bits, inst);
      cell.report = compute_kpis(plan, input.features, inst);
      profit.add(cell.report.net_profit);
      units.add(cell.report.total_units);
      distinct.add(cell.report.distinct_skus);
      violations.add(cell.report.capacity_violations);
      excess.add(cell.report.capacity_excess);
      pairs.add(double(cell.report.redundant_pairs));
      redundancy.add(cell.report.redundancy_score);
      summary.cells.push_back(std::move(cell));
    }
    VariantStats stats;
    stats.variant = v;
    stats.profit_mean = profit.mean;
    stats.profit_std = profit.std();
    stats.units_mean = units.mean;
    stats.units_std = units.std();
    stats.distinct_mean = distinct.mean;
    stats.distinct_std = distinct.std();
    stats.violations_mean = violations.mean;
    stats.violations_std = violations.std();
    stats.excess_mean = excess.mean;
    stats.excess_std = excess.std();
    stats.redundant_pairs_mean = pairs.mean;
    stats.redundant_pairs_std = pairs.std();
    stats.redundancy_mean = redundancy.mean;
    stats.redundancy_std = redundancy.std();
    summary.variants.push_back(stats);
  }
  return summary;
}

void write_ablation_csv(const AblationSummary& summary, std::ostream& out) {
  out << "Experiment,Total Profit Mean,Total Profit Std,Total Units Mean,"
         "Total Units Std,Distinct SKUs Mean,Distinct SKUs Std,"
         "Cap. Violations Mean,Cap. Violations Std,Cap. Excess Mean,"
         "Cap. Excess Std,Redundant Pairs Mean,Redundant Pairs Std,"
         "Avg. Redundancy Mean,Avg. Redundancy Std\n";
  for (const auto& s : summary.variants) {
    out << to_string(s.variant) << ',' << format_double(s.profit_mean) << ','
        << format_double(s.profit_std) << ',' << format_double(s.units_mean)
        << ',' << format_double(s.units_std) << ','
        << format_double(s.distinct_mean) << ','
        << format_double(s.distinct_std) << ','
        << format_double(s.violations_mean) << ','
        << format_double(s.violations_std) << ','
        << format_double(s.excess_mean) << ',' << format_double(s.excess_std)
        << ',' << format_double(s.redundant_pairs_mean) << ','
        << format_double(s.redundant_pairs_std) << ','
        << format_double(s.redundancy_mean) << ','
        << format_double(s.redundancy_std) << "\n";
  }
}

void write_ablation_csv(const AblationSummary& summary,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write ablation summary: " + path);
  write_ablation_csv(summary, out);
}

void write_ablation_cells_json(const AblationSummary& summary,
                               const std::string& path) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : summary.cells) {
    ordered_json j;
    j["variant"] = to_string(c.variant);
    j["repeat"] = c.repeat;
    j["seed"] = c.seed;
    j["best_energy"] = c.best_energy;
    j["net_profit"] = c.report.net_profit;
    j["total_units"] = c.report.total_units;
    j["distinct_skus"] = c.report.distinct_skus;
    j["capacity_violations"] = c.report.capacity_violations;
    j["capacity_excess"] = c.report.capacity_excess;
    j["redundant_pairs"] = c.report.redundant_pairs;
    j["redundancy_score"] = c.report.redundancy_score;
    j["top5_present_all_periods"] = c.report.top5_present_all_periods;
    cells.push_back(std::move(j));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write ablation cells: " + path);
  out << cells.dump(2) << "\n";
}

}  // namespace skualloc
