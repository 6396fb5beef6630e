#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skualloc/audit.hpp"
#include "skualloc/pca.hpp"

namespace skualloc {

enum class AblationVariant {
  Full,
  NoCapacity,
  NoSimilarity,
  NoMarginWeight,
  NoLegacyInvRisk,  // zeroes inventory, defect and unified-risk weights
  NoSkuLimit,       // zeroes cardinality and sku_limit weights
  NoTop5,
  NoPCA,  // similarity recomputed from raw z-scored features
};

const char* to_string(AblationVariant v);
AblationVariant ablation_variant_from_string(const std::string& s);
std::vector<AblationVariant> all_ablation_variants();

struct AblationCell {
  AblationVariant variant;
  int repeat = 0;
  std::uint64_t seed = 0;
  double best_energy = 0;
  KpiReport report;
};

struct VariantStats {
  AblationVariant variant;
  // mean/std (sample, n-1) per KPI, in summary-column order
  double profit_mean = 0, profit_std = 0;
  double units_mean = 0, units_std = 0;
  double distinct_mean = 0, distinct_std = 0;
  double violations_mean = 0, violations_std = 0;
  double excess_mean = 0, excess_std = 0;
  double redundant_pairs_mean = 0, redundant_pairs_std = 0;
  double redundancy_mean = 0, redundancy_std = 0;
};

struct AblationSummary {
  std::vector<VariantStats> variants;
  std::vector<AblationCell> cells;
};

struct AblationInput {
  ProblemInstance instance;  // Full-variant weights and similarity
  FeatureSet features;
  Matrix raw_kernel_features;  // z-scored, pre-PCA; used by NoPCA
  SimilarityMethod method = SimilarityMethod::QuantumFidelity;
  double angle_scale = 1.0;
};

// Runs variant x repeat cells: applies the weight override (or recomputes
// similarity for NoPCA), rebuilds the QUBO, solves with SA at the given
// config using seed = base_seed + repeat, audits, and aggregates.
AblationSummary run_ablation(const AblationInput& input,
                             const std::vector<AblationVariant>& variants,
                             int repeats, std::uint64_t base_seed,
                             const AnnealConfig& anneal);

ProblemInstance apply_variant(const AblationInput& input, AblationVariant v);

void write_ablation_csv(const AblationSummary& summary, std::ostream& out);
void write_ablation_csv(const AblationSummary& summary,
                        const std::string& path);
void write_ablation_cells_json(const AblationSummary& summary,
                               const std::string& path);

}  // namespace skualloc
