#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "skualloc/catalog.hpp"

namespace skualloc {

// Engineered per-SKU metrics plus min-max normalized copies.
struct SkuFeatures {
  std::string sku_id;
  double total_cost = 0;      // manufacturing + shipping + other
  double unit_margin = 0;     // price - total_cost
  double demand = 0;          // units sold over the period
  double utilization = 0;     // units_sold / production_volume
  int overload = 0;           // 1 iff units_sold > production_volume
  double inventory_risk = 0;  // (inventory - units_sold) / units_sold
  int lead_time = 1;          // days, carried through for the kernel inputs
  int lead_time_risk = 0;     // 1 iff lead_time above the batch 75th pct
  double defect_risk = 0;     // defect_rate when inspection failed, else 0
  double unified_risk = 0;    // bounded [0,1] aggregate, see engineer_features
  double norm_total_cost = 0;
  double norm_unit_margin = 0;
  double norm_demand = 0;
  double norm_utilization = 0;
  double norm_inventory_risk = 0;
  double norm_defect_risk = 0;
};

struct FeatureSet {
  std::vector<SkuFeatures> rows;
  // sku_ids excluded because units_sold == 0 (inventory risk undefined)
  std::vector<std::string> excluded;
};

// Min-max scaling to [0,1]. A constant column maps to all zeros so downstream
// coefficients stay finite. Requires length >= 1.
std::vector<double> minmax_normalize(const std::vector<double>& column);

// Standard-score normalization (population variance). A zero-variance column
// maps to all zeros. Requires length >= 1.
std::vector<double> zscore_normalize(const std::vector<double>& column);

// Linear-interpolation percentile, p in [0,100].
double percentile(std::vector<double> values, double p);

// Applies the derived-metric formulas to a batch. LeadTimeRisk is computed
// against the 75th percentile of the batch's lead times. unified_risk is the
// min-max rescaled mean of (min-max InventoryRisk, min-max DefectRisk,
// LeadTimeRisk bit).
FeatureSet engineer_features(const std::vector<SkuRecord>& records);

void write_features(const FeatureSet& fs, std::ostream& out);
void write_features(const FeatureSet& fs, const std::string& path);

}  // namespace skualloc
