#include "skualloc/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

std::vector<double> minmax_normalize(const std::vector<double>& column) {
  if (column.empty()) throw ArgumentError("minmax_normalize: empty column");
  auto [mn_it, mx_it] = std::minmax_element(column.begin(), column.end());
  double mn = *mn_it, mx = *mx_it;
  std::vector<double> out(column.size(), 0.0);
  if (mx == mn) return out;  // constant column maps to zeros
  double inv = 1.0 / (mx - mn);
  for (size_t i = 0; i < column.size(); ++i) out[i] = (column[i] - mn) * inv;
  return out;
}

std::vector<double> zscore_normalize(const std::vector<double>& column) {
  if (column.empty()) throw ArgumentError("zscore_normalize: empty column");
  double mean =
      std::accumulate(column.begin(), column.end(), 0.0) / column.size();
  double var = 0;
  for (double v : column) var += (v - mean) * (v - mean);
  var /= column.size();  // population variance
  std::vector<double> out(column.size(), 0.0);
  if (var <= 0) return out;
  double inv = 1.0 / std::sqrt(var);
  for (size_t i = 0; i < column.size(); ++i) out[i] = (column[i] - mean) * inv;
  return out;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw ArgumentError("percentile: empty input");
  std::sort(values.begin(), values.end());
  double rank = p / 100.0 * (values.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(rank));
  size_t hi = static_cast<size_t>(std::ceil(rank));
  double frac = rank - lo;
  return values[lo] + frac * (values[hi] - values[lo]);
}

FeatureSet engineer_features(const std::vector<SkuRecord>& records) {
  if (records.empty()) throw ArgumentError("engineer_features: empty input");

  std::vector<double> lead_times;
  lead_times.reserve(records.size());
  for (const auto& r : records) lead_times.push_back(r.lead_time);
  double l75 = percentile(lead_times, 75.0);

  FeatureSet fs;
  for (const auto& r : records) {
    if (r.units_sold == 0) {
      fs.excluded.push_back(r.sku_id);
      continue;
    }
    SkuFeatures f;
    f.sku_id = r.sku_id;
    f.total_cost = r.manufacturing_cost + r.shipping_cost + r.other_cost;
    f.unit_margin = r.price - f.total_cost;
    f.demand = r.units_sold;
    f.utilization = r.units_sold / r.production_volume;
    f.overload = r.units_sold > r.production_volume ? 1 : 0;
    f.inventory_risk = (r.inventory_level - r.units_sold) / r.units_sold;
    f.lead_time = r.lead_time;
    f.lead_time_risk = r.lead_time > l75 ? 1 : 0;
    f.defect_risk = r.inspection == Inspection::Fail ? r.defect_rate : 0.0;
    fs.rows.push_back(std::move(f));
  }
  if (fs.rows.empty())
    throw ArgumentError("engineer_features: all rows have zero units_sold");

  auto column = [&](auto getter) {
    std::vector<double> c;
    c.reserve(fs.rows.size());
    for (const auto& f : fs.rows) c.push_back(getter(f));
    return c;
  };

  auto norm_cost = minmax_normalize(
      column([](const SkuFeatures& f) { return f.total_cost; }));
  auto norm_margin = minmax_normalize(
      column([](const SkuFeatures& f) { return f.unit_margin; }));
  auto norm_demand =
      minmax_normalize(column([](const SkuFeatures& f) { return f.demand; }));
  auto norm_util = minmax_normalize(
      column([](const SkuFeatures& f) { return f.utilization; }));
  auto norm_inv = minmax_normalize(
      column([](const SkuFeatures& f) { return f.inventory_risk; }));
  auto norm_def = minmax_normalize(
      column([](const SkuFeatures& f) { return f.defect_risk; }));

  // unified risk: min-max rescale of the mean of the three bounded components
  std::vector<double> agg(fs.rows.size());
  for (size_t i = 0; i < fs.rows.size(); ++i)
    agg[i] = (norm_inv[i] + norm_def[i] + fs.rows[i].lead_time_risk) / 3.0;
  auto unified = minmax_normalize(agg);

  for (size_t i = 0; i < fs.rows.size(); ++i) {
    auto& f = fs.rows[i];
    f.norm_total_cost = norm_cost[i];
    f.norm_unit_margin = norm_margin[i];
    f.norm_demand = norm_demand[i];
    f.norm_utilization = norm_util[i];
    f.norm_inventory_risk = norm_inv[i];
    f.norm_defect_risk = norm_def[i];
    f.unified_risk = unified[i];
  }
  return fs;
}

void write_features(const FeatureSet& fs, std::ostream& out) {
  out << "sku_id,total_cost,unit_margin,demand,utilization,overload,"
         "inventory_risk,lead_time,lead_time_risk,defect_risk,unified_risk,"
         "norm_total_cost,norm_unit_margin,norm_demand,norm_utilization,"
         "norm_inventory_risk,norm_defect_risk\n";
  for (const auto& f : fs.rows) {
    out << f.sku_id << ',' << format_double(f.total_cost) << ','
        << format_double(f.unit_margin) << ',' << format_double(f.demand)
        << ',' << format_double(f.utilization) << ',' << f.overload << ','
        << format_double(f.inventory_risk) << ',' << f.lead_time << ','
        << f.lead_time_risk << ',' << format_double(f.defect_risk) << ','
        << format_double(f.unified_risk) << ','
        << format_double(f.norm_total_cost) << ','
        << format_double(f.norm_unit_margin) << ','
        << format_double(f.norm_demand) << ','
        << format_double(f.norm_utilization) << ','
        << format_double(f.norm_inventory_risk) << ','
        << format_double(f.norm_defect_risk) << "\n";
  }
}

void write_features(const FeatureSet& fs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write features file: " + path);
  write_features(fs, out);
}

}  // namespace skualloc
