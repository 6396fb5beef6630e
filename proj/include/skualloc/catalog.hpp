#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace skualloc {

enum class Category { Haircare, Skincare, Cosmetics };
enum class Inspection { Pass, Fail, Pending };

const char* to_string(Category c);
const char* to_string(Inspection i);
Category category_from_string(const std::string& s);
Inspection inspection_from_string(const std::string& s);

// One raw catalog row. Counts are stored as doubles so synthetic jitter and
// CSV round-trips stay exact; they are integral in practice.
struct SkuRecord {
  std::string sku_id;
  Category category = Category::Haircare;
  double price = 0;
  double manufacturing_cost = 0;
  double shipping_cost = 0;
  double other_cost = 0;
  double units_sold = 0;
  double production_volume = 0;
  double inventory_level = 0;
  int lead_time = 1;           // days, 1..30
  double defect_rate = 0;      // fraction
  Inspection inspection = Inspection::Pass;
};

struct IngestResult {
  std::vector<SkuRecord> records;
  int dropped_rows = 0;  // rows removed because a required field was empty
};

// Expected CSV header, comma separated.
extern const char* kCatalogHeader;

// Parses a catalog CSV. Rows with empty required cells are dropped and
// counted; a non-empty cell that fails to parse raises ParseError with the
// line number. A header mismatch raises SchemaError.
IngestResult ingest_catalog(const std::string& path);
IngestResult ingest_catalog(std::istream& in);

void write_catalog(const std::vector<SkuRecord>& records, std::ostream& out);
void write_catalog(const std::vector<SkuRecord>& records,
                   const std::string& path);

struct SynthesisSpec {
  int target_count = 500;
  double skincare_frac = 0.38;
  double haircare_frac = 0.32;
  double cosmetics_frac = 0.30;
  std::uint64_t seed = 0;
};

// Statistically plausible 100-SKU base catalog (category mix, value ranges
// and dispersion chosen to match the documented source data). Deterministic
// under the seed.
std::vector<SkuRecord> make_base_catalog(std::uint64_t seed,
                                         int count = 100);

// Expands `base` to spec.target_count rows by per-category resampling with a
// shared multiplicative log-normal jitter (sigma = 0.1) per row. Fresh unique
// sku_ids are assigned; bit-reproducible under a fixed seed.
std::vector<SkuRecord> synthesize_catalog(const std::vector<SkuRecord>& base,
                                          const SynthesisSpec& spec);

}  // namespace skualloc
