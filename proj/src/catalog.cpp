#include "skualloc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "skualloc/errors.hpp"
#include "skualloc/rng.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

const char* kCatalogHeader =
    "sku_id,category,price,manufacturing_cost,shipping_cost,other_cost,"
    "units_sold,production_volume,inventory_level,lead_time,defect_rate,"
    "inspection";

const char* to_string(Category c) {
  switch (c) {
    case Category::Haircare:
      return "haircare";
    case Category::Skincare:
      return "skincare";
    case Category::Cosmetics:
      return "cosmetics";
  }
  return "?";
}

const char* to_string(Inspection i) {
  switch (i) {
    case Inspection::Pass:
      return "pass";
    case Inspection::Fail:
      return "fail";
    case Inspection::Pending:
      return "pending";
  }
  return "?";
}

Category category_from_string(const std::string& s) {
  if (s == "haircare") return Category::Haircare;
  if (s == "skincare") return Category::Skincare;
  if (s == "cosmetics") return Category::Cosmetics;
  throw ArgumentError("unknown category: " + s);
}

Inspection inspection_from_string(const std::string& s) {
  if (s == "pass") return Inspection::Pass;
  if (s == "fail") return Inspection::Fail;
  if (s == "pending") return Inspection::Pending;
  throw ArgumentError("unknown inspection result: " + s);
}

namespace {

double parse_number(const std::string& cell, int line) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    throw ParseError("unparsable numeric cell '" + cell + "'", line);
  }
  if (pos != cell.size())
    throw ParseError("unparsable numeric cell '" + cell + "'", line);
  return v;
}

}  // namespace

IngestResult ingest_catalog(std::istream& in) {
  std::string line;
  int line_no = 0;
  // leading '#' lines carry the embedded config echo
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    header = trim(line);
    if (!header.empty() && header[0] != '#') break;
    header.clear();
  }
  if (header.empty()) throw SchemaError("empty catalog file");
  if (header != kCatalogHeader)
    throw SchemaError("catalog header mismatch, got: " + header);

  IngestResult result;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 12)
      throw ParseError("expected 12 cells, got " + std::to_string(cells.size()),
                       line_no);
    bool missing = false;
    for (auto& c : cells) {
      c = trim(c);
      if (c.empty()) missing = true;
    }
    if (missing) {
      ++result.dropped_rows;
      continue;
    }
    SkuRecord r;
    r.sku_id = cells[0];
    try {
      r.category = category_from_string(cells[1]);
      r.inspection = inspection_from_string(cells[11]);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line_no);
    }
    r.price = parse_number(cells[2], line_no);
    r.manufacturing_cost = parse_number(cells[3], line_no);
    r.shipping_cost = parse_number(cells[4], line_no);
    r.other_cost = parse_number(cells[5], line_no);
    r.units_sold = parse_number(cells[6], line_no);
    r.production_volume = parse_number(cells[7], line_no);
    r.inventory_level = parse_number(cells[8], line_no);
    r.lead_time = static_cast<int>(parse_number(cells[9], line_no));
    r.defect_rate = parse_number(cells[10], line_no);
    result.records.push_back(std::move(r));
  }
  return result;
}

IngestResult ingest_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file: " + path);
  return ingest_catalog(in);
}

void write_catalog(const std::vector<SkuRecord>& records, std::ostream& out) {
  out << kCatalogHeader << "\n";
  for (const auto& r : records) {
    out << r.sku_id << ',' << to_string(r.category) << ','
        << format_double(r.price) << ',' << format_double(r.manufacturing_cost)
        << ',' << format_double(r.shipping_cost) << ','
        << format_double(r.other_cost) << ',' << format_double(r.units_sold)
        << ',' << format_double(r.production_volume) << ','
        << format_double(r.inventory_level) << ',' << r.lead_time << ','
        << format_double(r.defect_rate) << ',' << to_string(r.inspection)
        << "\n";
  }
}

void write_catalog(const std::vector<SkuRecord>& records,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write catalog file: " + path);
  write_catalog(records, out);
}

std::vector<SkuRecord> make_base_catalog(std::uint64_t seed, int count) {
  if (count < 1) throw ArgumentError("base catalog count must be positive");
  auto rng = make_rng(seed, 0x6261736543617400ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // category mix 38/32/30, largest-remainder rounding
  int n_skin = static_cast<int>(std::lround(count * 0.38));
  int n_hair = static_cast<int>(std::lround(count * 0.32));
  int n_cosm = count - n_skin - n_hair;

  std::vector<SkuRecord> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    SkuRecord r;
    r.sku_id = "SKU" + std::to_string(k);
    r.category = k < n_skin ? Category::Skincare
                 : k < n_skin + n_hair ? Category::Haircare
                                       : Category::Cosmetics;
    r.price = 5.0 + 95.0 * unit(rng);
    r.manufacturing_cost = r.price * (0.2 + 0.4 * unit(rng));
    r.shipping_cost = 1.0 + 9.0 * unit(rng);
    r.other_cost = 0.5 + 4.5 * unit(rng);
    r.units_sold = std::floor(50.0 + 950.0 * unit(rng));
    r.production_volume = std::floor(100.0 + 900.0 * unit(rng));
    r.inventory_level = std::floor(1.0 + 99.0 * unit(rng));
    r.lead_time = 1 + static_cast<int>(std::floor(30.0 * unit(rng)));
    r.lead_time = std::min(r.lead_time, 30);
    r.defect_rate = 0.0002 + (0.0494 - 0.0002) * unit(rng);
    double u = unit(rng);
    r.inspection = u < 0.30   ? Inspection::Pass
                   : u < 0.65 ? Inspection::Fail
                              : Inspection::Pending;
    out.push_back(std::move(r));
  }
  (void)n_cosm;
  return out;
}

std::vector<SkuRecord> synthesize_catalog(const std::vector<SkuRecord>& base,
                                          const SynthesisSpec& spec) {
  if (base.empty()) throw ArgumentError("base catalog is empty");
  if (spec.target_count < static_cast<int>(base.size()))
    throw ArgumentError("target_count below base catalog size");
  double mix = spec.skincare_frac + spec.haircare_frac + spec.cosmetics_frac;
  if (std::abs(mix - 1.0) > 1e-9)
    throw ArgumentError("category mix must sum to 1");

  std::vector<const SkuRecord*> by_cat[3];
  for (const auto& r : base)
    by_cat[static_cast<int>(r.category)].push_back(&r);

  const double fracs[3] = {spec.haircare_frac, spec.skincare_frac,
                           spec.cosmetics_frac};
  int counts[3];
  counts[0] = static_cast<int>(std::lround(spec.target_count * fracs[0]));
  counts[1] = static_cast<int>(std::lround(spec.target_count * fracs[1]));
  counts[2] = spec.target_count - counts[0] - counts[1];

  auto rng = make_rng(spec.seed, 0x73796e7468ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<SkuRecord> out;
  out.reserve(spec.target_count);
  int id = 0;
  for (int cat = 0; cat < 3; ++cat) {
    const auto& pool =
        by_cat[cat].empty()
            ? std::vector<const SkuRecord*>{&base[0]}  // degenerate base
            : by_cat[cat];
    for (int k = 0; k < counts[cat]; ++k) {
      const SkuRecord& src =
          *pool[static_cast<size_t>(unit(rng) * pool.size()) % pool.size()];
      // one log-normal factor per row, shared across numeric columns, keeps
      // cross-column rank structure intact
      double f = std::exp(0.1 * gauss(rng));
      SkuRecord r = src;
      r.sku_id = "SKU" + std::to_string(id++);
      r.category = static_cast<Category>(cat);
      r.price *= f;
      r.manufacturing_cost *= f;
      r.shipping_cost *= f;
      r.other_cost *= f;
      r.units_sold = std::max(1.0, std::floor(src.units_sold * f));
      r.production_volume = std::max(1.0, std::floor(src.production_volume * f));
      r.inventory_level = std::max(0.0, std::floor(src.inventory_level * f));
      r.lead_time = std::clamp(
          static_cast<int>(std::lround(src.lead_time * f)), 1, 30);
      r.defect_rate = std::clamp(src.defect_rate * f, 0.0002, 0.0494);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace skualloc
