#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "skualloc/catalog.hpp"
#include "skualloc/errors.hpp"

using namespace skualloc;

TEST_CASE("base catalog is deterministic and respects value ranges") {
  auto a = make_base_catalog(42, 100);
  auto b = make_base_catalog(42, 100);
  auto c = make_base_catalog(43, 100);
  REQUIRE(a.size() == 100);
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sku_id == b[i].sku_id);
    CHECK(a[i].price == b[i].price);
    CHECK(a[i].units_sold == b[i].units_sold);
    if (a[i].price != c[i].price) differs = true;
  }
  CHECK(differs);

  int counts[3] = {0, 0, 0};
  for (const auto& r : a) {
    ++counts[static_cast<int>(r.category)];
    CHECK(r.price >= 5.0);
    CHECK(r.price <= 100.0);
    CHECK(r.manufacturing_cost >= 0.2 * r.price);
    CHECK(r.manufacturing_cost <= 0.6 * r.price);
    CHECK(r.units_sold >= 50.0);
    CHECK(r.units_sold <= 1000.0);
    CHECK(r.lead_time >= 1);
    CHECK(r.lead_time <= 30);
    CHECK(r.defect_rate >= 0.0002);
    CHECK(r.defect_rate <= 0.0494);
    CHECK(r.units_sold == doctest::Approx(std::floor(r.units_sold)));
  }
  CHECK(counts[static_cast<int>(Category::Skincare)] == 38);
  CHECK(counts[static_cast<int>(Category::Haircare)] == 32);
  CHECK(counts[static_cast<int>(Category::Cosmetics)] == 30);
}

TEST_CASE("synthesis hits the target count and category mix") {
  auto base = make_base_catalog(7);
  SynthesisSpec spec;
  spec.target_count = 500;
  spec.seed = 9;
  auto out = synthesize_catalog(base, spec);
  REQUIRE(out.size() == 500);

  int counts[3] = {0, 0, 0};
  for (const auto& r : out) ++counts[static_cast<int>(r.category)];
  CHECK(counts[static_cast<int>(Category::Skincare)] == 190);
  CHECK(counts[static_cast<int>(Category::Haircare)] == 160);
  CHECK(counts[static_cast<int>(Category::Cosmetics)] == 150);

  // fresh unique ids, clamped ranges
  std::vector<std::string> ids;
  for (const auto& r : out) {
    ids.push_back(r.sku_id);
    CHECK(r.lead_time >= 1);
    CHECK(r.lead_time <= 30);
    CHECK(r.defect_rate >= 0.0002);
    CHECK(r.defect_rate <= 0.0494);
    CHECK(r.units_sold >= 1.0);
  }
  std::sort(ids.begin(), ids.end());
  CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());

  auto again = synthesize_catalog(base, spec);
  REQUIRE(again.size() == out.size());
  for (size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].sku_id == again[i].sku_id);
    CHECK(out[i].price == again[i].price);
    CHECK(out[i].units_sold == again[i].units_sold);
  }
}

TEST_CASE("synthesis validates its inputs") {
  auto base = make_base_catalog(1, 10);
  SynthesisSpec spec;
  spec.target_count = 5;  // below base size
  CHECK_THROWS_AS(synthesize_catalog(base, spec), ArgumentError);
  spec.target_count = 50;
  spec.skincare_frac = 0.5;  // mix sums to 1.12
  CHECK_THROWS_AS(synthesize_catalog(base, spec), ArgumentError);
  CHECK_THROWS_AS(synthesize_catalog({}, SynthesisSpec{}), ArgumentError);
}

TEST_CASE("catalog CSV round-trips exactly") {
  auto cat = make_base_catalog(3, 20);
  std::ostringstream out;
  write_catalog(cat, out);
  std::istringstream in(out.str());
  auto result = ingest_catalog(in);
  REQUIRE(result.records.size() == cat.size());
  CHECK(result.dropped_rows == 0);
  for (size_t i = 0; i < cat.size(); ++i) {
    CHECK(result.records[i].sku_id == cat[i].sku_id);
    CHECK(result.records[i].category == cat[i].category);
    CHECK(result.records[i].price == cat[i].price);
    CHECK(result.records[i].manufacturing_cost == cat[i].manufacturing_cost);
    CHECK(result.records[i].shipping_cost == cat[i].shipping_cost);
    CHECK(result.records[i].other_cost == cat[i].other_cost);
    CHECK(result.records[i].units_sold == cat[i].units_sold);
    CHECK(result.records[i].production_volume == cat[i].production_volume);
    CHECK(result.records[i].inventory_level == cat[i].inventory_level);
    CHECK(result.records[i].lead_time == cat[i].lead_time);
    CHECK(result.records[i].defect_rate == cat[i].defect_rate);
    CHECK(result.records[i].inspection == cat[i].inspection);
  }
}

TEST_CASE("ingest drops incomplete rows and reports parse errors") {
  std::string header(kCatalogHeader);
  SUBCASE("empty cell drops the row") {
    std::istringstream in(header +
                          "\nA,haircare,10,2,1,1,5,10,3,4,0.01,pass"
                          "\nB,haircare,,2,1,1,5,10,3,4,0.01,pass\n");
    auto r = ingest_catalog(in);
    CHECK(r.records.size() == 1);
    CHECK(r.dropped_rows == 1);
  }
  SUBCASE("bad numeric raises ParseError with the line number") {
    std::istringstream in(header +
                          "\nA,haircare,10,2,1,1,5,10,3,4,0.01,pass"
                          "\nB,haircare,oops,2,1,1,5,10,3,4,0.01,pass\n");
    try {
      ingest_catalog(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 3);
    }
  }
  SUBCASE("wrong header raises SchemaError") {
    std::istringstream in("sku,price\nA,1\n");
    CHECK_THROWS_AS(ingest_catalog(in), SchemaError);
  }
  SUBCASE("comment lines are ignored") {
    std::istringstream in("# seed = 1\n" + header +
                          "\n# note\nA,haircare,10,2,1,1,5,10,3,4,0.01,pass\n");
    auto r = ingest_catalog(in);
    CHECK(r.records.size() == 1);
  }
}
