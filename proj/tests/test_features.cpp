#include <cmath>

#include "doctest.h"
#include "skualloc/catalog.hpp"
#include "skualloc/errors.hpp"
#include "skualloc/features.hpp"

using namespace skualloc;

namespace {

SkuRecord record(const std::string& id, double price, double mfg, double ship,
                 double other, double sold, double prod, double inv, int lead,
                 double defect, Inspection insp) {
  SkuRecord r;
  r.sku_id = id;
  r.price = price;
  r.manufacturing_cost = mfg;
  r.shipping_cost = ship;
  r.other_cost = other;
  r.units_sold = sold;
  r.production_volume = prod;
  r.inventory_level = inv;
  r.lead_time = lead;
  r.defect_rate = defect;
  r.inspection = insp;
  return r;
}

}  // namespace

TEST_CASE("minmax maps to [0,1] and constants to zero") {
  auto v = minmax_normalize({1.0, 2.0, 3.0});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.5));
  CHECK(v[2] == doctest::Approx(1.0));
  auto c = minmax_normalize({4.0, 4.0, 4.0});
  CHECK(c == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(minmax_normalize({}), ArgumentError);
}

TEST_CASE("zscore uses the population variance") {
  auto v = zscore_normalize({1.0, 2.0, 3.0});
  const double s = std::sqrt(2.0 / 3.0);  // population std of {1,2,3}
  CHECK(v[0] == doctest::Approx(-1.0 / s));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(1.0 / s));
  CHECK(zscore_normalize({5.0, 5.0}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("percentile interpolates linearly") {
  CHECK(percentile({1, 2, 3, 4}, 75.0) == doctest::Approx(3.25));
  CHECK(percentile({1, 2, 3, 4}, 0.0) == doctest::Approx(1.0));
  CHECK(percentile({1, 2, 3, 4}, 100.0) == doctest::Approx(4.0));
  CHECK(percentile({7}, 50.0) == doctest::Approx(7.0));
  CHECK_THROWS_AS(percentile({}, 50.0), ArgumentError);
}

TEST_CASE("engineered metrics match hand-computed values") {
  std::vector<SkuRecord> recs = {
      record("A", 20, 6, 2, 2, 100, 200, 150, 5, 0.01, Inspection::Fail),
      record("B", 50, 10, 5, 5, 300, 250, 60, 20, 0.02, Inspection::Pass),
      record("C", 10, 2, 1, 1, 50, 100, 50, 30, 0.03, Inspection::Fail),
      record("Z", 10, 2, 1, 1, 0, 100, 50, 2, 0.03, Inspection::Pass),
  };
  auto fs = engineer_features(recs);
  REQUIRE(fs.rows.size() == 3);
  REQUIRE(fs.excluded == std::vector<std::string>{"Z"});

  const auto& a = fs.rows[0];
  CHECK(a.total_cost == doctest::Approx(10.0));
  CHECK(a.unit_margin == doctest::Approx(10.0));
  CHECK(a.demand == doctest::Approx(100.0));
  CHECK(a.utilization == doctest::Approx(0.5));
  CHECK(a.overload == 0);
  CHECK(a.inventory_risk == doctest::Approx(0.5));
  CHECK(a.defect_risk == doctest::Approx(0.01));

  const auto& b = fs.rows[1];
  CHECK(b.overload == 1);  // sold 300 > produced 250
  CHECK(b.inventory_risk == doctest::Approx((60.0 - 300.0) / 300.0));
  CHECK(b.defect_risk == 0.0);  // passed inspection

  // lead times {5,20,30,2}: 75th percentile = 20 + 0.25*(30-20) = 22.5
  CHECK(a.lead_time_risk == 0);
  CHECK(b.lead_time_risk == 0);
  CHECK(fs.rows[2].lead_time_risk == 1);
}

TEST_CASE("unified risk matches an in-test recomputation") {
  auto recs = make_base_catalog(11, 40);
  auto fs = engineer_features(recs);

  std::vector<double> inv, def;
  for (const auto& f : fs.rows) {
    inv.push_back(f.inventory_risk);
    def.push_back(f.defect_risk);
  }
  auto ninv = minmax_normalize(inv);
  auto ndef = minmax_normalize(def);
  std::vector<double> agg(fs.rows.size());
  for (size_t i = 0; i < agg.size(); ++i)
    agg[i] = (ninv[i] + ndef[i] + fs.rows[i].lead_time_risk) / 3.0;
  auto expect = minmax_normalize(agg);
  for (size_t i = 0; i < agg.size(); ++i) {
    CHECK(fs.rows[i].unified_risk == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(fs.rows[i].unified_risk >= 0.0);
    CHECK(fs.rows[i].unified_risk <= 1.0);
  }
}

TEST_CASE("feature engineering rejects unusable batches") {
  CHECK_THROWS_AS(engineer_features({}), ArgumentError);
  auto z = record("Z", 10, 2, 1, 1, 0, 100, 50, 2, 0.03, Inspection::Pass);
  CHECK_THROWS_AS(engineer_features({z}), ArgumentError);
}
