#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "skualloc/errors.hpp"
#include "skualloc/qubo.hpp"
#include "test_helpers.hpp"

using namespace skualloc;
using testutil::brute_force;
using testutil::direct_energy;
using testutil::random_instance;

namespace {

PenaltyWeights zero_weights() {
  PenaltyWeights w;
  w.margin = w.similarity = w.risk = w.inventory = w.defect = 0.0;
  w.capacity = w.cardinality = w.sku_limit = 0.0;
  w.top5 = 0.0;  // explicit zero, not the derive-sentinel
  return w;
}

}  // namespace

TEST_CASE("top-5 ranks by margin times demand with index tie-break") {
  // products: 12, 12, 30, 2, 8, 8, 40 -> top5 = {6,2,0,1,4} sorted
  std::vector<double> u{3, 4, 5, 1, 2, 4, 8};
  std::vector<double> d{4, 3, 6, 2, 4, 2, 5};
  CHECK(compute_top5(u, d) == std::vector<int>{0, 1, 2, 4, 6});
  CHECK(compute_top5({1, 1}, {5, 5}) == std::vector<int>{0, 1});
}

TEST_CASE("top-5 weight sentinel derives from the largest margin product") {
  auto inst = random_instance(6, 1, 2, 100.0, 3, 5);
  double mx = 0;
  for (int i = 0; i < inst.n_skus; ++i)
    mx = std::max(mx, std::abs(inst.unit_margin[i] * inst.demand[i]));
  CHECK(inst.top5_weight() == doctest::Approx(1e9 * mx));
  inst.weights.top5 = 0.0;
  CHECK(inst.top5_weight() == 0.0);
  inst.weights.top5 = 123.5;
  CHECK(inst.top5_weight() == 123.5);
}

TEST_CASE("hand-checked margin and similarity coefficients") {
  ProblemInstance inst;
  inst.n_skus = 2;
  inst.periods = 1;
  inst.slack_bits = 1;
  inst.capacity = 10.0;
  inst.sku_target = 1;
  inst.weights = zero_weights();
  inst.weights.margin = 1.0;
  inst.weights.similarity = 0.5;
  inst.unit_margin = {3.0, 2.0};
  inst.demand = {2.0, 3.0};
  inst.unified_risk = {0.0, 0.0};
  inst.inventory_risk = {0.0, 0.0};
  inst.defect_risk = {0.0, 0.0};
  inst.similarity.n = 2;
  inst.similarity.values = {1.0, 1.0, 1.0, 1.0};
  finalize_instance(inst);

  auto model = build_qubo(inst);
  CHECK(model.get(0, 0) == doctest::Approx(-6.0));  // -U0*D0
  CHECK(model.get(1, 1) == doctest::Approx(-6.0));  // -U1*D1
  CHECK(model.get(0, 1) == doctest::Approx(0.5));   // lambda_s * S01
  CHECK(model.get(0, 2) == 0.0);                    // no capacity weight
  CHECK(model.offset == 0.0);
}

TEST_CASE("hand-checked slack-encoded capacity penalty") {
  ProblemInstance inst;
  inst.n_skus = 1;
  inst.periods = 1;
  inst.slack_bits = 2;
  inst.capacity = 2.0;
  inst.sku_target = 1;
  inst.weights = zero_weights();
  inst.weights.capacity = 1.0;
  inst.unit_margin = {1.0};
  inst.demand = {3.0};
  inst.unified_risk = {0.0};
  inst.inventory_risk = {0.0};
  inst.defect_risk = {0.0};
  inst.similarity.n = 1;
  inst.similarity.values = {1.0};
  finalize_instance(inst);

  auto model = build_qubo(inst);
  // residual = 3 x + s1 + 2 s2 - 2; selected patterns checked by hand
  CHECK(energy(model, {1, 0, 0}) == doctest::Approx(1.0));   // (3-2)^2
  CHECK(energy(model, {0, 0, 1}) == doctest::Approx(0.0));   // (2-2)^2
  CHECK(energy(model, {1, 1, 1}) == doctest::Approx(16.0));  // (6-2)^2
  CHECK(energy(model, {0, 0, 0}) == doctest::Approx(4.0));   // (0-2)^2
}

TEST_CASE("QUBO energy equals the closed-form objective") {
  std::mt19937_64 rng(31);
  for (unsigned seed : {11u, 12u, 13u}) {
    auto inst = random_instance(6, 3, 4, 120.0, 3, seed);
    auto model = build_qubo(inst);
    REQUIRE(model.n_vars == inst.n_vars());
    for (int trial = 0; trial < 200; ++trial) {
      auto bits = testutil::random_bits(model.n_vars, rng);
      const double via_model = energy(model, bits);
      const double via_formula = direct_energy(inst, bits);
      CHECK(via_model ==
            doctest::Approx(via_formula).epsilon(1e-9).scale(
                std::max(1.0, std::abs(via_formula))));
    }
  }
}

TEST_CASE("brute-force optimum matches the independent evaluator") {
  for (unsigned seed : {1u, 2u}) {
    auto inst = random_instance(4, 2, 3, 150.0, 2, seed);
    auto model = build_qubo(inst);
    auto [model_min, model_bits] = brute_force(
        model.n_vars, [&](const std::vector<std::uint8_t>& b) {
          return energy(model, b);
        });
    auto [direct_min, direct_bits] = brute_force(
        model.n_vars, [&](const std::vector<std::uint8_t>& b) {
          return direct_energy(inst, b);
        });
    CHECK(model_min == doctest::Approx(direct_min)
                           .epsilon(1e-9)
                           .scale(std::max(1.0, std::abs(direct_min))));
    CHECK(model_bits == direct_bits);
    // both top-5 SKUs must be selected in every period of the optimum
    for (int t = 0; t < inst.periods; ++t)
      for (int i : inst.top5) CHECK(model_bits[inst.var_decision(t, i)] == 1);
  }
}

TEST_CASE("slack brute force realizes the exact distance penalty") {
  // single decision bit forced on, so residual = D + slack - C
  for (int B = 1; B <= 6; ++B) {
    ProblemInstance inst;
    inst.n_skus = 1;
    inst.periods = 1;
    inst.slack_bits = B;
    inst.sku_target = 1;
    inst.weights = zero_weights();
    inst.weights.capacity = 3.0;
    inst.unit_margin = {1.0};
    inst.demand = {5.0};
    inst.unified_risk = {0.0};
    inst.inventory_risk = {0.0};
    inst.defect_risk = {0.0};
    inst.similarity.n = 1;
    inst.similarity.values = {1.0};

    for (double C : {3.0, 5.0, 5.0 + (1 << B) - 1, 5.0 + (1 << B) + 4}) {
      inst.capacity = C;
      inst.top5.clear();
      finalize_instance(inst);
      auto model = build_qubo(inst);

      double best = 1e300;
      for (int s = 0; s < (1 << B); ++s) {
        std::vector<std::uint8_t> bits(1 + B, 0);
        bits[0] = 1;
        for (int b = 0; b < B; ++b) bits[1 + b] = (s >> b) & 1;
        best = std::min(best, energy(model, bits));
      }
      const double resid = C - 5.0;  // representable iff in [0, 2^B - 1]
      double expect = 0.0;
      if (resid < 0) expect = 3.0 * resid * resid;
      else if (resid > (1 << B) - 1) {
        const double d = resid - ((1 << B) - 1);
        expect = 3.0 * d * d;
      }
      CHECK(best == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("decode splits decision and slack bits") {
  auto inst = random_instance(3, 2, 3, 50.0, 2, 9);
  std::vector<std::uint8_t> bits(inst.n_vars(), 0);
  bits[inst.var_decision(0, 1)] = 1;
  bits[inst.var_decision(1, 0)] = 1;
  bits[inst.var_decision(1, 2)] = 1;
  bits[inst.var_slack(0, 0)] = 1;
  bits[inst.var_slack(0, 2)] = 1;
  bits[inst.var_slack(1, 1)] = 1;
  auto plan = decode(bits, inst);
  CHECK(plan.selected[0] == std::vector<int>{1});
  CHECK(plan.selected[1] == std::vector<int>{0, 2});
  CHECK(plan.slack[0] == 5);
  CHECK(plan.slack[1] == 2);

  std::vector<std::uint8_t> dec(inst.periods * inst.n_skus, 0);
  dec[0 * 3 + 1] = 1;
  dec[1 * 3 + 2] = 1;
  auto plan2 = decode_decisions(dec, inst);
  CHECK(plan2.selected[0] == std::vector<int>{1});
  CHECK(plan2.selected[1] == std::vector<int>{2});
  CHECK(plan2.slack[0] == 0);

  CHECK_THROWS_AS(decode({1, 0}, inst), ArgumentError);
}

TEST_CASE("model accumulates symmetric keys and drops dust") {
  QuboModel m;
  m.n_vars = 3;
  m.add(2, 1, 1.5);
  m.add(1, 2, 0.5);
  CHECK(m.get(1, 2) == doctest::Approx(2.0));
  CHECK(m.get(2, 1) == doctest::Approx(2.0));

  auto inst = random_instance(4, 1, 2, 60.0, 2, 77);
  auto model = build_qubo(inst);
  for (const auto& [k, c] : model.coefficients) {
    (void)k;
    CHECK(std::abs(c) >= 1e-12);
    CHECK(std::isfinite(c));
  }
}

TEST_CASE("instance validation catches malformed inputs") {
  auto inst = random_instance(3, 2, 2, 50.0, 2, 3);
  auto bad = inst;
  bad.demand.pop_back();
  CHECK_THROWS_AS(finalize_instance(bad), BuildError);
  bad = inst;
  bad.similarity.n = 2;
  CHECK_THROWS_AS(finalize_instance(bad), BuildError);
  bad = inst;
  bad.sku_target = 0;
  CHECK_THROWS_AS(finalize_instance(bad), BuildError);
  bad = inst;
  bad.periods = 0;
  CHECK_THROWS_AS(finalize_instance(bad), BuildError);
}

TEST_CASE("refinement never raises the energy and is a fixpoint") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto inst = random_instance(6, 2, 4, 120.0, 3, seed);
    auto model = build_qubo(inst);
    std::mt19937_64 rng(seed * 1000 + 7);
    for (int trial = 0; trial < 50; ++trial) {
      auto bits = testutil::random_bits(inst.n_vars(), rng);
      auto refined = refine_solution(inst, bits);
      CHECK(refined.size() == bits.size());
      CHECK(energy(model, refined) <= energy(model, bits) + 1e-9);
      CHECK(refine_solution(inst, refined) == refined);
    }
  }
}

TEST_CASE("refinement re-encodes slack across binary-carry boundaries") {
  // Slack 1024 when the residual wants 998 is unreachable by downhill
  // single-bit flips; the re-encode jumps straight to the closest integer.
  ProblemInstance inst;
  inst.n_skus = 2;
  inst.periods = 1;
  inst.slack_bits = 11;
  inst.capacity = 1000.0;
  inst.sku_target = 1;
  inst.weights.top5 = 0.0;
  inst.weights.sku_limit = 0.0;
  inst.unit_margin = {4.0, 3.0};
  inst.demand = {2.0, 40.0};
  inst.unified_risk = {0.1, 0.1};
  inst.inventory_risk = {0.0, 0.0};
  inst.defect_risk = {0.0, 0.0};
  inst.similarity.n = 2;
  inst.similarity.values = {1.0, 0.0, 0.0, 1.0};
  finalize_instance(inst);

  std::vector<std::uint8_t> bits(inst.n_vars(), 0);
  bits[inst.var_decision(0, 0)] = 1;  // load 2, ideal slack 998
  bits[inst.var_slack(0, 10)] = 1;    // stuck at 1024
  auto refined = refine_solution(inst, bits);
  auto plan = decode(refined, inst);
  REQUIRE(!plan.selected[0].empty());
  long long load = 0;
  for (int i : plan.selected[0]) load += llround(inst.demand[i]);
  CHECK(plan.slack[0] == 1000 - load);

  // without a capacity term the slack bits are left untouched
  auto open = inst;
  open.weights.capacity = 0.0;
  auto same = refine_solution(open, bits);
  for (int b = 0; b < open.slack_bits; ++b)
    CHECK(same[open.var_slack(0, b)] == bits[open.var_slack(0, b)]);

  CHECK_THROWS_AS(refine_solution(inst, {1, 0}), ArgumentError);
}
