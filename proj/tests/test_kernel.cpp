#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "skualloc/errors.hpp"
#include "skualloc/kernel.hpp"

using namespace skualloc;

namespace {

constexpr double kPi = 3.14159265358979323846;

double closed_form(const std::vector<double>& x1,
                   const std::vector<double>& x2) {
  double p = 1.0;
  for (int k = 0; k < kKernelQubits; ++k) {
    const double c = std::cos((x1[k] - x2[k]) / 2.0);
    p *= c * c;
  }
  return p;
}

std::vector<double> random_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::vector<double> v(kKernelQubits);
  for (auto& x : v) x = u(rng);
  return v;
}

EmbeddingMatrix embedding_from(const std::vector<std::vector<double>>& rows) {
  EmbeddingMatrix e;
  e.n = static_cast<int>(rows.size());
  e.dims = static_cast<int>(rows[0].size());
  for (const auto& r : rows)
    e.values.insert(e.values.end(), r.begin(), r.end());
  e.explained_variance.assign(e.dims, 1.0);
  return e;
}

}  // namespace

TEST_CASE("rx preserves the statevector norm") {
  auto s = StateVector::zero_state(kKernelQubits);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int step = 0; step < 25; ++step) {
    apply_rx(s, step % kKernelQubits, u(rng));
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_rx(s, 5, 1.0), ArgumentError);
}

TEST_CASE("fidelity of identical and orthogonal rotations") {
  std::vector<double> zero(kKernelQubits, 0.0);
  CHECK(pair_fidelity(zero, zero) == doctest::Approx(1.0));

  std::vector<double> x{0.3, -1.2, 2.5, 0.0, 4.4};
  CHECK(pair_fidelity(x, x) == doctest::Approx(1.0).epsilon(1e-12));

  // one wire rotated by pi relative to the other kills the fidelity
  auto y = x;
  y[2] += kPi;
  CHECK(pair_fidelity(x, y) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(pair_fidelity({1.0, 2.0}, {1.0, 2.0}), ArgumentError);
}

TEST_CASE("statevector fidelity equals the cosine product") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_vec(rng);
    auto b = random_vec(rng);
    const double f = pair_fidelity(a, b);
    CHECK(f == doctest::Approx(closed_form(a, b)).epsilon(1e-12));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(pair_fidelity(b, a) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("fidelity is 2*pi periodic in each angle difference") {
  std::mt19937_64 rng(8);
  auto a = random_vec(rng);
  auto b = random_vec(rng);
  auto shifted = b;
  for (auto& v : shifted) v += 2.0 * kPi;
  CHECK(pair_fidelity(a, shifted) ==
        doctest::Approx(pair_fidelity(a, b)).epsilon(1e-9));
}

TEST_CASE("quantum similarity matrix properties") {
  std::mt19937_64 rng(77);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 12; ++i) rows.push_back(random_vec(rng));
  auto emb = embedding_from(rows);

  auto sim = similarity_matrix(emb, SimilarityMethod::QuantumFidelity);
  REQUIRE(sim.n == 12);
  for (int i = 0; i < sim.n; ++i) {
    CHECK(sim.at(i, i) == 1.0);
    for (int j = 0; j < sim.n; ++j) {
      CHECK(sim.at(i, j) == sim.at(j, i));
      CHECK(sim.at(i, j) >= 0.0);
      CHECK(sim.at(i, j) <= 1.0 + 1e-12);
    }
  }
  // angle_scale rescales the rotation angles before the circuit
  auto scaled = similarity_matrix(emb, SimilarityMethod::QuantumFidelity, 0.5);
  auto a = rows[0], b = rows[1];
  for (auto& v : a) v *= 0.5;
  for (auto& v : b) v *= 0.5;
  CHECK(scaled.at(0, 1) == doctest::Approx(closed_form(a, b)).epsilon(1e-12));
}

TEST_CASE("cosine similarity handles known and degenerate rows") {
  auto emb = embedding_from({{1, 0, 0, 0, 0},
                             {0, 1, 0, 0, 0},
                             {2, 0, 0, 0, 0},
                             {0, 0, 0, 0, 0},
                             {-3, 0, 0, 0, 0}});
  auto sim = similarity_matrix(emb, SimilarityMethod::Cosine);
  CHECK(sim.at(0, 1) == doctest::Approx(0.0));
  CHECK(sim.at(0, 2) == doctest::Approx(1.0));
  CHECK(sim.at(0, 4) == doctest::Approx(-1.0));
  CHECK(sim.at(0, 3) == 0.0);  // zero-norm row
  CHECK(sim.at(3, 3) == 1.0);  // diagonal stays unit
}
