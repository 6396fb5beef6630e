#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "skualloc/pca.hpp"

namespace skualloc {

inline constexpr int kKernelQubits = 5;

struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amplitudes;  // size 2^n_qubits

  static StateVector zero_state(int n_qubits);
  double norm_sq() const;
};

// Single-qubit X rotation on one wire:
//   RX(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]
void apply_rx(StateVector& state, int qubit, double angle);

// P(all-zero) after RX(x1_k) then RX(-x2_k) on each of the 5 wires, via full
// statevector simulation. Equals prod_k cos^2((x1_k - x2_k)/2).
double pair_fidelity(const std::vector<double>& x1,
                     const std::vector<double>& x2);

enum class SimilarityMethod { QuantumFidelity, Cosine };

struct SimilarityMatrix {
  int n = 0;
  std::vector<double> values;  // dense n*n, symmetric, unit diagonal
  SimilarityMethod method = SimilarityMethod::QuantumFidelity;

  double at(int i, int j) const {
    return values[static_cast<size_t>(i) * n + j];
  }
};

// Pairwise similarity over embedding rows. The quantum method evaluates
// pair_fidelity once per unordered pair; cosine uses the dot-product cosine
// with zero-norm rows treated as similarity 0. angle_scale multiplies the
// embedding coordinates before the fidelity circuit (default pass-through).
SimilarityMatrix similarity_matrix(const EmbeddingMatrix& embeddings,
                                   SimilarityMethod method,
                                   double angle_scale = 1.0);

void write_similarity_csv(const SimilarityMatrix& sim, std::ostream& out);
void write_similarity_csv(const SimilarityMatrix& sim,
                          const std::string& path);

// Compact binary layout: 4-byte magic "SIM1", uint32 N (little endian), then
// N*N row-major IEEE doubles.
void write_similarity_bin(const SimilarityMatrix& sim,
                          const std::string& path);
SimilarityMatrix read_similarity_bin(const std::string& path);

}  // namespace skualloc
