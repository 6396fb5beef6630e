#include "skualloc/kernel.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>

#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

StateVector StateVector::zero_state(int n_qubits) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  s.amplitudes[0] = {1.0, 0.0};
  return s;
}

double StateVector::norm_sq() const {
  double acc = 0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return acc;
}

void apply_rx(StateVector& state, int qubit, double angle) {
  if (qubit < 0 || qubit >= state.n_qubits)
    throw ArgumentError("apply_rx: qubit index out of range");
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::complex<double> m_is(0.0, -s);  // -i sin(t/2)
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t dim = state.amplitudes.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      auto& a0 = state.amplitudes[base + k];
      auto& a1 = state.amplitudes[base + k + stride];
      const auto t0 = c * a0 + m_is * a1;
      const auto t1 = m_is * a0 + c * a1;
      a0 = t0;
      a1 = t1;
    }
  }
}

double pair_fidelity(const std::vector<double>& x1,
                     const std::vector<double>& x2) {
  if (x1.size() != static_cast<size_t>(kKernelQubits) || x1.size() != x2.size())
    throw ArgumentError("pair_fidelity: expected two length-5 vectors");
  auto state = StateVector::zero_state(kKernelQubits);
  for (int q = 0; q < kKernelQubits; ++q) apply_rx(state, q, x1[q]);
  for (int q = 0; q < kKernelQubits; ++q) apply_rx(state, q, -x2[q]);
  return std::norm(state.amplitudes[0]);
}

SimilarityMatrix similarity_matrix(const EmbeddingMatrix& embeddings,
                                   SimilarityMethod method,
                                   double angle_scale) {
  const int n = embeddings.n;
  if (n == 0) throw ArgumentError("similarity_matrix: empty embeddings");

  SimilarityMatrix sim;
  sim.n = n;
  sim.method = method;
  sim.values.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) sim.values[static_cast<size_t>(i) * n + i] = 1.0;

  for (int i = 0; i < n; ++i) {
    auto xi = embeddings.row(i);
    for (int j = i + 1; j < n; ++j) {
      auto xj = embeddings.row(j);
      double s;
      if (method == SimilarityMethod::QuantumFidelity) {
        auto a = xi, b = xj;
        for (auto& v : a) v *= angle_scale;
        for (auto& v : b) v *= angle_scale;
        s = pair_fidelity(a, b);
      } else {
        double dot = 0, na = 0, nb = 0;
        for (int k = 0; k < embeddings.dims; ++k) {
          dot += xi[k] * xj[k];
          na += xi[k] * xi[k];
          nb += xj[k] * xj[k];
        }
        s = (na > 0 && nb > 0) ? dot / std::sqrt(na * nb) : 0.0;
      }
      sim.values[static_cast<size_t>(i) * n + j] = s;
      sim.values[static_cast<size_t>(j) * n + i] = s;
    }
  }
  return sim;
}

void write_similarity_csv(const SimilarityMatrix& sim, std::ostream& out) {
  for (int i = 0; i < sim.n; ++i) {
    for (int j = 0; j < sim.n; ++j) {
      if (j) out << ',';
      out << format_double(sim.at(i, j));
    }
    out << "\n";
  }
}

void write_similarity_csv(const SimilarityMatrix& sim,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write similarity file: " + path);
  write_similarity_csv(sim, out);
}

namespace {
constexpr char kSimMagic[4] = {'S', 'I', 'M', '1'};
}

void write_similarity_bin(const SimilarityMatrix& sim,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write similarity file: " + path);
  out.write(kSimMagic, 4);
  std::uint32_t n = static_cast<std::uint32_t>(sim.n);
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(sim.values.data()),
            static_cast<std::streamsize>(sim.values.size() * sizeof(double)));
}

SimilarityMatrix read_similarity_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open similarity file: " + path);
  char magic[4];
  std::uint32_t n = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  if (!in || std::memcmp(magic, kSimMagic, 4) != 0)
    throw IoError("bad similarity file header: " + path);
  SimilarityMatrix sim;
  sim.n = static_cast<int>(n);
  sim.values.resize(static_cast<size_t>(n) * n);
  in.read(reinterpret_cast<char*>(sim.values.data()),
          static_cast<std::streamsize>(sim.values.size() * sizeof(double)));
  if (!in) throw IoError("truncated similarity file: " + path);
  return sim;
}

}  // namespace skualloc
