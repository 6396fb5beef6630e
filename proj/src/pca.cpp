#include "skualloc/pca.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <ostream>

#include "skualloc/errors.hpp"
#include "skualloc/util.hpp"

namespace skualloc {

EmbeddingMatrix pca_reduce(const Matrix& features, int dims) {
  if (dims < 1 || dims > features.cols)
    throw ArgumentError("pca_reduce: dims out of range");
  if (features.rows < dims)
    throw ArgumentError("pca_reduce: need at least `dims` rows");

  Eigen::MatrixXd x(features.rows, features.cols);
  for (int r = 0; r < features.rows; ++r)
    for (int c = 0; c < features.cols; ++c) x(r, c) = features.at(r, c);

  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  // population covariance
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(features.rows);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw BuildError("pca_reduce: eigendecomposition failed");

  // eigenvalues ascending -> take the top `dims` in descending order
  EmbeddingMatrix emb;
  emb.n = features.rows;
  emb.dims = dims;
  emb.values.assign(static_cast<size_t>(emb.n) * dims, 0.0);
  emb.explained_variance.resize(dims);

  Eigen::MatrixXd proj(features.cols, dims);
  for (int k = 0; k < dims; ++k) {
    int src = features.cols - 1 - k;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    // deterministic sign: largest-magnitude entry positive
    int imax = 0;
    for (int i = 1; i < v.size(); ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0) v = -v;
    proj.col(k) = v;
    emb.explained_variance[k] = solver.eigenvalues()(src);
  }

  Eigen::MatrixXd scores = centered * proj;
  for (int r = 0; r < emb.n; ++r)
    for (int c = 0; c < dims; ++c)
      emb.values[static_cast<size_t>(r) * dims + c] = scores(r, c);
  return emb;
}

Matrix kernel_feature_matrix(const FeatureSet& fs, bool margin_over_cost) {
  const int n = static_cast<int>(fs.rows.size());
  if (n == 0) throw ArgumentError("kernel_feature_matrix: empty feature set");

  auto col = [&](auto getter) {
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = getter(fs.rows[i]);
    return zscore_normalize(c);
  };

  auto ratio = col([&](const SkuFeatures& f) {
    if (!margin_over_cost) return f.unit_margin;
    return f.total_cost != 0 ? f.unit_margin / f.total_cost : 0.0;
  });
  auto cost = col([](const SkuFeatures& f) { return f.total_cost; });
  auto inv = col([](const SkuFeatures& f) { return f.inventory_risk; });
  auto util = col([](const SkuFeatures& f) { return f.utilization; });
  auto lead = col([](const SkuFeatures& f) { return double(f.lead_time); });

  Matrix m;
  m.rows = n;
  m.cols = 5;
  m.values.resize(static_cast<size_t>(n) * 5);
  for (int i = 0; i < n; ++i) {
    m.at(i, 0) = ratio[i];
    m.at(i, 1) = cost[i];
    m.at(i, 2) = inv[i];
    m.at(i, 3) = util[i];
    m.at(i, 4) = lead[i];
  }
  return m;
}

void write_embedding(const EmbeddingMatrix& emb, std::ostream& out) {
  for (int r = 0; r < emb.n; ++r) {
    for (int c = 0; c < emb.dims; ++c) {
      if (c) out << ',';
      out << format_double(emb.at(r, c));
    }
    out << "\n";
  }
}

void write_embedding(const EmbeddingMatrix& emb, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embedding file: " + path);
  write_embedding(emb, out);
}

}  // namespace skualloc
