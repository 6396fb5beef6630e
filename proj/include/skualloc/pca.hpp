#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "skualloc/features.hpp"

namespace skualloc {

// Row-major dense matrix, minimal on purpose.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // rows*cols, row-major

  double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return values[static_cast<size_t>(r) * cols + c];
  }
};

struct EmbeddingMatrix {
  int n = 0;
  int dims = 0;
  std::vector<double> values;              // n*dims, row-major PCA scores
  std::vector<double> explained_variance;  // non-increasing

  double at(int r, int c) const {
    return values[static_cast<size_t>(r) * dims + c];
  }
  std::vector<double> row(int r) const {
    return {values.begin() + static_cast<size_t>(r) * dims,
            values.begin() + static_cast<size_t>(r + 1) * dims};
  }
};

// Centers the data, eigendecomposes the population covariance and projects
// onto the top `dims` eigenvectors (descending eigenvalue order). Sign
// convention: the largest-magnitude entry of each eigenvector is positive.
EmbeddingMatrix pca_reduce(const Matrix& features, int dims);

// The five z-scored kernel input columns per SKU: unit-cost ratio, total
// cost, inventory risk, utilization, lead time. The unit-cost ratio is
// unit_margin / total_cost by default; `margin_over_cost=false` uses the raw
// unit margin instead.
Matrix kernel_feature_matrix(const FeatureSet& fs,
                             bool margin_over_cost = true);

void write_embedding(const EmbeddingMatrix& emb, std::ostream& out);
void write_embedding(const EmbeddingMatrix& emb, const std::string& path);

}  // namespace skualloc
