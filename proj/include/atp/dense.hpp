// Copyright 2026 The ATP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef ATP_DENSE_HPP_
#define ATP_DENSE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "atp/graph.hpp"

// Reference dense arithmetic for small graphs. Nothing here shares code with
// the sparse kernels, so it can serve as their oracle.
namespace atp::dense {

inline constexpr std::size_t kDenseLimit = 2000;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_features(const FeatureMatrix& x);
  FeatureMatrix to_features() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add_scaled(const DenseMatrix& a, const DenseMatrix& b,
                       double scale);  // a + scale * b
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// Throws CapabilityError beyond kDenseLimit nodes.
DenseMatrix adjacency(const SparseGraph& g);

// M[u][v] = d_u^(r_u - 1) * A[u][v] * d_v^(-r_v), degrees taken as the row
// sums of the dense adjacency of the (self-looped) input.
DenseMatrix dense_operator(const SparseGraph& g_looped,
                           std::span<const double> r);

// D^-1 A.
DenseMatrix transition(const SparseGraph& g_looped);
// D^-1/2 A D^-1/2, similar to the transition matrix.
DenseMatrix symmetric_normalized(const SparseGraph& g_looped);

// sum_i weights[i] * M^i X by repeated multiplication.
DenseMatrix dense_propagate(const DenseMatrix& m, const DenseMatrix& x,
                            std::span<const double> weights);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column j pairs with values[j]
};

// Householder tridiagonalization followed by implicit QL. Rejects input that
// is not symmetric to within 1e-12 relative.
SymmetricEigen dense_eig_symmetric(const DenseMatrix& s);

}  // namespace atp::dense

#endif  // ATP_DENSE_HPP_
