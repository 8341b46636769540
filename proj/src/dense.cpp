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


#include "atp/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "atp/error.hpp"

namespace atp::dense {
namespace {

void check_size(std::size_t n) {
  if (n > kDenseLimit)
    throw CapabilityError("dense routines are limited to " +
                          std::to_string(kDenseLimit) + " nodes, got " +
                          std::to_string(n));
}

std::vector<double> row_sums(const DenseMatrix& a) {
  std::vector<double> s(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s[i] += a(i, j);
  return s;
}

// Householder reduction of the symmetric matrix held in v to tridiagonal
// form; d receives the diagonal, e the subdiagonal, v the transformation.
void tridiagonalize(std::size_t n, DenseMatrix& v, std::vector<double>& d,
                    std::vector<double>& e) {
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k + 1 <= i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k + 1 <= i; ++k)
          v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e), accumulating rotations into v.
void tridiagonal_ql(std::size_t n, DenseMatrix& v, std::vector<double>& d,
                    std::vector<double>& e) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  constexpr double kEps = 0x1.0p-52;
  constexpr int kMaxSweeps = 64;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= kEps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps)
          throw ConvergenceError("tridiagonal QL did not converge",
                                 std::abs(e[l]));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            h = v(k, ii + 1);
            v(k, ii + 1) = s * v(k, ii) + c * h;
            v(k, ii) = c * v(k, ii) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kEps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_features(const FeatureMatrix& x) {
  DenseMatrix m(x.rows(), x.cols());
  m.data_ = x.data();
  return m;
}

FeatureMatrix DenseMatrix::to_features() const {
  return FeatureMatrix(rows_, cols_, data_);
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows())
    throw ValidationError("dense multiply shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix add_scaled(const DenseMatrix& a, const DenseMatrix& b,
                       double scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("dense add shape mismatch");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += scale * b(i, j);
  return c;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("dense compare shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

DenseMatrix adjacency(const SparseGraph& g) {
  check_size(g.num_nodes());
  DenseMatrix a(g.num_nodes(), g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
      a(u, g.col(e)) = g.edge_weight(e);
  return a;
}

DenseMatrix dense_operator(const SparseGraph& g_looped,
                           std::span<const double> r) {
  if (r.size() != g_looped.num_nodes())
    throw ValidationError("kernel length does not match node count");
  DenseMatrix a = adjacency(g_looped);
  const std::vector<double> d = row_sums(a);
  const std::size_t n = a.rows();
  for (std::size_t u = 0; u < n; ++u)
    if (!(d[u] > 0.0))
      throw NumericError("dense operator needs positive degrees");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      a(u, v) = degree_power(d[u], r[u] - 1.0) * a(u, v) *
                degree_power(d[v], -r[v]);
  return a;
}

DenseMatrix transition(const SparseGraph& g_looped) {
  std::vector<double> zeros(g_looped.num_nodes(), 0.0);
  return dense_operator(g_looped, zeros);
}

DenseMatrix symmetric_normalized(const SparseGraph& g_looped) {
  std::vector<double> halves(g_looped.num_nodes(), 0.5);
  return dense_operator(g_looped, halves);
}

DenseMatrix dense_propagate(const DenseMatrix& m, const DenseMatrix& x,
                            std::span<const double> weights) {
  if (m.rows() != m.cols() || m.cols() != x.rows())
    throw ValidationError("dense propagate shape mismatch");
  DenseMatrix acc(x.rows(), x.cols());
  DenseMatrix power = DenseMatrix::identity(m.rows());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i > 0) power = multiply(power, m);
    acc = add_scaled(acc, multiply(power, x), weights[i]);
  }
  return acc;
}

SymmetricEigen dense_eig_symmetric(const DenseMatrix& s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) throw ValidationError("eigensolver needs a square matrix");
  check_size(n);
  double scale = 0.0;
  for (double x : s.data()) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-12 * std::max(scale, 1.0))
        throw ValidationError("eigensolver input is not symmetric");

  SymmetricEigen out;
  if (n == 0) return out;
  DenseMatrix v = s;
  std::vector<double> d(n), e(n);
  tridiagonalize(n, v, d, e);
  tridiagonal_ql(n, v, d, e);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

}  // namespace atp::dense
