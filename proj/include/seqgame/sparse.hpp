// Copyright 2026 The seqgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQGAME_SPARSE_HPP_
#define SEQGAME_SPARSE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "seqgame/errors.hpp"
#include "seqgame/rng.hpp"

namespace seqgame {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Immutable sparse matrix.
//
// Built from triplets, stored twice: compressed rows for matvec and compressed
// columns for transpose_matvec, so both products stream through memory in the
// same way. Duplicate triplets are summed; entries that sum to exactly zero are
// dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<Triplet> triplets)
      : rows_(rows), cols_(cols) {
    for (const Triplet& t : triplets) {
      if (t.row >= rows || t.col >= cols) {
        throw DimensionError("triplet (" + std::to_string(t.row) + ", " +
                             std::to_string(t.col) + ") outside " +
                             std::to_string(rows) + "x" + std::to_string(cols));
      }
      if (!std::isfinite(t.value)) {
        throw DimensionError("non-finite value at (" + std::to_string(t.row) +
                             ", " + std::to_string(t.col) + ")");
      }
    }
    // Stable sort keeps the summation order of duplicates equal to input order.
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Triplet& a, const Triplet& b) {
                       return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });
    std::vector<Triplet> merged;
    merged.reserve(triplets.size());
    for (const Triplet& t : triplets) {
      if (!merged.empty() && merged.back().row == t.row &&
          merged.back().col == t.col) {
        merged.back().value += t.value;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });

    row_ptr_.assign(rows_ + 1, 0);
    col_ptr_.assign(cols_ + 1, 0);
    for (const Triplet& t : merged) {
      ++row_ptr_[t.row + 1];
      ++col_ptr_[t.col + 1];
    }
    std::partial_sum(row_ptr_.begin(), row_ptr_.end(), row_ptr_.begin());
    std::partial_sum(col_ptr_.begin(), col_ptr_.end(), col_ptr_.begin());

    col_idx_.resize(merged.size());
    values_.resize(merged.size());
    row_idx_.resize(merged.size());
    tvalues_.resize(merged.size());
    std::vector<std::size_t> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
    // merged is row-major, so each column receives its rows in increasing order.
    for (std::size_t k = 0; k < merged.size(); ++k) {
      col_idx_[k] = merged[k].col;
      values_[k] = merged[k].value;
      const std::size_t slot = cursor[merged[k].col]++;
      row_idx_[slot] = merged[k].row;
      tvalues_[slot] = merged[k].value;
    }
  }

  static SparseMatrix identity(std::size_t n) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return SparseMatrix(n, n, std::move(t));
  }

  static SparseMatrix from_dense(const std::vector<Vector>& dense) {
    const std::size_t rows = dense.size();
    const std::size_t cols = rows == 0 ? 0 : dense.front().size();
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows; ++i) {
      if (dense[i].size() != cols) throw DimensionError("ragged dense matrix");
      for (std::size_t j = 0; j < cols; ++j) {
        if (dense[i][j] != 0.0) t.push_back({i, j, dense[i][j]});
      }
    }
    return SparseMatrix(rows, cols, std::move(t));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  // Row-major triplet listing.
  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        out.push_back({i, col_idx_[k], values_[k]});
      }
    }
    return out;
  }

  double at(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) throw DimensionError("index out of range");
    const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(first, last, col);
    if (it == last || *it != col) return 0.0;
    return values_[static_cast<std::size_t>(it - col_idx_.begin())];
  }

  std::vector<Vector> dense() const {
    std::vector<Vector> out(rows_, Vector(cols_, 0.0));
    for (const Triplet& t : triplets()) out[t.row][t.col] = t.value;
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.row_ptr_ = col_ptr_;
    t.col_idx_ = row_idx_;
    t.values_ = tvalues_;
    t.col_ptr_ = row_ptr_;
    t.row_idx_ = col_idx_;
    t.tvalues_ = values_;
    return t;
  }

  SparseMatrix scaled(double c) const {
    std::vector<Triplet> t = triplets();
    for (Triplet& e : t) e.value *= c;
    return SparseMatrix(rows_, cols_, std::move(t));
  }

  // out = M v
  void matvec(std::span<const double> v, std::span<double> out) const {
    if (v.size() != cols_ || out.size() != rows_) {
      throw DimensionError("matvec: " + shape() + " times vector of length " +
                           std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        acc += values_[k] * v[col_idx_[k]];
      }
      out[i] = acc;
    }
  }

  // out = M^T v
  void transpose_matvec(std::span<const double> v, std::span<double> out) const {
    if (v.size() != rows_ || out.size() != cols_) {
      throw DimensionError("transpose_matvec: " + shape() +
                           " transposed times vector of length " +
                           std::to_string(v.size()));
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      double acc = 0.0;
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        acc += tvalues_[k] * v[row_idx_[k]];
      }
      out[j] = acc;
    }
  }

  Vector matvec(std::span<const double> v) const {
    Vector out(rows_);
    matvec(v, out);
    return out;
  }

  Vector transpose_matvec(std::span<const double> v) const {
    Vector out(cols_);
    transpose_matvec(v, out);
    return out;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.row_ptr_ == b.row_ptr_ && a.col_idx_ == b.col_idx_ &&
           a.values_ == b.values_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  Vector values_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::size_t> row_idx_;
  Vector tvalues_;
};

inline Vector matvec(const SparseMatrix& m, std::span<const double> v) {
  return m.matvec(v);
}

inline Vector transpose_matvec(const SparseMatrix& m, std::span<const double> v) {
  return m.transpose_matvec(v);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct SpectralNormOptions {
  double rel_tol = 1e-6;
  std::size_t max_iter = 5000;
  std::uint64_t seed = 0;
};

struct SpectralNormResult {
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Largest singular value by power iteration on M^T M.
//
// With u the normalized iterate and rho = |Mu|^2 its Rayleigh quotient, the
// loop stops once |M^T M u - rho u| <= rel_tol * rho. That residual bounds the
// distance from rho to an eigenvalue of M^T M, so sqrt(rho) is within rel_tol
// (relative) of a singular value; a random start makes it the largest one.
inline SpectralNormResult spectral_norm(const SparseMatrix& m,
                                        const SpectralNormOptions& opts = {}) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw DimensionError("spectral_norm: empty matrix");
  }
  if (!(opts.rel_tol > 0.0)) {
    throw PreconditionError("spectral_norm: rel_tol must be positive");
  }
  Rng rng(opts.seed);
  Vector u(m.cols());
  for (double& e : u) e = rng.uniform(-1.0, 1.0);
  double n = norm2(u);
  if (n == 0.0) {
    u[0] = 1.0;
    n = 1.0;
  }
  for (double& e : u) e /= n;

  Vector w(m.rows());
  Vector z(m.cols());
  SpectralNormResult result;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    m.matvec(u, w);
    m.transpose_matvec(w, z);
    const double rho = dot(w, w);
    result.iterations = it;
    result.value = std::sqrt(rho);
    if (rho == 0.0) {
      // u lies in the null space. A zero matrix has norm 0; otherwise restart
      // from a fresh direction.
      if (m.nnz() == 0) {
        result.converged = true;
        return result;
      }
      for (double& e : u) e = rng.uniform(-1.0, 1.0);
      const double un = norm2(u);
      for (double& e : u) e /= un;
      continue;
    }
    double res2 = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double r = z[j] - rho * u[j];
      res2 += r * r;
    }
    if (std::sqrt(res2) <= opts.rel_tol * rho) {
      result.converged = true;
      return result;
    }
    const double zn = norm2(z);
    for (std::size_t j = 0; j < z.size(); ++j) u[j] = z[j] / zn;
  }
  return result;
}

}  // namespace seqgame

#endif  // SEQGAME_SPARSE_HPP_
