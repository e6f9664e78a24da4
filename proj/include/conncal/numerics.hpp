// Copyright 2026 The conncal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace conncal {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Default dimension cap for the dense Hermitian eigensolver.
inline constexpr std::size_t kDefaultEigCap = 64;

/// Dense complex matrix, row-major storage.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Mat(std::initializer_list<std::initializer_list<cplx>> rows);

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator*(cplx s) const;
  Mat& operator+=(const Mat& o);

  /// Conjugate transpose.
  Mat dagger() const;

  double max_abs() const;
  double frob_norm() const;
  bool is_hermitian(double tol) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

Mat kron(const Mat& a, const Mat& b);
double max_abs_diff(const Mat& a, const Mat& b);

Mat sigma_x();
Mat sigma_y();
Mat sigma_z();

/// <a|b> with the conjugation on the first argument.
cplx inner(const Vec& a, const Vec& b);
double vec_norm(const Vec& v);
void add_scaled(Vec& acc, cplx s, const Vec& v);
double max_abs_diff(const Vec& a, const Vec& b);

/// Basis vector |idx> in the given dimension.
Vec basis_state(std::size_t dim, std::size_t idx);

/// Applies `op` to site `site` of a state over subsystems with dimensions `dims`.
/// `op` may be rectangular (op.cols() == dims[site]); the site dimension of the
/// result is op.rows().
Vec apply_local(const Vec& state, const std::vector<std::size_t>& dims, std::size_t site,
                const Mat& op);

struct EigSystem {
  std::vector<double> values;  // ascending
  Mat vectors;                 // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Throws if the matrix is
/// not Hermitian within `herm_tol` or its dimension exceeds `dim_cap`.
EigSystem hermitian_eig(const Mat& m, double herm_tol = 1e-9,
                        std::size_t dim_cap = kDefaultEigCap);

/// Smallest and largest eigenvalue of a Hermitian matrix.
std::pair<double, double> hermitian_extremes(const Mat& m, double herm_tol = 1e-9,
                                             std::size_t dim_cap = kDefaultEigCap);

bool is_projector(const Mat& m, double tol);

/// True when v v^dag = I, i.e. the rows are orthonormal.
bool is_coisometry(const Mat& v, double tol);

/// Singular values, descending. Computed from the Gram matrix of the smaller side.
std::vector<double> singular_values(const Mat& m, std::size_t dim_cap = kDefaultEigCap);
double smallest_singular_value(const Mat& m, std::size_t dim_cap = kDefaultEigCap);

/// Rank of the span of a family of equal-length vectors. `rel_tol` cuts singular
/// values relative to the largest one.
std::size_t rank_of_span(const std::vector<Vec>& vectors, double rel_tol = 1e-6);

/// Schmidt rank of `state` across the bipartition (left_sites | rest).
std::size_t schmidt_rank(const Vec& state, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& left_sites, double rel_tol = 1e-6);

}  // namespace conncal
