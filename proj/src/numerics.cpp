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

#include "conncal/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace conncal {

Mat::Mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

static void check_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string("Mat: shape mismatch in ") + op);
}

Mat Mat::operator+(const Mat& o) const {
  check_same_shape(*this, o, "+");
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_same_shape(*this, o, "-");
  Mat r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  check_same_shape(*this, o, "+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Mat: shape mismatch in *");
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      cplx a = data_[i * cols_ + k];
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.data_[i * o.cols_ + j] += a * o.data_[k * o.cols_ + j];
    }
  }
  return r;
}

Mat Mat::operator*(cplx s) const {
  Mat r = *this;
  for (auto& v : r.data_) v *= s;
  return r;
}

Mat Mat::dagger() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

double Mat::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Mat::frob_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool Mat::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx s = a.at(i, j);
      if (s == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = s * b.at(k, l);
    }
  return r;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Mat sigma_x() { return Mat{{0.0, 1.0}, {1.0, 0.0}}; }
Mat sigma_y() { return Mat{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
Mat sigma_z() { return Mat{{1.0, 0.0}, {0.0, -1.0}}; }

cplx inner(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const Vec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void add_scaled(Vec& acc, cplx s, const Vec& v) {
  if (acc.size() != v.size()) throw std::invalid_argument("add_scaled: length mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += s * v[i];
}

double max_abs_diff(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec basis_state(std::size_t dim, std::size_t idx) {
  if (idx >= dim) throw std::invalid_argument("basis_state: index out of range");
  Vec v(dim);
  v[idx] = 1.0;
  return v;
}

Vec apply_local(const Vec& state, const std::vector<std::size_t>& dims, std::size_t site,
                const Mat& op) {
  if (site >= dims.size()) throw std::invalid_argument("apply_local: site out of range");
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (state.size() != total) throw std::invalid_argument("apply_local: state size mismatch");
  std::size_t d = dims[site];
  if (op.cols() != d) throw std::invalid_argument("apply_local: operator column count mismatch");
  std::size_t h = op.rows();
  std::size_t inner_stride = 1;
  for (std::size_t k = site + 1; k < dims.size(); ++k) inner_stride *= dims[k];
  std::size_t outer = total / (d * inner_stride);

  Vec out(outer * h * inner_stride);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t in_base = o * d * inner_stride;
    const std::size_t out_base = o * h * inner_stride;
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        cplx w = op.at(a, b);
        if (w == cplx{}) continue;
        const cplx* src = state.data() + in_base + b * inner_stride;
        cplx* dst = out.data() + out_base + a * inner_stride;
        for (std::size_t i = 0; i < inner_stride; ++i) dst[i] += w * src[i];
      }
    }
  }
  return out;
}

EigSystem hermitian_eig(const Mat& m, double herm_tol, std::size_t dim_cap) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  if (!m.is_hermitian(herm_tol)) throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
  const std::size_t n = m.rows();
  if (n > dim_cap)
    throw std::invalid_argument("hermitian_eig: dimension " + std::to_string(n) +
                                " exceeds cap " + std::to_string(dim_cap));

  Mat a = m;
  // Symmetrize exactly so rounding on the input cannot bias the sweeps.
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = a.at(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = avg;
      a.at(j, i) = std::conj(avg);
    }
  }
  Mat q = Mat::identity(n);
  const double scale = std::max(a.frob_norm(), 1e-300);
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off = std::max(off, std::abs(a.at(p, r)));
    if (off <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        cplx apr = a.at(p, r);
        double mag = std::abs(apr);
        if (mag <= stop) continue;
        cplx phase = apr / mag;
        double app = a.at(p, p).real();
        double arr = a.at(r, r).real();
        double tau = (arr - app) / (2.0 * mag);
        // Stable closed form of the smaller root of t^2 - 2 tau t - 1 = 0.
        double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // Plane rotation G: G[p][p]=c, G[p][r]=-s*phase, G[r][p]=s*conj(phase), G[r][r]=c.
        cplx gpr = -s * phase;
        cplx grp = s * std::conj(phase);
        // a <- G^dag a
        for (std::size_t j = 0; j < n; ++j) {
          cplx xp = a.at(p, j), xr = a.at(r, j);
          a.at(p, j) = c * xp + std::conj(grp) * xr;
          a.at(r, j) = std::conj(gpr) * xp + c * xr;
        }
        // a <- a G, q <- q G
        for (std::size_t i = 0; i < n; ++i) {
          cplx xp = a.at(i, p), xr = a.at(i, r);
          a.at(i, p) = c * xp + grp * xr;
          a.at(i, r) = gpr * xp + c * xr;
          cplx yp = q.at(i, p), yr = q.at(i, r);
          q.at(i, p) = c * yp + grp * yr;
          q.at(i, r) = gpr * yp + c * yr;
        }
        a.at(p, r) = 0.0;
        a.at(r, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a.at(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigSystem out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = q.at(i, order[k]);
  }
  return out;
}

std::pair<double, double> hermitian_extremes(const Mat& m, double herm_tol, std::size_t dim_cap) {
  EigSystem e = hermitian_eig(m, herm_tol, dim_cap);
  return {e.values.front(), e.values.back()};
}

bool is_projector(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (!m.is_hermitian(tol)) return false;
  return max_abs_diff(m * m, m) <= tol;
}

bool is_coisometry(const Mat& v, double tol) {
  return max_abs_diff(v * v.dagger(), Mat::identity(v.rows())) <= tol;
}

std::vector<double> singular_values(const Mat& m, std::size_t dim_cap) {
  const bool tall = m.rows() >= m.cols();
  Mat g = tall ? m.dagger() * m : m * m.dagger();
  EigSystem e = hermitian_eig(g, 1e-8 * std::max(1.0, g.max_abs()), dim_cap);
  std::vector<double> sv;
  sv.reserve(e.values.size());
  for (auto it = e.values.rbegin(); it != e.values.rend(); ++it)
    sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

double smallest_singular_value(const Mat& m, std::size_t dim_cap) {
  auto sv = singular_values(m, dim_cap);
  if (sv.empty()) throw std::invalid_argument("smallest_singular_value: empty matrix");
  return sv.back();
}

std::size_t rank_of_span(const std::vector<Vec>& vectors, double rel_tol) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.size();
  const std::size_t d = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != d) throw std::invalid_argument("rank_of_span: inconsistent vector lengths");

  Mat g;
  if (n <= d) {
    g = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.at(i, j) = inner(vectors[i], vectors[j]);
  } else {
    g = Mat(d, d);
    for (const auto& v : vectors)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g.at(i, j) += v[i] * std::conj(v[j]);
  }
  EigSystem e = hermitian_eig(g, 1e-8 * std::max(1.0, g.max_abs()), std::max<std::size_t>(g.rows(), 1));
  double lmax = e.values.empty() ? 0.0 : std::max(0.0, e.values.back());
  if (lmax <= 0.0) return 0;
  const double cut = lmax * rel_tol * rel_tol;
  std::size_t rank = 0;
  for (double l : e.values)
    if (l > cut) ++rank;
  return rank;
}

std::size_t schmidt_rank(const Vec& state, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& left_sites, double rel_tol) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (state.size() != total) throw std::invalid_argument("schmidt_rank: state size mismatch");
  std::vector<bool> left(dims.size(), false);
  for (auto s : left_sites) {
    if (s >= dims.size()) throw std::invalid_argument("schmidt_rank: site out of range");
    left[s] = true;
  }
  std::size_t dl = 1, dr = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) (left[k] ? dl : dr) *= dims[k];

  Mat m(dl, dr);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = dims.size(); k-- > 0;) {
      idx[k] = rem % dims[k];
      rem /= dims[k];
    }
    std::size_t il = 0, ir = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (left[k])
        il = il * dims[k] + idx[k];
      else
        ir = ir * dims[k] + idx[k];
    }
    m.at(il, ir) = state[flat];
  }

  auto sv = singular_values(m, std::max<std::size_t>(std::min(dl, dr), 1));
  if (sv.empty() || sv.front() <= 0.0) return 0;
  const double cut = sv.front() * rel_tol;
  std::size_t rank = 0;
  for (double s : sv)
    if (s > cut) ++rank;
  return rank;
}

}  // namespace conncal
