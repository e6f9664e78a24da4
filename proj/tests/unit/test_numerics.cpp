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

#include <cmath>
#include <random>

#include "doctest.h"

namespace conncal {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Vec column_of(const Mat& m, std::size_t k) {
  Vec v(m.rows(), cplx(0, 0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    v[i] = m.at(i, k);
  }
  return v;
}

Mat random_hermitian(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v(dist(rng), dist(rng));
      m.at(i, j) = v;
      m.at(j, i) = std::conj(v);
    }
  }
  return m;
}

TEST_CASE("kron of Pauli matrices has the expected entries") {
  const Mat zx = kron(sigma_z(), sigma_x());
  CHECK(zx.rows() == 4);
  CHECK(zx.cols() == 4);
  CHECK(std::abs(zx.at(0, 1) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(zx.at(1, 0) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(zx.at(2, 3) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(zx.at(3, 2) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(zx.at(0, 0)) < 1e-15);
}

TEST_CASE("matrix product and dagger behave like linear algebra") {
  const Mat a({{cplx(1, 1), cplx(0, 2)}, {cplx(3, 0), cplx(0, -1)}});
  const Mat prod = a * a.dagger();
  CHECK(prod.is_hermitian(1e-14));
  CHECK(std::abs(prod.at(0, 0) - cplx(6, 0)) < 1e-14);
  const Mat sum = a + a;
  CHECK(std::abs(sum.at(1, 0) - cplx(6, 0)) < 1e-14);
  const Mat diff = a - a;
  CHECK(diff.max_abs() < 1e-15);
}

TEST_CASE("hermitian_eig reproduces Pauli spectra and eigenvectors") {
  const EigSystem es = hermitian_eig(sigma_x());
  REQUIRE(es.values.size() == 2);
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  const Vec v = column_of(es.vectors, 1);
  const cplx ratio = v[1] / v[0];
  CHECK(std::abs(ratio - cplx(1, 0)) < 1e-10);
}

TEST_CASE("hermitian_eig diagonalizes random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 5;
    const Mat m = random_hermitian(n, rng);
    const EigSystem es = hermitian_eig(m);
    for (std::size_t k = 0; k < n; ++k) {
      const Vec v = column_of(es.vectors, k);
      Vec mv(n, cplx(0, 0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          mv[i] += m.at(i, j) * v[j];
        }
      }
      add_scaled(mv, cplx(-es.values[k], 0), v);
      CHECK(vec_norm(mv) < 1e-9);
    }
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(es.values[k - 1] <= es.values[k] + 1e-12);
    }
  }
}

TEST_CASE("hermitian_extremes matches the eigenvalue range") {
  const Mat m({{cplx(2, 0), cplx(1, 0)}, {cplx(1, 0), cplx(2, 0)}});
  const auto [lo, hi] = hermitian_extremes(m);
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hi == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("singular_values handles rectangular input") {
  Mat m(2, 3);
  m.at(0, 0) = 3;
  m.at(1, 1) = 4;
  const std::vector<double> sv = singular_values(m);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(smallest_singular_value(m) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("coisometry and projector predicates") {
  Mat v(1, 2);
  v.at(0, 0) = 1.0 / kSqrt2;
  v.at(0, 1) = 1.0 / kSqrt2;
  CHECK(is_coisometry(v, 1e-12));
  CHECK_FALSE(is_coisometry(Mat({{cplx(1, 0), cplx(1, 0)}}), 1e-12));
  const Mat p({{cplx(0.5, 0), cplx(0.5, 0)}, {cplx(0.5, 0), cplx(0.5, 0)}});
  CHECK(is_projector(p, 1e-12));
  CHECK_FALSE(is_projector(sigma_x() * 2.0, 1e-12));
}

TEST_CASE("rank_of_span counts independent directions") {
  const Vec e0 = basis_state(4, 0);
  const Vec e1 = basis_state(4, 1);
  Vec mix = e0;
  add_scaled(mix, cplx(2, 0), e1);
  CHECK(rank_of_span({e0, e1, mix}) == 2);
  CHECK(rank_of_span({e0}) == 1);
  CHECK(rank_of_span({Vec(4, cplx(0, 0))}) == 0);
}

TEST_CASE("schmidt_rank distinguishes product and entangled states") {
  Vec product(4, cplx(0, 0));
  product[0] = 1.0;
  CHECK(schmidt_rank(product, {2, 2}, {0}) == 1);
  Vec bell(4, cplx(0, 0));
  bell[0] = 1.0 / kSqrt2;
  bell[3] = 1.0 / kSqrt2;
  CHECK(schmidt_rank(bell, {2, 2}, {0}) == 2);
  Vec ghz(8, cplx(0, 0));
  ghz[0] = 1.0 / kSqrt2;
  ghz[7] = 1.0 / kSqrt2;
  CHECK(schmidt_rank(ghz, {2, 2, 2}, {0, 1}) == 2);
}

TEST_CASE("apply_local acts on one site of a register") {
  Vec psi = basis_state(4, 0);
  const Vec flipped = apply_local(psi, {2, 2}, 1, sigma_x());
  CHECK(std::abs(flipped[1] - cplx(1, 0)) < 1e-15);
  const Vec flipped0 = apply_local(psi, {2, 2}, 0, sigma_x());
  CHECK(std::abs(flipped0[2] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("apply_local supports rectangular maps") {
  Mat ket0(2, 1);
  ket0.at(0, 0) = 1.0;
  Vec scalarish(2, cplx(0, 0));
  scalarish[0] = cplx(0.25, 0);
  scalarish[1] = cplx(0, 0.5);
  const Vec lifted = apply_local(scalarish, {1, 2}, 0, ket0);
  REQUIRE(lifted.size() == 4);
  CHECK(std::abs(lifted[0] - cplx(0.25, 0)) < 1e-15);
  CHECK(std::abs(lifted[1] - cplx(0, 0.5)) < 1e-15);
  CHECK(std::abs(lifted[2]) < 1e-15);
}

TEST_CASE("inner conjugates its first argument") {
  Vec a = {cplx(0, 1), cplx(0, 0)};
  Vec b = {cplx(1, 0), cplx(0, 0)};
  CHECK(std::abs(inner(a, b) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(inner(b, a) - cplx(0, 1)) < 1e-15);
}

}  // namespace
}  // namespace conncal
