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

#include "conncal/families.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

namespace conncal {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

Vec residual_of_eigenpair(const ConnectorComplex& cx, std::size_t y, const Vec& psi,
                          double eigenvalue) {
  Vec r = apply_functional(cx.conn.comp[y], cx.refs, psi);
  add_scaled(r, cplx(-eigenvalue, 0), psi);
  return r;
}

TEST_CASE("canonical two-qubit complex stores the singlet-like eigenvectors") {
  const ConnectorComplex cx = build_tsirelson();
  const Vec plus = cx.vdag_column(0);
  const Vec minus = cx.vdag_column(1);
  CHECK(std::abs(plus[0] - cplx(1 / kSqrt2, 0)) < 1e-15);
  CHECK(std::abs(plus[3] - cplx(1 / kSqrt2, 0)) < 1e-15);
  CHECK(std::abs(minus[1] - cplx(-1 / kSqrt2, 0)) < 1e-15);
  CHECK(std::abs(minus[2] - cplx(1 / kSqrt2, 0)) < 1e-15);

  CHECK(vec_norm(residual_of_eigenpair(cx, 1, plus, +1.0)) < 1e-14);
  CHECK(vec_norm(residual_of_eigenpair(cx, 1, minus, -1.0)) < 1e-14);
  Vec swapped = apply_functional(cx.conn.comp[0], cx.refs, plus);
  CHECK(max_abs_diff(swapped, minus) < 1e-14);
  swapped = apply_functional(cx.conn.comp[0], cx.refs, minus);
  CHECK(max_abs_diff(swapped, plus) < 1e-14);
  CHECK(max_abs_diff(cx.max_state, plus) < 1e-15);
}

TEST_CASE("tilted coefficients match the frozen closed forms") {
  CHECK(tilted_alpha(kPi / 6) == doctest::Approx(0.7559289460184544).epsilon(1e-14));
  CHECK(tilted_beta(kPi / 6) == doctest::Approx(3.0237157840738176).epsilon(1e-14));
  CHECK(tilted_alpha(kPi / 4) == doctest::Approx(0.0));
  CHECK(tilted_beta(kPi / 4) == doctest::Approx(2.0 * kSqrt2).epsilon(1e-14));
  CHECK(tilted_alpha(kPi / 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tilted_beta(kPi / 2) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("tilted complex at the symmetric angle coincides with the untilted one") {
  const ConnectorComplex tilted = build_tilted(kPi / 4);
  const ConnectorComplex plain = build_tsirelson();
  CHECK(max_entry_diff(tilted.conn.comp[0], plain.conn.comp[0]) < 1e-14);
  CHECK(max_entry_diff(tilted.conn.comp[1], plain.conn.comp[1]) < 1e-14);
  CHECK(max_abs_diff(tilted.max_state, plain.max_state) < 1e-14);
}

TEST_CASE("tilted complex is tight and self-consistent across the domain") {
  for (double theta : {kPi / 12, kPi / 8, kPi / 6, kPi / 5}) {
    CAPTURE(theta);
    const ConnectorComplex cx = build_tilted(theta);
    const TightReport rep = verify_tight(cx, 1e-9);
    CHECK(rep.pass);
    const Vec plus = cx.vdag_column(0);
    const Vec minus = cx.vdag_column(1);
    CHECK(vec_norm(residual_of_eigenpair(cx, 1, plus, +1.0)) < 1e-13);
    CHECK(vec_norm(residual_of_eigenpair(cx, 1, minus, -1.0)) < 1e-13);
    CHECK(std::abs(plus[0] - cplx(std::cos(theta), 0)) < 1e-14);
    CHECK(std::abs(plus[3] - cplx(std::sin(theta), 0)) < 1e-14);
  }
}

TEST_CASE("tilted domain guard rejects out-of-range angles") {
  CHECK_THROWS_AS(build_tilted(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_tilted(kPi / 3), std::invalid_argument);
  CHECK_NOTHROW(build_tilted_unchecked(kPi / 2));
}

TEST_CASE("wbc validity and closed-form strength at the symmetric point") {
  const double theta = kPi / 2, phi = -kPi / 4, omega = kPi / 4;
  CHECK(wbc_valid(theta, phi, omega));
  CHECK(wbc_gamma_closed_form(theta, phi, omega) == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(wbc_beta(theta, phi, omega) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(wbc_valid(theta, phi, phi));
  CHECK_THROWS_WITH_AS(build_wbc(theta, phi, phi), doctest::Contains("validity"),
                       std::invalid_argument);
}

TEST_CASE("wbc complex is tight with the stored maximizing state") {
  const double theta = 1.2, phi = -0.7, omega = 0.9;
  REQUIRE(wbc_valid(theta, phi, omega));
  const ConnectorComplex cx = build_wbc(theta, phi, omega);
  const TightReport rep = verify_tight(cx, 1e-9);
  CHECK(rep.pass);
  const double val = expect_functional(cx.selected_functional(), cx.refs, cx.max_state);
  CHECK(val == doctest::Approx(1.0).epsilon(1e-12));
  const Vec plus = cx.vdag_column(1);
  CHECK(max_abs_diff(cx.max_state, plus) < 1e-15);
  CHECK(std::abs(plus[0] - cplx(1 / kSqrt2, 0)) < 1e-14);
  CHECK(std::abs(plus[3] - cplx(0, 1 / kSqrt2)) < 1e-14);
}

TEST_CASE("wbc emitted observables follow the angle sum") {
  const double theta = kPi / 2, phi = -kPi / 4, omega = kPi / 4;
  const ConnectorComplex cx = build_wbc(theta, phi, omega);
  CHECK(max_abs_diff(cx.mbar_corr(1), sigma_z() * -1.0) < 1e-12);
  CHECK(max_abs_diff(cx.mbar_corr(0), sigma_y() * -1.0) < 1e-12);
}

TEST_CASE("graph helpers produce valid connected graphs") {
  const GraphSpec star = star_graph(5);
  star.validate();
  CHECK(star.edges.size() == 4);
  CHECK(star.adjacency()[star.root].size() == 4);

  const GraphSpec cyc = cycle_graph(4);
  cyc.validate();
  CHECK(cyc.edges.size() == 4);
  for (const auto& row : cyc.adjacency()) {
    CHECK(row.size() == 2);
  }

  std::mt19937 rng(5);
  for (int q = 2; q <= 8; ++q) {
    const GraphSpec g = random_connected_graph(q, rng);
    g.validate();
    CHECK(g.q == q);
  }
}

TEST_CASE("graph JSON roundtrip keeps vertices and edges") {
  const GraphSpec g = cycle_graph(5);
  const GraphSpec back = GraphSpec::from_json(g.to_json());
  CHECK(back.q == g.q);
  CHECK(back.root == g.root);
  CHECK(back.edges == g.edges);
}

TEST_CASE("both_or_neither_neighbors matches hand-computed sets") {
  const GraphSpec tri = cycle_graph(3);
  CHECK(both_or_neither_neighbors(tri, 0, 1) == std::vector<int>{2});
  const GraphSpec star = star_graph(4);
  CHECK(both_or_neither_neighbors(star, star.root, 1).empty());
  GraphSpec path;
  path.q = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  path.root = 0;
  path.validate();
  CHECK(both_or_neither_neighbors(path, 0, 1) == std::vector<int>{3});
}

TEST_CASE("graph_state is stabilized by every vertex operator") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const GraphSpec g = random_connected_graph(5, rng);
    const Vec psi = graph_state(g);
    CHECK(vec_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<std::size_t> dims(5, 2);
    const auto adj = g.adjacency();
    for (int i = 0; i < g.q; ++i) {
      Vec stabilized = apply_local(psi, dims, static_cast<std::size_t>(i), sigma_x());
      for (int j : adj[static_cast<std::size_t>(i)]) {
        stabilized = apply_local(stabilized, dims, static_cast<std::size_t>(j), sigma_z());
      }
      CHECK(max_abs_diff(stabilized, psi) < 1e-12);
    }
  }
}

TEST_CASE("parity-signed graph state flips under every stabilizer") {
  const GraphSpec g = star_graph(3);
  const Vec psi = graph_state(g, true);
  const std::vector<std::size_t> dims(3, 2);
  const auto adj = g.adjacency();
  for (int i = 0; i < g.q; ++i) {
    Vec stabilized = apply_local(psi, dims, static_cast<std::size_t>(i), sigma_x());
    for (int j : adj[static_cast<std::size_t>(i)]) {
      stabilized = apply_local(stabilized, dims, static_cast<std::size_t>(j), sigma_z());
    }
    Vec negated = psi;
    for (auto& a : negated) a = -a;
    CHECK(max_abs_diff(stabilized, negated) < 1e-12);
  }
}

TEST_CASE("graph-functional strengths follow the degree formulas") {
  CHECK(basta_beta1(star_graph(3)) == doctest::Approx(4.0 * kSqrt2).epsilon(1e-13));
  CHECK(basta_beta0(star_graph(3)) == doctest::Approx(4.0 * kSqrt2).epsilon(1e-13));
  CHECK(basta_beta1(star_graph(4)) == doctest::Approx(6.0 * kSqrt2).epsilon(1e-13));
  CHECK(basta_beta1(cycle_graph(3)) == doctest::Approx(4.0 * kSqrt2).epsilon(1e-13));
}

TEST_CASE("graph complex has the graph state as maximizing eigenvector") {
  for (const GraphSpec& g : {star_graph(3), cycle_graph(3), star_graph(4)}) {
    CAPTURE(g.q);
    const ConnectorComplex cx = build_basta(g);
    const Vec plus = cx.vdag_column(0);
    const Vec minus = cx.vdag_column(1);
    CHECK(max_abs_diff(plus, graph_state(g)) < 1e-14);
    CHECK(vec_norm(residual_of_eigenpair(cx, 1, plus, +1.0)) < 1e-12);
    CHECK(vec_norm(residual_of_eigenpair(cx, 1, minus, -1.0)) < 1e-12);
    Vec swapped = apply_functional(cx.conn.comp[0], cx.refs, plus);
    CHECK(max_abs_diff(swapped, minus) < 1e-12);
    const TightReport rep = verify_tight(cx, 1e-9);
    CHECK(rep.pass);
  }
}

TEST_CASE("align_dichotomic_pair maps the rotated frame onto the canonical one") {
  const Mat d_plus = (sigma_z() + sigma_x()) * (1.0 / kSqrt2);
  const Mat d_minus = (sigma_z() - sigma_x()) * (1.0 / kSqrt2);
  const auto [u, delta] = align_dichotomic_pair(d_plus, d_minus);
  CHECK(delta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(max_abs_diff(u * d_minus * u.dagger(), sigma_z()) < 1e-12);
  CHECK(max_abs_diff(u * d_plus * u.dagger(), sigma_x()) < 1e-12);
}

TEST_CASE("align_dichotomic_pair handles a generic oblique pair") {
  const double delta_in = 1.1;
  const Mat k1 = sigma_y();
  const Mat k0 = sigma_y() * std::cos(delta_in) + sigma_z() * std::sin(delta_in);
  const auto [u, delta] = align_dichotomic_pair(k0, k1);
  CHECK(delta == doctest::Approx(delta_in).epsilon(1e-12));
  CHECK(max_abs_diff(u * k1 * u.dagger(), sigma_z()) < 1e-11);
  const Mat target = sigma_x() * std::sin(delta_in) + sigma_z() * std::cos(delta_in);
  CHECK(max_abs_diff(u * k0 * u.dagger(), target) < 1e-11);
}

TEST_CASE("aligned variant puts every leg in the planar frame") {
  const ConnectorComplex cx = aligned(build_tsirelson());
  for (std::size_t leg = 0; leg < 2; ++leg) {
    CHECK(max_abs_diff(cx.refs.k_ops[leg][0], sigma_x()) < 1e-12);
    CHECK(max_abs_diff(cx.refs.k_ops[leg][1], sigma_z()) < 1e-12);
  }
  CHECK(max_abs_diff(cx.mbar_corr(0), sigma_x()) < 1e-12);
  CHECK(max_abs_diff(cx.mbar_corr(1), sigma_z()) < 1e-12);
  CHECK(verify_tight(cx, 1e-9).pass);
}

TEST_CASE("build_family dispatches by name and validates parameters") {
  const ConnectorComplex a = build_family("tsirelson", json::object());
  CHECK(a.conn.legs() == 2);
  const ConnectorComplex b = build_family("tilted", {{"theta", kPi / 6}});
  CHECK(b.conn.legs() == 2);
  const ConnectorComplex c =
      build_family("wbc", {{"theta", kPi / 2}, {"phi", -kPi / 4}, {"omega", kPi / 4}});
  CHECK(c.conn.legs() == 2);
  const ConnectorComplex d = build_family("basta", {{"graph", star_graph(3).to_json()}});
  CHECK(d.conn.legs() == 3);
  CHECK_THROWS_AS(build_family("nonsense", json::object()), std::invalid_argument);
}

TEST_CASE("variant strings roundtrip") {
  CHECK(variant_from_string("base") == Variant::base);
  CHECK(variant_from_string("aligned") == Variant::aligned);
  CHECK(variant_to_string(Variant::aligned) == "aligned");
  CHECK_THROWS_AS(variant_from_string("other"), std::invalid_argument);
}

}  // namespace
}  // namespace conncal
