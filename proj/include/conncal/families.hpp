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

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conncal/connector.hpp"

namespace conncal {

/// `base` keeps each family's natural measurement frames; `aligned` rotates
/// every leg (and the emitted pair) into the canonical planar frame so that
/// equal Bloch angles contract without further adjustment.
enum class Variant { base, aligned };

Variant variant_from_string(const std::string& s);
std::string variant_to_string(Variant v);

/// Simple undirected graph on vertices 0..q-1 with a distinguished root.
struct GraphSpec {
  int q = 0;
  std::vector<std::pair<int, int>> edges;
  int root = 0;

  void validate() const;
  bool has_edge(int a, int b) const;
  std::vector<std::vector<int>> adjacency() const;
  json to_json() const;
  static GraphSpec from_json(const json& j);
};

GraphSpec star_graph(int q);
GraphSpec cycle_graph(int q);
GraphSpec random_connected_graph(int q, std::mt19937& rng);

/// Vertices other than a and b that are adjacent to both of them or to
/// neither of them.
std::vector<int> both_or_neither_neighbors(const GraphSpec& g, int a, int b);

/// Stabilizer state of the graph; with `parity_sign` the amplitude of each
/// computational basis vector is additionally multiplied by (-1)^popcount.
Vec graph_state(const GraphSpec& g, bool parity_sign = false);

double tilted_alpha(double theta);
double tilted_beta(double theta);
double wbc_beta(double theta, double phi, double omega);
bool wbc_valid(double theta, double phi, double omega);
double wbc_gamma_closed_form(double theta, double phi, double omega);
double basta_beta1(const GraphSpec& g);
double basta_beta0(const GraphSpec& g);

ConnectorComplex build_tsirelson(Variant variant = Variant::base);
/// theta in (0, pi/4]; theta = pi/4 coincides with the untilted complex.
ConnectorComplex build_tilted(double theta, Variant variant = Variant::base);
/// Assembles the tilted complex for any theta without the domain check;
/// outside the domain the result need not be tight.
ConnectorComplex build_tilted_unchecked(double theta);
ConnectorComplex build_wbc(double theta, double phi, double omega,
                           Variant variant = Variant::base);
ConnectorComplex build_basta(const GraphSpec& g, Variant variant = Variant::base);

/// Unitary u and Bloch angle delta such that u k1 u^dag = sigma_z and
/// u k0 u^dag = sin(delta) sigma_x + cos(delta) sigma_z, for a pair of
/// unit-trace-free qubit observables.
std::pair<Mat, double> align_dichotomic_pair(const Mat& k0, const Mat& k1);

/// Conjugates every (qubit, two-setting) leg and the emitted pair into the
/// canonical planar frame.
ConnectorComplex aligned(const ConnectorComplex& cx);

/// Dispatch by family name: "tsirelson" (no params), "tilted" {theta},
/// "wbc" {theta, phi, omega}, "basta" {graph} or inline {q, edges, root}.
ConnectorComplex build_family(const std::string& name, const json& params,
                              Variant variant = Variant::base);

}  // namespace conncal
