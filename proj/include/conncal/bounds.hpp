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

#include <string>
#include <vector>

#include "conncal/network.hpp"

namespace conncal {

struct StrategyResult {
  double value = 0.0;
  DeterministicStrategy strategy;
};

/// Exact deterministic maximum by branch enumeration, one sign pattern per
/// leg and input. Visits patterns in lexicographic order (+1 before -1, input
/// 0 most significant) and keeps the first maximizer, so ties break to the
/// lexicographically smallest strategy independent of `threads`. Capped at
/// 2^28 total branches.
StrategyResult classical_max(const CorrelatorTensor& t, int threads = 1);

/// Scale factor 1 / max_y classical_max(comp[y]) of an XOR connector.
double gamma_factor(const Connector& c, int threads = 1);

/// Classical shadow of an XOR connector: identity response replaced by the
/// plain identity, components scaled by gamma_factor.
Connector classical_connector(const Connector& c, int threads = 1);

/// Classical bound of a network functional: the inverse product of the
/// gamma factors of all nodes.
double gamma_product_bound(const TreeNetwork& net, int threads = 1);

/// No-signalling maximum of an XOR functional: the coefficient 1-norm.
double ns_max_xor(const CorrelatorTensor& t);

/// Exact no-signalling maximum of |f| by linear programming over the
/// no-signalling polytope. Supported up to four legs.
double ns_max_lp(const CorrelatorTensor& t);

/// Value of the selected functional on the stored maximizing state at the
/// reference measurements. Throws when no state is stored.
double quantum_witness(const ConnectorComplex& cx);

/// True when one deterministic assignment pushes every component of the
/// connector to modulus at least 1 - tol simultaneously.
bool is_classically_tight(const Connector& c, double tol = 1e-9, int threads = 1);

struct BoundReport {
  int parties = 0;
  double classical = 0.0;
  double ns = 0.0;
  double quantum = 0.0;
  double gamma_bound = 0.0;

  json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Classical, no-signalling, and quantum figures for the expanded functional
/// of an all-XOR network; `ns` is the coefficient 1-norm. `setting` >= 0
/// replaces the root's stored selector by that single component.
BoundReport network_bounds(const TreeNetwork& net, int threads = 1, int setting = -1);

/// Shortest-repeating formatting with 17 significant digits and '.' decimal
/// separator, locale independent.
std::string format_sig17(double x);

}  // namespace conncal
