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

#include "conncal/families.hpp"

namespace conncal {

struct NetworkNode {
  std::string id;
  std::string family;
  json params = json::object();
  Variant variant = Variant::base;
};

/// Directed feed: the producer's emitted party enters `leg` of the consumer.
/// Legs are 0-based here; the JSON form uses 1-based legs.
struct NetworkEdge {
  std::string from;
  std::string to;
  std::size_t leg = 0;
};

/// Rooted tree of connector complexes. Every non-root node feeds exactly one
/// consumer leg; the root feeds nobody.
struct TreeNetwork {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;
  std::string root;

  void validate() const;
  const NetworkNode& node(const std::string& id) const;
  /// Incoming edges of a consumer, sorted by leg.
  std::vector<NetworkEdge> feeds_of(const std::string& id) const;
  json to_json() const;
  static TreeNetwork from_json(const json& j);
};

ConnectorComplex build_node(const NetworkNode& n);

/// Contracts the whole tree into the root's complex. Leaf legs end up in
/// depth-first order, visiting each node's legs in ascending order. Failures
/// are reported with the offending edge in the message.
ConnectorComplex contract_network(const TreeNetwork& net, double tol = 1e-9);

/// Reference-space state selected by an emitted effect: V^dag applied to an
/// eigenvector of mbar_effect(outcome, setting) with eigenvalue `target`
/// (1 or 0). Throws when the eigenspace is empty.
Vec network_state(const ConnectorComplex& cx, int outcome, std::size_t setting,
                  int target = 1);

/// Matrix product factors of the selected network state for a chain whose
/// edges all enter leg 1 of two-leg consumers. factors[site][outcome] has
/// shape 1x2 at the first site, 2x2 in the middle, 2x1 at the last.
std::vector<std::vector<Mat>> mps_factors(const TreeNetwork& net, int outcome,
                                          std::size_t setting, int target = 1,
                                          double tol = 1e-9);

/// Fully expanded functional of an all-XOR network, computed combinatorially.
/// Never reads any star block, so identity-response perturbations cannot
/// change the result. Throws past 13 leaves or on a non-XOR node.
/// `overrides` substitutes connectors for the named nodes.
Connector expand_xor(const TreeNetwork& net);
Connector expand_xor(const TreeNetwork& net,
                     const std::map<std::string, Connector>& overrides);

/// Chain of `parties` - 1 aligned two-leg complexes feeding leg 1 down the
/// line; `parties` >= 2.
TreeNetwork bk_chain_network(int parties);
/// Two-node tree: an aligned wbc(theta, -pi/4, pi/4) feeding leg 1 of an
/// aligned wbc(pi - theta, -pi/4, pi/4); theta in (pi/4, 3 pi/4).
TreeNetwork wbc3_network(double theta);
/// wbc3 plus an aligned Tsirelson complex feeding leg 2 of the root.
TreeNetwork wbc4_network(double theta);

}  // namespace conncal
