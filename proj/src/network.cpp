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

#include "conncal/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace conncal {

namespace {

constexpr double kPi = std::numbers::pi;

std::string edge_label(const NetworkEdge& e) {
  std::ostringstream os;
  os << e.from << "->" << e.to << " (leg " << e.leg + 1 << ")";
  return os.str();
}

}  // namespace

void TreeNetwork::validate() const {
  if (nodes.empty()) {
    throw std::invalid_argument("network has no nodes");
  }
  std::set<std::string> ids;
  for (const auto& n : nodes) {
    if (n.id.empty()) {
      throw std::invalid_argument("network node with empty id");
    }
    if (!ids.insert(n.id).second) {
      throw std::invalid_argument("duplicate network node id '" + n.id + "'");
    }
  }
  if (!ids.count(root)) {
    throw std::invalid_argument("network root '" + root + "' is not a node");
  }
  std::map<std::string, int> out_degree;
  std::set<std::pair<std::string, std::size_t>> taken;
  for (const auto& e : edges) {
    if (!ids.count(e.from) || !ids.count(e.to)) {
      throw std::invalid_argument("edge " + edge_label(e) + " references a missing node");
    }
    if (e.from == e.to) {
      throw std::invalid_argument("edge " + edge_label(e) + " is a self-loop");
    }
    ++out_degree[e.from];
    if (!taken.insert({e.to, e.leg}).second) {
      throw std::invalid_argument("edge " + edge_label(e) + " feeds an already fed leg");
    }
  }
  if (edges.size() + 1 != nodes.size()) {
    throw std::invalid_argument("network is not a tree (edge count mismatch)");
  }
  for (const auto& n : nodes) {
    const int d = out_degree.count(n.id) ? out_degree[n.id] : 0;
    if (n.id == root && d != 0) {
      throw std::invalid_argument("network root must not feed a consumer");
    }
    if (n.id != root && d != 1) {
      throw std::invalid_argument("node '" + n.id + "' must feed exactly one consumer leg");
    }
  }
  std::set<std::string> reached = {root};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : edges) {
      if (reached.count(e.to) && !reached.count(e.from)) {
        reached.insert(e.from);
        grew = true;
      }
    }
  }
  if (reached.size() != nodes.size()) {
    throw std::invalid_argument("network is not connected to the root");
  }
}

const NetworkNode& TreeNetwork::node(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return n;
  }
  throw std::invalid_argument("unknown network node '" + id + "'");
}

std::vector<NetworkEdge> TreeNetwork::feeds_of(const std::string& id) const {
  std::vector<NetworkEdge> in;
  for (const auto& e : edges) {
    if (e.to == id) in.push_back(e);
  }
  std::sort(in.begin(), in.end(),
            [](const NetworkEdge& a, const NetworkEdge& b) { return a.leg < b.leg; });
  return in;
}

json TreeNetwork::to_json() const {
  json j;
  j["nodes"] = json::array();
  for (const auto& n : nodes) {
    json jn;
    jn["id"] = n.id;
    jn["family"] = n.family;
    jn["params"] = n.params;
    jn["variant"] = variant_to_string(n.variant);
    j["nodes"].push_back(jn);
  }
  j["edges"] = json::array();
  for (const auto& e : edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["leg"] = e.leg + 1;
    j["edges"].push_back(je);
  }
  j["root"] = root;
  return j;
}

TreeNetwork TreeNetwork::from_json(const json& j) {
  TreeNetwork net;
  for (const auto& jn : j.at("nodes")) {
    NetworkNode n;
    n.id = jn.at("id").get<std::string>();
    n.family = jn.at("family").get<std::string>();
    n.params = jn.value("params", json::object());
    n.variant = variant_from_string(jn.value("variant", std::string("base")));
    net.nodes.push_back(std::move(n));
  }
  if (j.contains("edges")) {
    for (const auto& je : j.at("edges")) {
      NetworkEdge e;
      e.from = je.at("from").get<std::string>();
      e.to = je.at("to").get<std::string>();
      const long long leg = je.at("leg").get<long long>();
      if (leg < 1) {
        throw std::invalid_argument("edge legs are 1-based and must be positive");
      }
      e.leg = static_cast<std::size_t>(leg - 1);
      net.edges.push_back(std::move(e));
    }
  }
  net.root = j.at("root").get<std::string>();
  net.validate();
  return net;
}

ConnectorComplex build_node(const NetworkNode& n) {
  return build_family(n.family, n.params, n.variant);
}

namespace {

ConnectorComplex contract_below(const TreeNetwork& net, const std::string& id, double tol) {
  ConnectorComplex cx = build_node(net.node(id));
  std::vector<NetworkEdge> in = net.feeds_of(id);
  std::reverse(in.begin(), in.end());
  for (const auto& e : in) {
    const ConnectorComplex producer = contract_below(net, e.from, tol);
    try {
      cx = congruent_contract(producer, cx, e.leg, tol);
    } catch (const std::exception& ex) {
      throw std::runtime_error("edge " + edge_label(e) + ": " + ex.what());
    }
  }
  return cx;
}

}  // namespace

ConnectorComplex contract_network(const TreeNetwork& net, double tol) {
  net.validate();
  return contract_below(net, net.root, tol);
}

Vec network_state(const ConnectorComplex& cx, int outcome, std::size_t setting, int target) {
  if (target != 0 && target != 1) {
    throw std::invalid_argument("eigenvalue target must be 0 or 1");
  }
  if (setting >= cx.conn.out_settings()) {
    throw std::invalid_argument("selector setting out of range");
  }
  const Mat effect = cx.mbar_effect(outcome, setting);
  const EigSystem eig = hermitian_eig(effect, 1e-8);
  std::size_t chosen = effect.rows();
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values[i] - static_cast<double>(target)) < 1e-6) {
      chosen = i;
      break;
    }
  }
  if (chosen == effect.rows()) {
    std::ostringstream os;
    os << "selected effect has no eigenvalue-" << target << " eigenvector";
    throw std::runtime_error(os.str());
  }
  Vec phi(effect.rows());
  for (std::size_t r = 0; r < effect.rows(); ++r) {
    phi[r] = eig.vectors.at(r, chosen);
  }
  Vec psi(cx.ref_dim(), cplx(0.0, 0.0));
  for (std::size_t j = 0; j < cx.out_dim(); ++j) {
    add_scaled(psi, phi[j], cx.vdag_column(j));
  }
  return psi;
}

std::vector<std::vector<Mat>> mps_factors(const TreeNetwork& net, int outcome,
                                          std::size_t setting, int target, double tol) {
  net.validate();
  std::vector<std::string> chain = {net.root};
  while (true) {
    const std::vector<NetworkEdge> in = net.feeds_of(chain.back());
    if (in.empty()) break;
    if (in.size() != 1 || in.front().leg != 0) {
      throw std::invalid_argument(
          "matrix product form needs a chain fed through leg 1; use network_state instead");
    }
    chain.push_back(in.front().from);
  }
  if (chain.size() != net.nodes.size()) {
    throw std::invalid_argument(
        "matrix product form needs a chain fed through leg 1; use network_state instead");
  }
  std::reverse(chain.begin(), chain.end());  // deepest node first

  std::vector<ConnectorComplex> cxs;
  cxs.reserve(chain.size());
  for (const auto& id : chain) {
    ConnectorComplex cx = build_node(net.node(id));
    if (cx.conn.legs() != 2 || cx.ref_dim() != 4 || cx.out_dim() != 2) {
      throw std::invalid_argument(
          "matrix product form needs two-leg qubit nodes; use network_state instead");
    }
    cxs.push_back(std::move(cx));
  }
  for (std::size_t k = 0; k + 1 < cxs.size(); ++k) {
    const double dev = congruence_deviation(cxs[k], cxs[k + 1], 0);
    if (dev > tol) {
      std::ostringstream os;
      os << "edge " << chain[k] << "->" << chain[k + 1] << " (leg 1): deviation " << dev
         << " exceeds tolerance " << tol;
      throw std::runtime_error(os.str());
    }
  }

  const ConnectorComplex& rootcx = cxs.back();
  const Mat effect = rootcx.mbar_effect(outcome, setting);
  const EigSystem eig = hermitian_eig(effect, 1e-8);
  std::size_t chosen = effect.rows();
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    if (std::abs(eig.values[i] - static_cast<double>(target)) < 1e-6) {
      chosen = i;
      break;
    }
  }
  if (chosen == effect.rows()) {
    std::ostringstream os;
    os << "selected effect has no eigenvalue-" << target << " eigenvector";
    throw std::runtime_error(os.str());
  }
  Vec phi(2);
  phi[0] = eig.vectors.at(0, chosen);
  phi[1] = eig.vectors.at(1, chosen);

  std::vector<std::vector<Mat>> factors;
  std::vector<Mat> first(2, Mat(1, 2));
  first[0].at(0, 0) = 1.0;
  first[1].at(0, 1) = 1.0;
  factors.push_back(std::move(first));
  for (std::size_t k = 0; k + 1 < cxs.size(); ++k) {
    const Mat vdag = cxs[k].v.dagger();  // 4 x 2, row index = 2*bond + party
    std::vector<Mat> site(2, Mat(2, 2));
    for (int p = 0; p < 2; ++p) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t ap = 0; ap < 2; ++ap) {
          site[static_cast<std::size_t>(p)].at(a, ap) =
              vdag.at(2 * a + static_cast<std::size_t>(p), ap);
        }
      }
    }
    factors.push_back(std::move(site));
  }
  const Mat vdag = rootcx.v.dagger();
  std::vector<Mat> last(2, Mat(2, 1));
  for (int p = 0; p < 2; ++p) {
    for (std::size_t a = 0; a < 2; ++a) {
      last[static_cast<std::size_t>(p)].at(a, 0) =
          vdag.at(2 * a + static_cast<std::size_t>(p), 0) * phi[0] +
          vdag.at(2 * a + static_cast<std::size_t>(p), 1) * phi[1];
    }
  }
  factors.push_back(std::move(last));
  return factors;
}

namespace {

Connector expand_below(const TreeNetwork& net, const std::string& id,
                       const std::map<std::string, Connector>& overrides) {
  const NetworkNode& n = net.node(id);
  const auto it = overrides.find(id);
  Connector conn = it != overrides.end() ? it->second : build_node(n).conn;
  conn.validate();
  if (!conn.is_xor()) {
    throw std::invalid_argument("node '" + id + "' is not an XOR connector");
  }
  std::vector<NetworkEdge> in = net.feeds_of(id);
  std::reverse(in.begin(), in.end());
  for (const auto& e : in) {
    const Connector inner = expand_below(net, e.from, overrides);
    Connector spliced;
    Scenario arities;
    for (std::size_t k = 0; k < conn.star.arities.size(); ++k) {
      if (k == e.leg) {
        arities.insert(arities.end(), inner.star.arities.begin(), inner.star.arities.end());
      } else {
        arities.push_back(conn.star.arities[k]);
      }
    }
    if (e.leg >= conn.star.arities.size()) {
      throw std::invalid_argument("edge " + edge_label(e) + " leg out of range");
    }
    if (conn.star.arities[e.leg] != static_cast<int>(inner.comp.size())) {
      throw std::invalid_argument("edge " + edge_label(e) + " setting count mismatch");
    }
    spliced.star = pure_star(arities);
    spliced.comp.reserve(conn.comp.size());
    for (const auto& comp : conn.comp) {
      CorrelatorTensor out;
      out.arities = arities;
      for (const auto& [idx, c] : comp.entries) {
        const int s = idx[e.leg];
        const CorrelatorTensor& src = inner.comp.at(static_cast<std::size_t>(s));
        for (const auto& [pidx, pc] : src.entries) {
          std::vector<int> joined;
          joined.reserve(arities.size());
          for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k == e.leg) {
              joined.insert(joined.end(), pidx.begin(), pidx.end());
            } else {
              joined.push_back(idx[k]);
            }
          }
          add_term(out, joined, c * pc);
        }
      }
      spliced.comp.push_back(std::move(out));
    }
    conn = std::move(spliced);
  }
  return conn;
}

std::size_t leaf_count(const TreeNetwork& net) {
  std::size_t legs = 0;
  for (const auto& n : net.nodes) {
    legs += build_node(n).conn.legs();
  }
  return legs - net.edges.size();
}

}  // namespace

Connector expand_xor(const TreeNetwork& net) { return expand_xor(net, {}); }

Connector expand_xor(const TreeNetwork& net,
                     const std::map<std::string, Connector>& overrides) {
  net.validate();
  if (leaf_count(net) > 13) {
    throw std::invalid_argument("XOR expansion is capped at 13 leaves");
  }
  return expand_below(net, net.root, overrides);
}

TreeNetwork bk_chain_network(int parties) {
  if (parties < 2) {
    throw std::invalid_argument("chain needs at least two parties");
  }
  TreeNetwork net;
  const int k = parties - 1;
  for (int i = 1; i <= k; ++i) {
    NetworkNode n;
    n.id = "n" + std::to_string(i);
    n.family = "tsirelson";
    n.variant = Variant::aligned;
    net.nodes.push_back(std::move(n));
  }
  for (int i = 1; i < k; ++i) {
    net.edges.push_back({"n" + std::to_string(i), "n" + std::to_string(i + 1), 0});
  }
  net.root = "n" + std::to_string(k);
  net.validate();
  return net;
}

TreeNetwork wbc3_network(double theta) {
  if (!(theta > kPi / 4.0) || !(theta < 3.0 * kPi / 4.0)) {
    throw std::invalid_argument("chain angle must lie in (pi/4, 3 pi/4)");
  }
  TreeNetwork net;
  NetworkNode inner;
  inner.id = "n1";
  inner.family = "wbc";
  inner.params = {{"theta", theta}, {"phi", -kPi / 4.0}, {"omega", kPi / 4.0}};
  inner.variant = Variant::aligned;
  NetworkNode outer;
  outer.id = "n2";
  outer.family = "wbc";
  outer.params = {{"theta", kPi - theta}, {"phi", -kPi / 4.0}, {"omega", kPi / 4.0}};
  outer.variant = Variant::aligned;
  net.nodes = {std::move(inner), std::move(outer)};
  net.edges.push_back({"n1", "n2", 0});
  net.root = "n2";
  net.validate();
  return net;
}

TreeNetwork wbc4_network(double theta) {
  TreeNetwork net = wbc3_network(theta);
  NetworkNode extra;
  extra.id = "n3";
  extra.family = "tsirelson";
  extra.variant = Variant::aligned;
  net.nodes.push_back(std::move(extra));
  net.edges.push_back({"n3", "n2", 1});
  net.validate();
  return net;
}

}  // namespace conncal
