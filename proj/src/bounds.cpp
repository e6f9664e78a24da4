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

#include "conncal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace conncal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SubTensor {
  Scenario arities;
  std::map<std::vector<int>, double> entries;
};

SubTensor first_leg_restricted(const SubTensor& t, const std::vector<int>& sgn) {
  SubTensor out;
  out.arities.assign(t.arities.begin() + 1, t.arities.end());
  for (const auto& [idx, c] : t.entries) {
    const double factor = idx[0] == kStar ? 1.0 : static_cast<double>(sgn[static_cast<std::size_t>(idx[0])]);
    std::vector<int> key(idx.begin() + 1, idx.end());
    out.entries[key] += c * factor;
  }
  return out;
}

std::vector<int> sign_pattern(int settings, std::size_t p) {
  std::vector<int> sgn(static_cast<std::size_t>(settings));
  for (int x = 0; x < settings; ++x) {
    const std::size_t bit = (p >> (settings - 1 - x)) & 1u;
    sgn[static_cast<std::size_t>(x)] = bit ? -1 : +1;
  }
  return sgn;
}

struct BranchBest {
  double value = kNegInf;
  std::vector<std::vector<int>> signs;
};

BranchBest best_assignment(const SubTensor& t) {
  if (t.arities.empty()) {
    BranchBest leaf;
    leaf.value = t.entries.empty() ? 0.0 : t.entries.begin()->second;
    return leaf;
  }
  const int m = t.arities[0];
  BranchBest best;
  const std::size_t patterns = std::size_t{1} << m;
  for (std::size_t p = 0; p < patterns; ++p) {
    const std::vector<int> sgn = sign_pattern(m, p);
    BranchBest sub = best_assignment(first_leg_restricted(t, sgn));
    if (sub.value > best.value) {
      best.value = sub.value;
      best.signs.clear();
      best.signs.push_back(sgn);
      best.signs.insert(best.signs.end(), sub.signs.begin(), sub.signs.end());
    }
  }
  return best;
}

void check_enumeration_size(const Scenario& arities) {
  std::size_t bits = 0;
  for (int m : arities) {
    bits += static_cast<std::size_t>(m);
  }
  if (bits > 28) {
    throw std::invalid_argument("deterministic enumeration is capped at 2^28 branches");
  }
}

}  // namespace

StrategyResult classical_max(const CorrelatorTensor& t, int threads) {
  t.validate();
  check_enumeration_size(t.arities);
  SubTensor top{t.arities, t.entries};
  const int m = t.arities[0];
  const std::size_t patterns = std::size_t{1} << m;
  std::vector<BranchBest> branch(patterns);
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1), patterns);
  if (workers <= 1) {
    for (std::size_t p = 0; p < patterns; ++p) {
      branch[p] = best_assignment(first_leg_restricted(top, sign_pattern(m, p)));
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t p = w; p < patterns; p += workers) {
          branch[p] = best_assignment(first_leg_restricted(top, sign_pattern(m, p)));
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  BranchBest best;
  std::vector<int> best_top;
  for (std::size_t p = 0; p < patterns; ++p) {
    if (branch[p].value > best.value) {
      best = branch[p];
      best_top = sign_pattern(m, p);
    }
  }
  StrategyResult res;
  res.value = best.value;
  res.strategy.signs.push_back(best_top);
  res.strategy.signs.insert(res.strategy.signs.end(), best.signs.begin(), best.signs.end());
  return res;
}

double gamma_factor(const Connector& c, int threads) {
  c.validate();
  if (!c.is_xor()) {
    throw std::invalid_argument("gamma factor needs an XOR connector");
  }
  double worst = 0.0;
  for (const auto& comp : c.comp) {
    worst = std::max(worst, classical_max(comp, threads).value);
  }
  if (worst <= 0.0) {
    throw std::invalid_argument("connector components are all zero");
  }
  return 1.0 / worst;
}

Connector classical_connector(const Connector& c, int threads) {
  const double gamma = gamma_factor(c, threads);
  Connector out;
  out.star = pure_star(c.arities());
  out.comp.reserve(c.comp.size());
  for (const auto& comp : c.comp) {
    out.comp.push_back(scaled(comp, gamma));
  }
  return out;
}

double gamma_product_bound(const TreeNetwork& net, int threads) {
  net.validate();
  double product = 1.0;
  for (const auto& n : net.nodes) {
    product *= gamma_factor(build_node(n).conn, threads);
  }
  return 1.0 / product;
}

double ns_max_xor(const CorrelatorTensor& t) {
  t.validate();
  if (!t.is_xor()) {
    throw std::invalid_argument("coefficient 1-norm bound needs an XOR functional");
  }
  return t.sum_abs();
}

namespace {

constexpr double kLpEps = 1e-9;

// Dense primal simplex on equality form: maximize c^T x, a x = b, x >= 0.
// Dantzig pricing with a Bland fallback against cycling.
double simplex_max(std::vector<std::vector<double>> a, std::vector<double> b,
                   std::vector<double> c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      for (auto& v : a[i]) v = -v;
    }
  }
  const std::size_t total = n + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(total, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = a[i][j];
    }
    t[i][n + i] = 1.0;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    basis[i] = n + i;
  }

  auto pivot = [&](std::size_t row, std::size_t col) {
    const double p = t[row][col];
    for (auto& v : t[row]) v /= p;
    b[row] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total; ++j) {
        t[i][j] -= f * t[row][j];
      }
      b[i] -= f * b[row];
    }
    basis[row] = col;
  };

  auto run = [&](const std::vector<double>& cost, std::size_t allowed) {
    constexpr long kBlandAfter = 20000;
    constexpr long kMaxIters = 400000;
    for (long iter = 0; iter < kMaxIters; ++iter) {
      std::vector<double> y(m);
      for (std::size_t i = 0; i < m; ++i) {
        y[i] = cost[basis[i]];
      }
      std::size_t enter = total;
      double best_reduced = kLpEps;
      for (std::size_t j = 0; j < allowed; ++j) {
        double r = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          if (y[i] != 0.0) r -= y[i] * t[i][j];
        }
        if (r > best_reduced) {
          enter = j;
          if (iter >= kBlandAfter) break;
          best_reduced = r;
        }
      }
      if (enter == total) return;
      std::size_t leave = m;
      double ratio = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] > kLpEps) {
          const double r = b[i] / t[i][enter];
          if (leave == m || r < ratio - kLpEps ||
              (r < ratio + kLpEps && basis[i] < basis[leave])) {
            leave = i;
            ratio = r;
          }
        }
      }
      if (leave == m) {
        throw std::runtime_error("linear program is unbounded");
      }
      pivot(leave, enter);
    }
    throw std::runtime_error("linear program did not converge");
  };

  std::vector<double> phase1(total, 0.0);
  for (std::size_t j = n; j < total; ++j) {
    phase1[j] = -1.0;
  }
  run(phase1, total);
  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) infeas += b[i];
  }
  if (infeas > 1e-7) {
    throw std::runtime_error("linear program is infeasible");
  }

  std::vector<double> phase2(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = c[j];
  }
  run(phase2, n);
  double value = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    value += phase2[basis[i]] * b[i];
  }
  return value;
}

}  // namespace

double ns_max_lp(const CorrelatorTensor& t) {
  t.validate();
  const std::size_t q = t.legs();
  if (q > 4) {
    throw std::invalid_argument("no-signalling linear program supported up to four legs");
  }
  std::size_t contexts = 1;
  for (int m : t.arities) {
    contexts *= static_cast<std::size_t>(m);
  }
  const std::size_t outcomes = std::size_t{1} << q;
  const std::size_t vars = contexts * outcomes;

  auto context_index = [&](const std::vector<int>& x) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < q; ++k) {
      idx = idx * static_cast<std::size_t>(t.arities[k]) + static_cast<std::size_t>(x[k]);
    }
    return idx;
  };

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t out = 0; out < outcomes; ++out) {
      row[ctx * outcomes + out] = 1.0;
    }
    a.push_back(std::move(row));
    b.push_back(1.0);
  }

  std::vector<int> x(q, 0);
  for (std::size_t k = 0; k < q; ++k) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < q; ++j) {
      if (j != k) others.push_back(j);
    }
    std::size_t other_ctx = 1;
    for (std::size_t j : others) {
      other_ctx *= static_cast<std::size_t>(t.arities[j]);
    }
    const std::size_t other_out = std::size_t{1} << (q - 1);
    for (std::size_t oc = 0; oc < other_ctx; ++oc) {
      std::size_t rest = oc;
      for (auto it = others.rbegin(); it != others.rend(); ++it) {
        x[*it] = static_cast<int>(rest % static_cast<std::size_t>(t.arities[*it]));
        rest /= static_cast<std::size_t>(t.arities[*it]);
      }
      for (std::size_t oo = 0; oo < other_out; ++oo) {
        for (int xs = 1; xs < t.arities[k]; ++xs) {
          std::vector<double> row(vars, 0.0);
          for (int ak = 0; ak < 2; ++ak) {
            std::size_t out = 0;
            std::size_t obits = oo;
            for (std::size_t site = q; site-- > 0;) {
              std::size_t bit;
              if (site == k) {
                bit = static_cast<std::size_t>(ak);
              } else {
                bit = obits & 1u;
                obits >>= 1;
              }
              out |= bit << (q - 1 - site);
            }
            x[k] = xs;
            row[context_index(x) * outcomes + out] += 1.0;
            x[k] = 0;
            row[context_index(x) * outcomes + out] -= 1.0;
          }
          a.push_back(std::move(row));
          b.push_back(0.0);
        }
      }
    }
  }

  std::vector<double> obj(vars, 0.0);
  for (const auto& [idx, coeff] : t.entries) {
    std::vector<int> ctx_x(q, 0);
    for (std::size_t k = 0; k < q; ++k) {
      ctx_x[k] = idx[k] == kStar ? 0 : idx[k];
    }
    const std::size_t ctx = context_index(ctx_x);
    for (std::size_t out = 0; out < outcomes; ++out) {
      double sign = 1.0;
      for (std::size_t k = 0; k < q; ++k) {
        if (idx[k] == kStar) continue;
        const std::size_t bit = (out >> (q - 1 - k)) & 1u;
        sign *= bit ? -1.0 : 1.0;
      }
      obj[ctx * outcomes + out] += coeff * sign;
    }
  }

  const double up = simplex_max(a, b, obj);
  std::vector<double> neg(obj.size());
  for (std::size_t j = 0; j < obj.size(); ++j) {
    neg[j] = -obj[j];
  }
  const double down = simplex_max(a, b, neg);
  return std::max(up, down);
}

double quantum_witness(const ConnectorComplex& cx) {
  if (cx.max_state.empty()) {
    throw std::invalid_argument("no maximizing state stored");
  }
  return expect_functional(cx.selected_functional(), cx.refs, cx.max_state);
}

namespace {

bool tight_recursive(const std::vector<SubTensor>& comps, double tol) {
  if (comps.front().arities.empty()) {
    for (const auto& c : comps) {
      const double v = c.entries.empty() ? 0.0 : c.entries.begin()->second;
      if (std::abs(v) < 1.0 - tol) return false;
    }
    return true;
  }
  const int m = comps.front().arities[0];
  const std::size_t patterns = std::size_t{1} << m;
  for (std::size_t p = 0; p < patterns; ++p) {
    const std::vector<int> sgn = sign_pattern(m, p);
    std::vector<SubTensor> reduced;
    reduced.reserve(comps.size());
    for (const auto& c : comps) {
      reduced.push_back(first_leg_restricted(c, sgn));
    }
    if (tight_recursive(reduced, tol)) return true;
  }
  return false;
}

}  // namespace

bool is_classically_tight(const Connector& c, double tol, int) {
  c.validate();
  check_enumeration_size(c.arities());
  std::vector<SubTensor> comps;
  comps.reserve(c.comp.size());
  for (const auto& comp : c.comp) {
    comps.push_back({comp.arities, comp.entries});
  }
  return tight_recursive(comps, tol);
}

json BoundReport::to_json() const {
  json j;
  j["parties"] = parties;
  j["classical"] = classical;
  j["ns"] = ns;
  j["quantum_witness"] = quantum;
  j["gamma_bound"] = gamma_bound;
  return j;
}

std::string BoundReport::csv_header() {
  return "parties,classical,ns,quantum_witness,gamma_bound";
}

std::string BoundReport::csv_row() const {
  return std::to_string(parties) + "," + format_sig17(classical) + "," + format_sig17(ns) +
         "," + format_sig17(quantum) + "," + format_sig17(gamma_bound);
}

BoundReport network_bounds(const TreeNetwork& net, int threads, int setting) {
  ConnectorComplex cx = contract_network(net);
  if (setting >= 0) {
    if (static_cast<std::size_t>(setting) >= cx.conn.out_settings()) {
      throw std::invalid_argument("selector setting out of range");
    }
    cx.mu_star = 0.0;
    cx.mu_comp.assign(cx.conn.out_settings(), 0.0);
    cx.mu_comp[static_cast<std::size_t>(setting)] = 1.0;
  }
  const CorrelatorTensor functional = cx.selected_functional();
  BoundReport rep;
  rep.parties = static_cast<int>(functional.legs());
  rep.classical = classical_max(functional, threads).value;
  rep.ns = ns_max_xor(functional);
  rep.quantum = quantum_witness(cx);
  rep.gamma_bound = gamma_product_bound(net, threads);
  return rep;
}

std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

}  // namespace conncal
