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

#include "conncal/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace conncal {

std::map<int, CorrelatorTensor> correlator_decompose(const CorrelatorTensor& t,
                                                     std::size_t leg) {
  t.validate();
  if (leg >= t.legs()) {
    throw std::invalid_argument("decomposition leg out of range");
  }
  Scenario rest;
  for (std::size_t k = 0; k < t.arities.size(); ++k) {
    if (k != leg) rest.push_back(t.arities[k]);
  }
  std::map<int, CorrelatorTensor> blocks;
  for (const auto& [idx, c] : t.entries) {
    std::vector<int> key;
    key.reserve(rest.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k != leg) key.push_back(idx[k]);
    }
    auto [it, fresh] = blocks.try_emplace(idx[leg]);
    if (fresh) {
      it->second.arities = rest;
    }
    add_term(it->second, key, c);
  }
  return blocks;
}

json Condition1Report::to_json() const {
  json j;
  j["sigma_min"] = sigma_min;
  j["tol"] = tol;
  j["pass"] = pass;
  return j;
}

Condition1Report check_condition1(const ConnectorComplex& cx, double tol) {
  Condition1Report rep;
  rep.tol = tol;
  rep.pass = true;
  const CorrelatorTensor functional = cx.selected_functional();
  const std::size_t full = cx.ref_dim();
  const std::size_t h = cx.out_dim();
  for (std::size_t leg = 0; leg < functional.legs(); ++leg) {
    const auto blocks = correlator_decompose(functional, leg);
    std::vector<double> row;
    for (int x = 0; x < functional.arities[leg]; ++x) {
      double smin = 0.0;
      const auto it = blocks.find(x);
      if (it != blocks.end() && !it->second.entries.empty()) {
        // Injectivity is needed on the retained subspace, not the whole leg
        // product space: contractions keep it even when the block operator is
        // singular outside. Lift the block back to all legs (identity on the
        // decomposed leg) and measure it on the co-isometry columns.
        CorrelatorTensor lifted;
        lifted.arities = functional.arities;
        for (const auto& [key, c] : it->second.entries) {
          std::vector<int> idx(key);
          idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(leg), kStar);
          add_term(lifted, idx, c);
        }
        const Mat op = build_operator(lifted, cx.refs, 4096);
        Mat restricted(full, h);
        for (std::size_t j = 0; j < h; ++j) {
          const Vec col = cx.vdag_column(j);
          for (std::size_t r = 0; r < full; ++r) {
            cplx acc(0.0, 0.0);
            for (std::size_t c = 0; c < full; ++c) acc += op.at(r, c) * col[c];
            restricted.at(r, j) = acc;
          }
        }
        smin = smallest_singular_value(restricted, std::max<std::size_t>(h, 2));
      }
      row.push_back(smin);
      if (!(smin > tol)) rep.pass = false;
    }
    rep.sigma_min.push_back(std::move(row));
  }
  return rep;
}

json Condition2Report::to_json() const {
  json j;
  j["rank"] = rank;
  j["expected"] = expected;
  j["pass"] = pass;
  return j;
}

Condition2Report check_condition2(const ConnectorComplex& cx, double rel_tol) {
  if (cx.max_state.empty()) {
    throw std::invalid_argument("no maximizing state stored");
  }
  Condition2Report rep;
  rep.expected = cx.ref_dim();
  rep.pass = true;
  const std::vector<std::size_t> dims = cx.refs.dims();
  const Scenario arities = cx.conn.arities();
  const std::size_t q = dims.size();

  std::size_t combos = 1;
  for (std::size_t l = 0; l < q; ++l) {
    combos *= 1 + 2 * static_cast<std::size_t>(arities[l]);
  }
  if (combos > (std::size_t{1} << 16)) {
    throw std::invalid_argument("effect family too large to enumerate");
  }

  for (std::size_t k = 0; k < q; ++k) {
    std::vector<std::size_t> other_choices;  // radix per other party
    std::vector<std::size_t> others;
    for (std::size_t l = 0; l < q; ++l) {
      if (l != k) {
        others.push_back(l);
        other_choices.push_back(1 + 2 * static_cast<std::size_t>(arities[l]));
      }
    }
    std::size_t other_total = 1;
    for (std::size_t r : other_choices) other_total *= r;

    std::vector<std::size_t> row;
    for (int x = 0; x < arities[k]; ++x) {
      std::vector<Vec> family;
      family.reserve(2 * other_total);
      for (std::size_t combo = 0; combo < other_total; ++combo) {
        Vec base = cx.max_state;
        std::size_t rest = combo;
        for (std::size_t t = 0; t < others.size(); ++t) {
          const std::size_t choice = rest % other_choices[t];
          rest /= other_choices[t];
          if (choice > 0) {
            const std::size_t flat = choice - 1;
            const int z = static_cast<int>(flat / 2);
            const int b = (flat % 2 == 0) ? +1 : -1;
            base = apply_local(base, dims, others[t], cx.refs.effect(others[t], b, z));
          }
        }
        for (int a : {+1, -1}) {
          family.push_back(apply_local(base, dims, k, cx.refs.effect(k, a, x)));
        }
      }
      const std::size_t r = rank_of_span(family, rel_tol);
      row.push_back(r);
      if (r != rep.expected) rep.pass = false;
    }
    rep.rank.push_back(std::move(row));
  }
  return rep;
}

json CyclicityReport::to_json() const {
  json j;
  j["rank"] = rank;
  j["dim"] = dim;
  j["pass"] = pass;
  return j;
}

CyclicityReport check_cyclicity(const ConnectorComplex& cx, const Vec& psi,
                                std::size_t max_degree, double tol) {
  if (psi.size() != cx.ref_dim()) {
    throw std::invalid_argument("state dimension does not match references");
  }
  const std::size_t h = cx.out_dim();
  Vec phi(h, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < h; ++j) {
    phi[j] = inner(cx.vdag_column(j), psi);
  }
  Vec projected(cx.ref_dim(), cplx(0.0, 0.0));
  for (std::size_t j = 0; j < h; ++j) {
    add_scaled(projected, phi[j], cx.vdag_column(j));
  }
  if (max_abs_diff(projected, psi) > tol) {
    throw std::invalid_argument("state lies outside the invariant subspace");
  }

  if (max_degree == 0) {
    max_degree = h;
  }
  std::vector<Mat> effects;
  for (std::size_t y = 0; y < cx.conn.out_settings(); ++y) {
    for (int b : {+1, -1}) {
      effects.push_back(cx.mbar_effect(b, y));
    }
  }
  std::vector<Vec> span = {phi};
  std::vector<Vec> frontier = {phi};
  for (std::size_t deg = 1; deg <= max_degree && span.size() < 4096; ++deg) {
    std::vector<Vec> next;
    for (const auto& v : frontier) {
      for (const auto& e : effects) {
        Vec w(h, cplx(0.0, 0.0));
        for (std::size_t r = 0; r < h; ++r) {
          for (std::size_t c = 0; c < h; ++c) {
            w[r] += e.at(r, c) * v[c];
          }
        }
        next.push_back(std::move(w));
        span.push_back(next.back());
        if (span.size() >= 4096) break;
      }
      if (span.size() >= 4096) break;
    }
    frontier = std::move(next);
  }

  CyclicityReport rep;
  rep.dim = h;
  rep.rank = rank_of_span(span, 1e-6);
  rep.pass = rep.rank == h;
  return rep;
}

json FstReport::to_json() const {
  json j;
  j["attained_max"] = attained_max;
  j["condition1"] = condition1.to_json();
  j["condition2"] = condition2.to_json();
  j["cyclicity"] = cyclicity.to_json();
  j["pass"] = pass;
  return j;
}

std::string FstReport::summary() const {
  std::ostringstream os;
  os << (pass ? "self-testing" : "NOT self-testing") << " (condition1 "
     << (condition1.pass ? "ok" : "FAIL") << ", condition2 "
     << (condition2.pass ? "ok" : "FAIL") << ", cyclicity "
     << (cyclicity.pass ? "ok" : "FAIL") << ")";
  return os.str();
}

FstReport fst_verdict(const ConnectorComplex& cx, double tol) {
  const CorrelatorTensor functional = cx.selected_functional();
  const Mat op = build_operator(functional, cx.refs, 4096);
  const auto [lo, hi] = hermitian_extremes(op, 1e-8, std::max<std::size_t>(op.rows(), 2));
  (void)lo;
  if (std::abs(hi - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "selected functional is not normalized: attained maximum " << hi;
    throw std::invalid_argument(os.str());
  }

  FstReport rep;
  rep.attained_max = hi;
  rep.condition1 = check_condition1(cx, tol);
  rep.condition2 = check_condition2(cx);
  rep.cyclicity = check_cyclicity(cx, cx.max_state, 0, std::max(tol, 1e-7));
  rep.pass = rep.condition1.pass && rep.condition2.pass && rep.cyclicity.pass;
  return rep;
}

}  // namespace conncal
