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

#include "conncal/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conncal {

namespace {
constexpr double kPruneEps = 1e-15;

void check_index(const Scenario& arities, const std::vector<int>& idx) {
  if (idx.size() != arities.size())
    throw std::invalid_argument("CorrelatorTensor: index length mismatch");
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k] != kStar && (idx[k] < 0 || idx[k] >= arities[k]))
      throw std::invalid_argument("CorrelatorTensor: index out of range at leg " +
                                  std::to_string(k));
}
}  // namespace

void CorrelatorTensor::validate() const {
  for (int m : arities)
    if (m < 1) throw std::invalid_argument("CorrelatorTensor: arity must be positive");
  for (const auto& [idx, c] : entries) {
    (void)c;
    check_index(arities, idx);
  }
}

bool CorrelatorTensor::is_xor() const {
  for (const auto& [idx, c] : entries) {
    (void)c;
    for (int v : idx)
      if (v == kStar) return false;
  }
  return true;
}

double CorrelatorTensor::sum_abs() const {
  double s = 0.0;
  for (const auto& [idx, c] : entries) {
    (void)idx;
    s += std::abs(c);
  }
  return s;
}

double CorrelatorTensor::max_abs() const {
  double s = 0.0;
  for (const auto& [idx, c] : entries) {
    (void)idx;
    s = std::max(s, std::abs(c));
  }
  return s;
}

CorrelatorTensor pure_star(const Scenario& arities, double value) {
  CorrelatorTensor t;
  t.arities = arities;
  t.entries[std::vector<int>(arities.size(), kStar)] = value;
  return t;
}

void add_term(CorrelatorTensor& t, const std::vector<int>& idx, double coeff) {
  check_index(t.arities, idx);
  auto it = t.entries.find(idx);
  if (it == t.entries.end()) {
    if (coeff != 0.0) t.entries.emplace(idx, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) <= kPruneEps) t.entries.erase(it);
}

CorrelatorTensor scaled(const CorrelatorTensor& t, double s) {
  CorrelatorTensor r = t;
  for (auto& [idx, c] : r.entries) {
    (void)idx;
    c *= s;
  }
  return r;
}

CorrelatorTensor combined(const CorrelatorTensor& a, double wa, const CorrelatorTensor& b,
                          double wb) {
  if (a.arities != b.arities) throw std::invalid_argument("combined: arity mismatch");
  CorrelatorTensor r;
  r.arities = a.arities;
  for (const auto& [idx, c] : a.entries) add_term(r, idx, wa * c);
  for (const auto& [idx, c] : b.entries) add_term(r, idx, wb * c);
  return r;
}

double max_entry_diff(const CorrelatorTensor& a, const CorrelatorTensor& b) {
  if (a.arities != b.arities) throw std::invalid_argument("max_entry_diff: arity mismatch");
  double m = 0.0;
  for (const auto& [idx, c] : a.entries) {
    auto it = b.entries.find(idx);
    m = std::max(m, std::abs(c - (it == b.entries.end() ? 0.0 : it->second)));
  }
  for (const auto& [idx, c] : b.entries)
    if (!a.entries.count(idx)) m = std::max(m, std::abs(c));
  return m;
}

std::string index_symbol(int v) { return v == kStar ? "*" : std::to_string(v); }

int index_symbol_parse(const std::string& s) {
  if (s == "*") return kStar;
  std::size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size() || v < 0) throw std::invalid_argument("bad index symbol: " + s);
  return v;
}

json tensor_to_json(const CorrelatorTensor& t) {
  json j;
  j["arities"] = t.arities;
  json entries = json::array();
  for (const auto& [idx, c] : t.entries) {
    json e;
    json iv = json::array();
    for (int v : idx) iv.push_back(index_symbol(v));
    e["idx"] = std::move(iv);
    e["c"] = c;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

CorrelatorTensor tensor_from_json(const json& j) {
  CorrelatorTensor t;
  t.arities = j.at("arities").get<Scenario>();
  for (const auto& e : j.at("entries")) {
    std::vector<int> idx;
    for (const auto& s : e.at("idx")) idx.push_back(index_symbol_parse(s.get<std::string>()));
    add_term(t, idx, e.at("c").get<double>());
  }
  t.validate();
  return t;
}

std::size_t ProbabilityFunctional::contexts() const {
  std::size_t n = 1;
  for (int m : arities) n *= static_cast<std::size_t>(m);
  return n;
}

namespace {
std::size_t prob_flat_index(const ProbabilityFunctional& f, const std::vector<int>& x,
                            const std::vector<int>& a) {
  std::size_t ctx = 0;
  for (std::size_t k = 0; k < f.arities.size(); ++k) {
    if (x[k] < 0 || x[k] >= f.arities[k])
      throw std::invalid_argument("ProbabilityFunctional: input out of range");
    ctx = ctx * static_cast<std::size_t>(f.arities[k]) + static_cast<std::size_t>(x[k]);
  }
  std::size_t out = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 1 && a[k] != -1)
      throw std::invalid_argument("ProbabilityFunctional: outcome must be +1 or -1");
    out = (out << 1) | (a[k] == -1 ? 1u : 0u);
  }
  return ctx * f.outcomes() + out;
}
}  // namespace

double& ProbabilityFunctional::at(const std::vector<int>& x, const std::vector<int>& a) {
  return coeffs[prob_flat_index(*this, x, a)];
}

double ProbabilityFunctional::at(const std::vector<int>& x, const std::vector<int>& a) const {
  return coeffs[prob_flat_index(*this, x, a)];
}

ProbabilityFunctional corr_to_prob(const CorrelatorTensor& t) {
  t.validate();
  ProbabilityFunctional f;
  f.arities = t.arities;
  const std::size_t q = t.legs();
  const std::size_t total = f.contexts() * f.outcomes();
  if (total > (std::size_t{1} << 24))
    throw std::invalid_argument("corr_to_prob: scenario too large for the dense form");
  f.coeffs.assign(total, 0.0);

  std::vector<int> x(q), a(q);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t out = flat % f.outcomes();
    std::size_t ctx = flat / f.outcomes();
    for (std::size_t k = q; k-- > 0;) {
      x[k] = static_cast<int>(ctx % static_cast<std::size_t>(t.arities[k]));
      ctx /= static_cast<std::size_t>(t.arities[k]);
    }
    for (std::size_t k = 0; k < q; ++k) a[k] = ((out >> (q - 1 - k)) & 1u) ? -1 : 1;

    double v = 0.0;
    for (const auto& [idx, c] : t.entries) {
      double w = c;
      for (std::size_t k = 0; k < q && w != 0.0; ++k) {
        if (idx[k] == kStar)
          w /= static_cast<double>(t.arities[k]);
        else if (x[k] == idx[k])
          w *= static_cast<double>(a[k]);
        else
          w = 0.0;
      }
      v += w;
    }
    f.coeffs[flat] = v;
  }
  return f;
}

CorrelatorTensor prob_to_corr(const ProbabilityFunctional& f, double tol) {
  const std::size_t q = f.legs();
  const std::size_t n_ctx = f.contexts();
  const std::size_t n_out = f.outcomes();
  if (f.coeffs.size() != n_ctx * n_out)
    throw std::invalid_argument("prob_to_corr: coefficient table size mismatch");

  std::vector<int> x(q), a(q);
  auto decode = [&](std::size_t flat) {
    std::size_t out = flat % n_out;
    std::size_t ctx = flat / n_out;
    for (std::size_t k = q; k-- > 0;) {
      x[k] = static_cast<int>(ctx % static_cast<std::size_t>(f.arities[k]));
      ctx /= static_cast<std::size_t>(f.arities[k]);
    }
    for (std::size_t k = 0; k < q; ++k) a[k] = ((out >> (q - 1 - k)) & 1u) ? -1 : 1;
  };

  // A correlator form exists only when, for every leg, summing out that leg's
  // outcome kills the dependence on that leg's input.
  for (std::size_t leg = 0; leg < q; ++leg) {
    std::map<std::vector<int>, std::vector<double>> sums;  // key: all (x,a) except leg's
    for (std::size_t flat = 0; flat < f.coeffs.size(); ++flat) {
      decode(flat);
      std::vector<int> key;
      key.reserve(2 * q - 2);
      for (std::size_t k = 0; k < q; ++k)
        if (k != leg) {
          key.push_back(x[k]);
          key.push_back(a[k]);
        }
      auto& row = sums[key];
      row.resize(static_cast<std::size_t>(f.arities[leg]), 0.0);
      row[static_cast<std::size_t>(x[leg])] += f.coeffs[flat];
    }
    for (const auto& [key, row] : sums) {
      (void)key;
      for (double v : row)
        if (std::abs(v - row[0]) > tol)
          throw std::invalid_argument(
              "prob_to_corr: coefficients of leg " + std::to_string(leg) +
              " depend on that leg's input after summing outcomes (deviation " +
              std::to_string(std::abs(v - row[0])) + ")");
    }
  }

  CorrelatorTensor t;
  t.arities = f.arities;
  std::vector<int> sym(q);
  std::size_t n_sym = 1;
  for (int m : f.arities) n_sym *= static_cast<std::size_t>(m) + 1;
  for (std::size_t si = 0; si < n_sym; ++si) {
    std::size_t rem = si;
    for (std::size_t k = q; k-- > 0;) {
      std::size_t base = static_cast<std::size_t>(f.arities[k]) + 1;
      std::size_t v = rem % base;
      rem /= base;
      sym[k] = v == 0 ? kStar : static_cast<int>(v - 1);
    }
    double c = 0.0;
    for (std::size_t flat = 0; flat < f.coeffs.size(); ++flat) {
      if (f.coeffs[flat] == 0.0) continue;
      decode(flat);
      double w = f.coeffs[flat];
      for (std::size_t k = 0; k < q && w != 0.0; ++k) {
        if (sym[k] == kStar)
          w *= 0.5;
        else if (x[k] == sym[k])
          w *= 0.5 * static_cast<double>(a[k]);
        else
          w = 0.0;
      }
      c += w;
    }
    if (std::abs(c) > kPruneEps) t.entries[sym] = c;
  }
  return t;
}

Scenario MeasurementSystem::arities() const {
  Scenario s;
  s.reserve(k_ops.size());
  for (const auto& leg : k_ops) s.push_back(static_cast<int>(leg.size()));
  return s;
}

std::vector<std::size_t> MeasurementSystem::dims() const {
  std::vector<std::size_t> d;
  d.reserve(k_ops.size());
  for (const auto& leg : k_ops) {
    if (leg.empty()) throw std::invalid_argument("MeasurementSystem: leg without observables");
    d.push_back(leg.front().rows());
  }
  return d;
}

std::size_t MeasurementSystem::total_dim() const {
  std::size_t t = 1;
  for (auto d : dims()) t *= d;
  return t;
}

Mat MeasurementSystem::effect(std::size_t leg, int outcome, int input) const {
  if (outcome != 1 && outcome != -1)
    throw std::invalid_argument("MeasurementSystem: outcome must be +1 or -1");
  const Mat& k = k_ops.at(leg).at(static_cast<std::size_t>(input));
  return (Mat::identity(k.rows()) + k * cplx(outcome)) * cplx(0.5);
}

bool MeasurementSystem::projective(double tol) const {
  for (const auto& leg : k_ops)
    for (const Mat& k : leg) {
      if (!k.is_hermitian(tol)) return false;
      if (max_abs_diff(k * k, Mat::identity(k.rows())) > tol) return false;
    }
  return true;
}

void MeasurementSystem::validate() const {
  for (const auto& leg : k_ops) {
    if (leg.empty()) throw std::invalid_argument("MeasurementSystem: leg without observables");
    std::size_t d = leg.front().rows();
    for (const Mat& k : leg)
      if (k.rows() != d || k.cols() != d)
        throw std::invalid_argument("MeasurementSystem: inconsistent operator shapes on a leg");
  }
}

MeasurementSystem splice_systems(const MeasurementSystem& base, std::size_t at,
                                 const MeasurementSystem& insert) {
  if (at >= base.legs()) throw std::invalid_argument("splice_systems: leg out of range");
  MeasurementSystem out;
  out.k_ops.reserve(base.legs() + insert.legs() - 1);
  for (std::size_t k = 0; k < base.legs(); ++k) {
    if (k == at)
      for (const auto& leg : insert.k_ops) out.k_ops.push_back(leg);
    else
      out.k_ops.push_back(base.k_ops[k]);
  }
  return out;
}

MeasurementSystem random_projective_qubits(const Scenario& arities, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  MeasurementSystem sys;
  sys.k_ops.resize(arities.size());
  for (std::size_t leg = 0; leg < arities.size(); ++leg) {
    for (int x = 0; x < arities[leg]; ++x) {
      double nx, ny, nz, len;
      do {
        nx = gauss(rng);
        ny = gauss(rng);
        nz = gauss(rng);
        len = std::sqrt(nx * nx + ny * ny + nz * nz);
      } while (len < 1e-6);
      Mat k = sigma_x() * cplx(nx / len) + sigma_y() * cplx(ny / len) + sigma_z() * cplx(nz / len);
      sys.k_ops[leg].push_back(std::move(k));
    }
  }
  return sys;
}

double evaluate_on_strategy(const CorrelatorTensor& t, const DeterministicStrategy& s) {
  if (s.signs.size() != t.legs())
    throw std::invalid_argument("evaluate_on_strategy: leg count mismatch");
  double v = 0.0;
  for (const auto& [idx, c] : t.entries) {
    double w = c;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] == kStar) continue;
      w *= static_cast<double>(s.signs[k].at(static_cast<std::size_t>(idx[k])));
    }
    v += w;
  }
  return v;
}

Vec apply_functional(const CorrelatorTensor& t, const MeasurementSystem& sys, const Vec& state) {
  if (t.legs() != sys.legs()) throw std::invalid_argument("apply_functional: leg count mismatch");
  auto dims = sys.dims();
  Vec acc(state.size());
  for (const auto& [idx, c] : t.entries) {
    Vec cur = state;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] == kStar) continue;
      cur = apply_local(cur, dims, k, sys.k_ops[k][static_cast<std::size_t>(idx[k])]);
    }
    add_scaled(acc, c, cur);
  }
  return acc;
}

double expect_functional(const CorrelatorTensor& t, const MeasurementSystem& sys,
                         const Vec& state) {
  return inner(state, apply_functional(t, sys, state)).real();
}

Mat build_operator(const CorrelatorTensor& t, const MeasurementSystem& sys, std::size_t max_dim) {
  if (t.legs() != sys.legs()) throw std::invalid_argument("build_operator: leg count mismatch");
  const std::size_t total = sys.total_dim();
  if (total > max_dim)
    throw std::invalid_argument("build_operator: total dimension " + std::to_string(total) +
                                " exceeds limit " + std::to_string(max_dim));
  auto dims = sys.dims();
  Mat acc(total, total);
  for (const auto& [idx, c] : t.entries) {
    Mat term = Mat::identity(1);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      Mat f = idx[k] == kStar ? Mat::identity(dims[k])
                              : sys.k_ops[k][static_cast<std::size_t>(idx[k])];
      term = kron(term, f);
    }
    acc += term * cplx(c);
  }
  return acc;
}

}  // namespace conncal
