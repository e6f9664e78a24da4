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

#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conncal/numerics.hpp"

namespace conncal {

using json = nlohmann::json;

/// Number of inputs per party; outputs are dichotomic (+1/-1) throughout.
using Scenario = std::vector<int>;

/// Index value marking the identity slot of a leg.
inline constexpr int kStar = -1;

/// Multilinear functional of dichotomic correlators. Each entry maps a per-leg
/// index vector (kStar for the identity, otherwise an input) to a real
/// coefficient. Evaluating against measurements substitutes K_x for input x
/// and the identity for kStar.
struct CorrelatorTensor {
  Scenario arities;
  std::map<std::vector<int>, double> entries;

  std::size_t legs() const { return arities.size(); }
  void validate() const;
  bool is_xor() const;
  double sum_abs() const;
  double max_abs() const;
};

/// Tensor with the single all-identity entry set to `value`.
CorrelatorTensor pure_star(const Scenario& arities, double value = 1.0);

/// Accumulates `coeff` into the entry at `idx`, dropping entries that cancel.
void add_term(CorrelatorTensor& t, const std::vector<int>& idx, double coeff);
CorrelatorTensor scaled(const CorrelatorTensor& t, double s);
CorrelatorTensor combined(const CorrelatorTensor& a, double wa, const CorrelatorTensor& b, double wb);
double max_entry_diff(const CorrelatorTensor& a, const CorrelatorTensor& b);

json tensor_to_json(const CorrelatorTensor& t);
CorrelatorTensor tensor_from_json(const json& j);

/// Same functional expressed over conditional-probability coefficients
/// q(a|x). Storage is dense: context index (inputs, leg 0 most significant)
/// major, outcome index (bit 0 level <-> a=+1) minor.
struct ProbabilityFunctional {
  Scenario arities;
  std::vector<double> coeffs;

  std::size_t legs() const { return arities.size(); }
  std::size_t contexts() const;
  std::size_t outcomes() const { return std::size_t{1} << legs(); }
  double& at(const std::vector<int>& x, const std::vector<int>& a);
  double at(const std::vector<int>& x, const std::vector<int>& a) const;
};

/// Evaluation-preserving change of basis: q(a|x) = c_star/m + a * c_x per leg.
ProbabilityFunctional corr_to_prob(const CorrelatorTensor& t);

/// Inverse of corr_to_prob. Throws when some leg's outcome-summed coefficients
/// depend on that leg's input (no correlator form exists then).
CorrelatorTensor prob_to_corr(const ProbabilityFunctional& f, double tol = 1e-9);

/// One dichotomic observable K_x per leg and input. Effects are
/// (I + a K_x) / 2.
struct MeasurementSystem {
  std::vector<std::vector<Mat>> k_ops;

  std::size_t legs() const { return k_ops.size(); }
  Scenario arities() const;
  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
  Mat effect(std::size_t leg, int outcome, int input) const;
  bool projective(double tol = 1e-9) const;
  void validate() const;
};

/// Splices `insert` into `base` in place of leg `at`.
MeasurementSystem splice_systems(const MeasurementSystem& base, std::size_t at,
                                 const MeasurementSystem& insert);

/// Independent projective qubit observables with uniformly random Bloch axes.
MeasurementSystem random_projective_qubits(const Scenario& arities, std::mt19937& rng);

/// One sign per leg and input.
struct DeterministicStrategy {
  std::vector<std::vector<int>> signs;

  bool operator==(const DeterministicStrategy&) const = default;
};

double evaluate_on_strategy(const CorrelatorTensor& t, const DeterministicStrategy& s);

/// T[A] |state>, evaluated entry by entry with local applications only.
Vec apply_functional(const CorrelatorTensor& t, const MeasurementSystem& sys, const Vec& state);

/// <state| T[A] |state>.
double expect_functional(const CorrelatorTensor& t, const MeasurementSystem& sys, const Vec& state);

/// Dense operator T[A]. Guarded by `max_dim` on the total dimension.
Mat build_operator(const CorrelatorTensor& t, const MeasurementSystem& sys,
                   std::size_t max_dim = 1024);

std::string index_symbol(int v);
int index_symbol_parse(const std::string& s);

}  // namespace conncal
