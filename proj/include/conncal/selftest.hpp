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

#include "conncal/connector.hpp"

namespace conncal {

/// Splits a functional by the index carried on `leg`: the returned tensors
/// cover the remaining legs and reassemble the input exactly, keyed by the
/// leg's setting (kStar for the identity slot).
std::map<int, CorrelatorTensor> correlator_decompose(const CorrelatorTensor& t,
                                                     std::size_t leg);

/// Every single-party block of the selected functional, evaluated at the
/// references on the other parties, must be bounded away from singular.
struct Condition1Report {
  std::vector<std::vector<double>> sigma_min;  // [leg][setting]
  double tol = 0.0;
  bool pass = false;

  json to_json() const;
};

Condition1Report check_condition1(const ConnectorComplex& cx, double tol = 1e-7);

/// Local effects applied to the maximizing state must span the full
/// reference space for every (party, input).
struct Condition2Report {
  std::vector<std::vector<std::size_t>> rank;  // [leg][setting]
  std::size_t expected = 0;
  bool pass = false;

  json to_json() const;
};

Condition2Report check_condition2(const ConnectorComplex& cx, double rel_tol = 1e-6);

/// Monomials in the emitted effects applied to the compressed state must
/// span the output space.
struct CyclicityReport {
  std::size_t rank = 0;
  std::size_t dim = 0;
  bool pass = false;

  json to_json() const;
};

/// `psi` lives in the reference space and must lie in the invariant
/// subspace; `max_degree` 0 means the output dimension.
CyclicityReport check_cyclicity(const ConnectorComplex& cx, const Vec& psi,
                                std::size_t max_degree = 0, double tol = 1e-7);

struct FstReport {
  double attained_max = 0.0;
  Condition1Report condition1;
  Condition2Report condition2;
  CyclicityReport cyclicity;
  bool pass = false;

  json to_json() const;
  std::string summary() const;
};

/// Full self-testing verdict for the stored selector and maximizing state.
/// Requires the selected functional to attain operator maximum 1 at the
/// references (throws otherwise, reporting the attained value).
FstReport fst_verdict(const ConnectorComplex& cx, double tol = 1e-7);

}  // namespace conncal
