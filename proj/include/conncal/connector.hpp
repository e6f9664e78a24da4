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

#include "conncal/bell.hpp"
#include "conncal/numerics.hpp"

namespace conncal {

/// A q-leg connector in correlator coordinates: the response to the identity
/// input (`star`) plus one component tensor per emitted setting. The effect
/// for outcome b at setting y is (star + b * comp[y]) / 2.
struct Connector {
  CorrelatorTensor star;
  std::vector<CorrelatorTensor> comp;

  std::size_t legs() const { return star.legs(); }
  Scenario arities() const { return star.arities; }
  std::size_t out_settings() const { return comp.size(); }
  void validate() const;
  /// True when every component is a pure product of observables (no identity
  /// slots); the star block is never consulted by full-correlation pipelines.
  bool is_xor() const;
};

/// Single-leg connector that forwards its input party unchanged.
Connector identity_connector(int settings);

/// Connector plus reference measurements and the co-isometry onto the
/// invariant subspace. `mbar(y) = V C_y[refs] V^dag` is cached on construction.
struct ConnectorComplex {
  Connector conn;
  MeasurementSystem refs;
  Mat v;  // out_dim x ref_dim, rows orthonormal

  /// Functional-maximizing state in the reference space (empty if unknown).
  Vec max_state;
  /// Selector weights defining the certified functional mu_star * star +
  /// sum_y mu_comp[y] * comp[y].
  double mu_star = 0.0;
  std::vector<double> mu_comp;

  std::size_t out_dim() const { return v.rows(); }
  std::size_t ref_dim() const { return v.cols(); }
  /// Column j of V^dag as a state in the reference space.
  Vec vdag_column(std::size_t j) const;

  const Mat& mbar_star() const { return mbar_star_; }
  const Mat& mbar_corr(std::size_t y) const { return mbar_corr_.at(y); }
  Mat mbar_effect(int outcome, std::size_t y) const;
  /// The emitted party's observables, one per setting.
  MeasurementSystem emitted_system() const;

  CorrelatorTensor selected_functional() const;

  friend ConnectorComplex make_complex(Connector conn, MeasurementSystem refs, Mat v,
                                       Vec max_state, double mu_star,
                                       std::vector<double> mu_comp);

 private:
  Mat mbar_star_;
  std::vector<Mat> mbar_corr_;
};

/// Assembles a complex and caches the emitted measurement. Validates shapes;
/// the default selector picks component 1 when present, else component 0.
ConnectorComplex make_complex(Connector conn, MeasurementSystem refs, Mat v,
                              Vec max_state = {}, double mu_star = 0.0,
                              std::vector<double> mu_comp = {});

struct TightReport {
  double tol = 0.0;
  bool refs_projective = false;
  double coisometry_residual = 0.0;
  double completeness_residual = 0.0;
  std::vector<double> projector_residuals;  // outcome-major per setting: (+1,y0), (-1,y0), ...
  double invariant_residual = 0.0;
  double sampled_range_violation = 0.0;
  int samples = 0;
  bool pass = false;

  json to_json() const;
  std::string summary() const;
};

/// Checks the defining properties of a tight complex: projective references,
/// V V^dag = I, projective emitted effects summing to the identity, an
/// invariant reference subspace, and (for small dimensions) effect spectra
/// inside [0, 1] on randomly sampled projective qubit inputs.
TightReport verify_tight(const ConnectorComplex& cx, double tol = 1e-9,
                         bool sample_bound = true);

/// Unitary reshuffle: refs conjugated leg by leg, V becomes
/// out_unitary * V * (tensor of leg unitaries)^dag. The maximizing state is
/// rotated along.
ConnectorComplex conjugate(const ConnectorComplex& cx, const std::vector<Mat>& leg_unitaries,
                           const Mat& out_unitary);
ConnectorComplex conjugate_leg(const ConnectorComplex& cx, std::size_t leg, const Mat& u);

/// Largest entrywise deviation between the consumer's observables on `leg`
/// and the producer's emitted observables. Throws on shape/arity mismatch.
double congruence_deviation(const ConnectorComplex& producer, const ConnectorComplex& consumer,
                            std::size_t leg);
bool check_congruent(const ConnectorComplex& producer, const ConnectorComplex& consumer,
                     std::size_t leg, double tol = 1e-9);

/// Plugs the producer's output into `leg` of the consumer. Requires exact
/// congruence within `tol` (callers align with `conjugate` first). The result
/// keeps the consumer's emitted measurement, selector, and (transported)
/// maximizing state.
ConnectorComplex congruent_contract(const ConnectorComplex& producer,
                                    const ConnectorComplex& consumer, std::size_t leg,
                                    double tol = 1e-9);

/// Largest leakage of any effect out of range(V^dag): entrywise-exact for
/// small reference dimensions, Frobenius upper bound above.
double invariant_subspace_residual(const ConnectorComplex& cx);

}  // namespace conncal
