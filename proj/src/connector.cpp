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

#include "conncal/connector.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace conncal {

void Connector::validate() const {
  star.validate();
  if (comp.empty()) {
    throw std::invalid_argument("connector has no output components");
  }
  for (const auto& c : comp) {
    c.validate();
    if (c.arities != star.arities) {
      throw std::invalid_argument("connector component arities differ from star block");
    }
  }
}

bool Connector::is_xor() const {
  return std::all_of(comp.begin(), comp.end(),
                     [](const CorrelatorTensor& c) { return c.is_xor(); });
}

Connector identity_connector(int settings) {
  if (settings < 1) {
    throw std::invalid_argument("identity connector needs at least one setting");
  }
  Connector c;
  c.star = pure_star({settings});
  c.comp.resize(static_cast<std::size_t>(settings));
  for (int y = 0; y < settings; ++y) {
    c.comp[static_cast<std::size_t>(y)].arities = {settings};
    add_term(c.comp[static_cast<std::size_t>(y)], {y}, 1.0);
  }
  return c;
}

Vec ConnectorComplex::vdag_column(std::size_t j) const {
  Vec col(ref_dim());
  for (std::size_t d = 0; d < ref_dim(); ++d) {
    col[d] = std::conj(v.at(j, d));
  }
  return col;
}

Mat ConnectorComplex::mbar_effect(int outcome, std::size_t y) const {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("outcome must be +1 or -1");
  }
  return (mbar_star_ + mbar_corr_.at(y) * cplx(outcome, 0.0)) * cplx(0.5, 0.0);
}

MeasurementSystem ConnectorComplex::emitted_system() const {
  MeasurementSystem sys;
  sys.k_ops = {mbar_corr_};
  return sys;
}

CorrelatorTensor ConnectorComplex::selected_functional() const {
  CorrelatorTensor t = scaled(conn.star, mu_star);
  for (std::size_t y = 0; y < conn.comp.size(); ++y) {
    const double w = y < mu_comp.size() ? mu_comp[y] : 0.0;
    if (w != 0.0) {
      t = combined(t, 1.0, conn.comp[y], w);
    }
  }
  return t;
}

ConnectorComplex make_complex(Connector conn, MeasurementSystem refs, Mat v, Vec max_state,
                              double mu_star, std::vector<double> mu_comp) {
  conn.validate();
  refs.validate();
  if (refs.arities() != conn.arities()) {
    throw std::invalid_argument("reference arities differ from connector arities");
  }
  if (v.rows() == 0 || v.cols() != refs.total_dim()) {
    throw std::invalid_argument("co-isometry shape does not match reference dimension");
  }
  if (!max_state.empty() && max_state.size() != v.cols()) {
    throw std::invalid_argument("maximizing state dimension does not match references");
  }
  if (!mu_comp.empty() && mu_comp.size() != conn.comp.size()) {
    throw std::invalid_argument("selector weight count differs from component count");
  }
  if (mu_comp.empty() && mu_star == 0.0) {
    mu_comp.assign(conn.comp.size(), 0.0);
    mu_comp[conn.comp.size() >= 2 ? 1 : 0] = 1.0;
  } else if (mu_comp.empty()) {
    mu_comp.assign(conn.comp.size(), 0.0);
  }

  ConnectorComplex cx;
  cx.conn = std::move(conn);
  cx.refs = std::move(refs);
  cx.v = std::move(v);
  cx.max_state = std::move(max_state);
  cx.mu_star = mu_star;
  cx.mu_comp = std::move(mu_comp);

  const std::size_t h = cx.out_dim();
  std::vector<Vec> cols(h);
  for (std::size_t j = 0; j < h; ++j) {
    cols[j] = cx.vdag_column(j);
  }
  auto compress = [&](const CorrelatorTensor& t) {
    Mat m(h, h);
    for (std::size_t j = 0; j < h; ++j) {
      const Vec w = apply_functional(t, cx.refs, cols[j]);
      for (std::size_t i = 0; i < h; ++i) {
        m.at(i, j) = inner(cols[i], w);
      }
    }
    return m;
  };
  cx.mbar_star_ = compress(cx.conn.star);
  cx.mbar_corr_.reserve(cx.conn.comp.size());
  for (const auto& c : cx.conn.comp) {
    cx.mbar_corr_.push_back(compress(c));
  }
  return cx;
}

json TightReport::to_json() const {
  json j;
  j["tol"] = tol;
  j["refs_projective"] = refs_projective;
  j["coisometry_residual"] = coisometry_residual;
  j["completeness_residual"] = completeness_residual;
  j["projector_residuals"] = projector_residuals;
  j["invariant_residual"] = invariant_residual;
  j["sampled_range_violation"] = sampled_range_violation;
  j["samples"] = samples;
  j["pass"] = pass;
  return j;
}

std::string TightReport::summary() const {
  std::ostringstream os;
  double worst = std::max({coisometry_residual, completeness_residual, invariant_residual,
                           sampled_range_violation});
  for (double r : projector_residuals) {
    worst = std::max(worst, r);
  }
  os << (pass ? "tight" : "NOT tight") << " (worst residual " << worst;
  if (!refs_projective) {
    os << ", references not projective";
  }
  os << ")";
  return os.str();
}

TightReport verify_tight(const ConnectorComplex& cx, double tol, bool sample_bound) {
  TightReport rep;
  rep.tol = tol;
  rep.refs_projective = cx.refs.projective(std::max(tol, 1e-12));
  rep.coisometry_residual = max_abs_diff(cx.v * cx.v.dagger(), Mat::identity(cx.out_dim()));
  rep.completeness_residual = max_abs_diff(cx.mbar_star(), Mat::identity(cx.out_dim()));
  for (std::size_t y = 0; y < cx.conn.out_settings(); ++y) {
    for (int b : {+1, -1}) {
      const Mat e = cx.mbar_effect(b, y);
      const Mat herm = e - e.dagger();
      rep.projector_residuals.push_back(std::max(max_abs_diff(e * e, e), herm.max_abs()));
    }
  }
  rep.invariant_residual = invariant_subspace_residual(cx);

  const std::size_t q = cx.conn.legs();
  if (sample_bound && q <= 6) {
    std::mt19937 rng(0x5EED);
    constexpr int kSamples = 32;
    for (int s = 0; s < kSamples; ++s) {
      const MeasurementSystem sys = random_projective_qubits(cx.conn.arities(), rng);
      for (std::size_t y = 0; y < cx.conn.out_settings(); ++y) {
        for (int b : {+1, -1}) {
          const CorrelatorTensor eff = combined(cx.conn.star, 0.5, cx.conn.comp[y], 0.5 * b);
          const Mat op = build_operator(eff, sys);
          const auto [lo, hi] = hermitian_extremes(op, 1e-8);
          rep.sampled_range_violation =
              std::max({rep.sampled_range_violation, -lo, hi - 1.0, 0.0});
        }
      }
    }
    rep.samples = kSamples;
  }

  double worst = std::max({rep.coisometry_residual, rep.completeness_residual,
                           rep.invariant_residual, rep.sampled_range_violation});
  for (double r : rep.projector_residuals) {
    worst = std::max(worst, r);
  }
  rep.pass = rep.refs_projective && worst <= tol;
  return rep;
}

ConnectorComplex conjugate(const ConnectorComplex& cx, const std::vector<Mat>& leg_unitaries,
                           const Mat& out_unitary) {
  const std::size_t q = cx.conn.legs();
  if (leg_unitaries.size() != q) {
    throw std::invalid_argument("need one unitary per leg");
  }
  const std::vector<std::size_t> dims = cx.refs.dims();
  for (std::size_t k = 0; k < q; ++k) {
    const Mat& u = leg_unitaries[k];
    if (u.rows() != dims[k] || u.cols() != dims[k]) {
      throw std::invalid_argument("leg unitary dimension mismatch");
    }
  }
  const std::size_t h = cx.out_dim();
  Mat w = out_unitary.empty() ? Mat::identity(h) : out_unitary;
  if (w.rows() != h || w.cols() != h) {
    throw std::invalid_argument("output unitary dimension mismatch");
  }

  MeasurementSystem refs = cx.refs;
  for (std::size_t k = 0; k < q; ++k) {
    for (Mat& op : refs.k_ops[k]) {
      op = leg_unitaries[k] * op * leg_unitaries[k].dagger();
    }
  }

  auto rotate = [&](Vec state) {
    for (std::size_t k = 0; k < q; ++k) {
      state = apply_local(state, dims, k, leg_unitaries[k]);
    }
    return state;
  };

  std::vector<Vec> cols(h);
  for (std::size_t j = 0; j < h; ++j) {
    Vec mixed(cx.ref_dim(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < h; ++i) {
      add_scaled(mixed, std::conj(w.at(j, i)), cx.vdag_column(i));
    }
    cols[j] = rotate(std::move(mixed));
  }
  Mat v(h, cx.ref_dim());
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t d = 0; d < cx.ref_dim(); ++d) {
      v.at(j, d) = std::conj(cols[j][d]);
    }
  }

  Vec max_state = cx.max_state;
  if (!max_state.empty()) {
    max_state = rotate(std::move(max_state));
  }
  return make_complex(cx.conn, std::move(refs), std::move(v), std::move(max_state), cx.mu_star,
                      cx.mu_comp);
}

ConnectorComplex conjugate_leg(const ConnectorComplex& cx, std::size_t leg, const Mat& u) {
  const std::vector<std::size_t> dims = cx.refs.dims();
  if (leg >= dims.size()) {
    throw std::invalid_argument("leg index out of range");
  }
  std::vector<Mat> us;
  us.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    us.push_back(k == leg ? u : Mat::identity(dims[k]));
  }
  return conjugate(cx, us, Mat());
}

double congruence_deviation(const ConnectorComplex& producer, const ConnectorComplex& consumer,
                            std::size_t leg) {
  if (leg >= consumer.conn.legs()) {
    throw std::invalid_argument("contraction leg out of range");
  }
  const std::size_t settings = consumer.refs.k_ops[leg].size();
  if (producer.conn.out_settings() != settings) {
    throw std::invalid_argument("producer setting count differs from consumer leg");
  }
  if (producer.out_dim() != consumer.refs.k_ops[leg][0].rows()) {
    throw std::invalid_argument("producer output dimension differs from consumer leg");
  }
  double dev = max_abs_diff(producer.mbar_star(), Mat::identity(producer.out_dim()));
  for (std::size_t y = 0; y < settings; ++y) {
    dev = std::max(dev, max_abs_diff(consumer.refs.k_ops[leg][y], producer.mbar_corr(y)));
  }
  return dev;
}

bool check_congruent(const ConnectorComplex& producer, const ConnectorComplex& consumer,
                     std::size_t leg, double tol) {
  return congruence_deviation(producer, consumer, leg) <= tol;
}

namespace {

CorrelatorTensor splice_tensor(const CorrelatorTensor& outer, std::size_t leg,
                               const Connector& inner) {
  Scenario arities;
  arities.reserve(outer.arities.size() + inner.legs() - 1);
  for (std::size_t k = 0; k < outer.arities.size(); ++k) {
    if (k == leg) {
      arities.insert(arities.end(), inner.star.arities.begin(), inner.star.arities.end());
    } else {
      arities.push_back(outer.arities[k]);
    }
  }
  CorrelatorTensor out;
  out.arities = arities;
  for (const auto& [idx, c] : outer.entries) {
    const int s = idx[leg];
    const CorrelatorTensor& src =
        s == kStar ? inner.star : inner.comp.at(static_cast<std::size_t>(s));
    for (const auto& [pidx, pc] : src.entries) {
      std::vector<int> combined_idx;
      combined_idx.reserve(arities.size());
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k == leg) {
          combined_idx.insert(combined_idx.end(), pidx.begin(), pidx.end());
        } else {
          combined_idx.push_back(idx[k]);
        }
      }
      add_term(out, combined_idx, c * pc);
    }
  }
  return out;
}

}  // namespace

ConnectorComplex congruent_contract(const ConnectorComplex& producer,
                                    const ConnectorComplex& consumer, std::size_t leg,
                                    double tol) {
  const double dev = congruence_deviation(producer, consumer, leg);
  if (dev > tol) {
    std::ostringstream os;
    os << "not congruent at leg " << leg << ": deviation " << dev << " exceeds tolerance "
       << tol;
    throw std::runtime_error(os.str());
  }

  Connector conn;
  conn.star = splice_tensor(consumer.conn.star, leg, producer.conn);
  conn.comp.reserve(consumer.conn.out_settings());
  for (const auto& c : consumer.conn.comp) {
    conn.comp.push_back(splice_tensor(c, leg, producer.conn));
  }

  MeasurementSystem refs = splice_systems(consumer.refs, leg, producer.refs);

  const std::vector<std::size_t> cdims = consumer.refs.dims();
  const Mat insert = producer.v.dagger();
  const std::size_t h = consumer.out_dim();
  auto transport = [&](const Vec& state) { return apply_local(state, cdims, leg, insert); };

  Mat v(h, refs.total_dim());
  for (std::size_t j = 0; j < h; ++j) {
    const Vec col = transport(consumer.vdag_column(j));
    for (std::size_t d = 0; d < col.size(); ++d) {
      v.at(j, d) = std::conj(col[d]);
    }
  }

  Vec max_state = consumer.max_state;
  if (!max_state.empty()) {
    max_state = transport(max_state);
  }

  ConnectorComplex result = make_complex(std::move(conn), std::move(refs), std::move(v),
                                         std::move(max_state), consumer.mu_star,
                                         consumer.mu_comp);
  double drift = max_abs_diff(result.mbar_star(), consumer.mbar_star());
  for (std::size_t y = 0; y < consumer.conn.out_settings(); ++y) {
    drift = std::max(drift, max_abs_diff(result.mbar_corr(y), consumer.mbar_corr(y)));
  }
  if (drift > 1e-6) {
    throw std::logic_error("contraction changed the emitted measurement");
  }
  return result;
}

double invariant_subspace_residual(const ConnectorComplex& cx) {
  const std::size_t h = cx.out_dim();
  const std::size_t d = cx.ref_dim();
  std::vector<Vec> cols(h);
  std::vector<Vec> star_applied(h);
  for (std::size_t j = 0; j < h; ++j) {
    cols[j] = cx.vdag_column(j);
    star_applied[j] = apply_functional(cx.conn.star, cx.refs, cols[j]);
  }
  double worst = 0.0;
  for (std::size_t y = 0; y < cx.conn.out_settings(); ++y) {
    std::vector<Vec> comp_applied(h);
    for (std::size_t j = 0; j < h; ++j) {
      comp_applied[j] = apply_functional(cx.conn.comp[y], cx.refs, cols[j]);
    }
    for (int b : {+1, -1}) {
      Mat residual(d, h);
      for (std::size_t j = 0; j < h; ++j) {
        Vec w(d);
        for (std::size_t r = 0; r < d; ++r) {
          w[r] = 0.5 * (star_applied[j][r] + static_cast<double>(b) * comp_applied[j][r]);
        }
        for (std::size_t i = 0; i < h; ++i) {
          add_scaled(w, -inner(cols[i], w), cols[i]);
        }
        for (std::size_t r = 0; r < d; ++r) {
          residual.at(r, j) = w[r];
        }
      }
      if (d <= 4096) {
        const auto sv = singular_values(residual, std::max<std::size_t>(h, 2));
        worst = std::max(worst, sv.empty() ? 0.0 : sv.front());
      } else {
        worst = std::max(worst, residual.frob_norm());
      }
    }
  }
  return worst;
}

}  // namespace conncal
