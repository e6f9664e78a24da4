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

#include "conncal/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace conncal {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

Mat two_by_two(cplx a, cplx b, cplx c, cplx d) {
  Mat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

Mat bloch_observable(double nx, double ny, double nz) {
  return two_by_two(nz, cplx(nx, -ny), cplx(nx, ny), -nz);
}

Mat coisometry_from_rows(const std::vector<Vec>& rows) {
  Mat v(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      v.at(r, c) = rows[r][c];
    }
  }
  return v;
}

Vec conj_vec(const Vec& x) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::conj(x[i]);
  }
  return y;
}

}  // namespace

Variant variant_from_string(const std::string& s) {
  if (s == "base") return Variant::base;
  if (s == "aligned") return Variant::aligned;
  throw std::invalid_argument("unknown variant '" + s + "' (expected base or aligned)");
}

std::string variant_to_string(Variant v) {
  return v == Variant::base ? "base" : "aligned";
}

void GraphSpec::validate() const {
  if (q < 2) {
    throw std::invalid_argument("graph needs at least two vertices");
  }
  if (root < 0 || root >= q) {
    throw std::invalid_argument("graph root out of range");
  }
  if (edges.empty()) {
    throw std::invalid_argument("graph has no edges");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= q || b < 0 || b >= q) {
      throw std::invalid_argument("graph edge endpoint out of range");
    }
    if (a == b) {
      throw std::invalid_argument("graph has a self-loop");
    }
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw std::invalid_argument("graph has a duplicate edge");
    }
  }
  std::vector<char> reached(static_cast<std::size_t>(q), 0);
  std::queue<int> frontier;
  frontier.push(root);
  reached[static_cast<std::size_t>(root)] = 1;
  const auto adj = adjacency();
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!reached[static_cast<std::size_t>(w)]) {
        reached[static_cast<std::size_t>(w)] = 1;
        frontier.push(w);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), 0) != reached.end()) {
    throw std::invalid_argument("graph is not connected");
  }
}

bool GraphSpec::has_edge(int a, int b) const {
  for (const auto& [x, y] : edges) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

std::vector<std::vector<int>> GraphSpec::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(q));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& n : adj) {
    std::sort(n.begin(), n.end());
  }
  return adj;
}

json GraphSpec::to_json() const {
  json j;
  j["q"] = q;
  j["edges"] = json::array();
  for (const auto& [a, b] : edges) {
    j["edges"].push_back({a, b});
  }
  j["root"] = root;
  return j;
}

GraphSpec GraphSpec::from_json(const json& j) {
  GraphSpec g;
  g.q = j.at("q").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("graph edges must be two-element arrays");
    }
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  g.root = j.value("root", 0);
  g.validate();
  return g;
}

GraphSpec star_graph(int q) {
  GraphSpec g;
  g.q = q;
  for (int i = 1; i < q; ++i) {
    g.edges.emplace_back(0, i);
  }
  g.root = 0;
  g.validate();
  return g;
}

GraphSpec cycle_graph(int q) {
  if (q < 3) {
    throw std::invalid_argument("cycle needs at least three vertices");
  }
  GraphSpec g;
  g.q = q;
  for (int i = 0; i < q; ++i) {
    g.edges.emplace_back(i, (i + 1) % q);
  }
  g.root = 0;
  g.validate();
  return g;
}

GraphSpec random_connected_graph(int q, std::mt19937& rng) {
  if (q < 2) {
    throw std::invalid_argument("graph needs at least two vertices");
  }
  GraphSpec g;
  g.q = q;
  std::vector<int> order(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 1; k < q; ++k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    g.edges.emplace_back(order[static_cast<std::size_t>(pick(rng))],
                         order[static_cast<std::size_t>(k)]);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int a = 0; a < q; ++a) {
    for (int b = a + 1; b < q; ++b) {
      if (!g.has_edge(a, b) && coin(rng) < 0.25) {
        g.edges.emplace_back(a, b);
      }
    }
  }
  g.root = 0;
  g.validate();
  return g;
}

std::vector<int> both_or_neither_neighbors(const GraphSpec& g, int a, int b) {
  std::vector<int> out;
  for (int v = 0; v < g.q; ++v) {
    if (v == a || v == b) continue;
    const bool near_a = g.has_edge(v, a);
    const bool near_b = g.has_edge(v, b);
    if (near_a == near_b) {
      out.push_back(v);
    }
  }
  return out;
}

Vec graph_state(const GraphSpec& g, bool parity_sign) {
  g.validate();
  const std::size_t q = static_cast<std::size_t>(g.q);
  const std::size_t dim = std::size_t{1} << q;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(q));
  Vec psi(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    auto bit = [&](int site) {
      return static_cast<int>((idx >> (q - 1 - static_cast<std::size_t>(site))) & 1u);
    };
    int sign = 0;
    for (const auto& [a, b] : g.edges) {
      sign += bit(a) * bit(b);
    }
    if (parity_sign) {
      for (int s = 0; s < g.q; ++s) {
        sign += bit(s);
      }
    }
    psi[idx] = (sign % 2 == 0) ? amp : -amp;
  }
  return psi;
}

double tilted_alpha(double theta) {
  const double s = std::sin(2.0 * theta);
  return 2.0 * std::abs(std::cos(2.0 * theta)) / std::sqrt(1.0 + s * s);
}

double tilted_beta(double theta) {
  const double a = tilted_alpha(theta);
  return std::sqrt(8.0 + 2.0 * a * a);
}

double wbc_beta(double theta, double phi, double omega) {
  return std::sin(theta) * std::sin(omega - phi) * std::sin(theta + phi + omega);
}

bool wbc_valid(double theta, double phi, double omega) {
  const double product =
      std::cos(theta + phi) * std::cos(phi) * std::cos(theta + omega) * std::cos(omega);
  if (product >= 0.0) return false;
  constexpr double kMinSine = 1e-6;
  return std::abs(std::sin(theta)) > kMinSine && std::abs(std::sin(omega - phi)) > kMinSine &&
         std::abs(std::sin(theta + phi + omega)) > kMinSine;
}

double wbc_gamma_closed_form(double theta, double phi, double omega) {
  const double beta = std::abs(wbc_beta(theta, phi, omega));
  const double ctp = std::cos(theta + phi);
  const double cto = std::cos(theta + omega);
  const double cp = std::cos(phi);
  const double co = std::cos(omega);
  double best = 0.0;
  for (int s : {+1, -1}) {
    const double value =
        std::abs(cto * co * (ctp - s * cp)) + std::abs(ctp * cp * (cto - s * co));
    best = std::max(best, value);
  }
  return beta / best;
}

double basta_beta1(const GraphSpec& g) {
  const int n1 = static_cast<int>(g.adjacency()[static_cast<std::size_t>(g.root)].size());
  return (2.0 * kSqrt2 - 1.0) * n1 + (g.q - 1);
}

double basta_beta0(const GraphSpec& g) {
  const int n1 = static_cast<int>(g.adjacency()[static_cast<std::size_t>(g.root)].size());
  return 2.0 * kSqrt2 * n1;
}

namespace {

ConnectorComplex assemble_tilted(double theta) {
  const double alpha = std::abs(theta - kPi / 4.0) < 1e-15 ? 0.0 : tilted_alpha(theta);
  const double beta = std::sqrt(8.0 + 2.0 * alpha * alpha);

  Connector conn;
  conn.star = pure_star({2, 2});
  conn.comp.resize(2);
  CorrelatorTensor& b0 = conn.comp[0];
  CorrelatorTensor& b1 = conn.comp[1];
  b0.arities = {2, 2};
  b1.arities = {2, 2};
  add_term(b0, {1, kStar}, alpha / beta);
  add_term(b0, {0, 0}, -1.0 / beta);
  add_term(b0, {1, 0}, 1.0 / beta);
  add_term(b0, {0, 1}, 1.0 / beta);
  add_term(b0, {1, 1}, 1.0 / beta);
  add_term(b1, {0, kStar}, alpha / beta);
  add_term(b1, {0, 0}, 1.0 / beta);
  add_term(b1, {1, 0}, 1.0 / beta);
  add_term(b1, {0, 1}, 1.0 / beta);
  add_term(b1, {1, 1}, -1.0 / beta);

  const double mu = std::atan(std::sin(2.0 * theta));
  MeasurementSystem refs;
  refs.k_ops = {{sigma_z(), sigma_x()},
                {bloch_observable(std::sin(mu), 0.0, std::cos(mu)),
                 bloch_observable(-std::sin(mu), 0.0, std::cos(mu))}};

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Vec plus = {c, 0.0, 0.0, s};
  const Vec minus = {0.0, -s, c, 0.0};
  Mat v = coisometry_from_rows({conj_vec(plus), conj_vec(minus)});
  return make_complex(std::move(conn), std::move(refs), std::move(v), plus);
}

}  // namespace

ConnectorComplex build_tsirelson(Variant variant) {
  ConnectorComplex cx = assemble_tilted(kPi / 4.0);
  return variant == Variant::aligned ? aligned(cx) : cx;
}

ConnectorComplex build_tilted(double theta, Variant variant) {
  if (!(theta > 0.0) || theta > kPi / 4.0 + 1e-12) {
    throw std::invalid_argument("tilt parameter must lie in (0, pi/4]");
  }
  ConnectorComplex cx = assemble_tilted(theta);
  return variant == Variant::aligned ? aligned(cx) : cx;
}

ConnectorComplex build_tilted_unchecked(double theta) { return assemble_tilted(theta); }

ConnectorComplex build_wbc(double theta, double phi, double omega, Variant variant) {
  if (!wbc_valid(theta, phi, omega)) {
    std::ostringstream os;
    os << "angles (" << theta << ", " << phi << ", " << omega
       << ") violate the validity conditions";
    throw std::invalid_argument(os.str());
  }
  const double beta = wbc_beta(theta, phi, omega);
  const double ctp = std::cos(theta + phi);
  const double cto = std::cos(theta + omega);
  const double cp = std::cos(phi);
  const double co = std::cos(omega);

  Connector conn;
  conn.star = pure_star({2, 2});
  conn.comp.resize(2);
  CorrelatorTensor& b0 = conn.comp[0];
  CorrelatorTensor& b1 = conn.comp[1];
  b0.arities = {2, 2};
  b1.arities = {2, 2};
  add_term(b1, {0, 0}, ctp * cto * co / beta);
  add_term(b1, {0, 1}, -ctp * cto * cp / beta);
  add_term(b1, {1, 1}, cp * co * ctp / beta);
  add_term(b1, {1, 0}, -cp * co * cto / beta);
  add_term(b0, {1, 1}, ctp * cto * co / beta);
  add_term(b0, {1, 0}, -ctp * cto * cp / beta);
  add_term(b0, {0, 0}, cp * co * ctp / beta);
  add_term(b0, {0, 1}, -cp * co * cto / beta);

  auto planar = [](double a) { return bloch_observable(std::cos(a), std::sin(a), 0.0); };
  MeasurementSystem refs;
  refs.k_ops = {{sigma_x(), planar(theta)}, {planar(phi), planar(omega)}};

  const double r = 1.0 / kSqrt2;
  const Vec plus = {r, 0.0, 0.0, cplx(0.0, r)};
  const Vec minus = {r, 0.0, 0.0, cplx(0.0, -r)};
  Mat v = coisometry_from_rows({conj_vec(minus), conj_vec(plus)});
  ConnectorComplex cx = make_complex(std::move(conn), std::move(refs), std::move(v), plus);
  return variant == Variant::aligned ? aligned(cx) : cx;
}

ConnectorComplex build_basta(const GraphSpec& g, Variant variant) {
  g.validate();
  const std::size_t q = static_cast<std::size_t>(g.q);
  const auto adj = g.adjacency();
  const std::vector<int>& near_root = adj[static_cast<std::size_t>(g.root)];
  const int n1 = static_cast<int>(near_root.size());
  const double beta1 = basta_beta1(g);
  const double beta0 = basta_beta0(g);

  Connector conn;
  conn.star = pure_star(Scenario(q, 2));
  conn.comp.resize(2);
  CorrelatorTensor& b0 = conn.comp[0];
  CorrelatorTensor& b1 = conn.comp[1];
  b0.arities = Scenario(q, 2);
  b1.arities = Scenario(q, 2);

  auto star_idx = [&]() { return std::vector<int>(q, kStar); };
  const std::size_t root = static_cast<std::size_t>(g.root);

  for (int root_input : {0, 1}) {
    std::vector<int> idx = star_idx();
    idx[root] = root_input;
    for (int i : near_root) {
      idx[static_cast<std::size_t>(i)] = 1;
    }
    add_term(b1, idx, static_cast<double>(n1) / beta1);
  }
  for (int i : near_root) {
    for (int root_input : {0, 1}) {
      std::vector<int> idx = star_idx();
      idx[root] = root_input;
      idx[static_cast<std::size_t>(i)] = 0;
      for (int j : adj[static_cast<std::size_t>(i)]) {
        if (j != g.root) {
          idx[static_cast<std::size_t>(j)] = 1;
        }
      }
      add_term(b1, idx, (root_input == 0 ? 1.0 : -1.0) / beta1);
    }
  }
  for (int j = 0; j < g.q; ++j) {
    if (j == g.root || g.has_edge(j, g.root)) continue;
    std::vector<int> idx = star_idx();
    idx[static_cast<std::size_t>(j)] = 0;
    for (int k : adj[static_cast<std::size_t>(j)]) {
      idx[static_cast<std::size_t>(k)] = 1;
    }
    add_term(b1, idx, 1.0 / beta1);
  }

  for (int root_input : {0, 1}) {
    std::vector<int> idx(q, 1);
    idx[root] = root_input;
    add_term(b0, idx, (root_input == 0 ? 1.0 : -1.0) * static_cast<double>(n1) / beta0);
  }
  for (int i : near_root) {
    const std::vector<int> env = both_or_neither_neighbors(g, g.root, i);
    for (int root_input : {0, 1}) {
      std::vector<int> idx = star_idx();
      idx[root] = root_input;
      idx[static_cast<std::size_t>(i)] = 0;
      for (int j : env) {
        idx[static_cast<std::size_t>(j)] = 1;
      }
      add_term(b0, idx, -1.0 / beta0);
    }
  }

  MeasurementSystem refs;
  refs.k_ops.resize(q);
  const Mat diag = bloch_observable(1.0 / kSqrt2, 0.0, 1.0 / kSqrt2);
  const Mat anti = bloch_observable(1.0 / kSqrt2, 0.0, -1.0 / kSqrt2);
  for (std::size_t k = 0; k < q; ++k) {
    if (k == root) {
      refs.k_ops[k] = {diag, anti};
    } else {
      refs.k_ops[k] = {sigma_x(), sigma_z()};
    }
  }

  const Vec plus = graph_state(g, false);
  const Vec minus = graph_state(g, true);
  Mat v = coisometry_from_rows({conj_vec(plus), conj_vec(minus)});
  ConnectorComplex cx = make_complex(std::move(conn), std::move(refs), std::move(v), plus);
  return variant == Variant::aligned ? aligned(cx) : cx;
}

namespace {

std::array<double, 3> bloch_vector(const Mat& k) {
  if (k.rows() != 2 || k.cols() != 2) {
    throw std::invalid_argument("alignment needs qubit observables");
  }
  if (!k.is_hermitian(1e-9)) {
    throw std::invalid_argument("alignment needs Hermitian observables");
  }
  const double trace = std::abs(k.at(0, 0) + k.at(1, 1));
  if (trace > 1e-9) {
    throw std::invalid_argument("alignment needs trace-free observables");
  }
  std::array<double, 3> n = {k.at(1, 0).real(), k.at(1, 0).imag(), k.at(0, 0).real()};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(len - 1.0) > 1e-9) {
    throw std::invalid_argument("alignment needs unit-norm observables");
  }
  return n;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Mat su2_from_rotation(const std::array<std::array<double, 3>, 3>& r) {
  const double tr = r[0][0] + r[1][1] + r[2][2];
  double qw, qx, qy, qz;
  if (tr > 0.0) {
    const double s = std::sqrt(tr + 1.0) * 2.0;
    qw = 0.25 * s;
    qx = (r[2][1] - r[1][2]) / s;
    qy = (r[0][2] - r[2][0]) / s;
    qz = (r[1][0] - r[0][1]) / s;
  } else if (r[0][0] > r[1][1] && r[0][0] > r[2][2]) {
    const double s = std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]) * 2.0;
    qw = (r[2][1] - r[1][2]) / s;
    qx = 0.25 * s;
    qy = (r[0][1] + r[1][0]) / s;
    qz = (r[0][2] + r[2][0]) / s;
  } else if (r[1][1] > r[2][2]) {
    const double s = std::sqrt(1.0 + r[1][1] - r[0][0] - r[2][2]) * 2.0;
    qw = (r[0][2] - r[2][0]) / s;
    qx = (r[0][1] + r[1][0]) / s;
    qy = 0.25 * s;
    qz = (r[1][2] + r[2][1]) / s;
  } else {
    const double s = std::sqrt(1.0 + r[2][2] - r[0][0] - r[1][1]) * 2.0;
    qw = (r[1][0] - r[0][1]) / s;
    qx = (r[0][2] + r[2][0]) / s;
    qy = (r[1][2] + r[2][1]) / s;
    qz = 0.25 * s;
  }
  const double norm = std::sqrt(qw * qw + qx * qx + qy * qy + qz * qz);
  qw /= norm;
  qx /= norm;
  qy /= norm;
  qz /= norm;
  Mat u = Mat::identity(2) * cplx(qw, 0.0);
  u = u + sigma_x() * cplx(0.0, -qx) + sigma_y() * cplx(0.0, -qy) + sigma_z() * cplx(0.0, -qz);
  return u;
}

}  // namespace

std::pair<Mat, double> align_dichotomic_pair(const Mat& k0, const Mat& k1) {
  const std::array<double, 3> u0 = bloch_vector(k0);
  const std::array<double, 3> u1 = bloch_vector(k1);
  const double c = std::clamp(dot(u0, u1), -1.0, 1.0);
  const auto perp = cross(u0, u1);
  const double s = std::sqrt(dot(perp, perp));
  const double delta = std::atan2(s, c);

  std::array<double, 3> e1 = u1;
  std::array<double, 3> e2;
  if (s > 1e-12) {
    for (int i = 0; i < 3; ++i) {
      e2[static_cast<std::size_t>(i)] =
          (u0[static_cast<std::size_t>(i)] - c * u1[static_cast<std::size_t>(i)]) / s;
    }
  } else {
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::abs(e1[i]) < std::abs(e1[smallest])) smallest = i;
    }
    std::array<double, 3> axis = {0.0, 0.0, 0.0};
    axis[smallest] = 1.0;
    const double proj = dot(axis, e1);
    double norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      e2[i] = axis[i] - proj * e1[i];
      norm += e2[i] * e2[i];
    }
    norm = std::sqrt(norm);
    for (auto& x : e2) x /= norm;
  }
  const std::array<double, 3> e3 = cross(e1, e2);

  const std::array<std::array<double, 3>, 3> f = {{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0},
                                                   {0.0, 1.0, 0.0}}};
  std::array<std::array<double, 3>, 3> r = {};
  const std::array<std::array<double, 3>, 3> e = {e1, e2, e3};
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t col = 0; col < 3; ++col) {
      for (std::size_t k = 0; k < 3; ++k) {
        r[row][col] += f[k][row] * e[k][col];
      }
    }
  }
  Mat u = su2_from_rotation(r);

  const Mat target1 = sigma_z();
  const Mat target0 = bloch_observable(std::sin(delta), 0.0, std::cos(delta));
  const double err = std::max(max_abs_diff(u * k1 * u.dagger(), target1),
                              max_abs_diff(u * k0 * u.dagger(), target0));
  if (err > 1e-9) {
    throw std::logic_error("alignment rotation failed to reach the canonical frame");
  }
  return {u, delta};
}

ConnectorComplex aligned(const ConnectorComplex& cx) {
  const std::vector<std::size_t> dims = cx.refs.dims();
  std::vector<Mat> leg_us;
  leg_us.reserve(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] != 2 || cx.refs.k_ops[k].size() != 2) {
      throw std::invalid_argument("alignment needs two-setting qubit legs");
    }
    leg_us.push_back(align_dichotomic_pair(cx.refs.k_ops[k][0], cx.refs.k_ops[k][1]).first);
  }
  Mat w;
  if (cx.out_dim() == 2 && cx.conn.out_settings() == 2) {
    w = align_dichotomic_pair(cx.mbar_corr(0), cx.mbar_corr(1)).first;
  }
  return conjugate(cx, leg_us, w);
}

ConnectorComplex build_family(const std::string& name, const json& params, Variant variant) {
  if (name == "tsirelson") {
    return build_tsirelson(variant);
  }
  if (name == "tilted") {
    return build_tilted(params.at("theta").get<double>(), variant);
  }
  if (name == "wbc") {
    return build_wbc(params.at("theta").get<double>(), params.at("phi").get<double>(),
                     params.at("omega").get<double>(), variant);
  }
  if (name == "basta") {
    const GraphSpec g = params.contains("graph") ? GraphSpec::from_json(params.at("graph"))
                                                 : GraphSpec::from_json(params);
    return build_basta(g, variant);
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace conncal
