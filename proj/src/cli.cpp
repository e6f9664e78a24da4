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

#include "conncal/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "conncal/bounds.hpp"
#include "conncal/selftest.hpp"

namespace conncal {

namespace {

TreeNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open network file '" + path + "'");
  }
  json j;
  in >> j;
  return TreeNetwork::from_json(j);
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) {
        throw std::invalid_argument("cannot open output file '" + path + "'");
      }
      stream = &file;
    }
  }
};

std::string complex_amplitude_csv(const Vec& state) {
  std::ostringstream os;
  os << "re,im\n";
  for (const cplx& a : state) {
    os << format_sig17(a.real()) << "," << format_sig17(a.imag()) << "\n";
  }
  return os.str();
}

json state_to_json(const Vec& state) {
  json j = json::array();
  for (const cplx& a : state) {
    j.push_back({a.real(), a.imag()});
  }
  return j;
}

int cmd_verify(const std::string& path, double tol, bool as_json, const std::string& out) {
  OutputTarget target(out);
  const TreeNetwork net = load_network(path);
  const ConnectorComplex cx = contract_network(net, tol);
  const TightReport tight = verify_tight(cx, tol);
  const FstReport fst = fst_verdict(cx);
  const bool pass = tight.pass && fst.pass;
  if (as_json) {
    json j;
    j["tight"] = tight.to_json();
    j["fst"] = fst.to_json();
    j["pass"] = pass;
    *target.stream << j.dump(2) << "\n";
  } else {
    *target.stream << "tight: " << tight.summary() << "\n";
    *target.stream << "self-test: " << fst.summary() << "\n";
    *target.stream << (pass ? "pass" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_bounds(const std::string& path, int setting, int threads, bool as_json,
               const std::string& out) {
  OutputTarget target(out);
  const TreeNetwork net = load_network(path);
  const BoundReport rep = network_bounds(net, threads, setting);
  if (as_json) {
    *target.stream << rep.to_json().dump(2) << "\n";
  } else {
    *target.stream << BoundReport::csv_header() << "\n" << rep.csv_row() << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& tag, const std::string& from, const std::string& to,
              const std::string& step, int threads, bool as_json, const std::string& out) {
  OutputTarget target(out);
  std::vector<std::pair<double, TreeNetwork>> points;
  if (tag == "bk-chain") {
    const int lo = from.empty() ? 2 : static_cast<int>(std::lround(parse_angle(from)));
    const int hi = to.empty() ? 10 : static_cast<int>(std::lround(parse_angle(to)));
    const int inc = step.empty() ? 1 : static_cast<int>(std::lround(parse_angle(step)));
    if (inc < 1) {
      throw std::invalid_argument("sweep step must be positive");
    }
    for (int n = lo; n <= hi; n += inc) {
      if (n < 2 || n > 12) {
        throw std::invalid_argument("chain sweep supports 2 to 12 parties");
      }
      points.emplace_back(static_cast<double>(n), bk_chain_network(n));
    }
  } else if (tag == "wbc-3p" || tag == "wbc-4p") {
    const double lo = from.empty() ? 0.9 : parse_angle(from);
    const double hi = to.empty() ? 2.3 : parse_angle(to);
    const double inc = step.empty() ? 0.1 : parse_angle(step);
    if (!(inc > 0.0)) {
      throw std::invalid_argument("sweep step must be positive");
    }
    for (double th = lo; th <= hi + 1e-12; th += inc) {
      points.emplace_back(th, tag == "wbc-3p" ? wbc3_network(th) : wbc4_network(th));
    }
  } else {
    throw std::invalid_argument("unknown sweep tag '" + tag +
                                "' (expected bk-chain, wbc-3p, or wbc-4p)");
  }

  if (as_json) {
    json rows = json::array();
    for (const auto& [param, net] : points) {
      json row = network_bounds(net, threads).to_json();
      row["param"] = param;
      rows.push_back(std::move(row));
    }
    *target.stream << rows.dump(2) << "\n";
  } else {
    *target.stream << "param," << BoundReport::csv_header() << "\n";
    for (const auto& [param, net] : points) {
      *target.stream << format_sig17(param) << "," << network_bounds(net, threads).csv_row()
                     << "\n";
    }
  }
  return 0;
}

int cmd_state(const std::string& path, const std::string& selector, const std::string& format,
              int targetval, double tol, bool as_json, const std::string& out) {
  OutputTarget target(out);
  const TreeNetwork net = load_network(path);
  const auto [outcome, setting] = parse_selector(selector);
  if (format == "amplitudes") {
    const ConnectorComplex cx = contract_network(net, tol);
    if (setting >= cx.conn.out_settings()) {
      throw std::invalid_argument("selector setting " + std::to_string(setting) +
                                  " is out of range");
    }
    const Vec psi = network_state(cx, outcome, setting, targetval);
    if (as_json) {
      const CorrelatorTensor effect =
          combined(cx.conn.star, 0.5, cx.conn.comp[setting], 0.5 * outcome);
      json j;
      j["amplitudes"] = state_to_json(psi);
      j["expectation"] = expect_functional(effect, cx.refs, psi);
      *target.stream << j.dump(2) << "\n";
    } else {
      *target.stream << complex_amplitude_csv(psi);
    }
    return 0;
  }
  if (format == "mps") {
    const auto factors = mps_factors(net, outcome, setting, targetval, tol);
    if (as_json) {
      json sites = json::array();
      for (const auto& site : factors) {
        json mats = json::array();
        for (const Mat& m : site) {
          json rows = json::array();
          for (std::size_t r = 0; r < m.rows(); ++r) {
            json cols = json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) {
              cols.push_back({m.at(r, c).real(), m.at(r, c).imag()});
            }
            rows.push_back(std::move(cols));
          }
          mats.push_back(std::move(rows));
        }
        sites.push_back(std::move(mats));
      }
      json j;
      j["sites"] = sites;
      *target.stream << j.dump(2) << "\n";
    } else {
      *target.stream << "site,outcome,row,col,re,im\n";
      for (std::size_t s = 0; s < factors.size(); ++s) {
        for (std::size_t p = 0; p < factors[s].size(); ++p) {
          const Mat& m = factors[s][p];
          for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
              *target.stream << s + 1 << "," << (p == 0 ? "+1" : "-1") << "," << r << "," << c
                             << "," << format_sig17(m.at(r, c).real()) << ","
                             << format_sig17(m.at(r, c).imag()) << "\n";
            }
          }
        }
      }
    }
    return 0;
  }
  throw std::invalid_argument("unknown state format '" + format +
                              "' (expected amplitudes or mps)");
}

int cmd_build(const std::string& family, const std::string& theta, const std::string& phi,
              const std::string& omega, const std::string& graph_path, int star_q,
              int cycle_q, const std::string& variant, const std::string& out) {
  OutputTarget target(out);
  NetworkNode n;
  n.id = "n1";
  n.family = family;
  n.variant = variant_from_string(variant);
  if (!theta.empty()) n.params["theta"] = parse_angle(theta);
  if (!phi.empty()) n.params["phi"] = parse_angle(phi);
  if (!omega.empty()) n.params["omega"] = parse_angle(omega);
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    if (!in) {
      throw std::invalid_argument("cannot open graph file '" + graph_path + "'");
    }
    json j;
    in >> j;
    n.params["graph"] = GraphSpec::from_json(j).to_json();
  } else if (star_q > 0) {
    n.params["graph"] = star_graph(star_q).to_json();
  } else if (cycle_q > 0) {
    n.params["graph"] = cycle_graph(cycle_q).to_json();
  }
  build_node(n);  // reject bad parameters before emitting anything

  TreeNetwork net;
  net.nodes.push_back(std::move(n));
  net.root = "n1";
  *target.stream << net.to_json().dump(2) << "\n";
  return 0;
}

}  // namespace

double parse_angle(const std::string& s) {
  std::string body = s;
  double scale = 1.0;
  if (s.rfind("deg:", 0) == 0) {
    body = s.substr(4);
    scale = std::numbers::pi / 180.0;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse angle '" + s + "'");
  }
  if (used != body.size()) {
    throw std::invalid_argument("cannot parse angle '" + s + "'");
  }
  return value * scale;
}

std::pair<int, std::size_t> parse_selector(const std::string& s) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("selector must look like '+1,1'");
  }
  const std::string bpart = s.substr(0, comma);
  const std::string ypart = s.substr(comma + 1);
  int outcome = 0;
  if (bpart == "+1" || bpart == "1") {
    outcome = +1;
  } else if (bpart == "-1") {
    outcome = -1;
  } else {
    throw std::invalid_argument("selector outcome must be +1 or -1");
  }
  std::size_t used = 0;
  long y = 0;
  try {
    y = std::stol(ypart, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("selector setting must be a non-negative integer");
  }
  if (used != ypart.size() || y < 0) {
    throw std::invalid_argument("selector setting must be a non-negative integer");
  }
  return {outcome, static_cast<std::size_t>(y)};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Connector-calculus toolkit for multipartite Bell functionals"};
  app.require_subcommand(1);

  double tol = 1e-9;
  int threads = 1;
  bool as_json = false;
  std::string out;
  app.add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", as_json, "Emit JSON instead of text/CSV");
  app.add_option("--out", out, "Write output to this file instead of stdout");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Contract a network and run all checks");
  verify->fallthrough();
  verify->add_option("network", verify_path, "Network JSON file")->required();

  std::string bounds_path;
  int bounds_y = -1;
  auto* bounds = app.add_subcommand("bounds", "Classical/NS/quantum bound row");
  bounds->fallthrough();
  bounds->add_option("network", bounds_path, "Network JSON file")->required();
  bounds->add_option("--y", bounds_y, "Component selector override (0-based setting)");

  std::string sweep_tag, sweep_from, sweep_to, sweep_step;
  auto* sweep = app.add_subcommand("sweep", "Bound rows over a parameter range");
  sweep->fallthrough();
  sweep->add_option("tag", sweep_tag, "bk-chain, wbc-3p, or wbc-4p")->required();
  sweep->add_option("--from", sweep_from, "Range start (parties or angle)");
  sweep->add_option("--to", sweep_to, "Range end (inclusive)");
  sweep->add_option("--step", sweep_step, "Range step");

  std::string state_path, state_selector = "+1,1", state_format = "amplitudes";
  int state_target = 1;
  auto* state = app.add_subcommand("state", "Construct the selected network state");
  state->fallthrough();
  state->add_option("network", state_path, "Network JSON file")->required();
  state->add_option("--selector", state_selector, "Outcome,setting pair, e.g. '+1,1'");
  state->add_option("--format", state_format, "amplitudes or mps");
  state->add_option("--target", state_target, "Effect eigenvalue to select (1 or 0)");

  std::string build_family_name, build_theta, build_phi, build_omega, build_graph,
      build_variant = "base";
  int build_star = 0, build_cycle = 0;
  auto* build = app.add_subcommand("build", "Emit a single-node network description");
  build->fallthrough();
  build->add_option("family", build_family_name, "tsirelson, tilted, wbc, or basta")
      ->required();
  build->add_option("--theta", build_theta, "Angle (radians, or deg: prefix)");
  build->add_option("--phi", build_phi, "Angle (radians, or deg: prefix)");
  build->add_option("--omega", build_omega, "Angle (radians, or deg: prefix)");
  build->add_option("--graph", build_graph, "Graph JSON file");
  build->add_option("--star", build_star, "Star graph on this many vertices");
  build->add_option("--cycle", build_cycle, "Cycle graph on this many vertices");
  build->add_option("--variant", build_variant, "base or aligned");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify(verify_path, tol, as_json, out);
    }
    if (bounds->parsed()) {
      return cmd_bounds(bounds_path, bounds_y, threads, as_json, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_tag, sweep_from, sweep_to, sweep_step, threads, as_json, out);
    }
    if (state->parsed()) {
      return cmd_state(state_path, state_selector, state_format, state_target, tol, as_json,
                       out);
    }
    if (build->parsed()) {
      return cmd_build(build_family_name, build_theta, build_phi, build_omega, build_graph,
                       build_star, build_cycle, build_variant, out);
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> owned = args;
  owned.insert(owned.begin(), "conncal");
  std::vector<char*> argv;
  argv.reserve(owned.size());
  for (auto& s : owned) {
    argv.push_back(s.data());
  }
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace conncal
