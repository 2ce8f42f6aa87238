// Copyright 2026 The tangle4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tangle4: command-line front end.
//
//   tangle4 measure  --state ghz4.json --measure tau4 --traced 3
//   tangle4 families --all --paper-points
//   tangle4 families Gabcd --a 1 --b 1 --c 1 --d 1
//   tangle4 verify   eq14 --trials 200
//   tangle4 monogamy --random 200 --format csv
//   tangle4 state    --name w4 --out w4.json
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include "tangle4/tangle4.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace tangle4;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr const char* kVersion = "0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::uint64_t seed = RoofConfig{}.seed;
  std::size_t restarts = RoofConfig{}.restarts;
  std::size_t ensemble_length = 0;
  std::size_t iterations = RoofConfig{}.max_iterations;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  std::size_t threads = default_thread_count();

  RoofConfig roof() const {
    RoofConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.ensemble_length = ensemble_length;
    c.max_iterations = iterations;
    c.threads = threads;
    return c;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Seed for restarts and random trials");
  cmd->add_option("--restarts", f.restarts, "Roof search restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--ensemble-length", f.ensemble_length, "Decomposition length (0 = automatic)");
  cmd->add_option("--iterations", f.iterations, "Simplex iterations per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "Override the pass tolerance");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out, "Also write the result to this path");
  cmd->add_option("--threads", f.threads, "Worker threads (default from TANGLE4_THREADS)")->check(CLI::PositiveNumber);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json manifest(const std::string& command, const std::vector<std::string>& inputs, const CommonFlags& f,
              double wall_seconds) {
  return {{"command", command},     {"inputs", inputs},     {"seed", f.seed},
          {"config", to_json(f.roof())}, {"tool_version", kVersion}, {"timestamp", utc_timestamp()},
          {"wall_seconds", wall_seconds}};
}

void emit(const std::string& text, const CommonFlags& f) {
  std::cout << text;
  if (!f.out.empty()) {
    std::ofstream out(f.out);
    if (!out) throw FormatError("cannot write " + f.out);
    out << text;
  }
}

void emit_json(const json& result, const json& m, const CommonFlags& f) {
  emit(json{{"manifest", m}, {"result", result}}.dump(2) + "\n", f);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --------------------------------------------------------------------------- measure

const std::map<std::string, std::string> kMeasureDims{
    {"mu3", "3 qubits"},          {"tau3", "3 qubits"},       {"concurrence", "2 qubits (pure)"},
    {"concurrence-assist", "2 qubits (pure)"}, {"n-tangle", "4 qubits"}, {"tau3-mixed", "4 parties (2x2x2xn), traced site"},
    {"tau-a", "4 parties (2x2x2xn), traced site"}, {"tau4", "4 parties (2x2x2xn), traced site"},
    {"entanglement-vector", "4 qubits"}};

int cmd_measure(const std::string& path, const std::string& measure, std::optional<std::size_t> traced,
                const CommonFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const StateVector state = read_state_file(path);
  if (!state.is_normalized(1e-8)) throw UsageError("state in " + path + " is not normalized");
  const Dims& dims = state.dims();
  auto need = [&](bool ok) {
    if (!ok) {
      throw UsageError("measure '" + measure + "' needs " + kMeasureDims.at(measure) + "; state has " +
                       std::to_string(dims.size()) + " parties");
    }
  };
  const bool qubits3 = dims == Dims{2, 2, 2}, qubits2 = dims == Dims{2, 2}, qubits4 = dims == Dims{2, 2, 2, 2};
  const std::size_t site = traced.value_or(3);

  json result;
  if (measure == "mu3" || measure == "tau3") {
    need(qubits3);
    const auto v = measure == "mu3" ? mu3_pure(state) : tau3_pure(state);
    result = {{"kind", to_string(v.kind)}, {"value", v.value}};
  } else if (measure == "concurrence" || measure == "concurrence-assist") {
    need(qubits2);
    const auto dm = DensityMatrix::from_pure(state);
    const auto v = measure == "concurrence" ? concurrence_mixed_2q(dm) : concurrence_assist_2q(dm);
    result = {{"kind", to_string(v.kind)}, {"value", v.value}};
  } else if (measure == "n-tangle") {
    need(qubits4);
    result = {{"kind", "n_tangle"}, {"value", n_tangle_4q(state).value}};
  } else if (measure == "tau3-mixed" || measure == "tau-a" || measure == "tau4") {
    need(dims.size() == 4);
    try {
      if (measure == "tau4") {
        result = to_json(tau4_pure4(state, site, f.roof()));
      } else {
        const auto dm = partial_trace(state, all_sites_except(4, site));
        if (dm.dims() != Dims{2, 2, 2}) throw DimensionError("kept parties must be qubits");
        result = to_json(measure == "tau-a" ? tau_a(dm, f.roof()) : tau3_mixed(dm, f.roof()));
        result["traced_site"] = site;
      }
    } catch (const DimensionError& e) {
      throw UsageError(std::string("measure '") + measure + "': " + e.what());
    }
  } else if (measure == "entanglement-vector") {
    need(qubits4);
    result = to_json(entanglement_vector(state, f.roof()));
  } else {
    throw UsageError("unknown measure '" + measure + "'");
  }
  emit_json(result, manifest("measure " + measure, {path}, f, seconds_since(t0)), f);
  return kExitOk;
}

// --------------------------------------------------------------------------- families

struct FamilyFlags {
  std::string family;
  bool all = false;
  bool reference_points = false;
  std::string a = "0", b = "0", c = "0", d = "0";
  std::string sweep_param;
  double from = 0.0, to = 1.0;
  std::size_t steps = 5;
};

Complex& param_ref(FamilySpec& s, const std::string& name) {
  if (name == "a") return s.a;
  if (name == "b") return s.b;
  if (name == "c") return s.c;
  if (name == "d") return s.d;
  throw UsageError("unknown parameter '" + name + "' (expected a, b, c or d)");
}

int cmd_families(const FamilyFlags& ff, const CommonFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<FamilySpec> grid;
  if (ff.all || ff.reference_points) {
    if (!ff.family.empty()) throw UsageError("--all/--paper-points take no family name");
    grid = reference_points();
  } else {
    if (ff.family.empty()) throw UsageError("name a family or pass --all --paper-points");
    const auto id = parse_family(ff.family);
    if (!id) throw UsageError("unknown family '" + ff.family + "'");
    FamilySpec base{*id, parse_complex(ff.a), parse_complex(ff.b), parse_complex(ff.c), parse_complex(ff.d)};
    if (ff.sweep_param.empty()) {
      if (family_amplitudes(base).norm() < 1e-300) {
        throw DegenerateStateError("parameters of " + ff.family + " give the zero vector");
      }
      grid.push_back(base);
    } else {
      if (ff.steps == 0) throw UsageError("--steps must be positive");
      for (std::size_t k = 0; k < ff.steps; ++k) {
        FamilySpec s = base;
        const double t = ff.steps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(ff.steps - 1);
        param_ref(s, ff.sweep_param) = ff.from + t * (ff.to - ff.from);
        grid.push_back(s);
      }
    }
  }

  SweepOptions options;
  options.roof = f.roof();
  if (f.tol) options.zero_tolerance = *f.tol;
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), f.threads == 0 ? 1 : f.threads, [&](std::size_t i) {
    SweepOptions local = options;
    local.roof.threads = 1;
    rows[i] = evaluate_point(grid[i], local);
  });

  bool all_agree = true;
  for (const auto& r : rows) all_agree = all_agree && r.agree;
  if (f.format == "csv") {
    emit(sweep_csv(rows), f);
  } else {
    json table = json::array();
    for (const auto& r : rows) table.push_back(to_json(r));
    emit_json({{"rows", table}, {"all_agree", all_agree}},
              manifest("families", {ff.family.empty() ? "paper-points" : ff.family}, f, seconds_since(t0)), f);
  }
  return all_agree ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite_name, std::size_t trials, const CommonFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = parse_suite(suite_name);
  if (!suite) throw UsageError("unknown suite '" + suite_name + "'");
  SuiteOptions options;
  options.trials = trials;
  options.seed = f.seed;
  options.tolerance = f.tol;
  options.roof = f.roof();
  options.roof.threads = 1;
  options.threads = f.threads;
  const auto report = run_suite(*suite, options);
  emit_json(to_json(report), manifest("verify " + suite_name, {}, f, seconds_since(t0)), f);
  std::cerr << to_string(report.suite) << ": " << (report.passed ? "PASS" : "FAIL") << " worst=" << report.worst
            << " tol=" << report.tolerance << '\n';
  return report.passed ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------- monogamy

int cmd_monogamy(const std::vector<std::string>& paths, std::size_t random_count, const CommonFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, StateVector>> states;
  for (const auto& p : paths) states.emplace_back(p, read_state_file(p));
  for (std::size_t k = 0; k < random_count; ++k) {
    states.emplace_back("random-" + std::to_string(k), random_pure({2, 2, 2, 2}, derive_seed(f.seed, k)));
  }
  if (states.empty()) throw UsageError("pass --state PATH or --random N");
  const double tol = f.tol.value_or(kMonogamyTolerance);
  std::vector<std::optional<MonogamyReport>> reports(states.size());
  parallel_for(states.size(), f.threads, [&](std::size_t i) {
    auto roof = f.roof();
    roof.threads = 1;
    reports[i] = check_monogamy(states[i].second, roof, tol);
  });
  bool ok = true;
  for (const auto& r : reports) ok = ok && r->satisfied;
  if (f.format == "csv") {
    std::string text = monogamy_csv_header();
    for (std::size_t i = 0; i < states.size(); ++i) text += monogamy_csv_row(states[i].first, *reports[i]);
    emit(text, f);
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
      json r = to_json(*reports[i]);
      r["state_id"] = states[i].first;
      rows.push_back(std::move(r));
    }
    std::vector<std::string> inputs = paths;
    emit_json({{"rows", rows}, {"all_satisfied", ok}}, manifest("monogamy", inputs, f, seconds_since(t0)), f);
  }
  return ok ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------- state

StateVector named_state(const std::string& name) {
  const double r2 = 1.0 / std::sqrt(2.0);
  if (name == "ghz4") {
    CVector v = CVector::Zero(16);
    v(0) = v(15) = r2;
    return {{2, 2, 2, 2}, v};
  }
  if (name == "w4") {
    CVector v = CVector::Zero(16);
    v(1) = v(2) = v(4) = v(8) = 0.5;
    return {{2, 2, 2, 2}, v};
  }
  if (name == "bellbell") {
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = r2;
    const StateVector b({2, 2}, bell);
    return tensor(b, b);
  }
  if (name == "ghz3") {
    CVector v = CVector::Zero(8);
    v(0) = v(7) = r2;
    return {{2, 2, 2}, v};
  }
  if (name == "w3") {
    CVector v = CVector::Zero(8);
    v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
    return {{2, 2, 2}, v};
  }
  throw UsageError("unknown state name '" + name + "' (ghz3, w3, ghz4, w4, bellbell, family)");
}

int cmd_state(const std::string& name, const FamilyFlags& ff, const CommonFlags& f) {
  StateVector s = [&] {
    if (name != "family") return named_state(name);
    const auto id = parse_family(ff.family);
    if (!id) throw UsageError("--family needs one of the nine family names");
    return family_state({*id, parse_complex(ff.a), parse_complex(ff.b), parse_complex(ff.c), parse_complex(ff.d)});
  }();
  emit(to_json(s).dump(2) + "\n", f);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localized quadripartite entanglement: tau4, its ingredients and property checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonFlags common;
  FamilyFlags fam;

  auto* measure = app.add_subcommand("measure", "Evaluate one measure on a state file");
  std::string state_path, measure_name;
  std::optional<std::size_t> traced;
  measure->add_option("--state", state_path, "State file (JSON)")->required();
  measure->add_option("--measure", measure_name, "Measure name")
      ->required()
      ->check(CLI::IsMember({"mu3", "tau3", "concurrence", "concurrence-assist", "n-tangle", "tau3-mixed", "tau-a",
                             "tau4", "entanglement-vector"}));
  measure->add_option("--traced", traced, "Traced site for tau3-mixed, tau-a, tau4 (default 3)");
  add_common(measure, common);

  auto* families = app.add_subcommand("families", "Evaluate standard family states against the zero/nonzero table");
  families->add_option("family", fam.family, "Family name");
  families->add_flag("--all", fam.all, "Every family");
  families->add_flag("--paper-points", fam.reference_points, "Use the built-in parameter points");
  families->add_option("--a", fam.a, "Parameter a (e.g. 1, 0.5i, 0.3-0.2i)");
  families->add_option("--b", fam.b, "Parameter b");
  families->add_option("--c", fam.c, "Parameter c");
  families->add_option("--d", fam.d, "Parameter d");
  families->add_option("--sweep-param", fam.sweep_param, "Parameter to sweep linearly")
      ->check(CLI::IsMember({"a", "b", "c", "d"}));
  families->add_option("--from", fam.from, "Sweep start");
  families->add_option("--to", fam.to, "Sweep end");
  families->add_option("--steps", fam.steps, "Sweep points");
  add_common(families, common);

  auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
  std::string suite_name;
  std::size_t trials = 100;
  verify->add_option("suite", suite_name, "covariance, concavity, monotonicity, separable-zero, eq14, monogamy")
      ->required();
  verify->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  add_common(verify, common);

  auto* monogamy = app.add_subcommand("monogamy", "Check the monogamy inequality on states");
  std::vector<std::string> mono_paths;
  std::size_t random_count = 0;
  monogamy->add_option("--state", mono_paths, "State files (JSON, four qubits)");
  monogamy->add_option("--random", random_count, "Also check N Haar-random states");
  add_common(monogamy, common);

  auto* state = app.add_subcommand("state", "Write a named or family state as a state file");
  std::string state_name;
  state->add_option("--name", state_name, "ghz3, w3, ghz4, w4, bellbell or family")->required();
  state->add_option("--family", fam.family, "Family name when --name family");
  state->add_option("--a", fam.a, "Parameter a");
  state->add_option("--b", fam.b, "Parameter b");
  state->add_option("--c", fam.c, "Parameter c");
  state->add_option("--d", fam.d, "Parameter d");
  add_common(state, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*measure) return cmd_measure(state_path, measure_name, traced, common);
    if (*families) return cmd_families(fam, common);
    if (*verify) return cmd_verify(suite_name, trials, common);
    if (*monogamy) return cmd_monogamy(mono_paths, random_count, common);
    if (*state) return cmd_state(state_name, fam, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const tangle4::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
