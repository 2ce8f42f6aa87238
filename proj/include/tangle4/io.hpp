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

// JSON and CSV encodings: state files, roof and tau4 reports, sweep tables.
//
// State file: {"dims":[2,2,2,2],"amps":[[re,im],...]} with big-endian amplitude
// order. Doubles are written with round-trip precision.

#pragma once

#include "tangle4/convex_roof.hpp"
#include "tangle4/families.hpp"
#include "tangle4/monogamy.hpp"
#include "tangle4/qstate.hpp"
#include "tangle4/slocc.hpp"
#include "tangle4/tau4.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace tangle4 {

using json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex value must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const StateVector& s) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < s.amps().size(); ++i) amps.push_back(complex_to_json(s.amps()(i)));
  return {{"dims", s.dims()}, {"amps", std::move(amps)}};
}

inline StateVector state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("amps")) {
    throw FormatError("state file needs \"dims\" and \"amps\"");
  }
  Dims dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) throw FormatError("dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  const auto& amps = j.at("amps");
  if (!amps.is_array()) throw FormatError("amps must be an array");
  if (dims.empty() || amps.size() != total_dim(dims)) {
    throw FormatError("amps length " + std::to_string(amps.size()) + " does not match dims");
  }
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
  return {std::move(dims), std::move(v)};
}

inline StateVector read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open state file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("malformed JSON in " + path + ": " + e.what());
  }
  return state_from_json(j);
}

inline void write_state_file(const std::string& path, const StateVector& s) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << to_json(s).dump(2) << '\n';
}

inline json to_json(const Ensemble& e) {
  json members = json::array();
  for (const auto& m : e.members()) members.push_back({{"weight", m.weight}, {"state", to_json(m.state)}});
  return members;
}

inline json to_json(const RoofConfig& c) {
  return {{"ensemble_length", c.ensemble_length}, {"restarts", c.restarts}, {"max_iterations", c.max_iterations},
          {"tolerance", c.tolerance},             {"seed", c.seed}};
}

inline json to_json(const RoofResult& r) {
  const auto& d = r.diagnostics;
  return {{"value", r.value},
          {"bound_direction", to_string(r.direction)},
          {"witness", to_json(r.witness)},
          {"diagnostics",
           {{"rank", d.rank},
            {"ensemble_length", d.ensemble_length},
            {"iterations", d.iterations},
            {"evaluations", d.evaluations},
            {"restarts", d.restarts},
            {"best_restart", d.best_restart}}}};
}

inline json to_json(const Tau4Report& r) {
  json j{{"tau4", r.tau4},
         {"certified_lower", r.certified_lower},
         {"estimate_bias", "lower: tau_a under-estimated, tau3 over-estimated"},
         {"tau_a", to_json(r.tau_a)},
         {"tau3", to_json(r.tau3)}};
  j["traced_site"] = r.traced_site ? json(*r.traced_site) : json(nullptr);
  return j;
}

inline json to_json(const EntanglementVector& v) {
  json reports = json::array();
  for (const auto& r : v.reports) reports.push_back(to_json(r));
  return {{"components", v.components}, {"reports", std::move(reports)}};
}

inline json to_json(const NonzeroDecision& d) {
  return {{"verdict", to_string(d.verdict)}, {"lower_bound", d.lower_bound}, {"gap", d.gap}, {"report", to_json(d.report)}};
}

inline json to_json(const MonogamyReport& r) {
  return {{"traced_site", r.traced_site},
          {"partner_site", r.partner_site},
          {"tau4", r.tau4},
          {"tau3_rest", r.tau3_rest},
          {"concurrence", r.merged.concurrence},
          {"concurrence_assist", r.merged.concurrence_assist},
          {"merged_tangle", r.merged.value},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"gap", r.gap},
          {"tolerance", r.tolerance},
          {"satisfied", r.satisfied}};
}

inline json to_json(const FamilySpec& s) {
  json j{{"family", to_string(s.family)}};
  const std::array<std::pair<const char*, Complex>, 4> params{{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}}};
  for (std::size_t k = 0; k < parameter_count(s.family); ++k) j[params[k].first] = complex_to_json(params[k].second);
  return j;
}

inline json to_json(const SweepRow& r) {
  json j = to_json(r.spec);
  j["tau4"] = r.tau4 ? json(*r.tau4) : json(nullptr);
  j["certified_lower"] = r.certified_lower;
  j["gap"] = r.gap;
  j["prediction"] = to_string(r.prediction.expected);
  j["condition"] = r.prediction.condition;
  j["agree"] = r.agree;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

inline std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string s = format_double(z.real());
  if (z.imag() >= 0.0) s += '+';
  return s + format_double(z.imag()) + 'i';
}

inline std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << "family,a,b,c,d,tau4,certified_lower,prediction,agree\n";
  for (const auto& r : rows) {
    os << to_string(r.spec.family) << ',' << format_complex(r.spec.a) << ',' << format_complex(r.spec.b) << ','
       << format_complex(r.spec.c) << ',' << format_complex(r.spec.d) << ','
       << (r.tau4 ? format_double(*r.tau4) : std::string("nan")) << ',' << format_double(r.certified_lower) << ','
       << to_string(r.prediction.expected) << ',' << (r.agree ? "true" : "false") << '\n';
  }
  return os.str();
}

inline std::string monogamy_csv_header() { return "state_id,lhs,rhs,gap,satisfied\n"; }

inline std::string monogamy_csv_row(const std::string& id, const MonogamyReport& r) {
  return id + ',' + format_double(r.lhs) + ',' + format_double(r.rhs) + ',' + format_double(r.gap) + ',' +
         (r.satisfied ? "true" : "false") + '\n';
}

/// Parses "1", "-0.5", "0.5i", "i", "-i", "0.3-0.2i", "2+i".
inline Complex parse_complex(std::string_view text) {
  auto fail = [&] { throw FormatError("cannot parse complex number '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  auto parse_real = [&](std::string_view part, double& out) {
    std::string buf(part);
    if (buf == "+" || buf == "") buf += "1";
    if (buf == "-") buf = "-1";
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) fail();
  };
  if (text.back() != 'i') {
    double re = 0.0;
    parse_real(text, re);
    return {re, 0.0};
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not part of an exponent and not leading.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string_view::npos) {
    parse_real(body, im);
  } else {
    parse_real(body.substr(0, split), re);
    parse_real(body.substr(split), im);
  }
  return {re, im};
}

}  // namespace tangle4
