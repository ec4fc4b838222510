// Copyright 2026 The depp Authors
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

#include "depp/results.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace depp {

namespace {

Port port_from_name(const std::string& name) {
  for (Port p : {Port::c, Port::e, Port::d, Port::f}) {
    if (port_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown output port '" + name + "'");
}

Json optional_density(const std::optional<DensityMatrix>& rho) {
  return rho ? to_json(*rho) : Json(nullptr);
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void emit(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          emit(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        emit(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      // "-0" would re-parse as the integer 0.
      out += format_real(x == 0.0 ? 0.0 : x);
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

double number(const Json& j, const char* key) { return j.at(key).get<double>(); }

}  // namespace

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      re_row.push_back(rho(i, j).real());
      im_row.push_back(rho(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const RunResult& rr) {
  Json patterns = Json::array();
  for (const auto& rec : rr.patterns) {
    Json p;
    p["alice_port"] = std::string(port_name(rec.pattern.alice));
    p["bob_port"] = std::string(port_name(rec.pattern.bob));
    p["detectors"] = Json::array({rec.detectors.first, rec.detectors.second});
    p["probability"] = rec.probability;
    p["raw_state"] = optional_density(rec.raw_state);
    p["corrected_state"] = optional_density(rec.corrected_state);
    p["corrected_fidelity"] = rec.corrected_fidelity ? Json(*rec.corrected_fidelity) : Json(nullptr);
    patterns.push_back(std::move(p));
  }
  Json j;
  j["acceptance_probability"] = rr.acceptance_probability;
  j["mean_corrected_fidelity"] = rr.mean_corrected_fidelity;
  j["patterns"] = std::move(patterns);
  return j;
}

Json to_json(const RecurrenceTrace& trace) {
  Json j;
  j["fidelities"] = trace.fidelities;
  j["success_probs"] = trace.success_probs;
  j["expected_pairs_consumed"] = trace.expected_pairs_consumed;
  return j;
}

Json to_json(const SampleReport& report) {
  Json counts;
  Json freqs;
  Json halfwidths;
  for (std::size_t i = 0; i < 4; ++i) {
    const CoincidencePattern& pat = all_patterns()[i];
    const std::string key = std::string(port_name(pat.alice)) + std::string(port_name(pat.bob));
    counts[key] = report.counts[i];
    freqs[key] = report.frequencies[i];
    halfwidths[key] = report.ci_halfwidth[i];
  }
  Json j;
  j["shots"] = report.shots;
  j["seed"] = report.seed;
  j["counts"] = std::move(counts);
  j["frequencies"] = std::move(freqs);
  j["ci_halfwidth"] = std::move(halfwidths);
  return j;
}

Json to_json(const SimonPanOutcome& outcome) {
  Json j;
  j["F"] = outcome.params.phi_plus();
  j["F1"] = outcome.params.phi_minus();
  j["F2"] = outcome.params.psi_plus();
  j["F3"] = outcome.params.psi_minus();
  j["efficiency"] = outcome.efficiency;
  return j;
}

Json to_json(const ComparisonRecord& rec) {
  Json j;
  j["input_fidelity"] = rec.input_fidelity;
  j["target_fidelity"] = rec.target_fidelity;
  j["one_step_depp"] = Json{{"final_fidelity", rec.depp.fidelity},
                            {"acceptance", rec.depp.acceptance},
                            {"pairs_consumed", rec.depp.pairs_consumed}};
  Json b;
  b["reachable"] = rec.bennett.reachable;
  if (rec.bennett.reachable) {
    b["rounds"] = rec.bennett.rounds;
    b["final_fidelity"] = rec.bennett.final_fidelity;
    b["success_probability"] = rec.bennett.success_probability;
    b["pairs_consumed"] = rec.bennett.pairs_consumed;
  }
  j["bennett"] = std::move(b);
  j["simon_pan"] = to_json(rec.simon_pan);
  return j;
}

Json to_json(const ScenarioConfig& cfg) {
  Json j;
  j["source"] = Json{{"r", cfg.source.r()}, {"theta", cfg.source.theta()}};
  Json noise;
  if (const auto* b = std::get_if<BellDiagonalNoise>(&cfg.noise)) {
    noise["model"] = "bell_diagonal";
    noise["F"] = b->params.phi_plus();
    noise["F1"] = b->params.phi_minus();
    noise["F2"] = b->params.psi_plus();
    noise["F3"] = b->params.psi_minus();
  } else if (const auto* p = std::get_if<PauliNoise>(&cfg.noise)) {
    noise["model"] = "pauli";
    noise["px"] = p->px;
    noise["py"] = p->py;
    noise["pz"] = p->pz;
    noise["target"] = p->target == Photon::A ? "A" : "B";
  } else {
    noise["model"] = "matrix";
    noise["file"] = std::get<MatrixNoise>(cfg.noise).path;
  }
  j["noise"] = Json{{"polarization", std::move(noise)},
                    {"spatial", Json{{"dephasing", cfg.spatial_dephasing}}}};
  Json protocol;
  protocol["name"] = std::string(protocol_name(cfg.protocol));
  if (cfg.rounds) protocol["rounds"] = *cfg.rounds;
  if (cfg.target_fidelity) protocol["target_fidelity"] = *cfg.target_fidelity;
  j["protocol"] = std::move(protocol);
  Json run;
  run["shots"] = cfg.run.shots;
  run["seed"] = cfg.run.seed;
  run["output"] = cfg.run.output ? Json(*cfg.run.output) : Json(nullptr);
  j["run"] = std::move(run);
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  const auto n = static_cast<Eigen::Index>(re.size());
  if (n == 0 || static_cast<Eigen::Index>(im.size()) != n) {
    throw std::invalid_argument("density matrix: re/im must be non-empty and equally sized");
  }
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    if (static_cast<Eigen::Index>(re[ur].size()) != n ||
        static_cast<Eigen::Index>(im[ur].size()) != n) {
      throw std::invalid_argument("density matrix: rows must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto uc = static_cast<std::size_t>(c);
      m(r, c) = Complex(re[ur][uc].get<double>(), im[ur][uc].get<double>());
    }
  }
  return DensityMatrix(std::move(m));
}

RunResult run_result_from_json(const Json& j) {
  RunResult rr;
  rr.acceptance_probability = number(j, "acceptance_probability");
  rr.mean_corrected_fidelity = number(j, "mean_corrected_fidelity");
  const Json& patterns = j.at("patterns");
  if (patterns.size() != 4) throw std::invalid_argument("run result: expected four patterns");
  for (std::size_t i = 0; i < 4; ++i) {
    const Json& p = patterns[i];
    PatternRecord& rec = rr.patterns[i];
    rec.pattern = {port_from_name(p.at("alice_port").get<std::string>()),
                   port_from_name(p.at("bob_port").get<std::string>())};
    rec.detectors = {p.at("detectors").at(0).get<std::string>(),
                     p.at("detectors").at(1).get<std::string>()};
    rec.probability = number(p, "probability");
    if (!p.at("raw_state").is_null()) rec.raw_state = density_from_json(p.at("raw_state"));
    if (!p.at("corrected_state").is_null()) {
      rec.corrected_state = density_from_json(p.at("corrected_state"));
    }
    if (!p.at("corrected_fidelity").is_null()) rec.corrected_fidelity = number(p, "corrected_fidelity");
  }
  return rr;
}

RecurrenceTrace recurrence_trace_from_json(const Json& j) {
  RecurrenceTrace t;
  t.fidelities = j.at("fidelities").get<std::vector<double>>();
  t.success_probs = j.at("success_probs").get<std::vector<double>>();
  t.expected_pairs_consumed = number(j, "expected_pairs_consumed");
  return t;
}

SampleReport sample_report_from_json(const Json& j) {
  SampleReport r;
  r.shots = j.at("shots").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (std::size_t i = 0; i < 4; ++i) {
    const CoincidencePattern& pat = all_patterns()[i];
    const std::string key = std::string(port_name(pat.alice)) + std::string(port_name(pat.bob));
    r.counts[i] = j.at("counts").at(key).get<std::uint64_t>();
    r.frequencies[i] = j.at("frequencies").at(key).get<double>();
    r.ci_halfwidth[i] = j.at("ci_halfwidth").at(key).get<double>();
  }
  return r;
}

std::string serialize_document(const Json& doc) {
  std::string out;
  emit(doc, out, 0);
  out += "\n";
  return out;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("results document: ") + e.what());
  }
}

std::string serialize_result(const RunResult& rr) { return serialize_document(to_json(rr)); }
std::string serialize_result(const RecurrenceTrace& t) { return serialize_document(to_json(t)); }
std::string serialize_result(const SampleReport& r) { return serialize_document(to_json(r)); }
std::string serialize_result(const ComparisonRecord& c) { return serialize_document(to_json(c)); }

Json make_results_document(const ScenarioConfig& cfg, Json analytic,
                           const std::optional<SampleReport>& sampling) {
  Json doc;
  doc["scenario"] = to_json(cfg);
  doc["analytic"] = std::move(analytic);
  if (sampling) doc["sampling"] = to_json(*sampling);
  doc["meta"] = Json{{"tool", std::string(kToolName)},
                     {"version", std::string(kToolVersion)},
                     {"seed", cfg.run.seed}};
  return doc;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace depp
