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

#include "depp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "depp/protocols.hpp"
#include "depp/verify.hpp"

namespace depp {

namespace fs = std::filesystem;

DensityMatrix load_matrix_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read matrix file '" + path.string() + "'");
  Matrix m(4, 4);
  int row = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || end != tok.data() + tok.size()) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": not a number: '" + tok + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (values.size() != 8) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 8 reals (4 complex entries), got " +
                               std::to_string(values.size()));
    }
    if (row == 4) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": more than 4 rows");
    }
    for (int c = 0; c < 4; ++c) m(row, c) = Complex(values[2 * c], values[2 * c + 1]);
    ++row;
  }
  if (row != 4) {
    throw std::runtime_error(path.string() + ": expected 4 rows, got " + std::to_string(row));
  }
  try {
    return DensityMatrix(std::move(m));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

DensityMatrix polarization_state(const ScenarioConfig& cfg, const fs::path& base_dir) {
  if (const auto* bd = std::get_if<BellDiagonalNoise>(&cfg.noise)) {
    return make_bell_diagonal(bd->params);
  }
  if (const auto* p = std::get_if<PauliNoise>(&cfg.noise)) {
    return apply_channel(DensityMatrix::from_pure(bell_state(BellState::PhiPlus)),
                         pauli_channel(p->px, p->py, p->pz, p->target));
  }
  const fs::path file(std::get<MatrixNoise>(cfg.noise).path);
  return load_matrix_file(file.is_absolute() ? file : base_dir / file);
}

DensityMatrix spatial_state(const ScenarioConfig& cfg) {
  DensityMatrix s = DensityMatrix::from_pure(make_spatial_state(cfg.source));
  if (cfg.spatial_dephasing > 0.0) s = apply_channel(s, spatial_dephasing(cfg.spatial_dephasing));
  return s;
}

namespace {

std::array<double, 4> pattern_probs(const RunResult& rr) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = rr.patterns[i].probability;
  return p;
}

}  // namespace

Evaluation evaluate_scenario(const ScenarioConfig& cfg, const fs::path& base_dir) {
  const DensityMatrix rho = polarization_state(cfg, base_dir);
  const DensityMatrix spatial = spatial_state(cfg);
  Evaluation ev;
  const bool sample = cfg.run.shots > 0;
  switch (cfg.protocol) {
    case ProtocolKind::OneStepDepp: {
      const RunResult rr = one_step_depp(rho, spatial);
      ev.analytic = to_json(rr);
      ev.acceptance = rr.acceptance_probability;
      ev.fidelity = rr.mean_corrected_fidelity;
      ev.patterns = pattern_probs(rr);
      if (sample) ev.sampling = sample_patterns(rr, cfg.run.shots, cfg.run.seed);
      break;
    }
    case ProtocolKind::Bennett: {
      const double f = fidelity_pure(rho, bell_state(BellState::PhiPlus));
      const RecurrenceTrace t = bennett_iterate(f, cfg.rounds.value_or(0));
      ev.analytic = to_json(t);
      ev.acceptance = 1.0;
      for (double p : t.success_probs) ev.acceptance *= p;
      ev.fidelity = t.fidelities.back();
      break;
    }
    case ProtocolKind::SimonPan: {
      const SimonPanOutcome o = simon_pan_model(bell_weights(rho));
      ev.analytic = to_json(o);
      ev.acceptance = o.efficiency;
      ev.fidelity = o.params.phi_plus();
      break;
    }
    case ProtocolKind::Compare: {
      const ComparisonRecord rec = compare_protocols(rho, spatial, cfg.target_fidelity.value_or(1.0));
      ev.analytic = to_json(rec);
      const RunResult rr = one_step_depp(rho, spatial);
      ev.acceptance = rr.acceptance_probability;
      ev.fidelity = rr.mean_corrected_fidelity;
      ev.patterns = pattern_probs(rr);
      if (sample) ev.sampling = sample_patterns(rr, cfg.run.shots, cfg.run.seed);
      break;
    }
  }
  return ev;
}

std::string csv_row(const std::string& param, const std::string& value, const Evaluation& ev) {
  std::string row = param + "," + value + "," + format_real(ev.acceptance) + "," +
                    format_real(ev.fidelity);
  for (std::size_t i = 0; i < 4; ++i) {
    row += ",";
    if (ev.patterns) row += format_real((*ev.patterns)[i]);
  }
  return row;
}

namespace {

struct Failure {
  int code;
  std::string message;
};

struct Loaded {
  std::string text;
  fs::path base_dir;
};

std::variant<Loaded, Failure> read_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Failure{kExitRuntime, "error: cannot read scenario '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return Failure{kExitRuntime, "error: failed reading scenario '" + path + "'"};
  return Loaded{ss.str(), fs::path(path).parent_path()};
}

/// DEPP_SEED, when set, becomes the first override so explicit --set wins.
std::optional<Failure> seed_override(std::vector<std::string>& overrides) {
  const char* env = std::getenv("DEPP_SEED");
  if (env == nullptr) return std::nullopt;
  const std::string_view text(env);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    return Failure{kExitUsage, "error: DEPP_SEED must be a non-negative 64-bit integer, got '" +
                                   std::string(text) + "'"};
  }
  overrides.insert(overrides.begin(), "run.seed=" + std::string(text));
  return std::nullopt;
}

std::variant<ScenarioConfig, Failure> load_config(const std::string& path,
                                                  std::vector<std::string> overrides,
                                                  fs::path& base_dir) {
  if (auto f = seed_override(overrides)) return *f;
  auto loaded = read_scenario(path);
  if (auto* f = std::get_if<Failure>(&loaded)) return *f;
  auto& l = std::get<Loaded>(loaded);
  base_dir = l.base_dir;
  auto parsed = parse_scenario(l.text, overrides, path);
  if (auto* e = std::get_if<ParseError>(&parsed)) return Failure{kExitUsage, e->to_string()};
  return std::get<ScenarioConfig>(std::move(parsed));
}

int report(const Failure& f, std::ostream& err) {
  err << f.message << '\n';
  return f.code;
}

int emit(const std::optional<std::string>& output, const std::string& text, std::ostream& out,
         std::ostream& err) {
  if (!output) {
    out << text;
    return kExitOk;
  }
  try {
    write_text_file(*output, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides,
            const std::string& format, std::ostream& out, std::ostream& err) {
  fs::path base;
  auto cfg = load_config(path, overrides, base);
  if (auto* f = std::get_if<Failure>(&cfg)) return report(*f, err);
  const ScenarioConfig& c = std::get<ScenarioConfig>(cfg);
  try {
    Evaluation ev = evaluate_scenario(c, base);
    std::string text;
    if (format == "csv") {
      text = std::string(kCsvHeader) + "\n" + csv_row("", "", ev) + "\n";
    } else {
      text = serialize_document(make_results_document(c, std::move(ev.analytic), ev.sampling));
    }
    return emit(c.run.output, text, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

struct SweepArgs {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::string balance;
};

int cmd_sweep(const std::string& path, const std::vector<std::string>& overrides,
              const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const auto keys = numeric_scenario_keys();
  const auto known = [&](const std::string& k) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
  };
  if (!known(args.param)) return report({kExitUsage, "error: unknown sweep parameter '" + args.param + "'"}, err);
  if (!args.balance.empty() && (!known(args.balance) || args.balance == args.param)) {
    return report({kExitUsage, "error: invalid balance parameter '" + args.balance + "'"}, err);
  }
  if (args.steps < 2) return report({kExitUsage, "error: --steps must be at least 2"}, err);
  if (!std::isfinite(args.from) || !std::isfinite(args.to)) {
    return report({kExitUsage, "error: sweep bounds must be finite"}, err);
  }

  // Baseline config: resolves the balance key's value and the output target.
  fs::path base;
  auto baseline = load_config(path, overrides, base);
  if (auto* f = std::get_if<Failure>(&baseline)) return report(*f, err);

  double param0 = 0.0;
  double balance0 = 0.0;
  if (!args.balance.empty()) {
    std::vector<std::string> ov = overrides;
    seed_override(ov);
    auto loaded = read_scenario(path);
    auto raw = lex_scenario(std::get<Loaded>(loaded).text, path);
    auto& r = std::get<RawScenario>(raw);
    for (const auto& o : ov) apply_override(r, o);
    const auto value_of = [&](const std::string& dotted) -> std::optional<double> {
      const auto dot = dotted.rfind('.');
      const RawEntry* e = r.find(dotted.substr(0, dot), dotted.substr(dot + 1));
      if (e == nullptr || e->value.kind != ValueKind::Number) return std::nullopt;
      return e->value.number;
    };
    const auto p0 = value_of(args.param);
    const auto b0 = value_of(args.balance);
    if (!p0 || !b0) {
      return report({kExitUsage, "error: --balance needs both '" + args.param + "' and '" +
                                     args.balance + "' set in the scenario"},
                    err);
    }
    param0 = *p0;
    balance0 = *b0;
  }

  const auto n = static_cast<std::size_t>(args.steps);
  std::vector<std::variant<std::monostate, std::string, Failure>> rows(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double value = i + 1 == n ? args.to
                                      : args.from + (args.to - args.from) * static_cast<double>(i) /
                                                        static_cast<double>(n - 1);
      std::vector<std::string> ov = overrides;
      ov.push_back(args.param + "=" + format_real(value));
      if (!args.balance.empty()) {
        double b = balance0 + (param0 - value);
        // Drop cancellation residue so an exact zero stays in range.
        if (std::abs(b) < kIdentityTol) b = 0.0;
        ov.push_back(args.balance + "=" + format_real(b));
      }
      fs::path point_base;
      auto cfg = load_config(path, ov, point_base);
      if (auto* f = std::get_if<Failure>(&cfg)) {
        rows[i] = *f;
        continue;
      }
      try {
        ScenarioConfig c = std::get<ScenarioConfig>(std::move(cfg));
        c.run.shots = 0;
        rows[i] = csv_row(args.param, format_real(value), evaluate_scenario(c, point_base));
      } catch (const std::exception& e) {
        rows[i] = Failure{kExitRuntime, std::string("error: ") + e.what()};
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(n, hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string text = std::string(kCsvHeader) + "\n";
  for (const auto& row : rows) {
    if (const auto* f = std::get_if<Failure>(&row)) return report(*f, err);
    text += std::get<std::string>(row) + "\n";
  }
  out << text;
  return kExitOk;
}

std::string cell(double x) { return format_real(x); }

int cmd_compare(const std::string& path, const std::vector<std::string>& overrides, double target,
                std::ostream& out, std::ostream& err) {
  if (!(target > 0.5 && target <= 1.0)) {
    return report({kExitUsage, "error: --target must lie in (0.5, 1]"}, err);
  }
  fs::path base;
  auto cfg = load_config(path, overrides, base);
  if (auto* f = std::get_if<Failure>(&cfg)) return report(*f, err);
  const ScenarioConfig& c = std::get<ScenarioConfig>(cfg);
  try {
    const ComparisonRecord rec =
        compare_protocols(polarization_state(c, base), spatial_state(c), target);
    std::vector<std::array<std::string, 5>> table;
    table.push_back({"protocol", "final_fidelity", "success_probability", "pairs_consumed", "notes"});
    table.push_back({"one_step_depp", cell(rec.depp.fidelity), cell(rec.depp.acceptance),
                     cell(rec.depp.pairs_consumed), "single pass"});
    if (rec.bennett.reachable) {
      table.push_back({"bennett", cell(rec.bennett.final_fidelity),
                       cell(rec.bennett.success_probability), cell(rec.bennett.pairs_consumed),
                       "rounds=" + std::to_string(rec.bennett.rounds)});
    } else {
      table.push_back({"bennett", "-", "-", "-", "unreachable"});
    }
    const double sp_eff = rec.simon_pan.efficiency;
    table.push_back({"simon_pan", cell(rec.simon_pan.params.phi_plus()), cell(sp_eff),
                     cell(1.0 / sp_eff), "efficiency=" + cell(sp_eff)});

    std::array<std::size_t, 5> width{};
    for (const auto& r : table) {
      for (std::size_t k = 0; k < 5; ++k) width[k] = std::max(width[k], r[k].size());
    }
    std::string text = "input_fidelity " + cell(rec.input_fidelity) + "\ntarget_fidelity " +
                       cell(target) + "\n";
    for (const auto& r : table) {
      std::string line;
      for (std::size_t k = 0; k < 5; ++k) {
        line += r[k];
        if (k + 1 < 5) line += std::string(width[k] - r[k].size() + 2, ' ');
      }
      text += line + "\n";
    }
    out << text;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cmd_validate(bool perturb, std::ostream& out, std::ostream& err) {
  const OpticalNetwork net = perturb ? perturbed_fig1_network() : OpticalNetwork::fig1();
  const std::vector<InvariantResult> results = run_invariant_suite(net);
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed && !r.detail.empty()) out << ": " << r.detail;
    out << '\n';
    if (r.passed) {
      ++passed;
    } else {
      err << "invariant violated: " << r.name << '\n';
    }
  }
  out << passed << "/" << results.size() << " invariants passed\n";
  return passed == results.size() ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic entanglement purification simulator", "depp"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string path;
  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "Evaluate a scenario and write the results document");
  std::string format = "json";
  run->add_option("file", path, "Scenario file")->required();
  run->add_option("--set", overrides, "Override section.key=value (repeatable)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* sweep = app.add_subcommand("sweep", "Evaluate a scenario over a parameter range as CSV");
  SweepArgs sargs;
  sweep->add_option("file", path, "Scenario file")->required();
  sweep->add_option("--param", sargs.param, "Dotted numeric key")->required();
  sweep->add_option("--from", sargs.from, "First value")->required();
  sweep->add_option("--to", sargs.to, "Last value")->required();
  sweep->add_option("--steps", sargs.steps, "Number of points (>= 2)")->required();
  sweep->add_option("--balance", sargs.balance,
                    "Key shifted opposite to the swept value, keeping their sum fixed");
  sweep->add_option("--set", overrides, "Override section.key=value (repeatable)");

  auto* compare = app.add_subcommand("compare", "Tabulate resource cost against other protocols");
  double target = 0.0;
  compare->add_option("file", path, "Scenario file")->required();
  compare->add_option("--target", target, "Target fidelity in (0.5, 1]")->required();
  compare->add_option("--set", overrides, "Override section.key=value (repeatable)");

  auto* validate = app.add_subcommand("validate", "Run the built-in invariant suite");
  bool perturb = false;
  validate->add_flag("--perturb-network", perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return cmd_run(path, overrides, format, out, err);
  if (sweep->parsed()) return cmd_sweep(path, overrides, sargs, out, err);
  if (compare->parsed()) return cmd_compare(path, overrides, target, out, err);
  return cmd_validate(perturb, out, err);
}

}  // namespace depp
