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

#include "depp/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace depp {

namespace {

struct SectionSpec {
  std::string_view name;
  std::vector<std::string_view> keys;
};

const std::vector<SectionSpec>& section_specs() {
  static const std::vector<SectionSpec> specs = {
      {"source", {"r", "theta"}},
      {"noise.polarization", {"model", "F", "F1", "F2", "F3", "px", "py", "pz", "target", "file"}},
      {"noise.spatial", {"dephasing"}},
      {"protocol", {"name", "rounds", "target_fidelity"}},
      {"run", {"shots", "seed", "output"}},
  };
  return specs;
}

const SectionSpec* find_spec(std::string_view name) {
  for (const auto& s : section_specs()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool spec_has_key(const SectionSpec& spec, std::string_view key) {
  return std::find(spec.keys.begin(), spec.keys.end(), key) != spec.keys.end();
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

ParseError error_at(const std::string& origin, int line, std::size_t pos, std::string message) {
  return {origin, line, static_cast<int>(pos) + 1, std::move(message)};
}

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_space(s[pos])) ++pos;
  return pos;
}

// Parses a value token starting at `pos`. On success advances `pos` past it.
std::variant<RawValue, ParseError> lex_value(std::string_view s, std::size_t& pos,
                                             const std::string& origin, int line) {
  const char c = s[pos];
  RawValue v;
  if (c == '"') {
    const std::size_t open = pos;
    std::string text;
    std::size_t i = pos + 1;
    for (;;) {
      if (i >= s.size() || s[i] == '\n') return error_at(origin, line, open, "unterminated string");
      if (s[i] == '"') break;
      if (s[i] == '\\') {
        if (i + 1 >= s.size()) return error_at(origin, line, open, "unterminated string");
        if (s[i + 1] != '"' && s[i + 1] != '\\') {
          return error_at(origin, line, i, "unsupported escape sequence");
        }
        text.push_back(s[i + 1]);
        i += 2;
        continue;
      }
      text.push_back(s[i]);
      ++i;
    }
    v.kind = ValueKind::String;
    v.text = std::move(text);
    pos = i + 1;
    return v;
  }
  if (is_digit(c) || c == '+' || c == '-' || c == '.') {
    std::size_t end = pos;
    while (end < s.size() && (is_digit(s[end]) || s[end] == '+' || s[end] == '-' ||
                              s[end] == '.' || s[end] == 'e' || s[end] == 'E')) {
      ++end;
    }
    const std::string_view token = s.substr(pos, end - pos);
    std::string_view digits = token;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), x);
    if (digits.empty() || digits.front() == '+' || ec == std::errc::invalid_argument ||
        ptr != digits.data() + digits.size()) {
      return error_at(origin, line, pos, "malformed number '" + std::string(token) + "'");
    }
    if (ec == std::errc::result_out_of_range || !std::isfinite(x)) {
      return error_at(origin, line, pos, "number '" + std::string(token) + "' is out of range");
    }
    v.kind = ValueKind::Number;
    v.text = std::string(token);
    v.number = x;
    pos = end;
    return v;
  }
  if (is_alpha(c)) {
    std::size_t end = pos;
    while (end < s.size() &&
           (is_alpha(s[end]) || is_digit(s[end]) || s[end] == '.' || s[end] == '-')) {
      ++end;
    }
    v.kind = ValueKind::Word;
    v.text = std::string(s.substr(pos, end - pos));
    pos = end;
    return v;
  }
  return error_at(origin, line, pos, "expected a number, word or quoted string");
}

std::optional<ParseError> lex_line(RawScenario& raw, std::string_view s, int line,
                                   RawSection*& current) {
  const std::string& origin = raw.origin;
  std::size_t pos = skip_space(s, 0);
  if (pos == s.size() || s[pos] == '#') return std::nullopt;

  if (s[pos] == '[') {
    const std::size_t open = pos;
    const std::size_t close = s.find(']', open + 1);
    if (close == std::string_view::npos) {
      return error_at(origin, line, open, "unterminated section header");
    }
    const std::size_t name_begin = skip_space(s, open + 1);
    std::size_t name_end = close;
    while (name_end > name_begin && is_space(s[name_end - 1])) --name_end;
    const std::string name(s.substr(name_begin, name_end - name_begin));
    if (name.empty()) return error_at(origin, line, close, "empty section name");
    if (find_spec(name) == nullptr) {
      return error_at(origin, line, name_begin, "unknown section [" + name + "]");
    }
    const std::size_t after = skip_space(s, close + 1);
    if (after < s.size() && s[after] != '#') {
      return error_at(origin, line, after, "unexpected text after section header");
    }
    for (const auto& sec : raw.sections) {
      if (sec.name == name) {
        return error_at(origin, line, open,
                        "duplicate section [" + name + "] (first defined on line " +
                            std::to_string(sec.line) + ")");
      }
    }
    raw.sections.push_back({name, line, static_cast<int>(open) + 1, {}});
    current = &raw.sections.back();
    return std::nullopt;
  }

  if (current == nullptr) return error_at(origin, line, pos, "entry outside of any section");
  if (!is_alpha(s[pos])) return error_at(origin, line, pos, "expected a key");
  const std::size_t key_begin = pos;
  while (pos < s.size() && (is_alpha(s[pos]) || is_digit(s[pos]))) ++pos;
  const std::string key(s.substr(key_begin, pos - key_begin));
  pos = skip_space(s, pos);
  if (pos == s.size()) return error_at(origin, line, s.size() - 1, "expected '=' after key");
  if (s[pos] != '=') return error_at(origin, line, pos, "expected '=' after key");
  const std::size_t eq = pos;
  pos = skip_space(s, pos + 1);
  if (pos == s.size() || s[pos] == '#') return error_at(origin, line, eq, "missing value");
  const std::size_t value_begin = pos;
  auto value = lex_value(s, pos, origin, line);
  if (auto* err = std::get_if<ParseError>(&value)) return *err;
  pos = skip_space(s, pos);
  if (pos < s.size() && s[pos] != '#') {
    return error_at(origin, line, pos, "unexpected text after value");
  }

  const SectionSpec* spec = find_spec(current->name);
  if (!spec_has_key(*spec, key)) {
    return error_at(origin, line, key_begin,
                    "unknown key '" + key + "' in section [" + current->name + "]");
  }
  for (const auto& e : current->entries) {
    if (e.key == key) {
      return error_at(origin, line, key_begin,
                      "duplicate key '" + key + "' (first defined on line " +
                          std::to_string(e.line) + ")");
    }
  }
  current->entries.push_back({key, std::get<RawValue>(std::move(value)), origin, line,
                              static_cast<int>(key_begin) + 1,
                              static_cast<int>(value_begin) + 1});
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Semantic validation

ParseError entry_error(const RawEntry& e, bool at_value, std::string message) {
  return {e.origin, e.line, at_value ? e.value_column : e.key_column, std::move(message)};
}

ParseError section_error(const RawScenario& raw, const RawSection& sec, std::string message) {
  return {raw.origin, sec.line, sec.column, std::move(message)};
}

const RawSection* find_section(const RawScenario& raw, std::string_view name) {
  for (const auto& s : raw.sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const RawEntry* find_entry(const RawSection* sec, std::string_view key) {
  if (sec == nullptr) return nullptr;
  for (const auto& e : sec->entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::variant<double, ParseError> as_number(const RawEntry& e) {
  if (e.value.kind != ValueKind::Number) {
    return entry_error(e, true, "key '" + e.key + "' expects a number");
  }
  return e.value.number;
}

std::variant<std::uint64_t, ParseError> as_unsigned(const RawEntry& e) {
  std::string_view t = e.value.text;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  const bool digits_only = !t.empty() && std::all_of(t.begin(), t.end(), is_digit);
  if (e.value.kind != ValueKind::Number || !digits_only) {
    return entry_error(e, true, "key '" + e.key + "' expects a non-negative integer");
  }
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    return entry_error(e, true, "integer for key '" + e.key + "' is out of range");
  }
  return x;
}

std::variant<std::string, ParseError> as_text(const RawEntry& e) {
  if (e.value.kind == ValueKind::Number) {
    return entry_error(e, true, "key '" + e.key + "' expects a word or string");
  }
  return e.value.text;
}

std::variant<double, ParseError> probability_of(const RawEntry& e) {
  auto x = as_number(e);
  if (std::holds_alternative<ParseError>(x)) return x;
  const double p = std::get<double>(x);
  if (p < 0.0 || p > 1.0) return entry_error(e, true, "'" + e.key + "' must lie in [0,1]");
  return p;
}

#define DEPP_TRY(var, expr)                                        \
  auto var##_result = (expr);                                      \
  if (auto* var##_err = std::get_if<ParseError>(&var##_result)) {  \
    return *var##_err;                                             \
  }                                                                \
  auto var = std::get<0>(std::move(var##_result))

struct ModelKeys {
  std::string_view model;
  std::vector<std::string_view> keys;
};

const std::vector<ModelKeys>& model_keys() {
  static const std::vector<ModelKeys> m = {
      {"bell_diagonal", {"F", "F1", "F2", "F3"}},
      {"pauli", {"px", "py", "pz", "target"}},
      {"matrix", {"file"}},
  };
  return m;
}

std::variant<PolarizationNoise, ParseError> build_noise(const RawScenario& raw) {
  const RawSection* sec = find_section(raw, "noise.polarization");
  if (sec == nullptr) {
    return ParseError{raw.origin, 1, 1, "missing required section [noise.polarization]"};
  }
  const RawEntry* model_entry = find_entry(sec, "model");
  if (model_entry == nullptr) return section_error(raw, *sec, "missing key 'model'");
  DEPP_TRY(model, as_text(*model_entry));
  const ModelKeys* mk = nullptr;
  for (const auto& m : model_keys()) {
    if (m.model == model) mk = &m;
  }
  if (mk == nullptr) {
    return entry_error(*model_entry, true,
                       "unknown noise model '" + model + "' (expected bell_diagonal, pauli or matrix)");
  }
  for (const auto& e : sec->entries) {
    if (e.key == "model") continue;
    if (std::find(mk->keys.begin(), mk->keys.end(), e.key) == mk->keys.end()) {
      return entry_error(e, false, "key '" + e.key + "' does not apply to model " + model);
    }
  }
  for (std::string_view k : mk->keys) {
    if (find_entry(sec, k) == nullptr) {
      return section_error(raw, *sec, "model " + model + " requires key '" + std::string(k) + "'");
    }
  }

  if (model == "bell_diagonal") {
    double w[4];
    const RawEntry* last = nullptr;
    std::size_t last_pos = 0;
    for (int i = 0; i < 4; ++i) {
      const RawEntry* e = find_entry(sec, mk->keys[i]);
      DEPP_TRY(p, probability_of(*e));
      w[i] = p;
      const auto at = static_cast<std::size_t>(e - sec->entries.data());
      if (last == nullptr || at > last_pos) {
        last = e;
        last_pos = at;
      }
    }
    const double sum = w[0] + w[1] + w[2] + w[3];
    if (std::abs(sum - 1.0) > kIdentityTol) {
      return entry_error(*last, false,
                         "weights violate F+F1+F2+F3=1 (sum is " + format_real(sum) + ")");
    }
    return PolarizationNoise(BellDiagonalNoise{BellDiagonalParams(w[0], w[1], w[2], w[3])});
  }

  if (model == "pauli") {
    PauliNoise n;
    double* slots[3] = {&n.px, &n.py, &n.pz};
    const RawEntry* last = nullptr;
    for (int i = 0; i < 3; ++i) {
      const RawEntry* e = find_entry(sec, mk->keys[i]);
      DEPP_TRY(p, probability_of(*e));
      *slots[i] = p;
      if (last == nullptr || e > last) last = e;
    }
    if (n.px + n.py + n.pz > 1.0 + kIdentityTol) {
      return entry_error(*last, false, "pauli probabilities px+py+pz exceed 1");
    }
    const RawEntry* t = find_entry(sec, "target");
    DEPP_TRY(target, as_text(*t));
    if (target == "A") {
      n.target = Photon::A;
    } else if (target == "B") {
      n.target = Photon::B;
    } else {
      return entry_error(*t, true, "target must be A or B");
    }
    return PolarizationNoise(n);
  }

  const RawEntry* f = find_entry(sec, "file");
  DEPP_TRY(path, as_text(*f));
  if (path.empty()) return entry_error(*f, true, "matrix file path is empty");
  return PolarizationNoise(MatrixNoise{path});
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::OneStepDepp: return "one_step_depp";
    case ProtocolKind::Bennett: return "bennett";
    case ProtocolKind::SimonPan: return "simon_pan";
    case ProtocolKind::Compare: return "compare";
  }
  return "?";
}

std::string ParseError::to_string() const {
  return origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": error: " + message;
}

const RawEntry* RawScenario::find(std::string_view section, std::string_view key) const {
  return find_entry(find_section(*this, section), key);
}

std::span<const std::string_view> numeric_scenario_keys() {
  static constexpr std::array<std::string_view, 11> keys = {
      "source.r",
      "source.theta",
      "noise.polarization.F",
      "noise.polarization.F1",
      "noise.polarization.F2",
      "noise.polarization.F3",
      "noise.polarization.px",
      "noise.polarization.py",
      "noise.polarization.pz",
      "noise.spatial.dephasing",
      "protocol.target_fidelity",
  };
  return keys;
}

std::variant<RawScenario, ParseError> lex_scenario(std::string_view text, std::string origin) {
  RawScenario raw;
  raw.origin = std::move(origin);
  // Sections are appended while `current` points into the vector.
  raw.sections.reserve(section_specs().size());
  RawSection* current = nullptr;
  int line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (auto err = lex_line(raw, text.substr(start, end - start), line, current)) return *err;
    if (end == text.size()) break;
    start = end + 1;
    ++line;
  }
  return raw;
}

std::optional<ParseError> apply_override(RawScenario& raw, std::string_view assignment) {
  const std::string origin = "--set " + std::string(assignment);
  // Columns are reported relative to the assignment text itself.
  auto err = [&](std::size_t pos, std::string msg) {
    return ParseError{origin, 1, static_cast<int>(pos) + 1, std::move(msg)};
  };
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    return err(assignment.empty() ? 0 : assignment.size() - 1, "override must be section.key=value");
  }
  std::size_t b = skip_space(assignment, 0);
  std::size_t e = eq;
  while (e > b && is_space(assignment[e - 1])) --e;
  const std::string_view path = assignment.substr(b, e - b);
  const std::size_t dot = path.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == path.size()) {
    return err(b, "override path must be section.key");
  }
  const std::string section(path.substr(0, dot));
  const std::string key(path.substr(dot + 1));
  const SectionSpec* spec = find_spec(section);
  if (spec == nullptr) return err(b, "unknown section [" + section + "]");
  if (!spec_has_key(*spec, key)) {
    return err(b + dot + 1, "unknown key '" + key + "' in section [" + section + "]");
  }
  std::size_t pos = skip_space(assignment, eq + 1);
  if (pos == assignment.size()) return err(eq, "missing value");
  const std::size_t value_begin = pos;
  auto value = lex_value(assignment, pos, origin, 1);
  if (auto* pe = std::get_if<ParseError>(&value)) return *pe;
  pos = skip_space(assignment, pos);
  if (pos < assignment.size()) return err(pos, "unexpected text after value");

  RawEntry entry{key, std::get<RawValue>(std::move(value)), origin, 1,
                 static_cast<int>(b) + 1, static_cast<int>(value_begin) + 1};
  RawSection* sec = nullptr;
  for (auto& s : raw.sections) {
    if (s.name == section) sec = &s;
  }
  if (sec == nullptr) {
    raw.sections.push_back({section, 1, 1, {}});
    sec = &raw.sections.back();
  }
  for (auto& existing : sec->entries) {
    if (existing.key == key) {
      existing = std::move(entry);
      return std::nullopt;
    }
  }
  sec->entries.push_back(std::move(entry));
  return std::nullopt;
}

std::variant<ScenarioConfig, ParseError> build_scenario(const RawScenario& raw) {
  ScenarioConfig cfg;

  const RawSection* source = find_section(raw, "source");
  double r = 1.0;
  double theta = 0.0;
  if (const RawEntry* e = find_entry(source, "r")) {
    DEPP_TRY(x, as_number(*e));
    if (x < 0.0) return entry_error(*e, true, "source r must be >= 0");
    r = x;
  }
  if (const RawEntry* e = find_entry(source, "theta")) {
    DEPP_TRY(x, as_number(*e));
    theta = x;
  }
  cfg.source = SourceConfig(r, theta);

  DEPP_TRY(noise, build_noise(raw));
  cfg.noise = std::move(noise);

  if (const RawEntry* e = find_entry(find_section(raw, "noise.spatial"), "dephasing")) {
    DEPP_TRY(x, probability_of(*e));
    cfg.spatial_dephasing = x;
  }

  const RawSection* protocol = find_section(raw, "protocol");
  if (protocol == nullptr) return ParseError{raw.origin, 1, 1, "missing required section [protocol]"};
  const RawEntry* name_entry = find_entry(protocol, "name");
  if (name_entry == nullptr) return section_error(raw, *protocol, "missing key 'name'");
  DEPP_TRY(name, as_text(*name_entry));
  bool known = false;
  for (ProtocolKind k : {ProtocolKind::OneStepDepp, ProtocolKind::Bennett, ProtocolKind::SimonPan,
                         ProtocolKind::Compare}) {
    if (protocol_name(k) == name) {
      cfg.protocol = k;
      known = true;
    }
  }
  if (!known) {
    return entry_error(*name_entry, true,
                       "unknown protocol '" + name +
                           "' (expected one_step_depp, bennett, simon_pan or compare)");
  }

  const RawEntry* rounds = find_entry(protocol, "rounds");
  if (cfg.protocol == ProtocolKind::Bennett) {
    if (rounds == nullptr) return section_error(raw, *protocol, "protocol bennett requires key 'rounds'");
    DEPP_TRY(n, as_unsigned(*rounds));
    if (n > 10000) return entry_error(*rounds, true, "rounds must be at most 10000");
    cfg.rounds = static_cast<int>(n);
  } else if (rounds != nullptr) {
    return entry_error(*rounds, false, "key 'rounds' is only valid for protocol bennett");
  }

  const RawEntry* target = find_entry(protocol, "target_fidelity");
  if (cfg.protocol == ProtocolKind::Compare) {
    if (target == nullptr) {
      return section_error(raw, *protocol, "protocol compare requires key 'target_fidelity'");
    }
    DEPP_TRY(t, as_number(*target));
    if (!(t > 0.5 && t <= 1.0)) return entry_error(*target, true, "target_fidelity must lie in (0.5, 1]");
    cfg.target_fidelity = t;
  } else if (target != nullptr) {
    return entry_error(*target, false, "key 'target_fidelity' is only valid for protocol compare");
  }

  const RawSection* run = find_section(raw, "run");
  if (const RawEntry* e = find_entry(run, "shots")) {
    DEPP_TRY(n, as_unsigned(*e));
    if (n > 0 && (cfg.protocol == ProtocolKind::Bennett || cfg.protocol == ProtocolKind::SimonPan)) {
      return entry_error(*e, true,
                         "shots > 0 needs a protocol with coincidence outcomes (one_step_depp or compare)");
    }
    cfg.run.shots = n;
  }
  if (const RawEntry* e = find_entry(run, "seed")) {
    DEPP_TRY(n, as_unsigned(*e));
    cfg.run.seed = n;
  }
  if (const RawEntry* e = find_entry(run, "output")) {
    DEPP_TRY(path, as_text(*e));
    if (path.empty()) return entry_error(*e, true, "output path is empty");
    cfg.run.output = path;
  }
  return cfg;
}

#undef DEPP_TRY

std::variant<ScenarioConfig, ParseError> parse_scenario(std::string_view text,
                                                        std::span<const std::string> overrides,
                                                        std::string origin) {
  auto lexed = lex_scenario(text, std::move(origin));
  if (auto* err = std::get_if<ParseError>(&lexed)) return *err;
  RawScenario& raw = std::get<RawScenario>(lexed);
  for (const auto& o : overrides) {
    if (auto err = apply_override(raw, o)) return *err;
  }
  return build_scenario(raw);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string format_scenario(const ScenarioConfig& cfg) {
  std::string out;
  auto kv = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).push_back('\n');
  };
  out += "[source]\n";
  kv("r", format_real(cfg.source.r()));
  kv("theta", format_real(cfg.source.theta()));

  out += "\n[noise.polarization]\n";
  if (const auto* b = std::get_if<BellDiagonalNoise>(&cfg.noise)) {
    kv("model", "bell_diagonal");
    kv("F", format_real(b->params.phi_plus()));
    kv("F1", format_real(b->params.phi_minus()));
    kv("F2", format_real(b->params.psi_plus()));
    kv("F3", format_real(b->params.psi_minus()));
  } else if (const auto* p = std::get_if<PauliNoise>(&cfg.noise)) {
    kv("model", "pauli");
    kv("px", format_real(p->px));
    kv("py", format_real(p->py));
    kv("pz", format_real(p->pz));
    kv("target", p->target == Photon::A ? "A" : "B");
  } else {
    kv("model", "matrix");
    kv("file", quote(std::get<MatrixNoise>(cfg.noise).path));
  }

  out += "\n[noise.spatial]\n";
  kv("dephasing", format_real(cfg.spatial_dephasing));

  out += "\n[protocol]\n";
  kv("name", std::string(protocol_name(cfg.protocol)));
  if (cfg.rounds) kv("rounds", std::to_string(*cfg.rounds));
  if (cfg.target_fidelity) kv("target_fidelity", format_real(*cfg.target_fidelity));

  out += "\n[run]\n";
  kv("shots", std::to_string(cfg.run.shots));
  kv("seed", std::to_string(cfg.run.seed));
  if (cfg.run.output) kv("output", quote(*cfg.run.output));
  return out;
}

}  // namespace depp
