// Copyright 2026 The entmap Authors
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

#include "entmap/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "entmap/errors.hpp"

namespace entmap {
namespace {

using nlohmann::json;

std::string escape_pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class Validator {
 public:
  Validator(std::string_view text, std::string_view source)
      : source_(source), lines_(json_pointer_lines(text)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& problem) const {
    int line = 1;
    for (const auto& [p, l] : lines_)
      if (p == pointer) line = l;
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + (pointer.empty() ? "/" : pointer) +
                      ": " + problem);
  }

  void only_keys(const json& obj, const std::string& ptr, std::set<std::string> allowed) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, value] : obj.items())
      if (!allowed.count(key)) fail(ptr + "/" + escape_pointer_token(key), "unknown key");
  }

  double number(const json& v, const std::string& ptr) const {
    if (!v.is_number()) fail(ptr, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ptr, "must be finite");
    return d;
  }

  double positive(const json& v, const std::string& ptr) const {
    const double d = number(v, ptr);
    if (!(d > 0.0)) fail(ptr, "must be > 0");
    return d;
  }

  std::uint64_t count(const json& v, const std::string& ptr, std::uint64_t min) const {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    if (v.is_number_unsigned()) {
      const auto n = v.get<std::uint64_t>();
      if (n < min) fail(ptr, "must be >= " + std::to_string(min));
      return n;
    }
    const auto n = v.get<std::int64_t>();
    if (n < static_cast<std::int64_t>(min)) fail(ptr, "must be >= " + std::to_string(min));
    return static_cast<std::uint64_t>(n);
  }

  std::string string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a string");
    return v.get<std::string>();
  }

  template <typename Parse>
  auto choice(const json& v, const std::string& ptr, Parse parse) const {
    const std::string s = string(v, ptr);
    try {
      return parse(s);
    } catch (const DomainError& e) {
      fail(ptr, e.what());
    }
  }

 private:
  std::string source_;
  std::vector<std::pair<std::string, int>> lines_;
};

void read_plan(const Validator& v, const json& j, const std::string& ptr, PlanSpec& plan) {
  v.only_keys(j, ptr, {"nt", "ne", "strategy", "dt", "omega_guess"});
  if (j.contains("nt")) plan.nt = v.count(j["nt"], ptr + "/nt", 4);
  if (j.contains("ne")) plan.ne = v.count(j["ne"], ptr + "/ne", 1);
  if (j.contains("strategy")) plan.strategy = v.choice(j["strategy"], ptr + "/strategy", parse_strategy);
  if (j.contains("dt")) plan.dt = v.positive(j["dt"], ptr + "/dt");
  if (j.contains("omega_guess")) plan.omega_guess = v.positive(j["omega_guess"], ptr + "/omega_guess");
}

json plan_json(const PlanSpec& p) {
  json j = {{"nt", p.nt}, {"ne", p.ne}, {"strategy", std::string(to_string(p.strategy))}};
  if (p.dt) j["dt"] = *p.dt;
  if (p.omega_guess) j["omega_guess"] = *p.omega_guess;
  return j;
}

}  // namespace

std::vector<std::pair<std::string, int>> json_pointer_lines(std::string_view text) {
  struct Frame {
    bool object;
    std::string pointer;
    std::string key;
    std::size_t index = 0;
  };
  std::vector<std::pair<std::string, int>> out;
  std::vector<Frame> stack;
  int line = 1;
  bool expect_key = false;

  auto value_pointer = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& f = stack.back();
    return f.pointer + "/" + (f.object ? escape_pointer_token(f.key) : std::to_string(f.index));
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ':') continue;
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) expect_key = true;
        else ++stack.back().index;
      }
      continue;
    }
    if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
      expect_key = false;
      continue;
    }
    if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) s += text[++i];
        else s += text[i];
      }
      if (expect_key && !stack.empty() && stack.back().object) {
        stack.back().key = s;
        expect_key = false;
      } else {
        out.emplace_back(value_pointer(), line);
      }
      continue;
    }
    if (c == '{' || c == '[') {
      const std::string p = value_pointer();
      out.emplace_back(p, line);
      stack.push_back({c == '{', p, "", 0});
      expect_key = (c == '{');
      continue;
    }
    // Scalar literal: number, true, false, null.
    out.emplace_back(value_pointer(), line);
    while (i + 1 < text.size() && std::string_view(",}] \t\r\n").find(text[i + 1]) == std::string_view::npos) ++i;
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }

  const Validator v(text, source);
  v.only_keys(root, "", {"hamiltonian", "mode", "seed", "eta", "window", "output", "plan", "plans",
                         "prepass", "robustness"});
  ExperimentConfig cfg;

  if (!root.contains("hamiltonian")) v.fail("", "missing required key 'hamiltonian'");
  const json& h = root["hamiltonian"];
  v.only_keys(h, "/hamiltonian", {"c1", "c2", "c3"});
  for (const char* k : {"c1", "c2", "c3"})
    if (!h.contains(k)) v.fail("/hamiltonian", std::string("missing coefficient '") + k + "'");
  cfg.hamiltonian = {v.number(h["c1"], "/hamiltonian/c1"), v.number(h["c2"], "/hamiltonian/c2"),
                     v.number(h["c3"], "/hamiltonian/c3")};

  if (root.contains("mode")) cfg.mode = v.choice(root["mode"], "/mode", parse_mode);
  if (root.contains("seed")) cfg.seed = v.count(root["seed"], "/seed", 0);
  if (root.contains("eta")) {
    cfg.eta = v.number(root["eta"], "/eta");
    if (!(cfg.eta >= 0.0 && cfg.eta < 1.0)) v.fail("/eta", "must lie in [0, 1)");
  }
  if (root.contains("window")) {
    cfg.window = v.choice(root["window"], "/window", [](const std::string& s) {
      if (s == "none") return Window::kNone;
      if (s == "hann") return Window::kHann;
      throw DomainError("expected none|hann");
    });
  }
  if (root.contains("output")) cfg.output = v.string(root["output"], "/output");

  PlanSpec base;
  if (root.contains("plan")) read_plan(v, root["plan"], "/plan", base);
  cfg.plans.fill(base);
  if (root.contains("plans")) {
    const json& plans = root["plans"];
    v.only_keys(plans, "/plans", {"psi1", "psi2", "psi3", "psi4"});
    for (const auto& [key, value] : plans.items())
      read_plan(v, value, "/plans/" + key, cfg.plans[index_of(parse_input_state(key))]);
  }

  if (root.contains("prepass")) {
    const json& p = root["prepass"];
    v.only_keys(p, "/prepass", {"nt", "dt", "ne"});
    if (p.contains("nt")) cfg.prepass.nt = v.count(p["nt"], "/prepass/nt", 4);
    if (p.contains("dt")) cfg.prepass.dt = v.positive(p["dt"], "/prepass/dt");
    if (p.contains("ne")) cfg.prepass.ne = v.count(p["ne"], "/prepass/ne", 1);
  }

  if (root.contains("robustness")) {
    const json& r = root["robustness"];
    v.only_keys(r, "/robustness", {"eta_values", "nt", "ne", "dt", "expansion_points"});
    if (r.contains("eta_values")) {
      const json& etas = r["eta_values"];
      if (!etas.is_array() || etas.empty()) v.fail("/robustness/eta_values", "expected a non-empty array");
      cfg.robustness.eta_values.clear();
      for (std::size_t i = 0; i < etas.size(); ++i) {
        const std::string ptr = "/robustness/eta_values/" + std::to_string(i);
        const double e = v.number(etas[i], ptr);
        if (!(e >= 0.0 && e <= 0.2)) v.fail(ptr, "must lie in [0, 0.2]");
        cfg.robustness.eta_values.push_back(e);
      }
    }
    if (r.contains("nt")) cfg.robustness.nt = v.count(r["nt"], "/robustness/nt", 4);
    if (r.contains("ne")) cfg.robustness.ne = v.count(r["ne"], "/robustness/ne", 1);
    if (r.contains("dt")) cfg.robustness.dt = v.positive(r["dt"], "/robustness/dt");
    if (r.contains("expansion_points"))
      cfg.robustness.expansion_points = v.count(r["expansion_points"], "/robustness/expansion_points", 1);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string config_to_json(const ExperimentConfig& c) {
  json plans = json::object();
  for (InputState s : kAllInputs) plans[std::string(to_string(s))] = plan_json(c.plans[index_of(s)]);
  json robustness = {{"eta_values", c.robustness.eta_values},
                     {"nt", c.robustness.nt},
                     {"ne", c.robustness.ne},
                     {"expansion_points", c.robustness.expansion_points}};
  if (c.robustness.dt) robustness["dt"] = *c.robustness.dt;
  const json j = {
      {"hamiltonian", {{"c1", c.hamiltonian.c1}, {"c2", c.hamiltonian.c2}, {"c3", c.hamiltonian.c3}}},
      {"plans", plans},
      {"prepass", {{"nt", c.prepass.nt}, {"dt", c.prepass.dt}, {"ne", c.prepass.ne}}},
      {"robustness", robustness},
      {"eta", c.eta},
      {"seed", c.seed},
      {"mode", std::string(to_string(c.mode))},
      {"window", c.window == Window::kHann ? "hann" : "none"},
      {"output", c.output},
  };
  return j.dump();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const ExperimentConfig& config) {
  // The output directory does not affect numeric results.
  ExperimentConfig c = config;
  c.output.clear();
  return fnv1a_hex(config_to_json(c));
}

void apply_overrides(ExperimentConfig& config, const Overrides& flags, const char* env_seed) {
  if (env_seed && *env_seed) {
    try {
      std::size_t used = 0;
      const unsigned long long s = std::stoull(env_seed, &used);
      if (used != std::string_view(env_seed).size()) throw std::invalid_argument("trailing");
      config.seed = s;
    } catch (const std::exception&) {
      throw ConfigError(std::string("ENTMAP_SEED: not an unsigned integer: '") + env_seed + "'");
    }
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.mode) config.mode = *flags.mode;
  if (flags.output) config.output = *flags.output;
}

}  // namespace entmap
