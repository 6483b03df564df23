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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entmap/errors.hpp"
#include "entmap/runner.hpp"

namespace {

using namespace entmap;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> mode;
};

ExperimentConfig load_with_overrides(const GlobalFlags& g) {
  if (g.config.empty()) throw ConfigError("--config is required for this command");
  ExperimentConfig cfg = load_config(g.config);
  Overrides o;
  o.seed = g.seed;
  o.output = g.out;
  if (g.mode) o.mode = parse_mode(*g.mode);
  apply_overrides(cfg, o, std::getenv("ENTMAP_SEED"));
  return cfg;
}

int report(const RunArtifacts& a) {
  if (!a.message.empty()) (a.exit_code == kExitOk ? std::cout : std::cerr) << a.message << "\n";
  return a.exit_code;
}

int fail(int code, const std::string& what) {
  std::cerr << "entmap: error: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entmap: Hamiltonian characterisation from sampled two-qubit entanglement"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--config", g.config, "JSON experiment config");
  app.add_option("--seed", g.seed, "Master seed (overrides config and ENTMAP_SEED)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--mode", g.mode, "noiseless | sampled")->check(CLI::IsMember({"noiseless", "sampled"}));

  auto* simulate = app.add_subcommand("simulate", "Write sampled C^2 series for the four inputs");
  auto* spectrum = app.add_subcommand("spectrum", "DFT the series and annotate peaks");
  std::vector<std::string> series_files;
  std::optional<std::string> series_dir;
  spectrum->add_option("--series", series_files, "Explicit series CSV files (no config needed)");
  spectrum->add_option("--series-dir", series_dir, "Directory holding series_psiK.csv");
  auto* characterize = app.add_subcommand("characterize", "Reconstruct (c1, c2, c3)");

  auto* gate = app.add_subcommand("gate-error", "Gate error versus measurement budget");
  GateErrorOptions gopt;
  std::vector<std::size_t> nts;
  std::string ne_range = "1:100000:61";
  std::string gate_name = "ising";
  std::optional<double> p_target;
  gate->add_option("--nt", nts, "Time points (repeatable; default 10 and 100)");
  gate->add_option("--ne-range", ne_range, "LO:HI[:COUNT] log-spaced, or a,b,c")->capture_default_str();
  gate->add_option("--gate", gate_name, "ising | heisenberg")->capture_default_str();
  gate->add_option("--p-target", p_target, "Solve for the minimal budget reaching this p_eff");

  auto* robust = app.add_subcommand("robustness", "Imperfect-preparation sweep on psi1");

  for (auto* sub : {simulate, spectrum, characterize, gate, robust}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*simulate) return report(cmd_simulate(load_with_overrides(g)));
    if (*spectrum) {
      if (!series_files.empty()) {
        std::vector<std::filesystem::path> files(series_files.begin(), series_files.end());
        return report(cmd_spectrum_files(files, g.out.value_or("out")));
      }
      std::optional<std::filesystem::path> dir;
      if (series_dir) dir = *series_dir;
      return report(cmd_spectrum(load_with_overrides(g), dir));
    }
    if (*characterize) return report(cmd_characterize(load_with_overrides(g)));
    if (*robust) return report(cmd_robustness(load_with_overrides(g)));
    if (*gate) {
      if (!nts.empty()) gopt.nts = nts;
      gopt.ne_values = parse_ne_range(ne_range);
      gopt.gate = parse_gate(gate_name);
      gopt.p_target = p_target;
      if (g.out) gopt.output = *g.out;
      return report(cmd_gate_error(gopt));
    }
  } catch (const ConfigError& e) {
    return fail(kExitConfig, e.what());
  } catch (const DomainError& e) {
    return fail(kExitConfig, e.what());
  } catch (const InconsistentFrequencies& e) {
    return fail(kExitInconsistent, e.what());
  } catch (const IoError& e) {
    return fail(kExitIo, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
  return kExitOk;
}
