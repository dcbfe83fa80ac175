#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "demonlab/checks.hpp"
#include "demonlab/config.hpp"
#include "demonlab/diagnostics.hpp"
#include "demonlab/presets.hpp"
#include "demonlab/report.hpp"

using namespace demonlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::string preset_name;
  bool quick = false;
};

AppConfig load(const Flags& f) {
  AppConfig c = f.config_path.empty() ? AppConfig{} : load_config(f.config_path);
  if (!f.preset_name.empty()) {
    try {
      c.sweep = preset(f.preset_name);
    } catch (const DomainError& e) {
      throw ConfigError("--preset", e.what());
    }
  }
  return c;
}

ReportFormat choose_format(const Flags& f, const AppConfig& c, const std::string& path) {
  try {
    if (!f.format.empty()) return parse_report_format(f.format);
  } catch (const DomainError& e) {
    throw ConfigError("--format", e.what());
  }
  if (c.output.format) return *c.output.format;
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".json")) return ReportFormat::Json;
  if (ends_with(".svg")) return ReportFormat::Svg;
  return ReportFormat::Csv;
}

std::string output_path(const Flags& f, const AppConfig& c) {
  if (!f.out.empty()) return f.out;
  return c.output.path.value_or("");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file(path, content);
  }
}

SweepConfig require_sweep(const AppConfig& c) {
  if (!c.sweep) throw ConfigError("sweep", "no sweep configured (give --preset or a config with \"preset\" or \"sweep\")");
  return *c.sweep;
}

int report_sweep(const SweepResult& res, const Flags& f, const AppConfig& c) {
  const auto path = output_path(f, c);
  emit(path, render_report(res.rows, choose_format(f, c, path)));
  for (auto i : res.disagreements) {
    const auto& r = res.rows[i];
    warn(r.source + "/" + r.normalization + " r2=" + format_number(r.r2) +
         ": Monte Carlo differs from the analytic value by more than 3 standard errors");
  }
  for (const auto& msg : res.failures) std::cerr << "demonlab: error: " << msg << "\n";
  return res.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_sweep(const Flags& f) {
  const auto c = load(f);
  auto sweep = require_sweep(c);
  sweep.seed = resolve_seed(f.seed, std::getenv("DEMONLAB_SEED"), c.seed);
  return report_sweep(run_sweep(sweep), f, c);
}

int cmd_info(const Flags& f) {
  const auto c = load(f);
  auto sweep = require_sweep(c);
  sweep.engine = Engine::Analytic;
  sweep.mutual_info = true;
  auto res = run_sweep(sweep);
  for (auto& r : res.rows) r.analytic.reset();
  return report_sweep(res, f, c);
}

int cmd_mc(const Flags& f) {
  const auto c = load(f);
  McSettings mc = c.mc.value_or(McSettings{});
  const std::optional<std::uint64_t> config_seed = c.seed ? c.seed : (mc.seed_given ? std::optional(mc.run.seed) : std::nullopt);
  mc.run.seed = resolve_seed(f.seed, std::getenv("DEMONLAB_SEED"), config_seed);
  const auto m = measure_power(mc.run, mc.norm);
  const auto path = output_path(f, c);
  const auto format = choose_format(f, c, path);
  if (format == ReportFormat::Json) {
    json j;
    j["config"] = to_json(mc.run);
    j["normalization"] = std::string(to_string(mc.norm));
    j["measurement"] = to_json(m);
    emit(path, j.dump(2) + "\n");
    return kExitOk;
  }
  ReportRow row{std::string(to_string(mc.run.spec.kind)), std::string(to_string(mc.norm)), mc.run.r.reflectivity(),
                {}, m.value, m.std_error, {}};
  PowerParams params;
  params.nbar = mc.run.spec.nbar;
  params.eps2 = mc.run.eps2;
  if (mc.run.spec.v2) params.v2 = *mc.run.spec.v2;
  try {
    row.analytic = closed_form_power(mc.run.spec.kind, mc.norm, params, mc.run.r);
  } catch (const DomainError&) {
  }
  emit(path, render_report({row}, format));
  return kExitOk;
}

int cmd_g2(const Flags& f) {
  const auto c = load(f);
  const G2Settings g = c.g2.value_or(G2Settings{});
  const auto seed = resolve_seed(f.seed, std::getenv("DEMONLAB_SEED"), c.seed);
  const auto est = estimate_g2(g.spec, g.slots, seed, g.tau, g.options);
  std::optional<CoherenceFit> fit;
  if (g.fit) fit = fit_coherence_time(est);
  const auto path = output_path(f, c);
  const auto format = choose_format(f, c, path);
  if (format == ReportFormat::Json) {
    json j;
    j["slots"] = g.slots;
    j["stream"] = std::string(to_string(g.options.stream));
    json rows = json::array();
    for (const auto& [tau, v] : est) rows.push_back({{"tau", tau}, {"g2", v}});
    j["g2"] = rows;
    if (fit) j["fit"] = {{"tau_c", fit->tau_c}, {"amplitude", fit->amplitude}, {"residual", fit->residual}};
    emit(path, j.dump(2) + "\n");
  } else if (format == ReportFormat::Csv) {
    std::string out = "tau,g2\n";
    for (const auto& [tau, v] : est) out += std::to_string(tau) + "," + format_number(v) + "\n";
    emit(path, out);
    if (fit) std::cerr << "fitted coherence time: " << format_number(fit->tau_c) << " slots\n";
  } else {
    throw ConfigError("--format", "g2 output supports csv and json");
  }
  return kExitOk;
}

int cmd_check(const Flags& f) {
  CheckOptions opt;
  opt.quick = f.quick;
  const auto c = f.config_path.empty() ? AppConfig{} : load_config(f.config_path);
  opt.seed = resolve_seed(f.seed, std::getenv("DEMONLAB_SEED"), c.seed);
  const auto summary = run_checks(opt);
  std::size_t failed = 0;
  for (const auto& r : summary.results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    if (!r.pass) ++failed;
  }
  std::cout << summary.results.size() - failed << "/" << summary.results.size() << " checks passed\n";
  return summary.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic Maxwell's demon: power, information and event-stream simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  std::uint64_t seed = 0;
  app.add_option("--config", f.config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides DEMONLAB_SEED and the config)");
  app.add_option("--out", f.out, "output file (default: standard output)");
  app.add_option("--format", f.format, "csv, json or svg");
  app.add_option("--preset", f.preset_name, "named sweep, e.g. fig4a or fig4b-correlated");

  auto* sweep = app.add_subcommand("sweep", "power versus reflectivity");
  auto* mc = app.add_subcommand("mc", "Monte Carlo power measurement");
  auto* info = app.add_subcommand("info", "mutual information versus reflectivity");
  auto* check = app.add_subcommand("check", "run the verification suite");
  check->add_flag("--quick", f.quick, "1e5 slots and 4 standard errors for statistical checks");
  auto* g2 = app.add_subcommand("g2", "second-order coherence of a simulated stream");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  if (*seed_opt) f.seed = seed;

  try {
    if (*sweep) return cmd_sweep(f);
    if (*mc) return cmd_mc(f);
    if (*info) return cmd_info(f);
    if (*check) return cmd_check(f);
    if (*g2) return cmd_g2(f);
  } catch (const ConfigError& e) {
    std::cerr << "demonlab: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "demonlab: invalid parameter: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "demonlab: error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
