#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "demonlab/montecarlo.hpp"
#include "demonlab/report.hpp"
#include "demonlab/serialization.hpp"
#include "demonlab/sweep.hpp"

namespace demonlab {

inline constexpr int kConfigVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 1234567;

struct McSettings {
  RunConfig run;
  Normalization norm = Normalization::Singles;
  bool seed_given = false;  // run.seed came from the mc section
};

struct G2Settings {
  SourceSpec spec = SourceSpec::uncorrelated(0.05);
  std::uint64_t slots = 1'000'000;
  std::vector<int> tau{0, 1, 2, 4, 8, 16, 32, 64};
  G2Options options;
  bool fit = false;  // fit a coherence time to the estimates
};

struct OutputSettings {
  std::optional<std::string> path;
  std::optional<ReportFormat> format;
};

// Top-level configuration document:
//   {"version": 1, "seed": ..., "preset": "...", "sweep": {...}, "mc": {...},
//    "g2": {...}, "output": {"path": ..., "format": "csv|json|svg"}}
// "preset" seeds the sweep section; keys given in "sweep" override it.
struct AppConfig {
  std::optional<std::uint64_t> seed;
  std::optional<SweepConfig> sweep;
  std::optional<McSettings> mc;
  std::optional<G2Settings> g2;
  OutputSettings output;
};

// Throws ConfigError with a line/column or field-path location.
AppConfig parse_config(std::string_view text);
AppConfig load_config(const std::string& path);

Series series_from_json(const JsonReader& in);
SweepConfig sweep_from_json(const JsonReader& in, std::optional<SweepConfig> base);
std::vector<double> r2_grid_from_json(const JsonReader& in);

nlohmann::json to_json(const Series& series);
nlohmann::json to_json(const SweepConfig& config);

// Seed precedence: command line, then DEMONLAB_SEED, then the config file,
// then kDefaultSeed. `env` is the raw environment value, if any.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env,
                           std::optional<std::uint64_t> config);

}  // namespace demonlab
