#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "demonlab/analytics.hpp"
#include "demonlab/information.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

enum class Engine { Analytic, MonteCarlo, Both };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view text);

// One curve: a source, its normalization and the apparatus' coupling
// efficiency. Thermal sources are specified by their mean photon number at
// the detectors (thermal light stays thermal under loss), so eps2 reaches
// them only through the demon's conditional click probabilities in the
// mutual information.
struct Series {
  SourceSpec spec;
  Normalization norm = Normalization::Singles;
  CouplingEfficiency eps2{1.0};

  PowerParams power_params() const;
};

struct SweepConfig {
  std::vector<Series> series;
  std::vector<double> r2_grid;
  Engine engine = Engine::Analytic;
  bool mutual_info = false;
  InfoTarget info_target = InfoTarget::Incident;
  std::uint64_t slots = 200'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void validate() const;
};

// r^2 from 0 to 0.5 in steps of 0.025.
std::vector<double> default_r2_grid();

struct ReportRow {
  std::string source;
  std::string normalization;
  double r2 = 0.0;
  std::optional<double> analytic;
  std::optional<double> mc;
  std::optional<double> mc_stderr;
  std::optional<double> mutual_info_bits;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SweepResult {
  std::vector<ReportRow> rows;
  // Rows whose Monte Carlo value lies beyond 3 standard errors of the
  // analytic value (engine Both only), by index into rows.
  std::vector<std::size_t> disagreements;
  // Per-row engine failures; the affected cells are left empty.
  std::vector<std::string> failures;
};

SweepResult run_sweep(const SweepConfig& config);

}  // namespace demonlab
