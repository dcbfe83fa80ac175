#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "demonlab/demon.hpp"
#include "demonlab/information.hpp"
#include "demonlab/sources.hpp"

namespace demonlab::oracle {

// Brute-force reference. Shares no arithmetic with the distribution code:
// source weights are rebuilt from their formulas and every photon is
// followed through its own loss/tap/detection fate.

struct WeightedTuple {
  int n_a = 0;
  int n_b = 0;
  double weight = 0.0;
};

struct Options {
  int cutoff = kDefaultCutoff;
  // Pair sources: weights carry the 1/(1 - s^2/2)^2 prefactor of the
  // truncated two-mode squeezed state instead of being normalized.
  bool unnormalized_pair_weights = false;
  // Keep only paths with at most this many transmitted and reflected photons
  // per arm (-1: no limit). 1 gives the low-photon truncation of the
  // symbolic thermal result.
  int max_photons_per_port = -1;
  std::uint64_t max_paths = 1'000'000;
};

using Key = std::array<int, 6>;  // D_A, D_B, Dem_A, Dem_B, l_A, l_B

struct Report {
  std::vector<std::string> modes{kDA, kDB, kDemA, kDemB, kLossA, kLossB};
  int cutoff = kDefaultCutoff;
  std::map<Key, double> table;
  double p_a = 0.0;
  double p_b = 0.0;
  double delta = 0.0;
  double truncation_bound = 0.0;  // source mass beyond the cutoff
  std::uint64_t paths = 0;
  double max_abs_discrepancy = 0.0;  // filled in by compare()
};

std::vector<WeightedTuple> source_weights(const SourceSpec& spec, const Options& options);

Report enumerate(const SourceSpec& spec, ReflectionAmplitude r, CouplingEfficiency eps2,
                 const Policy& policy, const Options& options = {},
                 DemonDetectors detectors = {});

struct Comparison {
  bool pass = false;
  double max_discrepancy = 0.0;
};

// Entrywise max |difference| against a candidate outcome; records it in the
// report.
Comparison compare(Report& report, const DemonOutcome& candidate, double tol = 1e-12);

// Mutual information of the pre-switch table, computed directly from the
// definition. Pair sources are post-selected on non-vacuum emission.
double mutual_information(const SourceSpec& spec, ReflectionAmplitude r, CouplingEfficiency eps2,
                          InfoTarget target, int cutoff);

}  // namespace demonlab::oracle
