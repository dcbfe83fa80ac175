#pragma once

#include <array>
#include <map>
#include <string_view>

#include "demonlab/demon.hpp"
#include "demonlab/fock.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

// Probability that m of n source photons reach a demon detector: each photon
// survives loss with eps2 and is then reflected with r^2.
double conditional_click_pmf(int m, int n, ReflectionAmplitude r, CouplingEfficiency eps2);

// Which photon numbers the click pattern is scored against.
//   Incident   photons per arm that reach the tap (after loss)
//   Remaining  photons per arm left in the signal path after the tap
enum class InfoTarget { Incident, Remaining };

std::string_view to_string(InfoTarget t);
InfoTarget parse_info_target(std::string_view text);

struct InfoOptions {
  InfoTarget target = InfoTarget::Incident;
  int cutoff = 8;
};

using InfoKey = std::array<int, 4>;  // (click_a, click_b, n_a, n_b)

struct InfoResult {
  double mutual_info = 0.0;    // bits
  double click_entropy = 0.0;  // bits
  double photon_entropy = 0.0; // bits, of (n_a, n_b)
  std::map<InfoKey, double> joint;
};

// Mutual information between the binarized click pattern and the photon
// numbers. Pair sources are post-selected on a non-vacuum emission.
InfoResult mutual_information(const SourceSpec& spec, ReflectionAmplitude r,
                              CouplingEfficiency eps2, InfoOptions options = {});

// Mutual information of a joint table.
InfoResult mutual_information_from_joint(std::map<InfoKey, double> joint);

// Same quantity read off a pre-switch (all-bar) outcome distribution.
InfoResult mutual_information_from_outcome(const DemonOutcome& pre_switch, InfoTarget target);

}  // namespace demonlab
