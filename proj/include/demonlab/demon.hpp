#pragma once

#include <array>
#include <string>
#include <string_view>

#include "demonlab/fock.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

inline const std::string kDA = "D_A";
inline const std::string kDB = "D_B";
inline const std::string kDemA = "Dem_A";
inline const std::string kDemB = "Dem_B";
inline const std::string kLossA = "l_A";
inline const std::string kLossB = "l_B";

// Non-number-resolving clicks at the two demon detectors.
struct ClickPattern {
  bool dem_a = false;
  bool dem_b = false;

  int index() const noexcept { return (dem_a ? 2 : 0) + (dem_b ? 1 : 0); }
  static ClickPattern from_index(int i) noexcept { return {(i & 2) != 0, (i & 1) != 0}; }
  friend bool operator==(ClickPattern, ClickPattern) = default;
};

enum class SwitchState { Bar, Cross };

std::string_view to_string(SwitchState s);

class Policy {
 public:
  Policy() = default;
  static Policy all_bar();
  static Policy all_cross();
  // Cross on `pattern` only.
  static Policy cross_on(ClickPattern pattern);

  SwitchState operator()(ClickPattern c) const noexcept { return table_[c.index()]; }
  void set(ClickPattern c, SwitchState s) noexcept { table_[c.index()] = s; }
  // Exchanges the (1,0) and (0,1) rows.
  Policy mirrored() const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::array<SwitchState, 4> table_{SwitchState::Bar, SwitchState::Bar, SwitchState::Bar,
                                    SwitchState::Bar};
};

// Cross on Dem(0,1) for thermal and anticorrelated light, on Dem(1,0) for
// correlated pairs.
Policy canonical_policy(SourceKind kind);

// Per-detector efficiency of the demon's own detectors.
struct DemonDetectors {
  double eta_a = 1.0;
  double eta_b = 1.0;
  void validate() const;
};

// Distribution over (D_A, D_B, Dem_A, Dem_B, l_A, l_B) after loss, the tap
// beamsplitters and the click-conditioned switch.
struct DemonOutcome {
  JointOccupationDistribution dist;
};

DemonOutcome propagate(const JointOccupationDistribution& source, ReflectionAmplitude r,
                       CouplingEfficiency eps2, const Policy& policy,
                       DemonDetectors detectors = {});

struct DetectorProbabilities {
  double p_a = 0.0;
  double p_b = 0.0;
};

// Probability of at least one photon at D_A and at D_B.
DetectorProbabilities detector_probs(const DemonOutcome& outcome);

// Gamma (P_A - P_B).
double delta_n(double p_a, double p_b, double gamma);

}  // namespace demonlab
