#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "demonlab/fock.hpp"

namespace demonlab {

inline const std::string kInA = "In_A";
inline const std::string kInB = "In_B";

enum class SourceKind { Uncorrelated, SplitThermal, Correlated, AntiCorrelated };

std::string_view to_string(SourceKind kind);
SourceKind parse_source_kind(std::string_view text);
bool is_thermal(SourceKind kind) noexcept;

struct SourceSpec {
  SourceKind kind = SourceKind::Uncorrelated;
  std::optional<MeanPhotonNumber> nbar;  // thermal kinds: per-output-mode mean
  std::optional<SqueezingParameter> s;   // pair kinds
  std::optional<Visibility> v2;          // AntiCorrelated only
  bool drop_vacuum = false;
  // Adds the 1/2 |1,0><1,0| + 1/2 |0,1><0,1| component (weight s^2 each half)
  // to AntiCorrelated; it cannot change the demon's photon imbalance.
  bool include_single_photon_term = false;

  static SourceSpec uncorrelated(double nbar);
  static SourceSpec split_thermal(double nbar);
  static SourceSpec correlated(double s);
  static SourceSpec anti_correlated(double s, double v2);

  // Throws DomainError when the parameters do not match `kind`.
  void validate() const;
};

// Source state on modes (In_A, In_B). Thermal kinds are truncated at
// `cutoff` total photons; pair kinds need cutoff >= 2.
JointOccupationDistribution make_source(const SourceSpec& spec, int cutoff = kDefaultCutoff);

// <n(n-1)>/<n>^2 of one mode of `dist`.
double marginal_g2_zero(const JointOccupationDistribution& dist, std::string_view mode);

// g2(0) of the In_A marginal, built with a cutoff large enough that the
// truncated tail is below 1e-9.
double marginal_g2_zero(const SourceSpec& spec);

}  // namespace demonlab
