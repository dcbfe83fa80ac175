#pragma once

// Truncated, diagonal Fock-space distributions and the two linear-optics
// channels (beamsplitter split, loss thinning) used to assemble every state
// the demon sees. Only populations are tracked; coherences are never needed
// because split modes are not interfered downstream.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace demonlab {

inline constexpr int kDefaultCutoff = 4;
inline constexpr double kLowPhotonLimit = 0.2;
inline constexpr double kMassTolerance = 1e-12;

// Photons per coherence-time mode. Values above kLowPhotonLimit are legal but
// leave the regime where the two-photon approximations hold.
class MeanPhotonNumber {
 public:
  explicit MeanPhotonNumber(double nbar);
  double value() const noexcept { return nbar_; }
  bool outside_low_photon_regime() const noexcept { return nbar_ > kLowPhotonLimit; }

 private:
  double nbar_;
};

// Beamsplitter reflection amplitude R; the reflectivity is R^2.
class ReflectionAmplitude {
 public:
  explicit ReflectionAmplitude(double r);
  static ReflectionAmplitude from_reflectivity(double r2);
  double amplitude() const noexcept { return r_; }
  double reflectivity() const noexcept { return r2_; }
  double transmissivity() const noexcept { return 1.0 - r2_; }

 private:
  double r_;
  double r2_;  // kept exact when constructed from a reflectivity
};

// Probability that a photon survives loss (eps^2).
class CouplingEfficiency {
 public:
  explicit CouplingEfficiency(double eps2);
  double value() const noexcept { return eps2_; }

 private:
  double eps2_;
};

// HOM visibility v^2: probability that a photon pair bunches into a N00N state.
class Visibility {
 public:
  explicit Visibility(double v2);
  double value() const noexcept { return v2_; }

 private:
  double v2_;
};

// Two-mode squeezing s, tied to the per-mode thermal occupation by
// sinh^2(s) = nbar.
class SqueezingParameter {
 public:
  explicit SqueezingParameter(double s);
  static SqueezingParameter from_mean_photon_number(MeanPhotonNumber nbar);
  double value() const noexcept { return s_; }
  MeanPhotonNumber mean_photon_number() const;

 private:
  double s_;
};

using Occupation = std::vector<int>;

// Probability mass over occupation tuples, one integer per labelled mode.
// Tuples whose total photon number exceeds the cutoff are never stored; their
// mass is accounted for in lost_mass().
class JointOccupationDistribution {
 public:
  JointOccupationDistribution(std::vector<std::string> mode_labels, int cutoff);

  // Single mode in its vacuum state.
  static JointOccupationDistribution vacuum(std::vector<std::string> mode_labels,
                                            int cutoff = kDefaultCutoff);

  // Adds probability mass to a tuple. Over-cutoff tuples go to lost_mass.
  void accumulate(const Occupation& tuple, double probability);
  void add_lost_mass(double probability);

  const std::vector<std::string>& modes() const noexcept { return modes_; }
  std::size_t mode_count() const noexcept { return modes_.size(); }
  bool has_mode(std::string_view label) const noexcept;
  std::size_t mode_index(std::string_view label) const;
  int cutoff() const noexcept { return cutoff_; }
  double lost_mass() const noexcept { return lost_mass_; }
  const std::map<Occupation, double>& entries() const noexcept { return entries_; }

  double probability(const Occupation& tuple) const;
  double total_mass() const;
  double mean(std::string_view label) const;

  // Marginal over the listed modes, in the listed order.
  JointOccupationDistribution marginal(std::span<const std::string> keep) const;
  JointOccupationDistribution trace_out(std::string_view label) const;
  // Same distribution with two mode labels' occupations exchanged.
  JointOccupationDistribution with_modes_exchanged(std::string_view a, std::string_view b) const;
  // Drops one tuple and rescales the rest (and lost mass) to unit total.
  JointOccupationDistribution post_selected_without(const Occupation& tuple) const;

  // Throws ComputationError when an invariant is broken.
  void check_invariants(double tolerance = kMassTolerance) const;

 private:
  std::vector<std::string> modes_;
  int cutoff_;
  std::map<Occupation, double> entries_;
  double lost_mass_ = 0.0;
};

// Bose-Einstein photon-number distribution nbar^n / (1 + nbar)^(n + 1).
double thermal_pmf(MeanPhotonNumber nbar, int n);

// Single-mode thermal state truncated at `cutoff`, tail recorded as lost mass.
JointOccupationDistribution thermal_state(MeanPhotonNumber nbar, std::string label,
                                          int cutoff = kDefaultCutoff);

// Splits `mode` on a beamsplitter: of n photons, k stay in `mode` with
// weight C(n,k) (1-R^2)^k (R^2)^(n-k), the rest go to `new_mode`, which is
// appended as the last mode.
JointOccupationDistribution beamsplitter_split(const JointOccupationDistribution& dist,
                                               std::string_view mode, ReflectionAmplitude r,
                                               std::string new_mode);

// Binomial thinning of `mode` with survival probability eps2. With
// `loss_mode` set the lost photons are kept in that (appended) mode,
// otherwise they are traced out.
JointOccupationDistribution loss_channel(const JointOccupationDistribution& dist,
                                         std::string_view mode, CouplingEfficiency eps2,
                                         std::optional<std::string> loss_mode = std::nullopt);

// Probability of m transmitted and n reflected photons when a thermal state
// of mean nbar meets a beamsplitter of reflection amplitude r.
double joint_detection_pmf(MeanPhotonNumber nbar, ReflectionAmplitude r, int m, int n);

double binomial_coefficient(int n, int k);

}  // namespace demonlab
