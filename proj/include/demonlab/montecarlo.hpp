#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "demonlab/analytics.hpp"
#include "demonlab/demon.hpp"
#include "demonlab/fock.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

enum class SwitchMode { Bar, Cross, FeedForward };

std::string_view to_string(SwitchMode m);
SwitchMode parse_switch_mode(std::string_view text);

// Iid: independent Bose-Einstein draws per slot.
// GaussianMemory: thermal field with a Gaussian first-order coherence of
// width coherence_slots, so that g2(tau) = 1 + exp(-pi (tau/tau_c)^2).
enum class StreamModel { Iid, GaussianMemory };

std::string_view to_string(StreamModel m);
StreamModel parse_stream_model(std::string_view text);

inline constexpr std::uint64_t kBlockSlots = 65536;
inline constexpr std::uint64_t kMaxSlots = std::uint64_t{1} << 48;

struct RunConfig {
  SourceSpec spec = SourceSpec::uncorrelated(0.05);
  ReflectionAmplitude r = ReflectionAmplitude::from_reflectivity(0.5);
  CouplingEfficiency eps2{1.0};
  std::uint64_t slots = 1'000'000;
  std::uint64_t seed = 0;
  // Balancing attenuators, one per arm.
  std::array<double, 2> arm_trim{1.0, 1.0};
  // Fixed per-arm coupling mismatch of the apparatus, applied with the trims.
  std::array<double, 2> arm_efficiency{1.0, 1.0};
  std::uint64_t dead_window_slots = 0;
  SwitchMode mode = SwitchMode::FeedForward;
  std::optional<Policy> policy;  // defaults to canonical_policy(spec.kind)
  DemonDetectors detectors;
  StreamModel stream = StreamModel::Iid;
  double coherence_slots = 0.0;
  unsigned threads = 1;

  void validate() const;
  Policy effective_policy() const;
};

struct RunResult {
  std::uint64_t slots = 0;
  std::uint64_t n_a = 0;            // slots with a click at D_A
  std::uint64_t n_b = 0;
  std::uint64_t coincidences = 0;   // same-slot clicks at D_A and D_B
  std::uint64_t photons_a = 0;      // photons reaching D_A
  std::uint64_t photons_b = 0;
  std::uint64_t dem_clicks_a = 0;
  std::uint64_t dem_clicks_b = 0;
  std::uint64_t dem_coincidences = 0;  // summed over the four (D, Dem) detector pairs
  std::uint64_t triggers = 0;          // slots in which the switch was set to cross
  std::uint64_t lost_to_dead_window = 0;
  std::int64_t delta_n = 0;            // n_a - n_b
  double stderr_delta_n = 0.0;
  double n_in_est = 0.0;  // photons per arm before the tap
  double pairs_est = 0.0; // photon pairs before the tap

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

// One slot of the event stream.
struct StreamSample {
  int in_a = 0;  // photons emitted into each arm
  int in_b = 0;
  int signal_a = 0;  // photons continuing towards the switch
  int signal_b = 0;
  int dem_a = 0;  // photons registered by the demon detectors
  int dem_b = 0;
  SwitchState state = SwitchState::Bar;
};

RunResult run(const RunConfig& config);

// First `count` slots of the stream (count <= kBlockSlots).
std::vector<StreamSample> trace(const RunConfig& config, std::size_t count);

// Trims that null a Bar-mode imbalance.
std::array<double, 2> calibrate_balance(const RunConfig& config);

struct PowerMeasurement {
  RunResult bar;
  RunResult cross;
  RunResult ff;
  std::optional<RunResult> pair_calibration;
  double normalizer = 0.0;  // N (singles) or C (pairs) over `slots`
  double normalizer_std_error = 0.0;  // counting error of the normalizer
  DeltaNConstruction delta;
  double value = 0.0;
  double std_error = 0.0;
};

// Bar, cross and feed-forward runs with independent substreams of
// config.seed; power = (dN_FF - dN_cross) / N or / C. Pairs normalization
// adds a fixed-switch run at r^2 = 0.5 that estimates C from coincidences
// between signal and demon detectors.
PowerMeasurement measure_power(const RunConfig& config, Normalization norm);

struct G2Options {
  StreamModel stream = StreamModel::Iid;
  double coherence_slots = 0.0;
  unsigned threads = 1;
};

std::vector<std::pair<int, double>> estimate_g2(const SourceSpec& spec, std::uint64_t slots,
                                                std::uint64_t seed, const std::vector<int>& tau_grid,
                                                G2Options options = {});

struct CoherenceFit {
  double tau_c = 0.0;
  double amplitude = 0.0;
  double residual = 0.0;  // sum of squared residuals
};

// Least-squares fit of g2(tau) = 1 + A exp(-pi (tau/tau_c)^2).
CoherenceFit fit_coherence_time(const std::vector<std::pair<int, double>>& samples);

}  // namespace demonlab
