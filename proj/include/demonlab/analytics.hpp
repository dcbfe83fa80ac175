#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "demonlab/demon.hpp"
#include "demonlab/fock.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

// Per incident photon (Singles) or per incident photon pair (Pairs).
enum class Normalization { Singles, Pairs };

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view text);

struct PowerParams {
  std::optional<MeanPhotonNumber> nbar;  // Uncorrelated
  CouplingEfficiency eps2{1.0};          // pair kinds
  Visibility v2{1.0};                    // AntiCorrelated
};

// Photon imbalance per incident photon or pair for the four baths:
//   Uncorrelated/Singles    2 nbar/(1-nbar)^2 R^2 (1-R^2)
//   SplitThermal            0
//   Correlated/Singles      2 eps^2 R^2 (1-R^2)     Correlated/Pairs      2 R^2 (1-R^2)
//   AntiCorrelated/Singles  2 eps^2 (2v^2-1) R^2 (1-R^2)
//   AntiCorrelated/Pairs    2 (2v^2-1) R^2 (1-R^2)
double closed_form_power(SourceKind kind, Normalization norm, const PowerParams& params,
                         ReflectionAmplitude r);

using PowerFunction =
    std::function<double(SourceKind, Normalization, const PowerParams&, ReflectionAmplitude)>;

struct PowerCurve {
  SourceKind kind = SourceKind::Uncorrelated;
  Normalization norm = Normalization::Singles;
  PowerParams params;
  std::vector<std::pair<double, double>> samples;  // (r2, value)
};

PowerCurve closed_form_curve(SourceKind kind, Normalization norm, const PowerParams& params,
                             const std::vector<double>& r2_grid);

struct Measurement {
  double value = 0.0;
  double std_error = 0.0;
};

struct DeltaNConstruction {
  double value = 0.0;
  double std_error = 0.0;
  // |bar| beyond 3 standard errors: the arms were not balanced.
  bool bar_imbalanced = false;
};

double construct_delta_n(double bar, double cross, double ff);
DeltaNConstruction construct_delta_n(Measurement bar, Measurement cross, Measurement ff);

struct PeakPower {
  std::optional<double> r2_opt;  // empty for an identically zero curve
  double value = 0.0;
};

PeakPower peak_power(SourceKind kind, Normalization norm, const PowerParams& params);

// Peak correlated power per pair over peak uncorrelated power per photon.
double enhancement_ratio(const PowerParams& correlated, const PowerParams& uncorrelated);

// Same quantity as closed_form_power but from the exact state pipeline:
// (P_A - P_B) divided by the mean photons per arm surviving loss (Singles) or
// by the expected number of surviving photon pairs (Pairs).
double pipeline_power(const SourceSpec& spec, Normalization norm, ReflectionAmplitude r,
                      CouplingEfficiency eps2, int cutoff = kDefaultCutoff);

}  // namespace demonlab
