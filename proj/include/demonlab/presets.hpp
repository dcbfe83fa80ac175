#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "demonlab/sweep.hpp"

namespace demonlab {

// Fitted experimental parameters shared by every preset.
inline constexpr double kPresetNbar = 0.05;
inline constexpr double kPresetEps2 = 0.14;
inline constexpr double kPresetV2 = 0.87;
// Squeezing used when a preset is simulated; s^2 = 0.01 keeps multi-pair
// emission negligible.
inline constexpr double kPresetSqueezing = 0.1;

// fig4a  power per photon, all four sources
// fig4b  uncorrelated per photon, correlated and anticorrelated per pair
// fig5a  fig4a with mutual information
// fig5b  fig4b plus split thermal, with mutual information
// fig5b-ideal  fig5b at unit coupling efficiency
// "<preset>-<source>" keeps only that source's series, e.g. fig4b-correlated.
SweepConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace demonlab
