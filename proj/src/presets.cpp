#include "demonlab/presets.hpp"

#include <algorithm>

#include "demonlab/diagnostics.hpp"

namespace demonlab {
namespace {

Series thermal(SourceKind kind, double eps2) {
  Series s;
  s.spec = kind == SourceKind::Uncorrelated ? SourceSpec::uncorrelated(kPresetNbar)
                                            : SourceSpec::split_thermal(kPresetNbar);
  s.norm = Normalization::Singles;
  s.eps2 = CouplingEfficiency(eps2);
  return s;
}

Series pair(SourceKind kind, Normalization norm, double eps2) {
  Series s;
  s.spec = kind == SourceKind::Correlated ? SourceSpec::correlated(kPresetSqueezing)
                                          : SourceSpec::anti_correlated(kPresetSqueezing, kPresetV2);
  s.norm = norm;
  s.eps2 = CouplingEfficiency(eps2);
  return s;
}

SweepConfig base_preset(std::string_view name) {
  SweepConfig c;
  c.r2_grid = default_r2_grid();
  const auto singles = Normalization::Singles;
  const auto pairs = Normalization::Pairs;
  if (name == "fig4a" || name == "fig5a") {
    c.series = {thermal(SourceKind::Uncorrelated, kPresetEps2), thermal(SourceKind::SplitThermal, kPresetEps2),
                pair(SourceKind::Correlated, singles, kPresetEps2),
                pair(SourceKind::AntiCorrelated, singles, kPresetEps2)};
    c.mutual_info = name == "fig5a";
    return c;
  }
  if (name == "fig4b") {
    c.series = {thermal(SourceKind::Uncorrelated, kPresetEps2), pair(SourceKind::Correlated, pairs, kPresetEps2),
                pair(SourceKind::AntiCorrelated, pairs, kPresetEps2)};
    return c;
  }
  if (name == "fig5b" || name == "fig5b-ideal") {
    const double eps2 = name == "fig5b" ? kPresetEps2 : 1.0;
    c.series = {thermal(SourceKind::Uncorrelated, eps2), thermal(SourceKind::SplitThermal, eps2),
                pair(SourceKind::Correlated, pairs, eps2), pair(SourceKind::AntiCorrelated, pairs, eps2)};
    c.mutual_info = true;
    return c;
  }
  throw DomainError("unknown preset: " + std::string(name));
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig4a", "fig4b", "fig5a", "fig5b", "fig5b-ideal"}; }

SweepConfig preset(std::string_view name) {
  for (const auto& base : preset_names()) {
    if (name == base) return base_preset(name);
  }
  // Longest base name first so "fig5b-ideal-correlated" is not read as fig5b.
  auto names = preset_names();
  std::sort(names.begin(), names.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& base : names) {
    if (name.size() > base.size() + 1 && name.substr(0, base.size()) == base && name[base.size()] == '-') {
      const auto kind = parse_source_kind(name.substr(base.size() + 1));
      auto c = base_preset(base);
      std::erase_if(c.series, [&](const Series& s) { return s.spec.kind != kind; });
      if (c.series.empty())
        throw DomainError("preset " + base + " has no " + std::string(to_string(kind)) + " series");
      return c;
    }
  }
  throw DomainError("unknown preset: " + std::string(name));
}

}  // namespace demonlab
