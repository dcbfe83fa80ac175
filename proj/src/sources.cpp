#include "demonlab/sources.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "demonlab/diagnostics.hpp"

namespace demonlab {
namespace {

void warn_if_bright(const MeanPhotonNumber& nbar) {
  if (nbar.outside_low_photon_regime()) {
    std::ostringstream os;
    os << "nbar = " << nbar.value() << " exceeds " << kLowPhotonLimit
       << "; low-photon approximations may not hold";
    warn(os.str());
  }
}

JointOccupationDistribution uncorrelated_state(MeanPhotonNumber nbar, int cutoff) {
  JointOccupationDistribution d({kInA, kInB}, cutoff);
  double kept = 0.0;
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; a + b <= cutoff; ++b) {
      const double p = thermal_pmf(nbar, a) * thermal_pmf(nbar, b);
      d.accumulate({a, b}, p);
      kept += p;
    }
  d.add_lost_mass(std::max(0.0, 1.0 - kept));
  return d;
}

JointOccupationDistribution split_state(MeanPhotonNumber nbar, int cutoff) {
  const MeanPhotonNumber parent(2.0 * nbar.value());
  const auto half = ReflectionAmplitude::from_reflectivity(0.5);
  JointOccupationDistribution d({kInA, kInB}, cutoff);
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; a + b <= cutoff; ++b) d.accumulate({a, b}, joint_detection_pmf(parent, half, a, b));
  const double x = parent.value();
  d.add_lost_mass(std::pow(x / (1.0 + x), cutoff + 1));
  return d;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Uncorrelated: return "uncorrelated";
    case SourceKind::SplitThermal: return "split";
    case SourceKind::Correlated: return "correlated";
    case SourceKind::AntiCorrelated: return "anticorrelated";
  }
  return "?";
}

SourceKind parse_source_kind(std::string_view text) {
  for (auto k : {SourceKind::Uncorrelated, SourceKind::SplitThermal, SourceKind::Correlated,
                 SourceKind::AntiCorrelated})
    if (text == to_string(k)) return k;
  throw DomainError("unknown source kind: " + std::string(text));
}

bool is_thermal(SourceKind kind) noexcept {
  return kind == SourceKind::Uncorrelated || kind == SourceKind::SplitThermal;
}

SourceSpec SourceSpec::uncorrelated(double nbar) {
  SourceSpec s;
  s.kind = SourceKind::Uncorrelated;
  s.nbar = MeanPhotonNumber(nbar);
  return s;
}

SourceSpec SourceSpec::split_thermal(double nbar) {
  SourceSpec s;
  s.kind = SourceKind::SplitThermal;
  s.nbar = MeanPhotonNumber(nbar);
  return s;
}

SourceSpec SourceSpec::correlated(double s) {
  SourceSpec spec;
  spec.kind = SourceKind::Correlated;
  spec.s = SqueezingParameter(s);
  return spec;
}

SourceSpec SourceSpec::anti_correlated(double s, double v2) {
  SourceSpec spec;
  spec.kind = SourceKind::AntiCorrelated;
  spec.s = SqueezingParameter(s);
  spec.v2 = Visibility(v2);
  return spec;
}

void SourceSpec::validate() const {
  const auto name = std::string(to_string(kind));
  if (is_thermal(kind)) {
    if (!nbar) throw DomainError(name + " source requires nbar");
    if (s) throw DomainError(name + " source does not take a squeezing parameter");
    if (drop_vacuum) throw DomainError(name + " source does not support drop_vacuum");
  } else {
    if (!s) throw DomainError(name + " source requires a squeezing parameter s");
    if (nbar) throw DomainError(name + " source is parametrized by s, not nbar");
  }
  if (kind == SourceKind::AntiCorrelated) {
    if (!v2) throw DomainError("anticorrelated source requires v2");
  } else {
    if (v2) throw DomainError(name + " source does not take v2");
    if (include_single_photon_term)
      throw DomainError("the single-photon term applies only to the anticorrelated source");
  }
}

JointOccupationDistribution make_source(const SourceSpec& spec, int cutoff) {
  spec.validate();
  switch (spec.kind) {
    case SourceKind::Uncorrelated:
      warn_if_bright(*spec.nbar);
      return uncorrelated_state(*spec.nbar, cutoff);
    case SourceKind::SplitThermal:
      warn_if_bright(*spec.nbar);
      return split_state(*spec.nbar, cutoff);
    case SourceKind::Correlated:
    case SourceKind::AntiCorrelated:
      break;
  }
  if (cutoff < 2) throw DomainError("pair sources need cutoff >= 2");
  const double s2 = spec.s->value() * spec.s->value();
  JointOccupationDistribution raw({kInA, kInB}, cutoff);
  raw.accumulate({0, 0}, 1.0);
  if (spec.kind == SourceKind::Correlated) {
    raw.accumulate({1, 1}, s2);
  } else {
    const double v2 = spec.v2->value();
    raw.accumulate({2, 0}, s2 * v2 / 2.0);
    raw.accumulate({0, 2}, s2 * v2 / 2.0);
    raw.accumulate({1, 1}, s2 * (1.0 - v2));
    if (spec.include_single_photon_term) {
      raw.accumulate({1, 0}, s2 / 2.0);
      raw.accumulate({0, 1}, s2 / 2.0);
    }
  }
  const double z = raw.total_mass();
  JointOccupationDistribution d({kInA, kInB}, cutoff);
  for (const auto& [t, p] : raw.entries()) d.accumulate(t, p / z);
  if (spec.drop_vacuum) return d.post_selected_without({0, 0});
  return d;
}

double marginal_g2_zero(const JointOccupationDistribution& dist, std::string_view mode) {
  const auto i = dist.mode_index(mode);
  double n1 = 0.0;
  double n2 = 0.0;
  for (const auto& [t, p] : dist.entries()) {
    n1 += p * t[i];
    n2 += p * t[i] * (t[i] - 1);
  }
  if (!(n1 > 0.0)) throw ComputationError("g2(0) undefined for a mode with <n> = 0");
  return n2 / (n1 * n1);
}

double marginal_g2_zero(const SourceSpec& spec) {
  spec.validate();
  int cutoff = 4;
  if (is_thermal(spec.kind)) {
    // Tail of the (possibly doubled) Bose-Einstein parent: q^(cutoff+1) < 1e-12.
    const double x = (spec.kind == SourceKind::SplitThermal ? 2.0 : 1.0) * spec.nbar->value();
    const double q = x / (1.0 + x);
    cutoff = q > 0.0 ? std::max(4, static_cast<int>(std::ceil(std::log(1e-12) / std::log(q)))) : 4;
    if (cutoff > 400) throw DomainError("nbar too large for a truncated g2(0) evaluation");
  }
  const auto dist = make_source(spec, cutoff);
  if (dist.lost_mass() >= 1e-9)
    throw ComputationError("truncation too coarse for g2(0): lost mass " +
                           std::to_string(dist.lost_mass()));
  return marginal_g2_zero(dist, kInA);
}

}  // namespace demonlab
