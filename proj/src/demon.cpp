#include "demonlab/demon.hpp"

#include <cmath>
#include <utility>

#include "demonlab/diagnostics.hpp"

namespace demonlab {

std::string_view to_string(SwitchState s) { return s == SwitchState::Bar ? "bar" : "cross"; }

Policy Policy::all_bar() { return Policy{}; }

Policy Policy::all_cross() {
  Policy p;
  for (int i = 0; i < 4; ++i) p.set(ClickPattern::from_index(i), SwitchState::Cross);
  return p;
}

Policy Policy::cross_on(ClickPattern pattern) {
  Policy p;
  p.set(pattern, SwitchState::Cross);
  return p;
}

Policy Policy::mirrored() const {
  Policy p = *this;
  p.set({true, false}, (*this)({false, true}));
  p.set({false, true}, (*this)({true, false}));
  return p;
}

Policy canonical_policy(SourceKind kind) {
  if (kind == SourceKind::Correlated) return Policy::cross_on({true, false});
  return Policy::cross_on({false, true});
}

void DemonDetectors::validate() const {
  if (!(eta_a >= 0.0 && eta_a <= 1.0 && eta_b >= 0.0 && eta_b <= 1.0))
    throw DomainError("demon detector efficiencies must lie in [0, 1]");
}

DemonOutcome propagate(const JointOccupationDistribution& source, ReflectionAmplitude r,
                       CouplingEfficiency eps2, const Policy& policy, DemonDetectors detectors) {
  detectors.validate();
  if (source.mode_count() != 2 || source.modes()[0] != kInA || source.modes()[1] != kInB)
    throw DomainError("propagate expects a source over (In_A, In_B)");

  auto d = loss_channel(source, kInA, eps2, kLossA);
  d = loss_channel(d, kInB, eps2, kLossB);
  d = beamsplitter_split(d, kInA, r, kDemA);
  d = beamsplitter_split(d, kInB, r, kDemB);

  const auto ia = d.mode_index(kInA);
  const auto ib = d.mode_index(kInB);
  const auto ja = d.mode_index(kDemA);
  const auto jb = d.mode_index(kDemB);
  const auto la = d.mode_index(kLossA);
  const auto lb = d.mode_index(kLossB);

  JointOccupationDistribution out({kDA, kDB, kDemA, kDemB, kLossA, kLossB}, d.cutoff());
  for (const auto& [t, p] : d.entries()) {
    // Click probability of each demon detector given its photon number.
    const double ca = 1.0 - std::pow(1.0 - detectors.eta_a, t[ja]);
    const double cb = 1.0 - std::pow(1.0 - detectors.eta_b, t[jb]);
    double p_cross = 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto c = ClickPattern::from_index(i);
      const double w = (c.dem_a ? ca : 1.0 - ca) * (c.dem_b ? cb : 1.0 - cb);
      if (policy(c) == SwitchState::Cross) p_cross += w;
    }
    Occupation bar{t[ia], t[ib], t[ja], t[jb], t[la], t[lb]};
    Occupation cross{t[ib], t[ia], t[ja], t[jb], t[la], t[lb]};
    if (p_cross < 1.0) out.accumulate(bar, p * (1.0 - p_cross));
    if (p_cross > 0.0) out.accumulate(cross, p * p_cross);
  }
  out.add_lost_mass(d.lost_mass());
  return DemonOutcome{std::move(out)};
}

DetectorProbabilities detector_probs(const DemonOutcome& outcome) {
  const auto& d = outcome.dist;
  const auto ia = d.mode_index(kDA);
  const auto ib = d.mode_index(kDB);
  DetectorProbabilities r;
  for (const auto& [t, p] : d.entries()) {
    if (t[ia] > 0) r.p_a += p;
    if (t[ib] > 0) r.p_b += p;
  }
  return r;
}

double delta_n(double p_a, double p_b, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("repetition count must be non-negative");
  return gamma * (p_a - p_b);
}

}  // namespace demonlab
