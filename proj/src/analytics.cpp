#include "demonlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "demonlab/diagnostics.hpp"

namespace demonlab {

std::string_view to_string(Normalization n) { return n == Normalization::Singles ? "singles" : "pairs"; }

Normalization parse_normalization(std::string_view text) {
  if (text == "singles") return Normalization::Singles;
  if (text == "pairs") return Normalization::Pairs;
  throw DomainError("unknown normalization: " + std::string(text));
}

double closed_form_power(SourceKind kind, Normalization norm, const PowerParams& params,
                         ReflectionAmplitude r) {
  if (norm == Normalization::Pairs && is_thermal(kind))
    throw DomainError("pair normalization is undefined for " + std::string(to_string(kind)) +
                      " light");
  const double profile = r.reflectivity() * r.transmissivity();
  const double eps2 = params.eps2.value();
  switch (kind) {
    case SourceKind::Uncorrelated: {
      if (!params.nbar) throw DomainError("uncorrelated power requires nbar");
      const double n = params.nbar->value();
      if (n >= 1.0) throw DomainError("uncorrelated power formula diverges for nbar >= 1");
      if (params.nbar->outside_low_photon_regime()) {
        std::ostringstream os;
        os << "nbar = " << n << " is outside the low-photon regime of the power formula";
        warn(os.str());
      }
      return 2.0 * n / ((1.0 - n) * (1.0 - n)) * profile;
    }
    case SourceKind::SplitThermal:
      return 0.0;
    case SourceKind::Correlated:
      return (norm == Normalization::Singles ? eps2 : 1.0) * 2.0 * profile;
    case SourceKind::AntiCorrelated: {
      const double vis = 2.0 * params.v2.value() - 1.0;
      return (norm == Normalization::Singles ? eps2 : 1.0) * 2.0 * vis * profile;
    }
  }
  return 0.0;
}

PowerCurve closed_form_curve(SourceKind kind, Normalization norm, const PowerParams& params,
                             const std::vector<double>& r2_grid) {
  PowerCurve c{kind, norm, params, {}};
  c.samples.reserve(r2_grid.size());
  for (double r2 : r2_grid)
    c.samples.emplace_back(r2, closed_form_power(kind, norm, params,
                                                 ReflectionAmplitude::from_reflectivity(r2)));
  return c;
}

double construct_delta_n(double, double cross, double ff) { return ff - cross; }

DeltaNConstruction construct_delta_n(Measurement bar, Measurement cross, Measurement ff) {
  DeltaNConstruction out;
  out.value = ff.value - cross.value;
  out.std_error = std::hypot(ff.std_error, cross.std_error);
  out.bar_imbalanced = std::abs(bar.value) > 3.0 * bar.std_error;
  return out;
}

PeakPower peak_power(SourceKind kind, Normalization norm, const PowerParams& params) {
  auto f = [&](double r2) {
    return closed_form_power(kind, norm, params, ReflectionAmplitude::from_reflectivity(r2));
  };
  // Coarse scan for the bracket, then golden-section refinement.
  constexpr int kScan = 200;
  int best = 0;
  double best_v = f(0.0);
  double worst_v = best_v;
  for (int i = 1; i <= kScan; ++i) {
    const double v = f(static_cast<double>(i) / kScan);
    worst_v = std::min(worst_v, v);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best_v == 0.0 && worst_v == 0.0) return {std::nullopt, 0.0};
  double a = std::max(0, best - 1) / static_cast<double>(kScan);
  double b = std::min(kScan, best + 1) / static_cast<double>(kScan);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

double enhancement_ratio(const PowerParams& correlated, const PowerParams& uncorrelated) {
  const auto num = peak_power(SourceKind::Correlated, Normalization::Pairs, correlated);
  const auto den = peak_power(SourceKind::Uncorrelated, Normalization::Singles, uncorrelated);
  if (!(den.value > 0.0)) throw ComputationError("uncorrelated peak power is zero");
  return num.value / den.value;
}

double pipeline_power(const SourceSpec& spec, Normalization norm, ReflectionAmplitude r,
                      CouplingEfficiency eps2, int cutoff) {
  if (norm == Normalization::Pairs && is_thermal(spec.kind))
    throw DomainError("pair normalization is undefined for thermal light");
  const auto source = make_source(spec, cutoff);
  const auto outcome = propagate(source, r, eps2, canonical_policy(spec.kind));
  const auto probs = detector_probs(outcome);
  const double e = eps2.value();
  double denom = 0.0;
  if (norm == Normalization::Singles) {
    denom = e * 0.5 * (source.mean(kInA) + source.mean(kInB));
  } else {
    for (const auto& [t, p] : source.entries()) {
      const int n = t[0] + t[1];
      denom += p * binomial_coefficient(n, 2) * e * e;
    }
  }
  if (!(denom > 0.0)) throw ComputationError("normalization rate is zero");
  return (probs.p_a - probs.p_b) / denom;
}

}  // namespace demonlab
