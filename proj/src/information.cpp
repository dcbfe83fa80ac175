#include "demonlab/information.hpp"

#include <algorithm>
#include <cmath>

#include "demonlab/diagnostics.hpp"

namespace demonlab {
namespace {

double plogp_sum(const std::map<std::array<int, 2>, double>& m) {
  double h = 0.0;
  for (const auto& [k, p] : m)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

}  // namespace

double conditional_click_pmf(int m, int n, ReflectionAmplitude r, CouplingEfficiency eps2) {
  if (m < 0 || n < 0) throw DomainError("photon counts must be non-negative");
  if (m > n) throw DomainError("cannot detect more photons than were emitted");
  const double e = eps2.value();
  const double r2 = r.reflectivity();
  const double t2 = r.transmissivity();
  double sum = 0.0;
  // k photons survive loss, m of them are reflected.
  for (int k = m; k <= n; ++k)
    sum += binomial_coefficient(n, k) * std::pow(e, k) * std::pow(1.0 - e, n - k) *
           binomial_coefficient(k, m) * std::pow(r2, m) * std::pow(t2, k - m);
  return sum;
}

std::string_view to_string(InfoTarget t) { return t == InfoTarget::Incident ? "incident" : "remaining"; }

InfoTarget parse_info_target(std::string_view text) {
  if (text == "incident") return InfoTarget::Incident;
  if (text == "remaining") return InfoTarget::Remaining;
  throw DomainError("unknown information target: " + std::string(text));
}

InfoResult mutual_information_from_joint(std::map<InfoKey, double> joint) {
  double total = 0.0;
  for (const auto& [k, p] : joint) total += p;
  InfoResult res;
  if (!(total > 0.0)) return res;
  std::map<std::array<int, 2>, double> pm;
  std::map<std::array<int, 2>, double> pn;
  for (auto& [k, p] : joint) {
    p /= total;
    pm[{k[0], k[1]}] += p;
    pn[{k[2], k[3]}] += p;
  }
  double info = 0.0;
  for (const auto& [k, p] : joint) {
    if (p <= 0.0) continue;
    const double p_n = pn[{k[2], k[3]}];
    const double p_m = pm[{k[0], k[1]}];
    info += p * std::log2(p / (p_n * p_m));
  }
  res.mutual_info = std::max(0.0, info);
  res.click_entropy = plogp_sum(pm);
  res.photon_entropy = plogp_sum(pn);
  res.joint = std::move(joint);
  return res;
}

InfoResult mutual_information(const SourceSpec& spec_in, ReflectionAmplitude r,
                              CouplingEfficiency eps2, InfoOptions options) {
  SourceSpec spec = spec_in;
  if (!is_thermal(spec.kind)) spec.drop_vacuum = true;
  const auto source = make_source(spec, options.cutoff);
  auto lossy = loss_channel(source, kInA, eps2);
  lossy = loss_channel(lossy, kInB, eps2);

  // Click probability per arm for k photons at the tap: 1 - (1 - r^2)^k.
  const CouplingEfficiency lossless(1.0);
  std::map<InfoKey, double> joint;
  for (const auto& [t, p] : lossy.entries()) {
    const int ka = t[0];
    const int kb = t[1];
    if (options.target == InfoTarget::Incident) {
      const double qa = conditional_click_pmf(0, ka, r, lossless);
      const double qb = conditional_click_pmf(0, kb, r, lossless);
      for (int ca = 0; ca <= 1; ++ca)
        for (int cb = 0; cb <= 1; ++cb) {
          const double w = (ca ? 1.0 - qa : qa) * (cb ? 1.0 - qb : qb);
          if (w > 0.0) joint[{ca, cb, ka, kb}] += p * w;
        }
    } else {
      // Resolve how many photons each tap reflects; the rest remain.
      for (int ma = 0; ma <= ka; ++ma)
        for (int mb = 0; mb <= kb; ++mb) {
          const double w = conditional_click_pmf(ma, ka, r, lossless) *
                           conditional_click_pmf(mb, kb, r, lossless);
          if (w > 0.0) joint[{ma > 0, mb > 0, ka - ma, kb - mb}] += p * w;
        }
    }
  }
  return mutual_information_from_joint(std::move(joint));
}

InfoResult mutual_information_from_outcome(const DemonOutcome& pre_switch, InfoTarget target) {
  const auto& d = pre_switch.dist;
  const auto da = d.mode_index(kDA);
  const auto db = d.mode_index(kDB);
  const auto ja = d.mode_index(kDemA);
  const auto jb = d.mode_index(kDemB);
  std::map<InfoKey, double> joint;
  for (const auto& [t, p] : d.entries()) {
    const int na = target == InfoTarget::Incident ? t[da] + t[ja] : t[da];
    const int nb = target == InfoTarget::Incident ? t[db] + t[jb] : t[db];
    joint[{t[ja] > 0, t[jb] > 0, na, nb}] += p;
  }
  return mutual_information_from_joint(std::move(joint));
}

}  // namespace demonlab
