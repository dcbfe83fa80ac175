#include "demonlab/oracle.hpp"

#include <cmath>
#include <functional>
#include <set>

#include "demonlab/diagnostics.hpp"

namespace demonlab::oracle {
namespace {

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

double bose_einstein(double nbar, int n) { return std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1); }

enum Fate { kLost, kTransmitted, kReflectedSeen, kReflectedMissed };

struct PathState {
  int signal[2] = {0, 0};
  int dem[2] = {0, 0};
  int seen[2] = {0, 0};
  int lost[2] = {0, 0};
};

}  // namespace

std::vector<WeightedTuple> source_weights(const SourceSpec& spec, const Options& options) {
  spec.validate();
  std::vector<WeightedTuple> out;
  const int cutoff = options.cutoff;
  switch (spec.kind) {
    case SourceKind::Uncorrelated: {
      const double nbar = spec.nbar->value();
      for (int a = 0; a <= cutoff; ++a)
        for (int b = 0; a + b <= cutoff; ++b)
          out.push_back({a, b, bose_einstein(nbar, a) * bose_einstein(nbar, b)});
      return out;
    }
    case SourceKind::SplitThermal: {
      const double parent = 2.0 * spec.nbar->value();
      for (int a = 0; a <= cutoff; ++a)
        for (int b = 0; a + b <= cutoff; ++b)
          out.push_back({a, b, bose_einstein(parent, a + b) * choose(a + b, a) * std::pow(0.5, a + b)});
      return out;
    }
    case SourceKind::Correlated:
    case SourceKind::AntiCorrelated:
      break;
  }
  const double s2 = spec.s->value() * spec.s->value();
  std::vector<WeightedTuple> raw;
  raw.push_back({0, 0, 1.0});
  if (spec.kind == SourceKind::Correlated) {
    raw.push_back({1, 1, s2});
  } else {
    const double v2 = spec.v2->value();
    raw.push_back({2, 0, s2 * v2 / 2.0});
    raw.push_back({0, 2, s2 * v2 / 2.0});
    raw.push_back({1, 1, s2 * (1.0 - v2)});
    if (spec.include_single_photon_term) {
      raw.push_back({1, 0, s2 / 2.0});
      raw.push_back({0, 1, s2 / 2.0});
    }
  }
  double scale;
  if (options.unnormalized_pair_weights) {
    const double d = 1.0 - s2 / 2.0;
    scale = 1.0 / (d * d);
  } else {
    double z = 0.0;
    for (const auto& w : raw) z += w.weight;
    scale = 1.0 / z;
  }
  double kept = 0.0;
  for (auto& w : raw) {
    w.weight *= scale;
    if (spec.drop_vacuum && w.n_a == 0 && w.n_b == 0) continue;
    if (w.n_a + w.n_b > cutoff) throw DomainError("cutoff below the source's photon number");
    kept += w.weight;
    out.push_back(w);
  }
  if (spec.drop_vacuum)
    for (auto& w : out) w.weight /= kept;
  return out;
}

Report enumerate(const SourceSpec& spec, ReflectionAmplitude r, CouplingEfficiency eps2,
                 const Policy& policy, const Options& options, DemonDetectors detectors) {
  detectors.validate();
  const auto weights = source_weights(spec, options);
  Report rep;
  rep.cutoff = options.cutoff;

  const double e = eps2.value();
  const double r2 = r.reflectivity();
  const double t2 = 1.0 - r2;
  const double eta[2] = {detectors.eta_a, detectors.eta_b};
  const int fates = (eta[0] < 1.0 || eta[1] < 1.0) ? 4 : 3;

  std::uint64_t planned = 0;
  for (const auto& w : weights) {
    planned += static_cast<std::uint64_t>(std::pow(fates, w.n_a + w.n_b));
    if (planned > options.max_paths)
      throw ComputationError("oracle enumeration exceeds the path budget");
  }

  double total = 0.0;
  for (const auto& w : weights) {
    total += w.weight;
    const int n = w.n_a + w.n_b;
    // Photon i belongs to arm 0 for i < n_a.
    std::function<void(int, double, PathState)> walk = [&](int i, double p, PathState st) {
      if (p == 0.0) return;
      if (i == n) {
        ++rep.paths;
        const int lim = options.max_photons_per_port;
        if (lim >= 0)
          for (int arm = 0; arm < 2; ++arm)
            if (st.signal[arm] > lim || st.dem[arm] > lim) return;
        const ClickPattern clicks{st.seen[0] > 0, st.seen[1] > 0};
        const bool cross = policy(clicks) == SwitchState::Cross;
        const Key key{cross ? st.signal[1] : st.signal[0], cross ? st.signal[0] : st.signal[1],
                      st.dem[0], st.dem[1], st.lost[0], st.lost[1]};
        rep.table[key] += p;
        return;
      }
      const int arm = i < w.n_a ? 0 : 1;
      for (int f = 0; f < fates; ++f) {
        PathState next = st;
        double q = 0.0;
        switch (f) {
          case kLost:
            q = 1.0 - e;
            ++next.lost[arm];
            break;
          case kTransmitted:
            q = e * t2;
            ++next.signal[arm];
            break;
          case kReflectedSeen:
            q = e * r2 * (fates == 4 ? eta[arm] : 1.0);
            ++next.dem[arm];
            ++next.seen[arm];
            break;
          case kReflectedMissed:
            q = e * r2 * (1.0 - eta[arm]);
            ++next.dem[arm];
            break;
        }
        walk(i + 1, p * q, next);
      }
    };
    walk(0, w.weight, PathState{});
  }
  rep.truncation_bound = std::max(0.0, 1.0 - total);
  if (options.unnormalized_pair_weights || options.max_photons_per_port >= 0) rep.truncation_bound = 0.0;

  for (const auto& [k, p] : rep.table) {
    if (k[0] > 0) rep.p_a += p;
    if (k[1] > 0) rep.p_b += p;
  }
  rep.delta = rep.p_a - rep.p_b;
  return rep;
}

Comparison compare(Report& report, const DemonOutcome& candidate, double tol) {
  const auto& d = candidate.dist;
  if (d.modes() != report.modes) throw DomainError("mode labels differ between oracle and candidate");
  if (d.cutoff() != report.cutoff) throw DomainError("cutoff differs between oracle and candidate");
  std::set<Key> keys;
  for (const auto& [k, p] : report.table) keys.insert(k);
  for (const auto& [t, p] : d.entries()) keys.insert({t[0], t[1], t[2], t[3], t[4], t[5]});
  double worst = 0.0;
  for (const auto& k : keys) {
    const auto it = report.table.find(k);
    const double a = it == report.table.end() ? 0.0 : it->second;
    const double b = d.probability(Occupation(k.begin(), k.end()));
    worst = std::max(worst, std::abs(a - b));
  }
  report.max_abs_discrepancy = worst;
  return {worst <= tol, worst};
}

double mutual_information(const SourceSpec& spec_in, ReflectionAmplitude r, CouplingEfficiency eps2,
                          InfoTarget target, int cutoff) {
  SourceSpec spec = spec_in;
  if (!is_thermal(spec.kind)) spec.drop_vacuum = true;
  Options opt;
  opt.cutoff = cutoff;
  const auto rep = enumerate(spec, r, eps2, Policy::all_bar(), opt);

  // p(c, n) with c the binary click pair and n the scored photon numbers.
  std::map<std::array<int, 4>, double> joint;
  double total = 0.0;
  for (const auto& [k, p] : rep.table) {
    const int na = target == InfoTarget::Incident ? k[0] + k[2] : k[0];
    const int nb = target == InfoTarget::Incident ? k[1] + k[3] : k[1];
    joint[{k[2] > 0, k[3] > 0, na, nb}] += p;
    total += p;
  }
  std::map<std::array<int, 2>, double> pc;
  std::map<std::array<int, 2>, double> pn;
  for (const auto& [k, p] : joint) {
    pc[{k[0], k[1]}] += p / total;
    pn[{k[2], k[3]}] += p / total;
  }
  double info = 0.0;
  for (const auto& [k, p] : joint) {
    const double q = p / total;
    if (q > 0.0) info += q * std::log2(q / (pc[{k[0], k[1]}] * pn[{k[2], k[3]}]));
  }
  return info;
}

}  // namespace demonlab::oracle
