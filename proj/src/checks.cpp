#include "demonlab/checks.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "demonlab/demon.hpp"
#include "demonlab/information.hpp"
#include "demonlab/montecarlo.hpp"
#include "demonlab/oracle.hpp"
#include "demonlab/rng.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

bool CheckSummary::all_passed() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

const CheckResult* CheckSummary::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

constexpr double kNbar = 0.05;
constexpr double kSqueezing = 0.1;
constexpr double kV2 = 0.87;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::vector<SourceSpec> reference_sources() {
  return {SourceSpec::uncorrelated(kNbar), SourceSpec::split_thermal(kNbar), SourceSpec::correlated(kSqueezing),
          SourceSpec::anti_correlated(kSqueezing, kV2)};
}

std::vector<double> grid(double step) {
  std::vector<double> g;
  for (int i = 0; i * step <= 0.5 + 1e-12; ++i) g.push_back(i * step);
  return g;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Worst |a - b| over a parameter scan, with the location of the worst case.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double d, const std::string& at) {
    if (!(d <= value)) {  // NaN counts as worst
      value = d;
      where = at;
    }
  }
  std::string describe() const { return "max deviation " + fmt(value) + (where.empty() ? "" : " at " + where); }
};

std::string at(double r2, double eps2) { return "r2=" + fmt(r2) + " eps2=" + fmt(eps2); }

Verdict oracle_vs_propagate(const SourceSpec& spec) {
  Worst w;
  for (double r2 : grid(0.1))
    for (double e : {1.0, 0.14}) {
      const auto r = ReflectionAmplitude::from_reflectivity(r2);
      const CouplingEfficiency eps2(e);
      const auto policy = canonical_policy(spec.kind);
      auto rep = oracle::enumerate(spec, r, eps2, policy);
      const auto cmp = oracle::compare(rep, propagate(make_source(spec), r, eps2, policy));
      w.update(cmp.max_discrepancy, at(r2, e));
    }
  return {w.value <= 1e-12, w.describe()};
}

// Appendix-style symbolic imbalances: thermal light to first order in each
// port, pair light with the unnormalized truncated state.
Verdict oracle_vs_symbolic(const SourceSpec& spec) {
  Worst w;
  for (double r2 : grid(0.025)) {
    const auto r = ReflectionAmplitude::from_reflectivity(r2);
    const double t2 = 1.0 - r2;
    for (double e : {1.0, 0.14}) {
      oracle::Options opt;
      double expected = 0.0;
      double eps2 = e;
      switch (spec.kind) {
        case SourceKind::Uncorrelated: {
          eps2 = 1.0;  // nbar is the mean at the detectors
          opt.max_photons_per_port = 1;
          const MeanPhotonNumber n(*spec.nbar);
          auto p = [&](int m, int k) { return joint_detection_pmf(n, r, m, k); };
          expected = 2.0 * (p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0));
          break;
        }
        case SourceKind::SplitThermal:
          eps2 = 1.0;
          expected = 0.0;
          break;
        case SourceKind::Correlated:
        case SourceKind::AntiCorrelated: {
          opt.unnormalized_pair_weights = true;
          const double s2 = spec.s->value() * spec.s->value();
          const double d = 1.0 - s2 / 2.0;
          expected = s2 / (d * d) * 2.0 * e * e * r2 * t2;
          if (spec.kind == SourceKind::AntiCorrelated) expected *= 2.0 * spec.v2->value() - 1.0;
          break;
        }
      }
      const auto rep = oracle::enumerate(spec, r, CouplingEfficiency(eps2), canonical_policy(spec.kind), opt);
      w.update(std::abs(rep.delta - expected), at(r2, eps2));
    }
  }
  return {w.value <= 1e-10, w.describe()};
}

Verdict single_photon_term_invariance() {
  Worst w;
  auto with = SourceSpec::anti_correlated(kSqueezing, kV2);
  with.include_single_photon_term = true;
  const auto without = SourceSpec::anti_correlated(kSqueezing, kV2);
  oracle::Options opt;
  opt.unnormalized_pair_weights = true;
  for (double r2 : grid(0.1))
    for (double e : {1.0, 0.14}) {
      const auto r = ReflectionAmplitude::from_reflectivity(r2);
      const auto policy = canonical_policy(SourceKind::AntiCorrelated);
      const double a = oracle::enumerate(with, r, CouplingEfficiency(e), policy, opt).delta;
      const double b = oracle::enumerate(without, r, CouplingEfficiency(e), policy, opt).delta;
      w.update(std::abs(a - b), at(r2, e));
    }
  return {w.value <= 1e-12, w.describe()};
}

// Power per photon or per pair from the oracle's own table and weights.
double oracle_power(const SourceSpec& spec, Normalization norm, ReflectionAmplitude r, CouplingEfficiency eps2) {
  oracle::Options opt;
  const auto rep = oracle::enumerate(spec, r, eps2, canonical_policy(spec.kind), opt);
  double denom = 0.0;
  const double e = eps2.value();
  for (const auto& w : oracle::source_weights(spec, opt)) {
    const int n = w.n_a + w.n_b;
    denom += norm == Normalization::Singles ? w.weight * e * 0.5 * n : w.weight * e * e * n * (n - 1) / 2.0;
  }
  return rep.delta / denom;
}

Verdict closed_form_vs_oracle(const SourceSpec& spec_in, const PowerFunction& closed_form) {
  SourceSpec spec = spec_in;
  if (!is_thermal(spec.kind)) spec.drop_vacuum = true;
  Worst w;
  bool pass = true;
  const std::vector<Normalization> norms =
      is_thermal(spec.kind) ? std::vector{Normalization::Singles}
                            : std::vector{Normalization::Singles, Normalization::Pairs};
  for (double r2 : grid(0.1))
    for (double e : {1.0, 0.14})
      for (auto norm : norms) {
        const auto r = ReflectionAmplitude::from_reflectivity(r2);
        PowerParams params;
        params.nbar = spec.nbar;
        params.eps2 = CouplingEfficiency(e);
        if (spec.v2) params.v2 = *spec.v2;
        const double eps2 = is_thermal(spec.kind) ? 1.0 : e;
        const double cf = closed_form(spec.kind, norm, params, r);
        const double ref = oracle_power(spec, norm, r, CouplingEfficiency(eps2));
        const double d = std::abs(cf - ref);
        // Eq. 1 only matches the thermal result to first order in nbar.
        const double tol = spec.kind == SourceKind::Uncorrelated ? 5.0 * kNbar * kNbar : 1e-10;
        if (!(d <= tol)) pass = false;
        w.update(d, at(r2, eps2) + " " + std::string(to_string(norm)));
      }
  return {pass, w.describe()};
}

Verdict closed_form_vs_pipeline(const SourceSpec& spec, const PowerFunction& closed_form) {
  Worst w;
  bool pass = true;
  const std::vector<Normalization> norms =
      is_thermal(spec.kind) ? std::vector{Normalization::Singles}
                            : std::vector{Normalization::Singles, Normalization::Pairs};
  for (double r2 : grid(0.025))
    for (double e : {1.0, 0.14})
      for (auto norm : norms) {
        const auto r = ReflectionAmplitude::from_reflectivity(r2);
        PowerParams params;
        params.nbar = spec.nbar;
        params.eps2 = CouplingEfficiency(e);
        if (spec.v2) params.v2 = *spec.v2;
        const double eps2 = is_thermal(spec.kind) ? 1.0 : e;
        const double cf = closed_form(spec.kind, norm, params, r);
        const double ref = pipeline_power(spec, norm, r, CouplingEfficiency(eps2));
        const double d = std::abs(cf - ref);
        const double tol = spec.kind == SourceKind::Uncorrelated ? 5.0 * kNbar * kNbar : 1e-10;
        if (!(d <= tol)) pass = false;
        w.update(d, at(r2, eps2) + " " + std::string(to_string(norm)));
      }
  return {pass, w.describe()};
}

Verdict information_vs_oracle(const SourceSpec& spec) {
  Worst w;
  for (double r2 : {0.1, 0.3, 0.5})
    for (double e : {1.0, 0.14})
      for (auto target : {InfoTarget::Incident, InfoTarget::Remaining}) {
        const auto r = ReflectionAmplitude::from_reflectivity(r2);
        InfoOptions opt;
        opt.target = target;
        const double a = mutual_information(spec, r, CouplingEfficiency(e), opt).mutual_info;
        const double b = oracle::mutual_information(spec, r, CouplingEfficiency(e), target, opt.cutoff);
        w.update(std::abs(a - b), at(r2, e) + " " + std::string(to_string(target)));
      }
  return {w.value <= 1e-10, w.describe()};
}

Verdict information_from_outcome(const SourceSpec& spec_in) {
  // Same table read through the demon pipeline with the switch held in bar.
  SourceSpec spec = spec_in;
  if (!is_thermal(spec.kind)) spec.drop_vacuum = true;
  Worst w;
  for (double r2 : {0.1, 0.3, 0.5})
    for (double e : {1.0, 0.14}) {
      const auto r = ReflectionAmplitude::from_reflectivity(r2);
      InfoOptions opt;
      opt.target = InfoTarget::Remaining;
      const double a = mutual_information(spec, r, CouplingEfficiency(e), opt).mutual_info;
      const auto outcome = propagate(make_source(spec, opt.cutoff), r, CouplingEfficiency(e), Policy::all_bar());
      const double b = mutual_information_from_outcome(outcome, InfoTarget::Remaining).mutual_info;
      w.update(std::abs(a - b), at(r2, e));
    }
  return {w.value <= 1e-10, w.describe()};
}

Verdict information_bounds() {
  std::ostringstream bad;
  for (const auto& spec : reference_sources())
    for (double r2 : grid(0.05))
      for (double e : {1.0, 0.14})
        for (auto target : {InfoTarget::Incident, InfoTarget::Remaining}) {
          InfoOptions opt;
          opt.target = target;
          const auto res = mutual_information(spec, ReflectionAmplitude::from_reflectivity(r2), CouplingEfficiency(e), opt);
          const double hi = std::min(res.click_entropy, res.photon_entropy);
          const bool ok = res.mutual_info >= -1e-12 && res.mutual_info <= hi + 1e-12 && res.click_entropy <= 2.0 + 1e-12 &&
                          (r2 > 0.0 || std::abs(res.mutual_info) <= 1e-12);
          if (!ok) bad << to_string(spec.kind) << " " << at(r2, e) << " I=" << fmt(res.mutual_info) << "; ";
        }
  const auto s = bad.str();
  return {s.empty(), s.empty() ? "0 <= I <= min(H(clicks), H(photons)) <= 2 bits, I(r=0) = 0" : s};
}

Verdict information_ordering() {
  // Preset parameters: correlated and anticorrelated beat uncorrelated, split
  // trails it.
  std::ostringstream bad;
  const auto srcs = reference_sources();
  for (double r2 : grid(0.025)) {
    if (r2 == 0.0) continue;
    const auto r = ReflectionAmplitude::from_reflectivity(r2);
    const CouplingEfficiency e(0.14);
    double I[4];
    for (int k = 0; k < 4; ++k) I[k] = mutual_information(srcs[k], r, e).mutual_info;
    if (!(I[2] >= I[0] && I[3] >= I[0] && I[1] <= I[0]))
      bad << "r2=" << fmt(r2) << " unc=" << fmt(I[0]) << " split=" << fmt(I[1]) << " corr=" << fmt(I[2])
          << " anti=" << fmt(I[3]) << "; ";
  }
  const auto s = bad.str();
  return {s.empty(), s.empty() ? "I_corr, I_anti >= I_unc >= I_split on r2 in (0, 0.5] at eps2=0.14" : s};
}

Verdict split_nullity_analytic() {
  Worst w;
  const auto spec = SourceSpec::split_thermal(kNbar);
  for (double r2 : grid(0.025)) {
    const auto outcome = propagate(make_source(spec), ReflectionAmplitude::from_reflectivity(r2), CouplingEfficiency(1.0),
                                   canonical_policy(spec.kind));
    const auto p = detector_probs(outcome);
    w.update(std::abs(p.p_a - p.p_b), "r2=" + fmt(r2));
  }
  return {w.value <= 1e-12, w.describe()};
}

struct McCase {
  std::string name;
  SourceSpec spec;
  Normalization norm;
  double r2;
  double eps2;
};

RunConfig mc_config(const McCase& c, std::uint64_t slots, std::uint64_t seed) {
  RunConfig rc;
  rc.spec = c.spec;
  rc.r = ReflectionAmplitude::from_reflectivity(c.r2);
  rc.eps2 = CouplingEfficiency(c.eps2);
  rc.slots = slots;
  rc.seed = seed;
  return rc;
}

std::vector<McCase> mc_cases() {
  return {{"uncorrelated", SourceSpec::uncorrelated(kNbar), Normalization::Singles, 0.5, 1.0},
          {"split", SourceSpec::split_thermal(kNbar), Normalization::Singles, 0.3, 1.0},
          {"correlated", SourceSpec::correlated(kSqueezing), Normalization::Pairs, 0.5, 1.0},
          {"anticorrelated", SourceSpec::anti_correlated(kSqueezing, kV2), Normalization::Pairs, 0.5, 1.0},
          {"correlated-singles", SourceSpec::correlated(kSqueezing), Normalization::Singles, 0.3, 0.14}};
}

Verdict mc_vs_pipeline(const McCase& c, std::uint64_t slots, std::uint64_t seed, double sigmas) {
  const auto m = measure_power(mc_config(c, slots, seed), c.norm);
  const double expected = pipeline_power(c.spec, c.norm, ReflectionAmplitude::from_reflectivity(c.r2), CouplingEfficiency(c.eps2));
  const double z = m.std_error > 0.0 ? (m.value - expected) / m.std_error : (m.value == expected ? 0.0 : INFINITY);
  return {std::abs(z) <= sigmas,
          "mc " + fmt(m.value) + " +- " + fmt(m.std_error) + " vs exact " + fmt(expected) + " (z=" + fmt(z) + ")"};
}

Verdict mc_conservation(std::uint64_t slots, std::uint64_t seed, double sigmas) {
  // Total clicks do not depend on where the switch routes photons.
  const McCase c{"", SourceSpec::correlated(kSqueezing), Normalization::Pairs, 0.3, 1.0};
  auto bar = mc_config(c, slots, seed);
  bar.mode = SwitchMode::Bar;
  auto ff = bar;
  ff.mode = SwitchMode::FeedForward;
  ff.seed = derive_seed(seed, 7, 0);
  const auto a = run(bar);
  const auto b = run(ff);
  const double ta = static_cast<double>(a.n_a + a.n_b);
  const double tb = static_cast<double>(b.n_a + b.n_b);
  const double se = std::sqrt(ta + tb);
  const double z = se > 0.0 ? (ta - tb) / se : 0.0;
  return {std::abs(z) <= sigmas, "bar " + fmt(ta) + " vs feed-forward " + fmt(tb) + " clicks (z=" + fmt(z) + ")"};
}

Verdict mc_split_null(std::uint64_t slots, std::uint64_t seed, double sigmas) {
  auto rc = mc_config({"", SourceSpec::split_thermal(kNbar), Normalization::Singles, 0.3, 1.0}, slots, seed);
  const auto res = run(rc);
  const double z = res.stderr_delta_n > 0.0 ? static_cast<double>(res.delta_n) / res.stderr_delta_n : 0.0;
  return {std::abs(z) <= sigmas, "delta_n " + std::to_string(res.delta_n) + " +- " + fmt(res.stderr_delta_n)};
}

Verdict mc_determinism(std::uint64_t seed) {
  auto rc = mc_config({"", SourceSpec::anti_correlated(kSqueezing, kV2), Normalization::Pairs, 0.4, 0.14}, 3 * kBlockSlots + 17,
                      seed);
  rc.dead_window_slots = 3;
  const auto a = run(rc);
  const auto b = run(rc);
  rc.threads = 3;
  const auto c = run(rc);
  return {a == b && a == c, a == b ? (a == c ? "repeat and threaded runs identical" : "threaded run differs")
                                   : "repeat run differs"};
}

Verdict g2_thermal(std::uint64_t seed) {
  const auto est = estimate_g2(SourceSpec::uncorrelated(0.2), 1'000'000, seed, {0, 64});
  const double g0 = est[0].second;
  const double gf = est[1].second;
  return {std::abs(g0 - 2.0) <= 0.05 && std::abs(gf - 1.0) <= 0.05, "g2(0)=" + fmt(g0) + " g2(64)=" + fmt(gf)};
}

Verdict g2_coherence_fit(std::uint64_t seed) {
  constexpr double tau_c = 20.0;
  G2Options opt;
  opt.stream = StreamModel::GaussianMemory;
  opt.coherence_slots = tau_c;
  std::vector<int> taus;
  for (int t = 0; t <= 60; t += 2) taus.push_back(t);
  const auto est = estimate_g2(SourceSpec::uncorrelated(0.2), 1'000'000, seed, taus, opt);
  const auto fit = fit_coherence_time(est);
  return {std::abs(fit.tau_c - tau_c) <= 0.1 * tau_c, "fitted tau_c=" + fmt(fit.tau_c) + " (injected " + fmt(tau_c) + ")"};
}

}  // namespace

CheckSummary run_checks(const CheckOptions& options) {
  CheckSummary out;
  auto add = [&](std::string name, const std::function<Verdict()>& fn) {
    CheckResult r;
    r.name = std::move(name);
    try {
      auto v = fn();
      r.pass = v.pass;
      r.detail = std::move(v.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    out.results.push_back(std::move(r));
  };

  for (const auto& spec : reference_sources()) {
    const std::string k(to_string(spec.kind));
    add("oracle vs propagate: " + k, [&] { return oracle_vs_propagate(spec); });
    auto dropped = spec;
    dropped.drop_vacuum = !is_thermal(spec.kind);
    if (dropped.drop_vacuum) add("oracle vs propagate: " + k + " without vacuum", [&] { return oracle_vs_propagate(dropped); });
    add("oracle vs symbolic: " + k, [&] { return oracle_vs_symbolic(spec); });
  }
  add("oracle: single-photon term leaves the imbalance unchanged", single_photon_term_invariance);
  for (const auto& spec : reference_sources()) {
    const std::string k(to_string(spec.kind));
    add("closed form vs oracle: " + k, [&] { return closed_form_vs_oracle(spec, options.closed_form); });
    add("closed form vs pipeline: " + k, [&] { return closed_form_vs_pipeline(spec, options.closed_form); });
  }
  for (const auto& spec : reference_sources()) {
    const std::string k(to_string(spec.kind));
    add("information vs oracle: " + k, [&] { return information_vs_oracle(spec); });
    add("information from demon outcome: " + k, [&] { return information_from_outcome(spec); });
  }
  add("information bounds", information_bounds);
  add("information ordering", information_ordering);
  add("split nullity: analytic", split_nullity_analytic);

  const std::uint64_t slots = options.quick ? 100'000 : 1'000'000;
  const double sigmas = options.quick ? 4.0 : 3.0;
  std::uint64_t tag = 100;
  for (const auto& c : mc_cases()) {
    const auto seed = derive_seed(options.seed, tag++, 0);
    add("montecarlo vs exact: " + c.name, [&] { return mc_vs_pipeline(c, slots, seed, sigmas); });
  }
  add("montecarlo: switch conserves clicks", [&] { return mc_conservation(slots, derive_seed(options.seed, 200, 0), sigmas); });
  add("split nullity: montecarlo", [&] { return mc_split_null(slots, derive_seed(options.seed, 201, 0), sigmas); });
  add("montecarlo: determinism", [&] { return mc_determinism(derive_seed(options.seed, 202, 0)); });
  add("g2: thermal stream", [&] { return g2_thermal(derive_seed(options.seed, 203, 0)); });
  add("g2: coherence time fit", [&] { return g2_coherence_fit(derive_seed(options.seed, 204, 0)); });
  return out;
}

}  // namespace demonlab
