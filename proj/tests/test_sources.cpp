#include <gtest/gtest.h>

#include <cmath>

#include "demonlab/diagnostics.hpp"
#include "demonlab/sources.hpp"
#include "generators.hpp"

using namespace demonlab;
using demonlab::testing::Gen;

TEST(SourceSpec, ParametersMustMatchKind) {
  auto s = SourceSpec::uncorrelated(0.05);
  s.v2 = Visibility(0.5);
  EXPECT_THROW(s.validate(), DomainError);
  auto c = SourceSpec::correlated(0.1);
  c.nbar = MeanPhotonNumber(0.1);
  EXPECT_THROW(c.validate(), DomainError);
  SourceSpec a;
  a.kind = SourceKind::AntiCorrelated;
  a.s = SqueezingParameter(0.1);
  EXPECT_THROW(a.validate(), DomainError);
  auto t = SourceSpec::split_thermal(0.05);
  t.drop_vacuum = true;
  EXPECT_THROW(t.validate(), DomainError);
}

TEST(SourceSpec, KindNamesRoundTrip) {
  for (auto k : {SourceKind::Uncorrelated, SourceKind::SplitThermal, SourceKind::Correlated, SourceKind::AntiCorrelated})
    EXPECT_EQ(parse_source_kind(to_string(k)), k);
  EXPECT_THROW(parse_source_kind("coherent"), DomainError);
}

TEST(SourceSpec, BrightThermalLightWarns) {
  std::vector<std::string> seen;
  auto prev = set_warning_sink([&](std::string_view m) { seen.emplace_back(m); });
  make_source(SourceSpec::uncorrelated(0.3));
  set_warning_sink(prev);
  EXPECT_EQ(seen.size(), 1u);
}

TEST(MakeSource, Examples) {
  auto c = SourceSpec::correlated(1e-3);
  c.drop_vacuum = true;
  EXPECT_NEAR(make_source(c).probability({1, 1}), 1.0, 1e-15);

  auto a = SourceSpec::anti_correlated(0.1, 1.0);
  a.drop_vacuum = true;
  const auto d = make_source(a);
  EXPECT_NEAR(d.probability({2, 0}), 0.5, 1e-15);
  EXPECT_NEAR(d.probability({0, 2}), 0.5, 1e-15);
  EXPECT_EQ(d.probability({1, 1}), 0.0);
}

TEST(MakeSource, AllSourcesNormalized) {
  Gen g(21);
  for (int i = 0; i < 200; ++i) {
    const auto spec = g.source();
    const auto d = make_source(spec);
    EXPECT_NO_THROW(d.check_invariants());
    EXPECT_NEAR(d.total_mass(), 1.0, 1e-12);
  }
}

TEST(MakeSource, SplitThermalMarginalsAreThermal) {
  Gen g(22);
  for (int i = 0; i < 50; ++i) {
    const double nbar = g.uniform(0.001, 0.2);
    const auto d = make_source(SourceSpec::split_thermal(nbar), 12);
    for (const std::string mode : {"In_A", "In_B"}) {
      const std::vector<std::string> keep{mode};
      const auto m = d.marginal(keep);
      // Entries below the cutoff only collect joint tuples that all fit, so
      // compare where the truncation cannot reach.
      for (int n = 0; n <= 4; ++n) {
        double p = 0.0;
        for (const auto& [t, w] : d.entries())
          if (t[d.mode_index(mode)] == n) p += w;
        const double tail = std::pow(2 * nbar / (1 + 2 * nbar), 13);
        EXPECT_NEAR(p, thermal_pmf(MeanPhotonNumber(nbar), n), tail + 1e-12) << "n=" << n;
        EXPECT_NEAR(m.probability({n}), p, 1e-15);
      }
    }
  }
}

TEST(MakeSource, ExchangeSymmetry) {
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    SourceSpec spec = g.coin() ? SourceSpec::split_thermal(g.uniform(0.001, 0.2)) : SourceSpec::correlated(g.uniform(0.01, 0.5));
    const auto d = make_source(spec);
    const auto x = d.with_modes_exchanged(kInA, kInB);
    for (const auto& [t, p] : d.entries()) EXPECT_NEAR(x.probability(t), p, 1e-15);
  }
}

TEST(MakeSource, PerfectNoonStateHasNoCoincidences) {
  Gen g(24);
  for (int i = 0; i < 20; ++i) {
    const auto d = make_source(SourceSpec::anti_correlated(g.uniform(0.01, 0.5), 1.0));
    for (const auto& [t, p] : d.entries())
      if (t[0] > 0 && t[1] > 0) EXPECT_EQ(p, 0.0);
  }
}

TEST(MakeSource, CorrelatedMarginalIsThermalToLeadingOrder) {
  // The two-photon truncation keeps P(1)/P(0) = s^2, the thermal ratio is
  // tanh^2(s); they agree up to O(s^4).
  Gen g(25);
  for (int i = 0; i < 50; ++i) {
    const double s = g.uniform(0.01, 0.3);
    const auto d = make_source(SourceSpec::correlated(s)).trace_out(kInB);
    const double nbar = SqueezingParameter(s).mean_photon_number().value();
    const double thermal_ratio = thermal_pmf(MeanPhotonNumber(nbar), 1) / thermal_pmf(MeanPhotonNumber(nbar), 0);
    EXPECT_NEAR(d.probability({1}) / d.probability({0}), thermal_ratio, std::pow(s, 4));
  }
}

TEST(MarginalG2, Examples) {
  for (double nbar : {0.001, 0.01, 0.05}) {
    EXPECT_NEAR(marginal_g2_zero(SourceSpec::uncorrelated(nbar)), 2.0, 1e-6);
    EXPECT_NEAR(marginal_g2_zero(SourceSpec::split_thermal(nbar)), 2.0, 1e-6);
  }
  JointOccupationDistribution fock({"x"}, 4);
  fock.accumulate({1}, 1.0);
  EXPECT_EQ(marginal_g2_zero(fock, "x"), 0.0);
  JointOccupationDistribution vac({"x"}, 4);
  vac.accumulate({0}, 1.0);
  EXPECT_THROW(marginal_g2_zero(vac, "x"), ComputationError);
}
