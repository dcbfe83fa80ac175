#include <gtest/gtest.h>

#include <cmath>

#include "demonlab/diagnostics.hpp"
#include "demonlab/fock.hpp"
#include "generators.hpp"

using namespace demonlab;
using demonlab::testing::Gen;

namespace {

const std::vector<std::string> kTwo{"a", "b"};

JointOccupationDistribution single(int n, int cutoff = kDefaultCutoff) {
  JointOccupationDistribution d({"a"}, cutoff);
  d.accumulate({n}, 1.0);
  return d;
}

}  // namespace

TEST(StrongTypes, RejectOutOfRangeValues) {
  EXPECT_THROW(MeanPhotonNumber(-0.1), DomainError);
  EXPECT_THROW(MeanPhotonNumber(NAN), DomainError);
  EXPECT_THROW(ReflectionAmplitude(1.5), DomainError);
  EXPECT_THROW(ReflectionAmplitude::from_reflectivity(-0.01), DomainError);
  EXPECT_THROW(CouplingEfficiency(1.01), DomainError);
  EXPECT_THROW(Visibility(-1e-9), DomainError);
  EXPECT_THROW(SqueezingParameter(-0.5), DomainError);
}

TEST(StrongTypes, LowPhotonFlag) {
  EXPECT_FALSE(MeanPhotonNumber(0.2).outside_low_photon_regime());
  EXPECT_TRUE(MeanPhotonNumber(0.21).outside_low_photon_regime());
}

TEST(StrongTypes, SqueezingMatchesMeanPhotonNumber) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const double nbar = g.uniform(0.0, 3.0);
    const auto s = SqueezingParameter::from_mean_photon_number(MeanPhotonNumber(nbar));
    EXPECT_NEAR(std::pow(std::sinh(s.value()), 2), nbar, 1e-12);
    EXPECT_NEAR(s.mean_photon_number().value(), nbar, 1e-12);
  }
}

TEST(ThermalPmf, FrozenValues) {
  EXPECT_DOUBLE_EQ(thermal_pmf(MeanPhotonNumber(0.0), 0), 1.0);
  EXPECT_NEAR(thermal_pmf(MeanPhotonNumber(0.05), 0), 0.952380952380952, 1e-15);
  EXPECT_THROW(thermal_pmf(MeanPhotonNumber(0.05), -1), DomainError);
}

TEST(ThermalPmf, NormalizedAndDecreasing) {
  Gen g(12);
  for (int i = 0; i < 100; ++i) {
    const MeanPhotonNumber n(g.uniform(0.0, 0.99));
    double sum = 0.0;
    for (int k = 0; k < 5000; ++k) {
      sum += thermal_pmf(n, k);
      if (k > 0) EXPECT_LE(thermal_pmf(n, k), thermal_pmf(n, k - 1));
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(ThermalState, TailIsLostMass) {
  const auto d = thermal_state(MeanPhotonNumber(0.05), "a", 4);
  EXPECT_NEAR(d.lost_mass(), std::pow(0.05 / 1.05, 5), 1e-15);
  EXPECT_NO_THROW(d.check_invariants());
}

TEST(Distribution, OverCutoffMassIsTracked) {
  JointOccupationDistribution d(kTwo, 2);
  d.accumulate({1, 1}, 0.75);
  d.accumulate({2, 1}, 0.25);
  EXPECT_DOUBLE_EQ(d.lost_mass(), 0.25);
  EXPECT_EQ(d.entries().size(), 1u);
  EXPECT_NO_THROW(d.check_invariants());
}

TEST(Distribution, InvariantViolationsAreReported) {
  JointOccupationDistribution d(kTwo, 2);
  d.accumulate({1, 0}, 0.5);
  EXPECT_THROW(d.check_invariants(), ComputationError);
  EXPECT_THROW(d.accumulate({1}, 0.5), DomainError);
  EXPECT_THROW(d.accumulate({-1, 0}, 0.5), DomainError);
}

TEST(BeamsplitterSplit, Examples) {
  const auto half = ReflectionAmplitude::from_reflectivity(0.5);
  const auto one = beamsplitter_split(single(1), "a", half, "r");
  EXPECT_NEAR(one.probability({1, 0}), 0.5, 1e-15);
  EXPECT_NEAR(one.probability({0, 1}), 0.5, 1e-15);
  const auto two = beamsplitter_split(single(2), "a", half, "r");
  EXPECT_NEAR(two.probability({2, 0}), 0.25, 1e-15);
  EXPECT_NEAR(two.probability({1, 1}), 0.5, 1e-15);
  EXPECT_NEAR(two.probability({0, 2}), 0.25, 1e-15);
  EXPECT_EQ(two.modes(), (std::vector<std::string>{"a", "r"}));
}

TEST(BeamsplitterSplit, ErrorsOnLabels) {
  const auto r = ReflectionAmplitude(0.3);
  EXPECT_THROW(beamsplitter_split(single(1), "x", r, "r"), DomainError);
  EXPECT_THROW(beamsplitter_split(single(1), "a", r, "a"), DomainError);
}

TEST(BeamsplitterSplit, ZeroReflectionIsIdentity) {
  Gen g(13);
  for (int i = 0; i < 50; ++i) {
    const auto d = g.distribution(kTwo, 4);
    const auto s = beamsplitter_split(d, "a", ReflectionAmplitude(0.0), "r");
    for (const auto& [t, p] : d.entries()) EXPECT_NEAR(s.probability({t[0], t[1], 0}), p, 1e-15);
  }
}

TEST(LossChannel, Examples) {
  const auto lossy = loss_channel(single(2), "a", CouplingEfficiency(0.14));
  EXPECT_NEAR(lossy.probability({2}), 0.0196, 1e-15);
  EXPECT_NEAR(lossy.probability({1}), 0.2408, 1e-15);
  EXPECT_NEAR(lossy.probability({0}), 0.7396, 1e-15);
  const auto dark = loss_channel(single(3), "a", CouplingEfficiency(0.0));
  EXPECT_NEAR(dark.probability({0}), 1.0, 1e-15);
  const auto kept = loss_channel(single(2), "a", CouplingEfficiency(0.14), "l");
  EXPECT_NEAR(kept.probability({1, 1}), 0.2408, 1e-15);
  EXPECT_THROW(loss_channel(single(1), "x", CouplingEfficiency(0.5)), DomainError);
}

TEST(LossChannel, UnitEfficiencyIsIdentity) {
  Gen g(14);
  for (int i = 0; i < 50; ++i) {
    const auto d = g.distribution(kTwo, 4);
    const auto l = loss_channel(d, "b", CouplingEfficiency(1.0));
    for (const auto& [t, p] : d.entries()) EXPECT_NEAR(l.probability(t), p, 1e-15);
  }
}

TEST(LossChannel, EqualsSplitThenTrace) {
  Gen g(15);
  for (int i = 0; i < 100; ++i) {
    const auto d = g.distribution(kTwo, 4);
    const double e = g.eps2();
    const auto lossy = loss_channel(d, "a", CouplingEfficiency(e));
    const auto split =
        beamsplitter_split(d, "a", ReflectionAmplitude::from_reflectivity(1.0 - e), "l").trace_out("l");
    for (const auto& [t, p] : split.entries()) EXPECT_NEAR(lossy.probability(t), p, 1e-12);
    for (const auto& [t, p] : lossy.entries()) EXPECT_NEAR(split.probability(t), p, 1e-12);
  }
}

TEST(Channels, PreserveNormalization) {
  Gen g(16);
  for (int i = 0; i < 200; ++i) {
    auto d = g.distribution(kTwo, 4);
    d = loss_channel(d, g.coin() ? "a" : "b", CouplingEfficiency(g.eps2()), std::string("l"));
    d = beamsplitter_split(d, "a", ReflectionAmplitude::from_reflectivity(g.r2()), "ra");
    EXPECT_NO_THROW(d.check_invariants());
    EXPECT_NEAR(d.total_mass(), 1.0, 1e-12);
  }
}

TEST(Channels, SplitAndLossCommute) {
  Gen g(17);
  for (int i = 0; i < 200; ++i) {
    const auto d = g.distribution(kTwo, 4);
    const auto r = ReflectionAmplitude::from_reflectivity(g.r2());
    const CouplingEfficiency e(g.eps2());
    // Loss before the split equals equal loss on both outputs.
    const auto x = loss_channel(loss_channel(beamsplitter_split(d, "a", r, "ra"), "a", e), "ra", e);
    const auto y = beamsplitter_split(loss_channel(d, "a", e), "a", r, "ra");
    ASSERT_EQ(x.modes(), y.modes());
    for (const auto& [t, p] : x.entries()) EXPECT_NEAR(y.probability(t), p, 1e-12);
    for (const auto& [t, p] : y.entries()) EXPECT_NEAR(x.probability(t), p, 1e-12);
  }
}

TEST(Channels, MeanPhotonNumberBookkeeping) {
  Gen g(18);
  for (int i = 0; i < 200; ++i) {
    const auto d = g.distribution(kTwo, 4);
    const auto s = beamsplitter_split(d, "a", ReflectionAmplitude::from_reflectivity(g.r2()), "ra");
    EXPECT_NEAR(s.mean("a") + s.mean("ra"), d.mean("a"), 1e-12);
    EXPECT_NEAR(s.mean("b"), d.mean("b"), 1e-12);
    const double e = g.eps2();
    EXPECT_NEAR(loss_channel(d, "b", CouplingEfficiency(e)).mean("b"), e * d.mean("b"), 1e-12);
  }
}

TEST(JointDetectionPmf, FrozenValues) {
  const MeanPhotonNumber n(0.05);
  const auto r = ReflectionAmplitude::from_reflectivity(0.5);
  EXPECT_NEAR(joint_detection_pmf(n, r, 0, 0), 0.952380952380952, 1e-15);
  EXPECT_NEAR(joint_detection_pmf(n, r, 0, 1), 0.0226757369614512, 1e-15);
  EXPECT_THROW(joint_detection_pmf(n, r, -1, 0), DomainError);
}

TEST(JointDetectionPmf, MatchesSplitThermalState) {
  Gen g(19);
  for (int i = 0; i < 100; ++i) {
    const MeanPhotonNumber n(g.uniform(0.0, 0.5));
    const auto r = ReflectionAmplitude::from_reflectivity(g.r2());
    const auto split = beamsplitter_split(thermal_state(n, "a", 4), "a", r, "ra");
    for (int m = 0; m <= 4; ++m)
      for (int k = 0; m + k <= 4; ++k) EXPECT_NEAR(split.probability({m, k}), joint_detection_pmf(n, r, m, k), 1e-12);
  }
}

TEST(JointDetectionPmf, Normalized) {
  const MeanPhotonNumber n(0.3);
  const auto r = ReflectionAmplitude::from_reflectivity(0.37);
  double sum = 0.0;
  for (int m = 0; m < 200; ++m)
    for (int k = 0; m + k < 200; ++k) sum += joint_detection_pmf(n, r, m, k);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Distribution, MarginalsAndExchange) {
  Gen g(20);
  for (int i = 0; i < 50; ++i) {
    const auto d = g.distribution({"a", "b", "c"}, 3);
    const std::vector<std::string> keep{"c", "a"};
    const auto m = d.marginal(keep);
    EXPECT_NEAR(m.mean("a"), d.mean("a"), 1e-12);
    EXPECT_NEAR(m.mean("c"), d.mean("c"), 1e-12);
    const auto x = d.with_modes_exchanged("a", "b");
    EXPECT_NEAR(x.mean("a"), d.mean("b"), 1e-12);
    EXPECT_NEAR(x.mean("b"), d.mean("a"), 1e-12);
  }
}

TEST(Distribution, PostSelection) {
  JointOccupationDistribution d(kTwo, 2);
  d.accumulate({0, 0}, 0.5);
  d.accumulate({1, 1}, 0.25);
  d.accumulate({2, 0}, 0.25);
  const auto p = d.post_selected_without({0, 0});
  EXPECT_NEAR(p.probability({1, 1}), 0.5, 1e-15);
  EXPECT_NEAR(p.probability({2, 0}), 0.5, 1e-15);
  JointOccupationDistribution v(kTwo, 2);
  v.accumulate({0, 0}, 1.0);
  EXPECT_THROW(v.post_selected_without({0, 0}), ComputationError);
}
