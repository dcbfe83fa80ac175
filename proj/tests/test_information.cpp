#include <gtest/gtest.h>

#include <cmath>

#include "demonlab/diagnostics.hpp"
#include "demonlab/information.hpp"
#include "demonlab/oracle.hpp"
#include "generators.hpp"

using namespace demonlab;
using demonlab::testing::Gen;

namespace {

double mi(const SourceSpec& spec, double r2, double eps2, InfoTarget target = InfoTarget::Incident) {
  InfoOptions o;
  o.target = target;
  return mutual_information(spec, ReflectionAmplitude::from_reflectivity(r2), CouplingEfficiency(eps2), o).mutual_info;
}

const SourceSpec kUnc = SourceSpec::uncorrelated(0.05);
const SourceSpec kSplit = SourceSpec::split_thermal(0.05);
const SourceSpec kCorr = SourceSpec::correlated(0.1);
const SourceSpec kAnti = SourceSpec::anti_correlated(0.1, 0.87);

}  // namespace

TEST(ConditionalClickPmf, Examples) {
  Gen g(51);
  for (int i = 0; i < 20; ++i)
    EXPECT_DOUBLE_EQ(conditional_click_pmf(0, 0, ReflectionAmplitude::from_reflectivity(g.r2()), CouplingEfficiency(g.eps2())), 1.0);
  EXPECT_NEAR(conditional_click_pmf(1, 1, ReflectionAmplitude::from_reflectivity(0.5), CouplingEfficiency(1.0)), 0.5, 1e-15);
  EXPECT_THROW(conditional_click_pmf(3, 2, ReflectionAmplitude(0.5), CouplingEfficiency(1.0)), DomainError);
}

TEST(ConditionalClickPmf, EqualsTwoStageBinomial) {
  Gen g(52);
  for (int i = 0; i < 200; ++i) {
    const int n = g.integer(0, 6);
    const int m = g.integer(0, n);
    const double r2 = g.uniform();
    const double e = g.uniform();
    // Thin with e, then split the survivors with r2.
    double expected = 0.0;
    for (int k = m; k <= n; ++k)
      expected += binomial_coefficient(n, k) * std::pow(e, k) * std::pow(1 - e, n - k) * binomial_coefficient(k, m) *
                  std::pow(r2, m) * std::pow(1 - r2, k - m);
    EXPECT_NEAR(conditional_click_pmf(m, n, ReflectionAmplitude::from_reflectivity(r2), CouplingEfficiency(e)), expected, 1e-12);
  }
  EXPECT_NEAR(conditional_click_pmf(1, 2, ReflectionAmplitude::from_reflectivity(0.5), CouplingEfficiency(0.14)),
              2 * 0.14 * 0.86 * 0.5 + 0.0196 * 0.5, 1e-12);
}

TEST(MutualInformation, ZeroWithoutReflectionOrWithoutLight) {
  Gen g(53);
  for (int i = 0; i < 50; ++i) {
    const auto spec = g.source();
    EXPECT_NEAR(mi(spec, 0.0, g.eps2()), 0.0, 1e-12);
    EXPECT_NEAR(mi(spec, g.r2(), 0.0), 0.0, 1e-12);
  }
}

TEST(MutualInformation, Bounds) {
  Gen g(54);
  for (int i = 0; i < 200; ++i) {
    InfoOptions o;
    o.target = g.coin() ? InfoTarget::Incident : InfoTarget::Remaining;
    const auto res = mutual_information(g.source(), ReflectionAmplitude::from_reflectivity(g.r2()), CouplingEfficiency(g.eps2()), o);
    EXPECT_GE(res.mutual_info, -1e-12);
    EXPECT_LE(res.mutual_info, std::min(res.click_entropy, res.photon_entropy) + 1e-12);
    EXPECT_LE(res.click_entropy, 2.0 + 1e-12);
    double total = 0.0;
    for (const auto& [k, p] : res.joint) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(MutualInformation, IdealCorrelatedPairRemainingTarget) {
  // Each of the four routings of the pair is its own click pattern.
  EXPECT_NEAR(mi(kCorr, 0.5, 1.0, InfoTarget::Remaining), 2.0, 1e-12);
}

TEST(MutualInformation, IdealCorrelatedPairIncidentTarget) {
  // The incident numbers are always (1, 1): nothing to learn.
  EXPECT_NEAR(mi(kCorr, 0.5, 1.0, InfoTarget::Incident), 0.0, 1e-12);
}

TEST(MutualInformation, FrozenPresetValues) {
  EXPECT_NEAR(mi(kUnc, 0.1, 0.14), 0.0101384, 5e-7);
  EXPECT_NEAR(mi(kSplit, 0.1, 0.14), 0.0101382, 5e-7);
  EXPECT_NEAR(mi(kCorr, 0.1, 0.14), 0.0812, 5e-5);
  EXPECT_NEAR(mi(kAnti, 0.1, 0.14), 0.0840, 5e-5);
}

TEST(MutualInformation, OrderingAtPresetParameters) {
  for (int i = 1; i <= 20; ++i) {
    const double r2 = 0.025 * i;
    const double unc = mi(kUnc, r2, 0.14);
    const double split = mi(kSplit, r2, 0.14);
    EXPECT_GE(mi(kCorr, r2, 0.14), unc) << r2;
    EXPECT_GE(mi(kAnti, r2, 0.14), unc) << r2;
    EXPECT_LE(split, unc) << r2;
    EXPECT_GT(split, 0.0) << r2;
  }
}

TEST(MutualInformation, MatchesOracle) {
  Gen g(55);
  for (int i = 0; i < 20; ++i) {
    auto spec = g.source();
    const double r2 = g.r2();
    const double e = g.eps2();
    const auto target = g.coin() ? InfoTarget::Incident : InfoTarget::Remaining;
    EXPECT_NEAR(mi(spec, r2, e, target),
                oracle::mutual_information(spec, ReflectionAmplitude::from_reflectivity(r2), CouplingEfficiency(e), target, 8),
                1e-10);
  }
}

TEST(MutualInformation, SwitchCannotChangeInformation) {
  Gen g(56);
  for (int i = 0; i < 50; ++i) {
    auto spec = g.source();
    if (!is_thermal(spec.kind)) spec.drop_vacuum = true;
    const auto r = ReflectionAmplitude::from_reflectivity(g.r2());
    const CouplingEfficiency e(g.eps2());
    InfoOptions o;
    o.target = InfoTarget::Remaining;
    const double direct = mutual_information(spec, r, e, o).mutual_info;
    const auto src = make_source(spec, o.cutoff);
    EXPECT_NEAR(mutual_information_from_outcome(propagate(src, r, e, Policy::all_bar()), InfoTarget::Remaining).mutual_info,
                direct, 1e-10);
    // The pre-switch table is what the demon measured; any policy leaves the
    // incident numbers and clicks untouched.
    EXPECT_NEAR(mutual_information_from_outcome(propagate(src, r, e, Policy::all_bar()), InfoTarget::Incident).mutual_info,
                mutual_information(spec, r, e, {InfoTarget::Incident, 8}).mutual_info, 1e-10);
  }
}

TEST(MutualInformation, DegenerateJointIsZero) {
  std::map<InfoKey, double> joint{{{0, 0, 0, 0}, 1.0}};
  EXPECT_EQ(mutual_information_from_joint(joint).mutual_info, 0.0);
}

TEST(InfoTarget, NamesRoundTrip) {
  EXPECT_EQ(parse_info_target("incident"), InfoTarget::Incident);
  EXPECT_EQ(parse_info_target(to_string(InfoTarget::Remaining)), InfoTarget::Remaining);
  EXPECT_THROW(parse_info_target("outgoing"), DomainError);
}
