#include <gtest/gtest.h>

#include "demonlab/checks.hpp"

using namespace demonlab;

TEST(Checks, PristineBuildPasses) {
  CheckOptions o;
  o.quick = true;
  const auto summary = run_checks(o);
  EXPECT_EQ(summary.results.size(), 40u);
  for (const auto& r : summary.results) EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
}

TEST(Checks, CatchesFlippedVisibilitySign) {
  CheckOptions o;
  o.quick = true;
  o.closed_form = [](SourceKind kind, Normalization norm, const PowerParams& p, ReflectionAmplitude r) {
    const double v = closed_form_power(kind, norm, p, r);
    if (kind != SourceKind::AntiCorrelated) return v;
    // (1 - 2v^2) in place of (2v^2 - 1).
    return -v;
  };
  const auto summary = run_checks(o);
  EXPECT_FALSE(summary.all_passed());
  const auto* hit = summary.find("closed form vs oracle: anticorrelated");
  ASSERT_NE(hit, nullptr);
  EXPECT_FALSE(hit->pass);
  ASSERT_NE(summary.find("closed form vs oracle: correlated"), nullptr);
  EXPECT_TRUE(summary.find("closed form vs oracle: correlated")->pass);
}

TEST(Checks, CatchesMissingTransmissionFactor) {
  CheckOptions o;
  o.quick = true;
  o.closed_form = [](SourceKind kind, Normalization norm, const PowerParams& p, ReflectionAmplitude r) {
    return closed_form_power(kind, norm, p, r) / r.transmissivity();
  };
  EXPECT_FALSE(run_checks(o).find("closed form vs oracle: correlated")->pass);
}
