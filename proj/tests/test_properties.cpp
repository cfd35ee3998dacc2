// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "ia3/properties.hpp"

namespace ia3::props {
namespace {

TEST(PropertySuite, EveryPropertyHoldsOnAThousandInstances) {
  const auto results = run_all(20260101, 1000);
  ASSERT_EQ(results.size(), 11u);
  for (const auto& r : results) {
    EXPECT_GE(r.instances, 1000u) << r.name;
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.counterexample;
  }
}

TEST(PropertySuite, SameSeedSameResults) {
  Rng a(7), b(7);
  const auto x = report_determinism(a, 1000), y = report_determinism(b, 1000);
  EXPECT_EQ(to_json(x), to_json(y));
}

TEST(PropertySuite, FailuresAreCountedWithTheFirstCounterexample) {
  Rng rng(1);
  int calls = 0;
  const auto r = run_property("odd trials fail", rng, 10, [&](Rng&) -> std::string {
    return ++calls % 2 ? "trial " + std::to_string(calls) : "";
  });
  EXPECT_EQ(r.instances, 10u);
  EXPECT_EQ(r.failures, 5u);
  EXPECT_EQ(r.counterexample, "trial 1");
  EXPECT_FALSE(r.ok());
}

TEST(PropertySuite, ExceptionsCountAsFailures) {
  Rng rng(1);
  const auto r = run_property("throws", rng, 3, [](Rng&) -> std::string { throw std::runtime_error("boom"); });
  EXPECT_EQ(r.failures, 3u);
  EXPECT_EQ(r.counterexample, "exception: boom");
}

}  // namespace
}  // namespace ia3::props
