#include <gtest/gtest.h>

#include "gerbes/laws.hpp"

namespace gerbes {
namespace {

class LawSuite : public ::testing::TestWithParam<std::size_t> {};

// Small smoke run of every suite; the acceptance binary runs the full counts.
TEST_P(LawSuite, PassesOnFewCases) {
  const auto& entry = all_suites()[GetParam()];
  LawConfig cfg;
  cfg.cases = 4;
  cfg.seed = 2024;
  auto results = entry.run(cfg);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << entry.name << "/" << r.name << " dev " << r.max_deviation
                        << (r.failures.empty() ? "" : " at " + r.failures.front());
    EXPECT_GT(r.cases, 0) << r.name;
  }
}

INSTANTIATE_TEST_SUITE_P(All, LawSuite, ::testing::Range<std::size_t>(0, all_suites().size()),
                         [](const auto& info) { return all_suites()[info.param].name; });

TEST(LawResult, ObserveAndRequire) {
  LawResult r;
  r.observe(1e-12, 1e-9, "a");
  EXPECT_TRUE(r.pass);
  r.observe(0.0, 0.0, "exact");
  EXPECT_TRUE(r.pass);
  r.observe(1e-15, 0.0, "not exact");
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failures.size(), 1u);
  LawResult q;
  q.require(false, "b");
  EXPECT_FALSE(q.pass);
}

}  // namespace
}  // namespace gerbes
