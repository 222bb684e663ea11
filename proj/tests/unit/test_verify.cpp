#include <gtest/gtest.h>

#include "rdschwarz/oracles/verify.hpp"

using namespace rdschwarz::oracles;

class Suite : public ::testing::TestWithParam<std::string> {};

TEST_P(Suite, AllPropertiesPass) {
  const auto results = run_suite(GetParam());
  EXPECT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << " [" << r.detail << "]";
}

INSTANTIATE_TEST_SUITE_P(Verify, Suite, ::testing::ValuesIn(suite_names()));

TEST(Verify, UnknownSuiteThrows) { EXPECT_THROW(run_suite("nonexistent"), std::invalid_argument); }

TEST(Verify, ReactionSuiteCoversTwoAndFiveGroups) {
  bool two = false, five = false;
  for (const auto& r : run_suite("reaction")) {
    two = two || r.name.find("G=2") != std::string::npos;
    five = five || r.name.find("G=5") != std::string::npos;
  }
  EXPECT_TRUE(two);
  EXPECT_TRUE(five);
}
