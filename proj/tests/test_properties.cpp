#include <gtest/gtest.h>

#include "support/properties.hpp"

using namespace bpmnpc::testing;

class CalculusProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CalculusProperty, HoldsOnGeneratedTerms) {
    const auto checks = property_checks();
    const Check& c = checks.at(GetParam());
    SCOPED_TRACE(c.name);
    EXPECT_EQ(run_guarded(c), "") << c.name;
}

INSTANTIATE_TEST_SUITE_P(All, CalculusProperty, ::testing::Range<std::size_t>(0, property_checks(0).size()),
                         [](const ::testing::TestParamInfo<std::size_t>& info) {
                             const auto checks = property_checks(0);
                             std::string name;
                             for (char ch : checks.at(info.param).name)
                                 name += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                             return name;
                         });
