// Exact double-counting identities tying the classification to closed
// formulas, plus the published census the results are checked against.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sts21/analysis.hpp"
#include "sts21/assembler.hpp"

namespace sts21::doublecount {

using ExactInteger = boost::multiprecision::cpp_int;

ExactInteger factorial(unsigned n);

// Number of (labeled STS(21), distinguished flower) pairs by direct
// construction: frames x latin squares x petal part choices. All
// divisions are asserted exact.
ExactInteger total_flower_td_pairs();

// The same count from a classification: sum of tau6 * 21!/|Aut| over the
// isomorphism classes. Throws when 21!/|Aut| is not an integer.
ExactInteger weighted_class_sum(const std::vector<assembler::ClassificationRecord>& records);

// Published census rows; resolvable counts included.
struct ExpectedRow {
    int tau6;
    int sigma9;
    std::uint64_t aut;
    std::uint64_t classes;
    std::uint64_t resolvable;
};

const std::vector<ExpectedRow>& expected_census();
inline constexpr std::uint64_t kExpectedClasses = 2'004'720;
inline constexpr std::uint64_t kExpectedResolvable = 393;

// weighted sum recomputed from the published rows; equals
// total_flower_td_pairs() and serves as the independent cross-check
ExactInteger expected_weighted_sum();

enum class Stratum { Tau7, Tau3Plus, Full };

// Mismatch descriptions comparing a census report against the published
// rows restricted to the stratum; empty means exact agreement.
std::vector<std::string> compare_with_expected(const analysis::TableReport& report, Stratum s,
                                               bool check_resolvable);

}  // namespace sts21::doublecount
