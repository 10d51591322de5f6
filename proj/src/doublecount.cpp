#include "sts21/doublecount.hpp"

#include <sstream>
#include <stdexcept>

namespace sts21::doublecount {

ExactInteger factorial(unsigned n) {
    ExactInteger r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

namespace {

ExactInteger exact_div(const ExactInteger& a, const ExactInteger& b, const char* what) {
    if (b == 0 || a % b != 0) throw std::logic_error(std::string("inexact division: ") + what);
    return a / b;
}

}  // namespace

ExactInteger total_flower_td_pairs() {
    // frames: split 21 points into a stem and three unordered petals
    ExactInteger frames = exact_div(factorial(21), factorial(3) * factorial(3) * factorial(6) *
                                                       factorial(6) * factorial(6),
                                    "frame count");
    // latin squares of order 6 (sum of main-class sizes)
    ExactInteger squares = 812'851'200;
    // petal parts: one prime or almost-sub-STS(9) per petal, four patterns
    ExactInteger prime = 120, nonprime = 720;
    ExactInteger parts = prime * prime * prime + 3 * nonprime * prime * prime;
    return frames * squares * parts;
}

ExactInteger weighted_class_sum(const std::vector<assembler::ClassificationRecord>& records) {
    ExactInteger f21 = factorial(21);
    ExactInteger sum = 0;
    for (const auto& r : records) {
        if (r.aut_order == 0) throw std::logic_error("record with |Aut| = 0");
        sum += ExactInteger(r.tau6) * exact_div(f21, r.aut_order, "21!/|Aut|");
    }
    return sum;
}

const std::vector<ExpectedRow>& expected_census() {
    static const std::vector<ExpectedRow> rows = {
        // tau6 = 7, sigma9 = 7
        {7, 7, 6, 1, 1},
        {7, 7, 8, 1, 0},
        {7, 7, 9, 1, 1},
        {7, 7, 12, 1, 1},
        {7, 7, 14, 1, 0},
        {7, 7, 16, 1, 0},
        {7, 7, 18, 2, 1},
        {7, 7, 54, 1, 0},
        {7, 7, 108, 1, 0},
        {7, 7, 504, 1, 0},
        {7, 7, 1008, 1, 1},
        // tau6 = 3, sigma9 = 3
        {3, 3, 1, 98, 0},
        {3, 3, 2, 45, 0},
        {3, 3, 3, 37, 0},
        {3, 3, 4, 18, 0},
        {3, 3, 6, 31, 0},
        {3, 3, 8, 7, 0},
        {3, 3, 12, 6, 0},
        {3, 3, 16, 2, 0},
        // tau6 = 3, sigma9 = 1
        {3, 1, 1, 171, 0},
        {3, 1, 2, 36, 0},
        {3, 1, 3, 66, 0},
        {3, 1, 4, 14, 0},
        {3, 1, 6, 45, 0},
        {3, 1, 8, 1, 0},
        {3, 1, 9, 9, 0},
        {3, 1, 12, 8, 0},
        {3, 1, 18, 3, 0},
        {3, 1, 36, 1, 0},
        {3, 1, 72, 1, 0},
        // tau6 = 1, sigma9 = 3
        {1, 3, 1, 101621, 355},
        {1, 3, 2, 5271, 14},
        {1, 3, 3, 103, 8},
        {1, 3, 4, 321, 1},
        {1, 3, 6, 24, 1},
        {1, 3, 8, 60, 5},
        {1, 3, 12, 5, 0},
        {1, 3, 16, 9, 1},
        {1, 3, 18, 1, 0},
        {1, 3, 24, 7, 3},
        {1, 3, 36, 1, 0},
        {1, 3, 48, 2, 0},
        {1, 3, 72, 1, 0},
        {1, 3, 144, 1, 0},
        // tau6 = 1, sigma9 = 1
        {1, 1, 1, 1865036, 0},
        {1, 1, 2, 30771, 0},
        {1, 1, 3, 52, 0},
        {1, 1, 4, 786, 0},
        {1, 1, 6, 8, 0},
        {1, 1, 8, 23, 0},
        {1, 1, 12, 5, 0},
        {1, 1, 24, 1, 0},
    };
    return rows;
}

ExactInteger expected_weighted_sum() {
    ExactInteger f21 = factorial(21);
    ExactInteger sum = 0;
    for (const auto& r : expected_census())
        sum += ExactInteger(r.tau6) * r.classes * exact_div(f21, r.aut, "21!/|Aut|");
    return sum;
}

std::vector<std::string> compare_with_expected(const analysis::TableReport& report, Stratum s,
                                               bool check_resolvable) {
    auto in_stratum = [&](int tau) {
        switch (s) {
            case Stratum::Tau7: return tau == 7;
            case Stratum::Tau3Plus: return tau >= 3;
            case Stratum::Full: return true;
        }
        return false;
    };
    std::vector<std::string> mismatches;
    auto note = [&](const std::string& m) { mismatches.push_back(m); };
    auto row_name = [](int tau, int sigma, std::uint64_t aut) {
        std::ostringstream os;
        os << "(tau6=" << tau << ", sigma9=" << sigma << ", |Aut|=" << aut << ")";
        return os.str();
    };

    std::map<std::tuple<int, int, std::uint64_t>, ExpectedRow> want;
    for (const auto& r : expected_census())
        if (in_stratum(r.tau6)) want[{r.tau6, r.sigma9, r.aut}] = r;

    for (const auto& [key, row] : report.rows) {
        auto [tau, sigma, aut] = key;
        if (!in_stratum(tau)) {
            note(row_name(tau, sigma, aut) + ": outside stratum");
            continue;
        }
        auto it = want.find(key);
        if (it == want.end()) {
            note(row_name(tau, sigma, aut) + ": unexpected row with " +
                 std::to_string(row.classes) + " classes");
            continue;
        }
        if (row.classes != it->second.classes)
            note(row_name(tau, sigma, aut) + ": " + std::to_string(row.classes) +
                 " classes, expected " + std::to_string(it->second.classes));
        if (check_resolvable) {
            if (row.unknown)
                note(row_name(tau, sigma, aut) + ": " + std::to_string(row.unknown) +
                     " records lack a resolvability flag");
            else if (row.resolvable != it->second.resolvable)
                note(row_name(tau, sigma, aut) + ": " + std::to_string(row.resolvable) +
                     " resolvable, expected " + std::to_string(it->second.resolvable));
        }
        want.erase(it);
    }
    for (const auto& [key, r] : want)
        note(row_name(r.tau6, r.sigma9, r.aut) + ": missing (expected " +
             std::to_string(r.classes) + " classes)");
    return mismatches;
}

}  // namespace sts21::doublecount
