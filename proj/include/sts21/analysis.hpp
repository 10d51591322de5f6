// Resolvability testing, structural sanity theorems and census reporting
// on top of the classification records.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sts21/assembler.hpp"
#include "sts21/design.hpp"

namespace sts21::analysis {

using ParallelClass = std::vector<Triple>;       // v/3 disjoint blocks
using Resolution = std::vector<ParallelClass>;   // partition of the block set

// Every parallel class of a valid STS, as sorted block lists in
// deterministic order. Throws std::invalid_argument when 3 does not
// divide v or the system is invalid.
std::vector<ParallelClass> parallel_classes(const TripleSystem& ts);

// Exact-cover search for a resolution: cover the block set by parallel
// classes. Returns the decision; fills *witness (if non-null) with a
// validated resolution on success. Never reports false on overflow —
// exceeding node_budget throws std::runtime_error instead.
bool is_resolvable(const TripleSystem& ts, Resolution* witness = nullptr,
                   std::uint64_t node_budget = 200'000'000);

// Machine-checked structural facts about one STS(21) from the assembly
// family: flower and sub-STS(9) counts lie in {1,3,7}, stems are pairwise
// disjoint, sub-STS(9) supports pairwise meet in a block, and in the
// seven-flower case the stems partition the points with the supports
// forming an STS(7) on them.
struct TheoremReport {
    bool ok = true;
    int tau6 = 0;
    int sigma9 = 0;
    std::vector<std::string> violations;
};

TheoremReport check_structure_theorems(const TripleSystem& sts21);

// Census over classification records grouped by (tau6, sigma9, |Aut|).
struct TableRow {
    std::uint64_t classes = 0;
    std::uint64_t resolvable = 0;   // among those with a known flag
    std::uint64_t unknown = 0;      // records without a resolvability flag
};

struct TableReport {
    // key: (tau6, sigma9, aut_order)
    std::map<std::tuple<int, int, std::uint64_t>, TableRow> rows;
    std::uint64_t total_classes = 0;
    std::uint64_t total_resolvable = 0;
    std::uint64_t total_unknown = 0;

    std::string text() const;   // aligned human-readable table
    std::string json() const;   // machine rendering
};

TableReport table_report(const std::vector<assembler::ClassificationRecord>& records);

}  // namespace sts21::analysis
