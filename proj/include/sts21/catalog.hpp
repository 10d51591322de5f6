// Exhaustive generators for the building blocks of the assembly pipeline:
// all labeled STS(9) on a given support, the main-class catalog of
// TD(3,6)/order-6 latin squares, and sub-TD(3,3) structure of a TD.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sts21/design.hpp"

namespace sts21::catalog {

// All distinct STS block sets on the labeled points of `support`
// (7 or 9 points). Deterministic order (lexicographic in the
// backtracking), no duplicates.
std::vector<TripleSystem> enumerate_sts9(Mask support);

// Members of `family` containing every triple in `required` as a block.
// The required triples must be pairwise disjoint (at most 3 of them).
std::vector<TripleSystem> sts9_with_blocks(const std::vector<TripleSystem>& family,
                                           const std::vector<Triple>& required);

// The STS(9) family on a fixed support, with the subfamilies used by the
// assembly step precomputed as index lists into `all`.
struct Sts9Family {
    Mask support = 0;
    std::vector<TripleSystem> all;  // 840 systems

    std::vector<int> with_block(const Triple& d) const;
    std::vector<int> with_blocks(const std::vector<Triple>& required) const;
    // with_block(d) members with d deleted; missing triple = d.
    std::vector<AlmostSts9> almost(const Triple& d) const;
};

Sts9Family build_sts9_family(Mask support);

// One sub-TD(3,3) of a TD(3,6): half of each group plus its 9 blocks.
struct SubTd33 {
    std::array<Mask, 3> half_groups{};
    std::vector<int> block_indices;  // into the parent block list
};

// A partition of a TD(3,6) block set into four sub-TD(3,3). The halves
// follow the complementary pattern A0B0C0 / A0B1C1 / A1B0C1 / A1B1C0.
struct SubTdPartition {
    std::array<Mask, 2> a_halves{}, b_halves{}, c_halves{};
    std::array<SubTd33, 4> parts{};
};

// Every sub-TD(3,3) of td, grouped into partitions of the block set.
std::vector<SubTdPartition> subtd33_structure(const TransversalDesign& td);

struct Td36Catalog {
    // Pairwise non-isomorphic representatives on fixed groups, each the
    // lexicographically least square of its main class (rows concatenated).
    std::vector<TransversalDesign> representatives;
    std::vector<LatinSquare> squares;             // same order as representatives
    std::vector<std::uint64_t> class_sizes;       // distinct latin squares per class
    std::vector<std::uint64_t> paratopism_stab;   // autoparatopism group orders
};

// Main-class catalog of order-n latin squares as TDs on the given groups.
// Class sizes come from orbit-stabilizer over the paratopism group.
Td36Catalog enumerate_td_main_classes(int n, const std::array<Mask, 3>& groups);

// Relabel a representative so that, if it splits into sub-TD(3,3)s, the
// split halves land on the designated low/high halves of each group
// (frame order: low half = first three points of the group). Identity
// when the design does not split.
TransversalDesign align_representative(const TransversalDesign& td,
                                       const std::array<std::array<Mask, 2>, 3>& frame_halves);

// Lexicographically least square in the main class of `sq` (rows
// concatenated), minimizing over the 6 conjugates and all row/column/
// symbol permutations. Also reports the autoparatopism group order.
LatinSquare main_class_canonical(const LatinSquare& sq, std::uint64_t* stab_order = nullptr);

std::vector<LatinSquare> enumerate_reduced_squares(int n);

}  // namespace sts21::catalog
