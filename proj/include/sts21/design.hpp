// Core design types: triples, triple systems, transversal designs, latin
// squares, and the pair-coverage machinery everything else is built on.
//
// All point sets live on an initial segment 0..v-1 with v <= 21, so a point
// set is a 21-bit mask. Blocks are kept sorted lexicographically; every
// set-valued result is sorted, which makes serialization deterministic.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sts21 {

using Mask = std::uint32_t;  // subset of points 0..20

constexpr int kMaxPoints = 21;

inline int popcount(Mask m) { return __builtin_popcount(m); }

// Sorted 3-subset of points.
struct Triple {
    std::array<std::uint8_t, 3> pts{};  // strictly increasing
    Mask mask = 0;

    Triple() = default;
    Triple(int a, int b, int c);

    bool contains(int p) const { return (mask >> p) & 1u; }
    bool operator==(const Triple& o) const { return mask == o.mask; }
    bool operator<(const Triple& o) const {
        return pts < o.pts;  // lexicographic on sorted point lists
    }
    // Packed key preserving the lexicographic order, handy for sorting.
    std::uint32_t key() const {
        return (std::uint32_t(pts[0]) << 10) | (std::uint32_t(pts[1]) << 5) | pts[2];
    }
    std::string str() const;
};

Triple triple_from_mask(Mask m);

// Point count plus a sorted, duplicate-free block list.
struct TripleSystem {
    int v = 0;
    std::vector<Triple> blocks;

    TripleSystem() = default;
    TripleSystem(int v_, std::vector<Triple> blocks_);

    bool operator==(const TripleSystem& o) const { return v == o.v && blocks == o.blocks; }
};

struct TransversalDesign {
    std::array<Mask, 3> groups{};  // pairwise disjoint, equal size w
    std::vector<Triple> blocks;    // sorted

    int w() const { return popcount(groups[0]); }
    Mask support() const { return groups[0] | groups[1] | groups[2]; }
    TripleSystem as_system() const;
};

struct LatinSquare {
    int n = 0;
    std::vector<std::uint8_t> cells;  // row-major, n*n symbols in 0..n-1

    std::uint8_t at(int r, int c) const { return cells[r * n + c]; }
    std::uint8_t& at(int r, int c) { return cells[r * n + c]; }
    bool operator==(const LatinSquare& o) const { return n == o.n && cells == o.cells; }
    bool operator<(const LatinSquare& o) const { return cells < o.cells; }
};

// 11 blocks on a 9-point support; together with `missing` they form an
// STS(9). The missing triple need not be a block of any ambient system.
struct AlmostSts9 {
    Mask support = 0;
    std::vector<Triple> blocks;
    Triple missing;
};

// Structured validation outcome. Semantic violations are reported, never
// thrown; the negative-path tests rely on that.
struct ValidationReport {
    bool ok = true;
    std::vector<std::pair<int, int>> uncovered_pairs;
    std::vector<std::pair<int, int>> multi_covered_pairs;
    std::vector<std::string> structural_errors;  // bad block shape, count, ...

    std::string summary() const;
};

// O(1) pair -> block lookup after O(v^2 + blocks) preprocessing.
// third(x, y) is the third point of the unique block through x and y,
// or -1 when no block covers the pair (TDs: same-group pairs).
class PairTable {
  public:
    PairTable() { clear(); }
    PairTable(int v, const std::vector<Triple>& blocks);

    int third(int x, int y) const { return third_[x][y]; }
    int block_index(int x, int y) const { return block_idx_[x][y]; }
    void clear();
    // Returns false if some pair would be covered twice.
    bool build(int v, const std::vector<Triple>& blocks);

  private:
    std::int8_t third_[kMaxPoints][kMaxPoints];
    std::int16_t block_idx_[kMaxPoints][kMaxPoints];
};

ValidationReport validate_sts(const TripleSystem& ts);
ValidationReport validate_td(const TransversalDesign& td);

// An STS with its lookup table; the census operations do millions of
// pair lookups, so the table is built once per system.
struct StsView {
    const TripleSystem* ts = nullptr;
    PairTable table;

    explicit StsView(const TripleSystem& sys);
    Triple block_through(int x, int y) const;
};

TransversalDesign latin_to_td(const LatinSquare& square, const std::array<Mask, 3>& groups);
LatinSquare td_to_latin(const TransversalDesign& td);

// All blocks of a valid STS disjoint from block t (t must be a block).
std::vector<Triple> disjoint_blocks(const StsView& sts, const Triple& t);

// --- text design format -----------------------------------------------------
//
//   v=<n>
//   groups=a,b,..|c,d,..|e,f,..     (TDs only)
//   a,b,c                            one sorted block per line, blocks sorted

std::string format_design(const TripleSystem& ts);
std::string format_design(const TransversalDesign& td);

struct ParsedDesign {
    TripleSystem system;
    std::optional<std::array<Mask, 3>> groups;  // present for TDs
};

// Throws std::runtime_error on malformed input (syntax only; semantic
// validity is checked separately by the validators).
ParsedDesign parse_design(const std::string& text);

std::vector<int> mask_points(Mask m);
std::string mask_str(Mask m);

}  // namespace sts21
