// Canonical certificates, isomorphism testing and automorphism groups for
// triple systems and transversal designs.
//
// The certificate comes from a refinement/individualization search over
// point labelings: iterated signature refinement of the point coloring,
// individualization of the first smallest non-singleton cell, depth-first
// traversal keeping the lexicographically least leaf, with orbit pruning
// from automorphisms discovered along the way. Two designs are isomorphic
// iff their certificates are byte-identical.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sts21/design.hpp"

namespace sts21::canon {

struct CanonicalRecord {
    std::string certificate;       // canonical design in text format
    std::uint64_t aut_order = 0;   // |Aut|, from exhaustive automorphism search
    std::uint64_t cert_hash() const;
};

enum class DesignKind { Sts, Td };

// A design prepared for the canonical machinery: block list, pair table
// and the label-invariant initial point coloring.
class CanonInput {
  public:
    CanonInput(const TripleSystem& ts);          // STS, v in {7, 9, 21}
    CanonInput(const TransversalDesign& td);

    DesignKind kind() const { return kind_; }
    int v() const { return v_; }
    const std::vector<Triple>& blocks() const { return blocks_; }
    int third(int x, int y) const { return table_.third(x, y); }

    // Multiset of pair cycle-structure values over all point pairs; cheap
    // label-invariant used for bucketing before full canonicalization.
    std::uint64_t invariant_hash() const { return invariant_hash_; }
    const std::vector<std::uint32_t>& point_colors() const { return init_colors_; }

    std::string canonical_certificate() const;
    // Canonically relabeled, sorted block list (the certificate body).
    std::vector<Triple> canonical_blocks() const;
    // Complete automorphism search; returns |Aut| and optionally the
    // permutations themselves (as point maps).
    std::uint64_t aut_count(std::vector<std::vector<std::uint8_t>>* elements = nullptr) const;
    std::uint64_t aut_order_orbit_stabilizer() const;

  private:
    void finish_setup();

    DesignKind kind_ = DesignKind::Sts;
    int v_ = 0;
    std::vector<Triple> blocks_;
    PairTable table_;
    std::array<Mask, 3> groups_{};  // TDs only
    std::vector<std::uint32_t> init_colors_;
    std::uint64_t invariant_hash_ = 0;
};

CanonicalRecord canonical_form(const TripleSystem& ts);
CanonicalRecord canonical_form(const TransversalDesign& td);

bool are_isomorphic(const TripleSystem& a, const TripleSystem& b);
bool are_isomorphic(const TransversalDesign& a, const TransversalDesign& b);

// Exhaustive oracle over all v! bijections; v <= 9 only.
bool brute_force_isomorphic(const TripleSystem& a, const TripleSystem& b);

std::uint64_t aut_order_orbit_stabilizer(const TripleSystem& ts);
std::uint64_t aut_order_orbit_stabilizer(const TransversalDesign& td);

std::uint64_t hash64(const void* data, std::size_t len);  // FNV-1a

}  // namespace sts21::canon
