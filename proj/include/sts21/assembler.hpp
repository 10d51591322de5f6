// The classification pipeline: fix the seven-set frame, stream every
// STS(21) containing a fixed TD(3,6) representative, reject isomorphs and
// compute the subdesign census (flowers, tau6, sigma9) per class.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sts21/catalog.hpp"
#include "sts21/design.hpp"

namespace sts21::assembler {

// The fixed 21-point frame: seven labeled 3-sets. The stem of the fixed
// flower is sets[0]; the petals are the unions of the half pairs.
struct Frame {
    // A001, A010, A011, A100, A101, A110, A111
    static constexpr std::array<Mask, 7> sets = {
        0x7u << 0, 0x7u << 3, 0x7u << 6, 0x7u << 9, 0x7u << 12, 0x7u << 15, 0x7u << 18};
    static constexpr Mask stem() { return sets[0]; }
    static constexpr std::array<Mask, 3> petals() {
        return {sets[1] | sets[2], sets[3] | sets[4], sets[5] | sets[6]};
    }
    static constexpr std::array<std::array<Mask, 2>, 3> petal_halves() {
        return {{{sets[1], sets[2]}, {sets[3], sets[4]}, {sets[5], sets[6]}}};
    }
};

struct Flower {
    Triple stem;
    std::array<Mask, 3> petals;  // sorted by least point
    bool stem_is_block = false;
    // Petal carrying the full sub-STS(9); -1 when the stem is a block
    // (then all three petal+stem supports carry one).
    int sts_petal = -1;
};

struct ClassificationRecord {
    std::uint64_t cert_hash = 0;
    int tau6 = 0;
    int sigma9 = 0;
    std::uint64_t aut_order = 0;
    std::optional<bool> resolvable;
    TripleSystem blocks;  // canonical representative
};

enum class Mode { Full, TauGe3, TauEq7 };

// Union of the TD blocks and the three petal parts. Each part is the
// block list of a (almost-)STS(9) on petal+stem; exactly one of the four
// admissible membership patterns must hold, otherwise this throws.
TripleSystem assemble(const TransversalDesign& td, const std::vector<Triple>& part_a,
                      const std::vector<Triple>& part_b, const std::vector<Triple>& part_c);

// All flowers of a valid STS(21), by exhaustive search over the 1330
// candidate stems.
std::vector<Flower> find_flowers(const TripleSystem& sts21);

// All 9-point subsets closed under the system (sigma9 and the supports).
std::pair<int, std::vector<Mask>> count_sub_sts9(const TripleSystem& sts21);

// tau6 predicted from the sub-TD(3,3) partition structure of td alone;
// must agree with find_flowers.
int predict_tau(const TripleSystem& sts21, const Flower& flower, const TransversalDesign& td);
int predict_tau(const TripleSystem& sts21, const Flower& flower, const TransversalDesign& td,
                const std::vector<catalog::SubTdPartition>& partitions);

// Streams the STS(21) candidates built on one aligned representative.
// Full mode yields 120^3 + 3*720*120^2 candidates; the tau modes filter
// by the half-group block conditions over the representative's sub-TD
// partitions (empty when the representative does not split).
class CandidateStream {
  public:
    CandidateStream(const TransversalDesign& aligned_rep, const catalog::Sts9Family& fam_a,
                    Mode mode);

    // Returns false when exhausted. On success fills `out` (70 blocks).
    bool next(TripleSystem& out);
    std::uint64_t position() const { return pos_; }
    void seek(std::uint64_t position);
    std::uint64_t total_candidates() const;
    const TransversalDesign& representative() const { return td_; }
    const std::vector<catalog::SubTdPartition>& partitions() const { return partitions_; }

    // Index decomposition of a linear candidate position.
    struct Coords {
        int pattern;  // 0: A' B* C*, 1: A\A' B* C*, 2: A* B\B' C*, 3: A* B* C\C'
        int ia, ib, ic;
    };
    Coords coords(std::uint64_t position) const;
    bool passes_filter(const Coords& c) const;
    TripleSystem build(const Coords& c) const;

  private:
    TransversalDesign td_;
    Mode mode_;
    std::vector<catalog::SubTdPartition> partitions_;
    // per petal family: 840 block lists in 21-point labels
    std::array<std::vector<std::vector<Triple>>, 3> fams_;
    std::array<std::vector<int>, 3> prime_, nonprime_;  // indices with/without the stem block
    // cond_[f][m]: bitmask over partitions whose two halves of petal f are
    // both blocks of family member m
    std::array<std::vector<std::uint32_t>, 3> cond_;
    std::uint64_t pos_ = 0;
};

struct ClassifyOptions {
    Mode mode = Mode::TauGe3;
    int thread_count = 1;
    std::string checkpoint_dir;          // empty: no checkpointing
    std::uint64_t checkpoint_every = 10'000'000;
    std::function<void(const std::string&)> progress;  // optional, stderr-style
    bool cross_check = true;             // find_flowers == predict_tau per candidate
    const catalog::Td36Catalog* td_catalog = nullptr;  // reuse a prebuilt catalog
};

// Full pipeline over all 12 aligned representatives. Output sorted by
// certificate; identical for any thread count.
std::vector<ClassificationRecord> classify_pipeline(const ClassifyOptions& opts);

// JSONL I/O for classification records.
std::string record_to_json(const ClassificationRecord& rec);
ClassificationRecord record_from_json(const std::string& line);

}  // namespace sts21::assembler
