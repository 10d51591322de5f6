#include "sts21/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sts21::analysis {

namespace {

// Backtracking over disjoint blocks, anchored on the smallest uncovered
// point so each class is produced exactly once.
void parallel_rec(const std::vector<Triple>& blocks, Mask covered, Mask all, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
    if (covered == all) {
        out.push_back(cur);
        return;
    }
    int p = __builtin_ctz(~covered & all);
    for (int i = 0; i < int(blocks.size()); ++i) {
        if (!blocks[i].contains(p) || (blocks[i].mask & covered)) continue;
        cur.push_back(i);
        parallel_rec(blocks, covered | blocks[i].mask, all, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> parallel_class_indices(const TripleSystem& ts) {
    Mask all = (ts.v == 32 ? ~0u : (1u << ts.v) - 1u);
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    parallel_rec(ts.blocks, 0, all, cur, out);
    return out;
}

using BlockSet = unsigned __int128;

struct CoverSearch {
    const std::vector<BlockSet>& classes;
    int nblocks;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> chosen;

    bool run(BlockSet covered) {
        if (++nodes > budget) throw std::runtime_error("resolvability search: node budget exceeded");
        BlockSet all = nblocks == 128 ? ~BlockSet(0) : (BlockSet(1) << nblocks) - 1;
        if (covered == all) return true;
        // branch on the uncovered block in the fewest remaining classes
        int best_block = -1;
        std::vector<int> best_cands;
        for (int b = 0; b < nblocks; ++b) {
            if (covered >> b & 1) continue;
            std::vector<int> cands;
            for (int c = 0; c < int(classes.size()); ++c)
                if ((classes[c] >> b & 1) && !(classes[c] & covered)) cands.push_back(c);
            if (cands.empty()) return false;
            if (best_block < 0 || cands.size() < best_cands.size()) {
                best_block = b;
                best_cands = std::move(cands);
                if (best_cands.size() == 1) break;
            }
        }
        for (int c : best_cands) {
            chosen.push_back(c);
            if (run(covered | classes[c])) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

std::vector<ParallelClass> parallel_classes(const TripleSystem& ts) {
    if (ts.v % 3 != 0) throw std::invalid_argument("parallel_classes: v not divisible by 3");
    auto rep = validate_sts(ts);
    if (!rep.ok) throw std::invalid_argument("parallel_classes: " + rep.summary());
    std::vector<ParallelClass> out;
    for (const auto& idx : parallel_class_indices(ts)) {
        ParallelClass pc;
        for (int i : idx) pc.push_back(ts.blocks[i]);
        out.push_back(std::move(pc));
    }
    return out;
}

bool is_resolvable(const TripleSystem& ts, Resolution* witness, std::uint64_t node_budget) {
    if (ts.v % 3 != 0) throw std::invalid_argument("is_resolvable: v not divisible by 3");
    auto rep = validate_sts(ts);
    if (!rep.ok) throw std::invalid_argument("is_resolvable: " + rep.summary());
    if (ts.blocks.size() > 128) throw std::invalid_argument("is_resolvable: too many blocks");

    auto class_indices = parallel_class_indices(ts);
    std::vector<BlockSet> classes;
    classes.reserve(class_indices.size());
    for (const auto& idx : class_indices) {
        BlockSet m = 0;
        for (int i : idx) m |= BlockSet(1) << i;
        classes.push_back(m);
    }
    CoverSearch search{classes, int(ts.blocks.size()), node_budget};
    if (!search.run(0)) return false;

    Resolution res;
    for (int c : search.chosen) {
        ParallelClass pc;
        for (int i : class_indices[c]) pc.push_back(ts.blocks[i]);
        res.push_back(std::move(pc));
    }
    // re-validate the witness independently of the search
    Mask all = (1u << ts.v) - 1u;
    std::set<Triple> seen;
    for (const auto& pc : res) {
        Mask cov = 0;
        for (const auto& b : pc) {
            if (cov & b.mask) throw std::logic_error("is_resolvable: witness class not disjoint");
            cov |= b.mask;
            if (!seen.insert(b).second) throw std::logic_error("is_resolvable: block reused");
        }
        if (cov != all) throw std::logic_error("is_resolvable: witness class incomplete");
    }
    if (seen.size() != ts.blocks.size()) throw std::logic_error("is_resolvable: blocks missing");
    if (witness) *witness = std::move(res);
    return true;
}

TheoremReport check_structure_theorems(const TripleSystem& sts21) {
    TheoremReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };
    if (sts21.v != 21) {
        fail("not a 21-point system");
        return rep;
    }
    auto vr = validate_sts(sts21);
    if (!vr.ok) {
        fail("invalid STS: " + vr.summary());
        return rep;
    }
    StsView view(sts21);
    auto flowers = assembler::find_flowers(sts21);
    auto [sigma, supports] = assembler::count_sub_sts9(sts21);
    rep.tau6 = int(flowers.size());
    rep.sigma9 = sigma;

    if (rep.tau6 != 1 && rep.tau6 != 3 && rep.tau6 != 7)
        fail("flower count " + std::to_string(rep.tau6) + " not in {1,3,7}");
    if (sigma != 1 && sigma != 3 && sigma != 7)
        fail("sub-STS(9) count " + std::to_string(sigma) + " not in {1,3,7}");
    if ((rep.tau6 == 7) != (sigma == 7))
        fail("tau6 = 7 and sigma9 = 7 must occur together");

    for (std::size_t i = 0; i < flowers.size(); ++i)
        for (std::size_t j = i + 1; j < flowers.size(); ++j)
            if (flowers[i].stem.mask & flowers[j].stem.mask)
                fail("stems " + flowers[i].stem.str() + " and " + flowers[j].stem.str() +
                     " not disjoint");

    // every flower's full petals are sub-STS(9) supports
    for (const auto& f : flowers) {
        std::vector<int> full =
            f.stem_is_block ? std::vector<int>{0, 1, 2} : std::vector<int>{f.sts_petal};
        for (int p : full) {
            Mask sup = f.stem.mask | f.petals[p];
            if (std::find(supports.begin(), supports.end(), sup) == supports.end())
                fail("full petal support " + mask_str(sup) + " missing from sub-STS(9) list");
        }
    }

    // two sub-STS(9) meet in a subsystem of order 3, i.e. a block
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j) {
            Mask m = supports[i] & supports[j];
            if (popcount(m) != 3) {
                fail("supports " + mask_str(supports[i]) + " and " + mask_str(supports[j]) +
                     " meet in " + std::to_string(popcount(m)) + " points");
                continue;
            }
            auto pts = mask_points(m);
            if (view.table.third(pts[0], pts[1]) != pts[2])
                fail("support intersection " + mask_str(m) + " is not a block");
        }

    if (rep.tau6 == 7) {
        Mask stem_union = 0;
        for (const auto& f : flowers) stem_union |= f.stem.mask;
        if (stem_union != (1u << 21) - 1u) fail("seven stems do not partition the points");
        // each support is a union of three stems; each stem pair lies in
        // exactly one support -> an STS(7) on the stems
        for (Mask sup : supports) {
            int inside = 0;
            for (const auto& f : flowers) {
                Mask m = f.stem.mask & sup;
                if (m == f.stem.mask)
                    ++inside;
                else if (m != 0)
                    fail("support " + mask_str(sup) + " cuts stem " + f.stem.str());
            }
            if (inside != 3) fail("support " + mask_str(sup) + " is not a union of three stems");
        }
        for (std::size_t i = 0; i < flowers.size(); ++i)
            for (std::size_t j = i + 1; j < flowers.size(); ++j) {
                Mask pair = flowers[i].stem.mask | flowers[j].stem.mask;
                int through = 0;
                for (Mask sup : supports)
                    if ((pair & ~sup) == 0) ++through;
                if (through != 1)
                    fail("stem pair " + mask_str(pair) + " lies in " + std::to_string(through) +
                         " supports");
            }
    }
    return rep;
}

TableReport table_report(const std::vector<assembler::ClassificationRecord>& records) {
    TableReport t;
    for (const auto& r : records) {
        auto& row = t.rows[{r.tau6, r.sigma9, r.aut_order}];
        ++row.classes;
        ++t.total_classes;
        if (!r.resolvable) {
            ++row.unknown;
            ++t.total_unknown;
        } else if (*r.resolvable) {
            ++row.resolvable;
            ++t.total_resolvable;
        }
    }
    return t;
}

std::string TableReport::text() const {
    std::ostringstream os;
    os << "tau6 sigma9       |Aut|       classes   resolvable\n";
    int last_tau = -1, last_sigma = -1;
    for (const auto& [key, row] : rows) {
        auto [tau, sigma, aut] = key;
        if (tau != last_tau || sigma != last_sigma) {
            if (last_tau != -1) os << "\n";
            last_tau = tau;
            last_sigma = sigma;
        }
        char line[96];
        std::snprintf(line, sizeof line, "%4d %6d %11llu %13llu   %10llu%s\n", tau, sigma,
                      static_cast<unsigned long long>(aut),
                      static_cast<unsigned long long>(row.classes),
                      static_cast<unsigned long long>(row.resolvable),
                      row.unknown ? " (+unknown)" : "");
        os << line;
    }
    os << "\ntotal classes: " << total_classes << "\n";
    os << "total resolvable: " << total_resolvable;
    if (total_unknown) os << " (" << total_unknown << " not tested)";
    os << "\n";
    return os.str();
}

std::string TableReport::json() const {
    nlohmann::json j;
    j["total_classes"] = total_classes;
    j["total_resolvable"] = total_resolvable;
    j["total_unknown"] = total_unknown;
    j["rows"] = nlohmann::json::array();
    for (const auto& [key, row] : rows) {
        auto [tau, sigma, aut] = key;
        j["rows"].push_back({{"tau6", tau},
                             {"sigma9", sigma},
                             {"aut_order", aut},
                             {"classes", row.classes},
                             {"resolvable", row.resolvable},
                             {"unknown", row.unknown}});
    }
    return j.dump(2);
}

}  // namespace sts21::analysis
