#include "sts21/assembler.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "sts21/canonical.hpp"

namespace sts21::assembler {

namespace detail {

bool is_block(const PairTable& t, Mask m) {
    int a = __builtin_ctz(m);
    Mask r = m & (m - 1);
    int b = __builtin_ctz(r);
    int c = __builtin_ctz(r & (r - 1));
    return t.third(a, b) == c;
}

// Checks that the blocks inside petal|stem form a sub-STS(9) (12 blocks)
// or an almost-sub-STS(9) missing the stem (11 blocks).
bool petal_structure(const std::vector<Mask>& bmasks, Mask petal, Mask stem, bool& is_full) {
    Mask sup = petal | stem;
    int local[kMaxPoints];
    auto pts = mask_points(sup);
    for (int i = 0; i < 9; ++i) local[pts[i]] = i;
    bool cover[9][9] = {};
    int count = 0;
    for (Mask bm : bmasks) {
        if (bm & ~sup) continue;
        ++count;
        auto bp = mask_points(bm);
        int a = local[bp[0]], b = local[bp[1]], c = local[bp[2]];
        if (cover[a][b] || cover[a][c] || cover[b][c]) return false;
        cover[a][b] = cover[a][c] = cover[b][c] = true;
    }
    auto sp = mask_points(stem);
    int s0 = local[sp[0]], s1 = local[sp[1]], s2 = local[sp[2]];
    if (s0 > s1) std::swap(s0, s1);
    if (s1 > s2) std::swap(s1, s2);
    if (s0 > s1) std::swap(s0, s1);
    bool stem_covered = cover[s0][s1] && cover[s0][s2] && cover[s1][s2];
    if (count == 12) {
        is_full = true;
        return true;  // 12 blocks, 36 distinct pairs: exact cover of C(9,2)
    }
    if (count == 11) {
        is_full = false;
        // 33 distinct pairs; a valid almost-sub-STS misses exactly the stem pairs
        return !stem_covered && !cover[s0][s1] && !cover[s0][s2] && !cover[s1][s2];
    }
    return false;
}

std::vector<Flower> find_flowers_impl(const std::vector<Triple>& blocks, const PairTable& t) {
    std::vector<Mask> bmasks;
    bmasks.reserve(blocks.size());
    for (const auto& b : blocks) bmasks.push_back(b.mask);

    std::vector<Flower> out;
    for (int d0 = 0; d0 < 21; ++d0)
        for (int d1 = d0 + 1; d1 < 21; ++d1)
            for (int d2 = d1 + 1; d2 < 21; ++d2) {
                Mask stem = (1u << d0) | (1u << d1) | (1u << d2);
                const int stem_pts[3] = {d0, d1, d2};
                // closure components of the outside points: a petal is a
                // union of components under x ~ third(x, d). Union by size
                // with early rejection once a component exceeds 6 points.
                int parent[21], csize[21];
                for (int x = 0; x < 21; ++x) parent[x] = x, csize[x] = 1;
                auto find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                bool feasible = true;
                for (int x = 0; x < 21 && feasible; ++x) {
                    if (stem >> x & 1) continue;
                    for (int d : stem_pts) {
                        int tp = t.third(x, d);
                        if (stem >> tp & 1) continue;
                        int a = find(x), b = find(tp);
                        if (a == b) continue;
                        if (csize[a] + csize[b] > 6) {
                            feasible = false;
                            break;
                        }
                        if (csize[a] < csize[b]) std::swap(a, b);
                        parent[b] = a;
                        csize[a] += csize[b];
                    }
                }
                if (!feasible) continue;
                Mask comp_mask[21] = {};
                for (int x = 0; x < 21; ++x)
                    if (!(stem >> x & 1)) comp_mask[find(x)] |= 1u << x;
                Mask comps[9];
                int ncomps = 0;
                for (int x = 0; x < 21; ++x)
                    if (comp_mask[x]) comps[ncomps++] = comp_mask[x];

                bool stem_is_block = t.third(d0, d1) == d2;
                // merge components into three petals of size 6
                std::array<Mask, 3> petals{};
                std::array<int, 3> sizes{};
                auto emit = [&]() {
                    std::array<Mask, 3> p = petals;
                    std::sort(p.begin(), p.end(), [](Mask a, Mask b) {
                        return (a & -a) < (b & -b);
                    });
                    int full_count = 0, full_at = -1;
                    for (int i = 0; i < 3; ++i) {
                        bool is_full = false;
                        if (!petal_structure(bmasks, p[i], stem, is_full)) return;
                        if (is_full) {
                            ++full_count;
                            full_at = i;
                        }
                    }
                    bool ok = stem_is_block ? full_count == 3 : full_count == 1;
                    if (!ok) return;
                    Flower f;
                    f.stem = Triple(d0, d1, d2);
                    f.petals = p;
                    f.stem_is_block = stem_is_block;
                    f.sts_petal = stem_is_block ? -1 : full_at;
                    out.push_back(f);
                };
                auto rec = [&](auto&& self, int k) -> void {
                    if (k == ncomps) {
                        emit();
                        return;
                    }
                    int sz = popcount(comps[k]);
                    for (int p = 0; p < 3; ++p) {
                        if (p > 0 && sizes[p - 1] == 0) break;  // petals unordered
                        if (sizes[p] + sz > 6) continue;
                        sizes[p] += sz;
                        petals[p] |= comps[k];
                        self(self, k + 1);
                        sizes[p] -= sz;
                        petals[p] &= ~comps[k];
                    }
                };
                rec(rec, 0);
            }
    return out;
}

std::pair<int, std::vector<Mask>> count_sub_sts9_impl(const std::vector<Triple>& blocks,
                                                      const PairTable& t) {
    std::vector<Mask> supports;
    const std::size_t n = blocks.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (blocks[i].mask & blocks[j].mask) continue;
            Mask m = blocks[i].mask | blocks[j].mask;
            bool known = false;
            for (Mask s : supports)
                if ((m & ~s) == 0) {
                    known = true;
                    break;
                }
            if (known) continue;
            // close under block_through: pair every point with all earlier
            // ones, appending new thirds until stable or past 9 points
            int pts[10], np = 0;
            for (Mask s = m; s; s &= s - 1) pts[np++] = __builtin_ctz(s);
            bool overflow = false;
            for (int a = 1; a < np && !overflow; ++a)
                for (int b = 0; b < a; ++b) {
                    int tp = t.third(pts[a], pts[b]);
                    if (m >> tp & 1) continue;
                    if (np == 9) {
                        overflow = true;
                        break;
                    }
                    m |= 1u << tp;
                    pts[np++] = tp;
                }
            if (!overflow && np == 9 &&
                std::find(supports.begin(), supports.end(), m) == supports.end())
                supports.push_back(m);
        }
    std::sort(supports.begin(), supports.end());
    return {int(supports.size()), supports};
}

int predict_tau_impl(const PairTable& t, const std::vector<catalog::SubTdPartition>& partitions) {
    std::set<Mask> stems;
    for (const auto& part : partitions) {
        const std::array<std::array<Mask, 2>, 3> halves = {part.a_halves, part.b_halves,
                                                           part.c_halves};
        for (int g = 0; g < 3; ++g) {
            bool others_are_blocks = true;
            for (int o = 0; o < 3 && others_are_blocks; ++o) {
                if (o == g) continue;
                for (int h = 0; h < 2; ++h)
                    if (!is_block(t, halves[o][h])) {
                        others_are_blocks = false;
                        break;
                    }
            }
            if (!others_are_blocks) continue;
            stems.insert(halves[g][0]);
            stems.insert(halves[g][1]);
        }
    }
    return 1 + int(stems.size());
}

}  // namespace detail

TripleSystem assemble(const TransversalDesign& td, const std::vector<Triple>& part_a,
                      const std::vector<Triple>& part_b, const std::vector<Triple>& part_c) {
    std::vector<Triple> blocks = td.blocks;
    blocks.insert(blocks.end(), part_a.begin(), part_a.end());
    blocks.insert(blocks.end(), part_b.begin(), part_b.end());
    blocks.insert(blocks.end(), part_c.begin(), part_c.end());
    TripleSystem out(21, std::move(blocks));
    auto rep = validate_sts(out);
    if (!rep.ok)
        throw std::invalid_argument("assemble: membership pattern violated: " + rep.summary());
    return out;
}

std::vector<Flower> find_flowers(const TripleSystem& sts21) {
    StsView view(sts21);
    return detail::find_flowers_impl(sts21.blocks, view.table);
}

std::pair<int, std::vector<Mask>> count_sub_sts9(const TripleSystem& sts21) {
    StsView view(sts21);
    return detail::count_sub_sts9_impl(sts21.blocks, view.table);
}

int predict_tau(const TripleSystem& sts21, const Flower& flower, const TransversalDesign& td) {
    return predict_tau(sts21, flower, td, catalog::subtd33_structure(td));
}

int predict_tau(const TripleSystem& sts21, const Flower& flower, const TransversalDesign& td,
                const std::vector<catalog::SubTdPartition>& partitions) {
    StsView view(sts21);
    std::array<Mask, 3> petals = flower.petals;
    std::array<Mask, 3> groups = td.groups;
    std::sort(petals.begin(), petals.end());
    std::sort(groups.begin(), groups.end());
    if (petals != groups) throw std::invalid_argument("predict_tau: flower petals != td groups");
    for (const auto& b : td.blocks)
        if (!std::binary_search(sts21.blocks.begin(), sts21.blocks.end(), b))
            throw std::invalid_argument("predict_tau: td is not a subdesign");
    return detail::predict_tau_impl(view.table, partitions);
}

// --- candidate stream -------------------------------------------------------

CandidateStream::CandidateStream(const TransversalDesign& aligned_rep,
                                 const catalog::Sts9Family& fam_a, Mode mode)
    : td_(aligned_rep), mode_(mode) {
    partitions_ = catalog::subtd33_structure(td_);
    if (partitions_.size() > 32) throw std::logic_error("too many sub-TD partitions");

    const Triple stem = triple_from_mask(Frame::stem());
    // families B and C are the A family relabeled petal-to-petal
    for (int f = 0; f < 3; ++f) {
        int shift = f == 0 ? 0 : (f == 1 ? 6 : 12);  // 3..8 -> 9..14 -> 15..20
        fams_[f].reserve(fam_a.all.size());
        for (const auto& ts : fam_a.all) {
            std::vector<Triple> bl;
            bl.reserve(12);
            for (const auto& b : ts.blocks) {
                int p[3];
                for (int i = 0; i < 3; ++i)
                    p[i] = b.pts[i] < 3 ? b.pts[i] : b.pts[i] + shift;
                bl.emplace_back(p[0], p[1], p[2]);
            }
            std::sort(bl.begin(), bl.end());
            fams_[f].push_back(std::move(bl));
        }
        cond_[f].assign(fams_[f].size(), 0);
        for (std::size_t m = 0; m < fams_[f].size(); ++m) {
            bool has_stem = false;
            for (const auto& b : fams_[f][m])
                if (b.mask == stem.mask) has_stem = true;
            (has_stem ? prime_[f] : nonprime_[f]).push_back(int(m));
            std::uint32_t bits = 0;
            for (std::size_t j = 0; j < partitions_.size(); ++j) {
                const auto& part = partitions_[j];
                Mask h0 = f == 0 ? part.a_halves[0] : f == 1 ? part.b_halves[0] : part.c_halves[0];
                Mask h1 = f == 0 ? part.a_halves[1] : f == 1 ? part.b_halves[1] : part.c_halves[1];
                bool both = false, b0 = false, b1 = false;
                for (const auto& b : fams_[f][m]) {
                    if (b.mask == h0) b0 = true;
                    if (b.mask == h1) b1 = true;
                }
                both = b0 && b1;
                if (both) bits |= 1u << j;
            }
            cond_[f][m] = bits;
        }
        if (prime_[f].size() != 120 || nonprime_[f].size() != 720)
            throw std::logic_error("unexpected STS(9) family split");
    }
}

std::uint64_t CandidateStream::total_candidates() const {
    const std::uint64_t p = 120, q = 720;
    return p * p * p + 3 * q * p * p;
}

CandidateStream::Coords CandidateStream::coords(std::uint64_t pos) const {
    const std::uint64_t p = 120, q = 720;
    Coords c{};
    if (pos < p * p * p) {
        c.pattern = 0;
        c.ia = int(pos / (p * p));
        c.ib = int(pos / p % p);
        c.ic = int(pos % p);
        return c;
    }
    pos -= p * p * p;
    c.pattern = 1 + int(pos / (q * p * p));
    pos %= q * p * p;
    if (c.pattern == 1) {
        c.ia = int(pos / (p * p));
        c.ib = int(pos / p % p);
        c.ic = int(pos % p);
    } else if (c.pattern == 2) {
        c.ib = int(pos / (p * p));
        c.ia = int(pos / p % p);
        c.ic = int(pos % p);
    } else {
        c.ic = int(pos / (p * p));
        c.ia = int(pos / p % p);
        c.ib = int(pos % p);
    }
    return c;
}

bool CandidateStream::passes_filter(const Coords& c) const {
    if (mode_ == Mode::Full) return true;
    std::uint32_t ca = cond_[0][c.pattern == 1 ? nonprime_[0][c.ia] : prime_[0][c.ia]];
    std::uint32_t cb = cond_[1][c.pattern == 2 ? nonprime_[1][c.ib] : prime_[1][c.ib]];
    std::uint32_t cc = cond_[2][c.pattern == 3 ? nonprime_[2][c.ic] : prime_[2][c.ic]];
    if (mode_ == Mode::TauEq7) return (ca & cb & cc) != 0;
    return ((ca & cb) | (ca & cc) | (cb & cc)) != 0;
}

TripleSystem CandidateStream::build(const Coords& c) const {
    const Triple stem = triple_from_mask(Frame::stem());
    std::vector<Triple> blocks = td_.blocks;
    blocks.reserve(70);
    auto append = [&](int f, int member, bool drop_stem) {
        for (const auto& b : fams_[f][member]) {
            if (drop_stem && b.mask == stem.mask) continue;
            blocks.push_back(b);
        }
    };
    // pattern 0: A' B* C*; 1: (A\A') B* C*; 2: A* (B\B') C*; 3: A* B* (C\C')
    append(0, c.pattern == 1 ? nonprime_[0][c.ia] : prime_[0][c.ia], c.pattern >= 2);
    append(1, c.pattern == 2 ? nonprime_[1][c.ib] : prime_[1][c.ib], c.pattern != 2);
    append(2, c.pattern == 3 ? nonprime_[2][c.ic] : prime_[2][c.ic], c.pattern != 3);
    return TripleSystem(21, std::move(blocks));
}

bool CandidateStream::next(TripleSystem& out) {
    const std::uint64_t total = total_candidates();
    while (pos_ < total) {
        Coords c = coords(pos_);
        ++pos_;
        if (!passes_filter(c)) continue;
        out = build(c);
        return true;
    }
    return false;
}

void CandidateStream::seek(std::uint64_t position) { pos_ = position; }

// --- classification pipeline ------------------------------------------------

namespace {

struct StoreValue {
    int tau6 = 0;
    int sigma9 = 0;
};

using ClassStore = std::map<std::string, StoreValue>;  // packed canonical blocks -> census

std::string pack_blocks(const std::vector<Triple>& blocks) {
    std::string s;
    s.reserve(blocks.size() * 3);
    for (const auto& b : blocks) {
        s.push_back(char(b.pts[0]));
        s.push_back(char(b.pts[1]));
        s.push_back(char(b.pts[2]));
    }
    return s;
}

TripleSystem unpack_blocks(const std::string& s, int v) {
    std::vector<Triple> blocks;
    for (std::size_t i = 0; i + 2 < s.size(); i += 3)
        blocks.emplace_back(s[i], s[i + 1], s[i + 2]);
    return TripleSystem(v, std::move(blocks));
}

struct CandidateCensus {
    int tau6 = 0;
    int sigma9 = 0;
};

CandidateCensus census_of(const TripleSystem& cand, const PairTable& table,
                          const std::vector<catalog::SubTdPartition>& partitions,
                          bool cross_check) {
    auto flowers = detail::find_flowers_impl(cand.blocks, table);
    auto [sigma, supports] = detail::count_sub_sts9_impl(cand.blocks, table);
    CandidateCensus c;
    c.tau6 = int(flowers.size());
    c.sigma9 = sigma;
    if (cross_check) {
        int predicted = detail::predict_tau_impl(table, partitions);
        if (predicted != c.tau6)
            throw std::logic_error("predict_tau (" + std::to_string(predicted) +
                                   ") != find_flowers (" + std::to_string(c.tau6) + ")");
        bool constructed_found = false;
        for (const auto& f : flowers)
            if (f.stem.mask == Frame::stem()) constructed_found = true;
        if (!constructed_found) throw std::logic_error("constructed flower not found");
    }
    return c;
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Full: return "full";
        case Mode::TauGe3: return "tau3plus";
        case Mode::TauEq7: return "tau7";
    }
    return "?";
}

struct Checkpoint {
    int rep = 0;
    std::uint64_t pos = 0;
    ClassStore store;
};

std::string checkpoint_path(const std::string& dir, Mode mode) {
    return dir + "/classify_" + mode_name(mode) + ".ckpt";
}

void save_checkpoint(const std::string& dir, Mode mode, const Checkpoint& ck) {
    std::filesystem::create_directories(dir);
    std::string tmp = checkpoint_path(dir, mode) + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        os << "sts21-checkpoint 1 " << mode_name(mode) << " " << ck.rep << " " << ck.pos << " "
           << ck.store.size() << "\n";
        for (const auto& [key, val] : ck.store) {
            os << val.tau6 << " " << val.sigma9 << " ";
            for (unsigned char ch : key) os << int(ch) << ",";
            os << "\n";
        }
    }
    std::filesystem::rename(tmp, checkpoint_path(dir, mode));
}

bool load_checkpoint(const std::string& dir, Mode mode, Checkpoint& ck) {
    std::ifstream is(checkpoint_path(dir, mode), std::ios::binary);
    if (!is) return false;
    std::string magic, m;
    int version;
    std::size_t count;
    is >> magic >> version >> m >> ck.rep >> ck.pos >> count;
    if (magic != "sts21-checkpoint" || version != 1 || m != mode_name(mode)) return false;
    for (std::size_t i = 0; i < count; ++i) {
        StoreValue val;
        std::string pts;
        is >> val.tau6 >> val.sigma9 >> pts;
        std::string key;
        std::istringstream ps(pts);
        std::string tok;
        while (std::getline(ps, tok, ',')) key.push_back(char(std::stoi(tok)));
        ck.store.emplace(std::move(key), val);
    }
    return bool(is);
}

}  // namespace

std::vector<ClassificationRecord> classify_pipeline(const ClassifyOptions& opts) {
    auto say = [&](const std::string& s) {
        if (opts.progress) opts.progress(s);
    };
    say("building STS(9) family");
    auto fam_a = catalog::build_sts9_family(0x1FFu);  // points 0..8
    catalog::Td36Catalog owned_catalog;
    const catalog::Td36Catalog* cat = opts.td_catalog;
    if (!cat) {
        say("building TD(3,6) main-class catalog");
        owned_catalog = catalog::enumerate_td_main_classes(6, Frame::petals());
        cat = &owned_catalog;
    }

    Checkpoint ck;
    bool resumed = false;
    if (!opts.checkpoint_dir.empty() && load_checkpoint(opts.checkpoint_dir, opts.mode, ck)) {
        resumed = true;
        say("resuming from checkpoint: rep " + std::to_string(ck.rep) + " pos " +
            std::to_string(ck.pos) + ", " + std::to_string(ck.store.size()) + " classes");
    }

    const int threads = std::max(1, opts.thread_count);
    for (int r = resumed ? ck.rep : 0; r < int(cat->representatives.size()); ++r) {
        auto aligned = catalog::align_representative(cat->representatives[r],
                                                     Frame::petal_halves());
        CandidateStream probe(aligned, fam_a, opts.mode);
        const std::uint64_t total = probe.total_candidates();
        const std::uint64_t start = (resumed && r == ck.rep) ? ck.pos : 0;
        say("representative " + std::to_string(r) + ": " +
            std::to_string(probe.partitions().size()) + " sub-TD partition(s)");

        auto work = [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t stride,
                        std::uint64_t offset, ClassStore& store, std::uint64_t* next_ckpt) {
            CandidateStream stream(aligned, fam_a, opts.mode);
            PairTable table;
            for (std::uint64_t p = lo + offset; p < hi; p += stride) {
                auto c = stream.coords(p);
                if (!stream.passes_filter(c)) continue;
                TripleSystem cand = stream.build(c);
                if (!table.build(21, cand.blocks) || cand.blocks.size() != 70)
                    throw std::logic_error("assembled candidate is not a valid STS(21)");
                canon::CanonInput in(cand);
                std::string key = pack_blocks(in.canonical_blocks());
                auto it = store.find(key);
                if (it == store.end()) {
                    auto census = census_of(cand, table, stream.partitions(), opts.cross_check);
                    store.emplace(std::move(key), StoreValue{census.tau6, census.sigma9});
                } else if (opts.cross_check && opts.mode != Mode::Full) {
                    auto census = census_of(cand, table, stream.partitions(), true);
                    if (census.tau6 != it->second.tau6 || census.sigma9 != it->second.sigma9)
                        throw std::logic_error("census mismatch within a class");
                }
                if (next_ckpt && p >= *next_ckpt) {
                    save_checkpoint(opts.checkpoint_dir, opts.mode, {r, p + 1, store});
                    *next_ckpt = p + opts.checkpoint_every;
                }
            }
        };

        if (threads == 1) {
            std::uint64_t next_ckpt = opts.checkpoint_dir.empty()
                                          ? std::uint64_t(-1)
                                          : start + opts.checkpoint_every;
            work(start, total, 1, 0, ck.store,
                 opts.checkpoint_dir.empty() ? nullptr : &next_ckpt);
        } else {
            std::vector<ClassStore> locals(threads);
            std::vector<std::thread> pool;
            for (int tdx = 0; tdx < threads; ++tdx)
                pool.emplace_back([&, tdx] {
                    work(start, total, std::uint64_t(threads), std::uint64_t(tdx), locals[tdx],
                         nullptr);
                });
            for (auto& th : pool) th.join();
            for (auto& local : locals)
                for (auto& [key, val] : local) {
                    auto [it, fresh] = ck.store.emplace(key, val);
                    if (!fresh && (it->second.tau6 != val.tau6 || it->second.sigma9 != val.sigma9))
                        throw std::logic_error("census mismatch when merging thread stores");
                }
        }
        if (!opts.checkpoint_dir.empty())
            save_checkpoint(opts.checkpoint_dir, opts.mode, {r + 1, 0, ck.store});
        say("representative " + std::to_string(r) + " done, " +
            std::to_string(ck.store.size()) + " classes so far");
    }

    say("computing automorphism groups for " + std::to_string(ck.store.size()) + " classes");
    std::vector<ClassificationRecord> out;
    out.reserve(ck.store.size());
    for (const auto& [key, val] : ck.store) {
        ClassificationRecord rec;
        rec.blocks = unpack_blocks(key, 21);
        rec.tau6 = val.tau6;
        rec.sigma9 = val.sigma9;
        canon::CanonInput in(rec.blocks);
        rec.aut_order = in.aut_count();
        std::string cert = format_design(rec.blocks);
        rec.cert_hash = canon::hash64(cert.data(), cert.size());
        out.push_back(std::move(rec));
    }
    // std::map iteration is already sorted by packed blocks, which matches
    // certificate order; keep the explicit sort as the documented contract
    std::sort(out.begin(), out.end(), [](const ClassificationRecord& a,
                                         const ClassificationRecord& b) {
        return a.blocks.blocks < b.blocks.blocks;
    });
    return out;
}

std::string record_to_json(const ClassificationRecord& rec) {
    nlohmann::json j;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rec.cert_hash));
    j["cert_hash"] = buf;
    j["tau6"] = rec.tau6;
    j["sigma9"] = rec.sigma9;
    j["aut_order"] = rec.aut_order;
    if (rec.resolvable) j["resolvable"] = *rec.resolvable;
    j["blocks"] = format_design(rec.blocks);
    return j.dump();
}

ClassificationRecord record_from_json(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    ClassificationRecord rec;
    rec.cert_hash = std::stoull(j.at("cert_hash").get<std::string>(), nullptr, 16);
    rec.tau6 = j.at("tau6").get<int>();
    rec.sigma9 = j.at("sigma9").get<int>();
    rec.aut_order = j.at("aut_order").get<std::uint64_t>();
    if (j.contains("resolvable")) rec.resolvable = j["resolvable"].get<bool>();
    rec.blocks = parse_design(j.at("blocks").get<std::string>()).system;
    return rec;
}

}  // namespace sts21::assembler
