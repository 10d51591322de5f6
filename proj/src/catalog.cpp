#include "sts21/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sts21::catalog {

namespace {

// Backtracking over pairs in lexicographic order: always complete the
// smallest uncovered pair. Canonical search order makes the output
// deterministic and duplicate-free without hashing.
struct Sts9Search {
    int n = 9;                 // support size, 7 or 9
    std::array<int, 9> pts{};  // support points, ascending
    bool covered[9][9] = {};
    std::vector<Triple> current;
    std::vector<TripleSystem>* out = nullptr;

    void run() {
        current.reserve(12);
        extend();
    }

    void extend() {
        int x = -1, y = -1;
        for (int i = 0; i < n && x < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!covered[i][j]) {
                    x = i;
                    y = j;
                    break;
                }
        if (x < 0) {
            out->emplace_back(kMaxPoints, current);
            out->back().v = pts[n - 1] + 1;
            return;
        }
        for (int z = 0; z < n; ++z) {
            if (z == x || z == y) continue;
            int a = std::min(x, z), b = std::max(x, z);
            int c = std::min(y, z), d = std::max(y, z);
            if (covered[a][b] || covered[c][d]) continue;
            covered[x][y] = covered[a][b] = covered[c][d] = true;
            current.emplace_back(pts[x], pts[y], pts[z]);
            extend();
            current.pop_back();
            covered[x][y] = covered[a][b] = covered[c][d] = false;
        }
    }
};

}  // namespace

std::vector<TripleSystem> enumerate_sts9(Mask support) {
    if (popcount(support) != 9 && popcount(support) != 7)
        throw std::invalid_argument("enumerate_sts9: need a 7- or 9-point support");
    Sts9Search s;
    s.n = popcount(support);
    auto pts = mask_points(support);
    std::copy(pts.begin(), pts.end(), s.pts.begin());
    std::vector<TripleSystem> out;
    s.out = &out;
    s.run();
    for (auto& ts : out) std::sort(ts.blocks.begin(), ts.blocks.end());
    return out;
}

std::vector<TripleSystem> sts9_with_blocks(const std::vector<TripleSystem>& family,
                                           const std::vector<Triple>& required) {
    if (required.size() > 3) throw std::invalid_argument("sts9_with_blocks: at most 3 triples");
    for (std::size_t i = 0; i < required.size(); ++i)
        for (std::size_t j = i + 1; j < required.size(); ++j)
            if (required[i].mask & required[j].mask)
                throw std::invalid_argument("sts9_with_blocks: required triples overlap");
    std::vector<TripleSystem> out;
    for (const auto& ts : family) {
        bool all = true;
        for (const auto& t : required)
            if (!std::binary_search(ts.blocks.begin(), ts.blocks.end(), t)) {
                all = false;
                break;
            }
        if (all) out.push_back(ts);
    }
    return out;
}

std::vector<int> Sts9Family::with_block(const Triple& d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (std::binary_search(all[i].blocks.begin(), all[i].blocks.end(), d)) out.push_back(int(i));
    return out;
}

std::vector<int> Sts9Family::with_blocks(const std::vector<Triple>& required) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool ok = true;
        for (const auto& t : required)
            if (!std::binary_search(all[i].blocks.begin(), all[i].blocks.end(), t)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(int(i));
    }
    return out;
}

std::vector<AlmostSts9> Sts9Family::almost(const Triple& d) const {
    std::vector<AlmostSts9> out;
    for (int i : with_block(d)) {
        AlmostSts9 a;
        a.support = support;
        a.missing = d;
        for (const auto& b : all[i].blocks)
            if (!(b == d)) a.blocks.push_back(b);
        out.push_back(std::move(a));
    }
    return out;
}

Sts9Family build_sts9_family(Mask support) {
    Sts9Family f;
    f.support = support;
    f.all = enumerate_sts9(support);
    return f;
}

// --- latin square machinery -------------------------------------------------

std::vector<LatinSquare> enumerate_reduced_squares(int n) {
    std::vector<LatinSquare> out;
    LatinSquare sq;
    sq.n = n;
    sq.cells.assign(n * n, 0);
    std::vector<std::uint32_t> col_used(n, 0);
    for (int j = 0; j < n; ++j) {
        sq.at(0, j) = std::uint8_t(j);
        col_used[j] |= 1u << j;
    }
    // cells filled row-major from row 1; column 0 forced to the row index.
    auto rec = [&](auto&& self, int r, int c, std::uint32_t row_used) -> void {
        if (r == n) {
            out.push_back(sq);
            return;
        }
        if (c == n) {
            self(self, r + 1, 0, 0);
            return;
        }
        if (c == 0) {
            if (col_used[0] >> r & 1) return;  // cannot happen for reduced squares
            sq.at(r, 0) = std::uint8_t(r);
            col_used[0] |= 1u << r;
            self(self, r, 1, 1u << r);
            col_used[0] &= ~(1u << r);
            return;
        }
        std::uint32_t free = ~(row_used | col_used[c]) & ((1u << n) - 1);
        for (; free; free &= free - 1) {
            int s = __builtin_ctz(free);
            sq.at(r, c) = std::uint8_t(s);
            col_used[c] |= 1u << s;
            self(self, r, c + 1, row_used | (1u << s));
            col_used[c] &= ~(1u << s);
        }
    };
    rec(rec, 1, 0, 0);
    return out;
}

namespace {

// The 6 conjugates: permute the (row, column, symbol) roles of the cell
// triples (r, c, s).
LatinSquare conjugate(const LatinSquare& sq, int which) {
    static const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const int* p = perm[which];
    LatinSquare out;
    out.n = sq.n;
    out.cells.assign(sq.n * sq.n, 0);
    for (int r = 0; r < sq.n; ++r)
        for (int c = 0; c < sq.n; ++c) {
            int t[3] = {r, c, sq.at(r, c)};
            out.at(t[p[0]], t[p[1]]) = std::uint8_t(t[p[2]]);
        }
    return out;
}

}  // namespace

LatinSquare main_class_canonical(const LatinSquare& sq, std::uint64_t* stab_order) {
    const int n = sq.n;
    LatinSquare best;
    best.n = n;
    best.cells.assign(n * n, std::uint8_t(n));  // sentinel, larger than anything
    std::uint64_t ties = 0;

    std::vector<std::uint8_t> cand(n * n), sigma(n), rows(n);
    std::vector<int> colperm(n);
    for (int cj = 0; cj < 6; ++cj) {
        LatinSquare C = conjugate(sq, cj);
        for (int r = 0; r < n; ++r) {
            std::iota(colperm.begin(), colperm.end(), 0);
            do {
                // Row r becomes row 0 reading 0..n-1; this forces the
                // symbol renaming, and sorting column 0 forces the rows.
                for (int j = 0; j < n; ++j) sigma[C.at(r, colperm[j])] = std::uint8_t(j);
                for (int i = 0; i < n; ++i) rows[sigma[C.at(i, colperm[0])]] = std::uint8_t(i);
                bool worse = false, better = false;
                int k = 0;
                for (int i = 0; i < n && !worse && !better; ++i) {
                    int src = rows[i];
                    for (int j = 0; j < n; ++j, ++k) {
                        std::uint8_t val = sigma[C.at(src, colperm[j])];
                        cand[k] = val;
                        if (val != best.cells[k]) {
                            better = val < best.cells[k];
                            worse = !better;
                            if (worse) break;
                            // finish this row, then rebuild the rest below
                        }
                        if (better) break;
                    }
                }
                if (better) {
                    for (int i = 0; i < n; ++i) {
                        int src = rows[i];
                        for (int j = 0; j < n; ++j) cand[i * n + j] = sigma[C.at(src, colperm[j])];
                    }
                    best.cells = cand;
                    ties = 1;
                } else if (!worse) {
                    ++ties;
                }
            } while (std::next_permutation(colperm.begin(), colperm.end()));
        }
    }
    if (stab_order) *stab_order = ties;
    return best;
}

Td36Catalog enumerate_td_main_classes(int n, const std::array<Mask, 3>& groups) {
    auto reduced = enumerate_reduced_squares(n);
    std::map<LatinSquare, std::pair<std::uint64_t, std::uint64_t>> classes;  // canon -> (stab, reduced count)
    for (const auto& sq : reduced) {
        std::uint64_t stab = 0;
        auto canon = main_class_canonical(sq, &stab);
        auto [it, fresh] = classes.try_emplace(canon, stab, 0);
        it->second.second += 1;
        if (!fresh && it->second.first != stab)
            throw std::logic_error("main_class_canonical: inconsistent stabilizer order");
    }
    std::uint64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    Td36Catalog cat;
    for (const auto& [canon, info] : classes) {
        cat.squares.push_back(canon);
        cat.paratopism_stab.push_back(info.first);
        // orbit-stabilizer over the full paratopism group
        std::uint64_t total = 6 * fact * fact * fact;
        if (total % info.first) throw std::logic_error("stabilizer does not divide the group order");
        cat.class_sizes.push_back(total / info.first);
        cat.representatives.push_back(latin_to_td(canon, groups));
    }
    return cat;
}

std::vector<SubTdPartition> subtd33_structure(const TransversalDesign& td) {
    const int w = td.w();
    std::vector<SubTdPartition> out;
    if (w != 6) return out;  // only order 6 has the half-group structure we need
    PairTable table;
    if (!table.build(kMaxPoints, td.blocks)) throw std::invalid_argument("subtd33_structure: invalid TD");

    auto groupA = mask_points(td.groups[0]);
    auto groupB = mask_points(td.groups[1]);

    // Every sub-TD(3,3): pick half of A and half of B; the thirds of their
    // 9 cross blocks must land on exactly 3 points of C.
    std::vector<SubTd33> found;
    for (int am = 0; am < 64; ++am) {
        if (popcount(std::uint32_t(am)) != 3) continue;
        Mask a0 = 0;
        for (int i = 0; i < 6; ++i)
            if (am >> i & 1) a0 |= 1u << groupA[i];
        for (int bm = 0; bm < 64; ++bm) {
            if (popcount(std::uint32_t(bm)) != 3) continue;
            Mask b0 = 0;
            for (int i = 0; i < 6; ++i)
                if (bm >> i & 1) b0 |= 1u << groupB[i];
            Mask c0 = 0;
            for (int a : mask_points(a0))
                for (int b : mask_points(b0)) c0 |= 1u << table.third(a, b);
            if (popcount(c0) != 3) continue;
            SubTd33 sub;
            sub.half_groups = {a0, b0, c0};
            Mask sup = a0 | b0 | c0;
            for (std::size_t i = 0; i < td.blocks.size(); ++i)
                if ((td.blocks[i].mask & ~sup) == 0) sub.block_indices.push_back(int(i));
            if (sub.block_indices.size() == 9) found.push_back(std::move(sub));
        }
    }

    auto find_sub = [&](Mask a, Mask b, Mask c) -> const SubTd33* {
        for (const auto& s : found)
            if (s.half_groups[0] == a && s.half_groups[1] == b && s.half_groups[2] == c) return &s;
        return nullptr;
    };

    // Group into partitions of four with the complementary half pattern.
    std::vector<std::array<Mask, 3>> seen;  // (a0, b0, c0) of emitted partitions, a0/b0/c0 min-normalized
    for (const auto& s : found) {
        Mask a0 = s.half_groups[0], b0 = s.half_groups[1], c0 = s.half_groups[2];
        Mask a1 = td.groups[0] & ~a0, b1 = td.groups[1] & ~b0, c1 = td.groups[2] & ~c0;
        // normalize: the A half containing the least point of A is "low",
        // B likewise; the C split orientation is fixed by the (A0,B0) part.
        if (!(a0 & (td.groups[0] & -td.groups[0]))) {
            std::swap(a0, a1);
            std::swap(b0, b1);  // keep (a0,b0,c0) a sub-TD: complement both
        }
        if (!(b0 & (td.groups[1] & -td.groups[1]))) {
            std::swap(b0, b1);
            std::swap(c0, c1);
        }
        const SubTd33* p0 = find_sub(a0, b0, c0);
        if (!p0) continue;
        std::array<Mask, 3> key{a0, b0, p0->half_groups[2]};
        c0 = key[2];
        c1 = td.groups[2] & ~c0;
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        const SubTd33* p1 = find_sub(a0, b1, c1);
        const SubTd33* p2 = find_sub(a1, b0, c1);
        const SubTd33* p3 = find_sub(a1, b1, c0);
        if (!p1 || !p2 || !p3) continue;  // not a full partition
        seen.push_back(key);
        SubTdPartition part;
        part.a_halves = {a0, a1};
        part.b_halves = {b0, b1};
        part.c_halves = {c0, c1};
        part.parts = {*p0, *p1, *p2, *p3};
        out.push_back(std::move(part));
    }
    return out;
}

TransversalDesign align_representative(const TransversalDesign& td,
                                       const std::array<std::array<Mask, 2>, 3>& frame_halves) {
    auto partitions = subtd33_structure(td);
    if (partitions.empty()) return td;
    const auto& part = partitions.front();
    std::array<std::array<Mask, 2>, 3> halves = {part.a_halves, part.b_halves, part.c_halves};

    int map[kMaxPoints];
    for (int i = 0; i < kMaxPoints; ++i) map[i] = i;
    for (int g = 0; g < 3; ++g) {
        for (int h = 0; h < 2; ++h) {
            auto from = mask_points(halves[g][h]);
            auto to = mask_points(frame_halves[g][h]);
            for (int i = 0; i < 3; ++i) map[from[i]] = to[i];
        }
    }
    TransversalDesign out;
    out.groups = td.groups;
    for (const auto& b : td.blocks)
        out.blocks.emplace_back(map[b.pts[0]], map[b.pts[1]], map[b.pts[2]]);
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

}  // namespace sts21::catalog
