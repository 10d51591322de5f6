#include "sts21/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sts21::canon {

std::uint64_t hash64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t CanonicalRecord::cert_hash() const {
    return hash64(certificate.data(), certificate.size());
}

namespace {

inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t hash_u64_vec(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return hash64(v.data(), v.size() * sizeof(std::uint64_t));
}

}  // namespace

CanonInput::CanonInput(const TripleSystem& ts) {
    kind_ = DesignKind::Sts;
    // compact the support onto 0..v-1 so sparse supports canonicalize the
    // same way as dense ones
    Mask support = 0;
    for (const auto& b : ts.blocks) support |= b.mask;
    auto pts = mask_points(support);
    int compact[kMaxPoints];
    for (std::size_t i = 0; i < pts.size(); ++i) compact[pts[i]] = int(i);
    v_ = int(pts.size());
    for (const auto& b : ts.blocks)
        blocks_.emplace_back(compact[b.pts[0]], compact[b.pts[1]], compact[b.pts[2]]);
    std::sort(blocks_.begin(), blocks_.end());
    TripleSystem compacted(v_, blocks_);
    auto r = validate_sts(compacted);
    if (!r.ok) throw std::invalid_argument("canonical: not a valid STS: " + r.summary());
    table_.build(v_, blocks_);
    finish_setup();
}

CanonInput::CanonInput(const TransversalDesign& td) {
    auto r = validate_td(td);
    if (!r.ok) throw std::invalid_argument("canonical: not a valid TD: " + r.summary());
    kind_ = DesignKind::Td;
    Mask support = td.support();
    auto pts = mask_points(support);
    int compact[kMaxPoints];
    for (std::size_t i = 0; i < pts.size(); ++i) compact[pts[i]] = int(i);
    v_ = int(pts.size());
    for (const auto& b : td.blocks)
        blocks_.emplace_back(compact[b.pts[0]], compact[b.pts[1]], compact[b.pts[2]]);
    std::sort(blocks_.begin(), blocks_.end());
    table_.build(v_, blocks_);
    finish_setup();
}

void CanonInput::finish_setup() {
    // Pair invariant: for an STS pair {x,y}, the blocks through x and the
    // blocks through y induce two perfect matchings on the points off
    // block(x,y); their union is a disjoint set of even cycles, and the
    // sorted cycle lengths are a relabeling-invariant of the pair.
    std::vector<std::uint64_t> pair_vals;
    std::vector<std::vector<std::uint64_t>> per_point(v_);
    for (int x = 0; x < v_; ++x)
        for (int y = x + 1; y < v_; ++y) {
            std::uint64_t val;
            int t = table_.third(x, y);
            if (t < 0) {
                val = mix(1);  // same-group pair of a TD
            } else {
                Mask rest = ((1u << v_) - 1) & ~((1u << x) | (1u << y) | (1u << t));
                std::uint64_t lens[kMaxPoints];
                int nlens = 0;
                Mask seen = 0;
                for (Mask m = rest; m; m &= m - 1) {
                    int z0 = __builtin_ctz(m);
                    if (seen >> z0 & 1) continue;
                    int len = 0, z = z0;
                    bool via_x = true;
                    do {
                        seen |= 1u << z;
                        ++len;
                        z = via_x ? table_.third(x, z) : table_.third(y, z);
                        via_x = !via_x;
                        if (z < 0) { len = -1; break; }  // TD cross pair: walk left the domain
                    } while (z != z0 && !(seen >> z & 1));
                    if (len < 0) { nlens = 0; break; }
                    lens[nlens++] = std::uint64_t(len);
                }
                std::sort(lens, lens + nlens);
                val = hash64(lens, nlens * sizeof(std::uint64_t)) ^ mix(2);
            }
            pair_vals.push_back(val);
            per_point[x].push_back(val);
            per_point[y].push_back(val);
        }
    invariant_hash_ = hash_u64_vec(pair_vals);

    std::vector<std::uint64_t> profile(v_);
    for (int x = 0; x < v_; ++x) profile[x] = hash_u64_vec(std::move(per_point[x]));
    std::vector<std::uint64_t> sorted = profile;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    init_colors_.resize(v_);
    for (int x = 0; x < v_; ++x)
        init_colors_[x] = std::uint32_t(
            std::lower_bound(sorted.begin(), sorted.end(), profile[x]) - sorted.begin());
}

// --- refinement / individualization search ----------------------------------

namespace {

using Cells = std::vector<std::vector<std::uint8_t>>;

struct Searcher {
    const CanonInput& in;
    int v;
    std::vector<std::uint32_t> best_keys;  // sorted relabeled block keys
    std::vector<std::uint8_t> best_lab;    // point -> canonical label
    bool have_best = false;
    std::vector<std::vector<std::uint8_t>> aut_gens;

    explicit Searcher(const CanonInput& input) : in(input), v(input.v()) {}

    void refine(Cells& cells) const {
        std::vector<int> color(v);
        std::vector<std::uint64_t> sig(v);
        for (;;) {
            for (std::size_t ci = 0; ci < cells.size(); ++ci)
                for (auto p : cells[ci]) color[p] = int(ci);
            for (int x = 0; x < v; ++x) {
                std::uint64_t h = 0;
                for (int y = 0; y < v; ++y) {
                    if (y == x) continue;
                    int t = in.third(x, y);
                    h += mix((std::uint64_t(color[y]) << 20) | std::uint64_t(t < 0 ? 0 : color[t] + 1));
                }
                sig[x] = h;
            }
            Cells next;
            bool split = false;
            for (auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::stable_sort(cell.begin(), cell.end(),
                                 [&](std::uint8_t a, std::uint8_t b) { return sig[a] < sig[b]; });
                std::size_t start = 0;
                for (std::size_t i = 1; i <= cell.size(); ++i)
                    if (i == cell.size() || sig[cell[i]] != sig[cell[start]]) {
                        next.emplace_back(cell.begin() + start, cell.begin() + i);
                        if (i - start != cell.size()) split = true;
                        start = i;
                    }
            }
            cells.swap(next);
            if (!split) return;
        }
    }

    void leaf(const Cells& cells) {
        std::vector<std::uint8_t> lab(v);
        for (std::size_t i = 0; i < cells.size(); ++i) lab[cells[i][0]] = std::uint8_t(i);
        std::vector<std::uint32_t> keys;
        keys.reserve(in.blocks().size());
        for (const auto& b : in.blocks()) {
            std::uint8_t a = lab[b.pts[0]], c = lab[b.pts[1]], d = lab[b.pts[2]];
            if (a > c) std::swap(a, c);
            if (c > d) std::swap(c, d);
            if (a > c) std::swap(a, c);
            keys.push_back((std::uint32_t(a) << 10) | (std::uint32_t(c) << 5) | d);
        }
        std::sort(keys.begin(), keys.end());
        if (!have_best || keys < best_keys) {
            best_keys = std::move(keys);
            best_lab = std::move(lab);
            have_best = true;
        } else if (keys == best_keys) {
            // lab and best_lab induce the same canonical design, so the
            // composition is an automorphism; keep it for orbit pruning
            std::vector<std::uint8_t> inv_best(v), g(v);
            for (int x = 0; x < v; ++x) inv_best[best_lab[x]] = std::uint8_t(x);
            for (int x = 0; x < v; ++x) g[x] = inv_best[lab[x]];
            bool identity = true;
            for (int x = 0; x < v; ++x)
                if (g[x] != x) identity = false;
            if (!identity) aut_gens.push_back(std::move(g));
        }
    }

    void descend(Cells cells, std::vector<std::uint8_t>& prefix) {
        refine(cells);
        int target = -1;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].size() > 1 &&
                (target < 0 || cells[i].size() < cells[target].size())) target = int(i);
        if (target < 0) {
            leaf(cells);
            return;
        }
        // orbit pruning: generators fixing the individualized prefix
        // pointwise generate a subgroup of the prefix stabilizer, so one
        // representative per orbit of the target cell suffices
        std::vector<int> parent(v);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& g : aut_gens) {
            bool fixes = true;
            for (auto p : prefix)
                if (g[p] != p) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int x = 0; x < v; ++x) {
                int a = find(x), b = find(g[x]);
                if (a != b) parent[a] = b;
            }
        }
        Mask tried_orbits = 0;
        auto members = cells[target];  // copy; cells mutated below
        for (auto u : members) {
            int root = find(u);
            if (tried_orbits >> root & 1) continue;
            tried_orbits |= 1u << root;
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (int(i) == target) {
                    child.push_back({u});
                    std::vector<std::uint8_t> rest;
                    for (auto p : cells[i])
                        if (p != u) rest.push_back(p);
                    child.push_back(std::move(rest));
                } else {
                    child.push_back(cells[i]);
                }
            }
            prefix.push_back(u);
            descend(std::move(child), prefix);
            prefix.pop_back();
        }
    }
};

}  // namespace

std::vector<Triple> CanonInput::canonical_blocks() const {
    Searcher s(*this);
    Cells cells;
    std::uint32_t maxc = 0;
    for (auto c : init_colors_) maxc = std::max(maxc, c);
    cells.resize(maxc + 1);
    for (int x = 0; x < v_; ++x) cells[init_colors_[x]].push_back(std::uint8_t(x));
    std::vector<std::uint8_t> prefix;
    s.descend(std::move(cells), prefix);

    std::vector<Triple> relabeled;
    for (const auto& b : blocks_)
        relabeled.emplace_back(s.best_lab[b.pts[0]], s.best_lab[b.pts[1]], s.best_lab[b.pts[2]]);
    std::sort(relabeled.begin(), relabeled.end());
    return relabeled;
}

std::string CanonInput::canonical_certificate() const {
    std::vector<Triple> relabeled = canonical_blocks();
    if (kind_ == DesignKind::Sts) return format_design(TripleSystem(v_, std::move(relabeled)));

    // recover groups of the relabeled TD: same group <=> no common block
    PairTable t;
    t.build(v_, relabeled);
    std::array<Mask, 3> groups{};
    Mask assigned = 0;
    int gi = 0;
    for (int x = 0; x < v_; ++x) {
        if (assigned >> x & 1) continue;
        Mask g = 1u << x;
        for (int y = 0; y < v_; ++y)
            if (y != x && t.third(x, y) < 0) g |= 1u << y;
        groups[gi++] = g;
        assigned |= g;
    }
    TransversalDesign td;
    td.groups = groups;
    td.blocks = std::move(relabeled);
    return format_design(td);
}

// --- exhaustive automorphism search -----------------------------------------

namespace {

struct AutSearch {
    const CanonInput& in;
    int v;
    std::vector<std::uint32_t> colors;  // refined root coloring (gates images)
    std::array<std::int8_t, kMaxPoints> img{};
    Mask used = 0;
    std::uint64_t count = 0;
    bool stop_at_first = false;
    bool found = false;
    std::vector<std::vector<std::uint8_t>>* elements = nullptr;
    std::vector<int> order;  // assignment order of points

    explicit AutSearch(const CanonInput& input) : in(input), v(input.v()) {
        img.fill(-1);
        // refined equitable coloring at the root, automorphism-invariant
        Searcher s(input);
        Cells cells;
        std::uint32_t maxc = 0;
        for (auto c : input.point_colors()) maxc = std::max(maxc, c);
        cells.resize(maxc + 1);
        for (int x = 0; x < v; ++x) cells[input.point_colors()[x]].push_back(std::uint8_t(x));
        s.refine(cells);
        colors.resize(v);
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (auto p : cells[i]) colors[p] = std::uint32_t(i);
        // assign small cells first
        order.resize(v);
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> cell_size(v);
        for (int x = 0; x < v; ++x) cell_size[x] = int(cells[colors[x]].size());
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return cell_size[a] < cell_size[b]; });
    }

    // assign img[x] = y and propagate third-point consequences; returns
    // false on contradiction. `trail` records assignments for undo.
    bool assign(int x, int y, std::vector<int>& trail) {
        if (img[x] >= 0) return img[x] == y;
        if (used >> y & 1) return false;
        if (colors[x] != colors[y]) return false;
        img[x] = std::int8_t(y);
        used |= 1u << y;
        trail.push_back(x);
        for (int z = 0; z < v; ++z) {
            if (img[z] < 0 || z == x) continue;
            int t = in.third(x, z);
            int t2 = in.third(y, img[z]);
            if ((t < 0) != (t2 < 0)) return false;
            if (t >= 0 && !assign(t, t2, trail)) return false;
        }
        return true;
    }

    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            int x = trail.back();
            trail.pop_back();
            used &= ~(1u << img[x]);
            img[x] = -1;
        }
    }

    void search(int k, std::vector<int>& trail) {
        if (stop_at_first && found) return;
        while (k < v && img[order[k]] >= 0) ++k;
        if (k == v) {
            ++count;
            found = true;
            if (elements) {
                std::vector<std::uint8_t> e(v);
                for (int x = 0; x < v; ++x) e[x] = std::uint8_t(img[x]);
                elements->push_back(std::move(e));
            }
            return;
        }
        int x = order[k];
        for (int y = 0; y < v; ++y) {
            if ((used >> y & 1) || colors[x] != colors[y]) continue;
            std::size_t mark = trail.size();
            if (assign(x, y, trail)) search(k + 1, trail);
            undo(trail, mark);
            if (stop_at_first && found) return;
        }
    }
};

}  // namespace

std::uint64_t CanonInput::aut_count(std::vector<std::vector<std::uint8_t>>* elements) const {
    AutSearch s(*this);
    s.elements = elements;
    std::vector<int> trail;
    s.search(0, trail);
    return s.count;
}

std::uint64_t CanonInput::aut_order_orbit_stabilizer() const {
    // |Aut| = product of orbit sizes along the point stabilizer chain;
    // each orbit membership test looks for a single automorphism with the
    // prescribed prefix.
    std::uint64_t order = 1;
    for (int k = 0; k < v_; ++k) {
        int orbit = 1;
        for (int q = 0; q < v_; ++q) {
            if (q == k) continue;
            AutSearch s(*this);
            s.stop_at_first = true;
            std::vector<int> trail;
            bool ok = true;
            for (int f = 0; f < k && ok; ++f) ok = s.assign(f, f, trail);
            if (ok) ok = s.assign(k, q, trail);
            if (!ok) continue;
            s.search(0, trail);
            if (s.found) ++orbit;
        }
        order *= std::uint64_t(orbit);
    }
    return order;
}

CanonicalRecord canonical_form(const TripleSystem& ts) {
    CanonInput in(ts);
    CanonicalRecord rec;
    rec.certificate = in.canonical_certificate();
    rec.aut_order = in.aut_count();
    return rec;
}

CanonicalRecord canonical_form(const TransversalDesign& td) {
    CanonInput in(td);
    CanonicalRecord rec;
    rec.certificate = in.canonical_certificate();
    rec.aut_order = in.aut_count();
    return rec;
}

bool are_isomorphic(const TripleSystem& a, const TripleSystem& b) {
    CanonInput ia(a), ib(b);
    if (ia.v() != ib.v()) throw std::invalid_argument("are_isomorphic: different support sizes");
    return ia.canonical_certificate() == ib.canonical_certificate();
}

bool are_isomorphic(const TransversalDesign& a, const TransversalDesign& b) {
    CanonInput ia(a), ib(b);
    if (ia.v() != ib.v()) throw std::invalid_argument("are_isomorphic: different support sizes");
    return ia.canonical_certificate() == ib.canonical_certificate();
}

bool brute_force_isomorphic(const TripleSystem& a, const TripleSystem& b) {
    CanonInput ia(a), ib(b);  // validates both
    if (ia.v() > 9) throw std::invalid_argument("brute_force_isomorphic: v <= 9 only");
    if (ia.v() != ib.v() || ia.blocks().size() != ib.blocks().size()) return false;
    std::vector<std::uint32_t> target;
    for (const auto& t : ib.blocks()) target.push_back(t.key());
    std::vector<int> perm(ia.v());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::uint32_t> keys;
        keys.reserve(ia.blocks().size());
        for (const auto& t : ia.blocks()) {
            std::uint8_t x = std::uint8_t(perm[t.pts[0]]), y = std::uint8_t(perm[t.pts[1]]),
                         z = std::uint8_t(perm[t.pts[2]]);
            if (x > y) std::swap(x, y);
            if (y > z) std::swap(y, z);
            if (x > y) std::swap(x, y);
            keys.push_back((std::uint32_t(x) << 10) | (std::uint32_t(y) << 5) | z);
        }
        std::sort(keys.begin(), keys.end());
        if (keys == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::uint64_t aut_order_orbit_stabilizer(const TripleSystem& ts) {
    return CanonInput(ts).aut_order_orbit_stabilizer();
}

std::uint64_t aut_order_orbit_stabilizer(const TransversalDesign& td) {
    return CanonInput(td).aut_order_orbit_stabilizer();
}

}  // namespace sts21::canon
