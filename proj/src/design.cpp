#include "sts21/design.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sts21 {

Triple::Triple(int a, int b, int c) {
    std::array<int, 3> p{a, b, c};
    std::sort(p.begin(), p.end());
    if (p[0] < 0 || p[2] >= kMaxPoints || p[0] == p[1] || p[1] == p[2])
        throw std::invalid_argument("Triple: need 3 distinct points in 0..20");
    pts = {std::uint8_t(p[0]), std::uint8_t(p[1]), std::uint8_t(p[2])};
    mask = (1u << p[0]) | (1u << p[1]) | (1u << p[2]);
}

Triple triple_from_mask(Mask m) {
    if (popcount(m) != 3) throw std::invalid_argument("triple_from_mask: need 3 bits");
    int a = __builtin_ctz(m);
    m &= m - 1;
    int b = __builtin_ctz(m);
    m &= m - 1;
    return Triple(a, b, __builtin_ctz(m));
}

std::string Triple::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d,%d,%d", pts[0], pts[1], pts[2]);
    return buf;
}

TripleSystem::TripleSystem(int v_, std::vector<Triple> blocks_) : v(v_), blocks(std::move(blocks_)) {
    std::sort(blocks.begin(), blocks.end());
}

TripleSystem TransversalDesign::as_system() const {
    Mask sup = support();
    int v = sup == 0 ? 0 : 32 - __builtin_clz(sup);
    return TripleSystem(v, blocks);
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (const auto& e : structural_errors) os << e << "; ";
    if (!uncovered_pairs.empty()) os << uncovered_pairs.size() << " uncovered pair(s); ";
    if (!multi_covered_pairs.empty()) os << multi_covered_pairs.size() << " multi-covered pair(s); ";
    return os.str();
}

void PairTable::clear() {
    for (auto& row : third_)
        for (auto& x : row) x = -1;
    for (auto& row : block_idx_)
        for (auto& x : row) x = -1;
}

PairTable::PairTable(int v, const std::vector<Triple>& blocks) {
    clear();
    if (!build(v, blocks)) throw std::runtime_error("PairTable: pair covered more than once");
}

bool PairTable::build(int v, const std::vector<Triple>& blocks) {
    clear();
    (void)v;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& p = blocks[i].pts;
        const int pairs[3][3] = {{p[0], p[1], p[2]}, {p[0], p[2], p[1]}, {p[1], p[2], p[0]}};
        for (const auto& q : pairs) {
            if (third_[q[0]][q[1]] >= 0) return false;
            third_[q[0]][q[1]] = third_[q[1]][q[0]] = std::int8_t(q[2]);
            block_idx_[q[0]][q[1]] = block_idx_[q[1]][q[0]] = std::int16_t(i);
        }
    }
    return true;
}

namespace {

void check_block_shape(int v, const std::vector<Triple>& blocks, ValidationReport& rep) {
    for (const auto& b : blocks)
        if (b.pts[2] >= v) rep.structural_errors.push_back("block " + b.str() + " has point >= v");
    for (std::size_t i = 1; i < blocks.size(); ++i)
        if (blocks[i].mask == blocks[i - 1].mask) {
            rep.structural_errors.push_back("duplicate block " + blocks[i].str());
            break;
        }
}

// Pair coverage over a point set; cover[x][y] counts blocks through {x,y}.
struct PairCounts {
    std::uint8_t cover[kMaxPoints][kMaxPoints] = {};
    void add(const Triple& b) {
        const auto& p = b.pts;
        ++cover[p[0]][p[1]];
        ++cover[p[0]][p[2]];
        ++cover[p[1]][p[2]];
    }
};

}  // namespace

ValidationReport validate_sts(const TripleSystem& ts) {
    ValidationReport rep;
    if (ts.v < 3 || ts.v > kMaxPoints) {
        rep.ok = false;
        rep.structural_errors.push_back("v out of range");
        return rep;
    }
    check_block_shape(ts.v, ts.blocks, rep);
    PairCounts pc;
    for (const auto& b : ts.blocks) pc.add(b);
    for (int x = 0; x < ts.v; ++x)
        for (int y = x + 1; y < ts.v; ++y) {
            if (pc.cover[x][y] == 0) rep.uncovered_pairs.emplace_back(x, y);
            if (pc.cover[x][y] > 1) rep.multi_covered_pairs.emplace_back(x, y);
        }
    rep.ok = rep.structural_errors.empty() && rep.uncovered_pairs.empty() &&
             rep.multi_covered_pairs.empty();
    return rep;
}

ValidationReport validate_td(const TransversalDesign& td) {
    ValidationReport rep;
    const int w = td.w();
    if (popcount(td.groups[1]) != w || popcount(td.groups[2]) != w ||
        (td.groups[0] & td.groups[1]) || (td.groups[0] & td.groups[2]) ||
        (td.groups[1] & td.groups[2])) {
        rep.ok = false;
        rep.structural_errors.push_back("groups not disjoint or unequal");
        return rep;
    }
    for (const auto& b : td.blocks)
        for (int g = 0; g < 3; ++g)
            if (popcount(b.mask & td.groups[g]) != 1) {
                rep.structural_errors.push_back("block " + b.str() + " does not meet group " +
                                                std::to_string(g) + " exactly once");
                break;
            }
    if (int(td.blocks.size()) != w * w)
        rep.structural_errors.push_back("expected " + std::to_string(w * w) + " blocks, got " +
                                        std::to_string(td.blocks.size()));
    PairCounts pc;
    for (const auto& b : td.blocks) pc.add(b);
    auto points = mask_points(td.support());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            int x = points[i], y = points[j];
            bool same_group = false;
            for (int g = 0; g < 3; ++g)
                if ((td.groups[g] >> x & 1) && (td.groups[g] >> y & 1)) same_group = true;
            int c = x < y ? pc.cover[x][y] : pc.cover[y][x];
            if (same_group) {
                if (c > 0) rep.multi_covered_pairs.emplace_back(x, y);
            } else {
                if (c == 0) rep.uncovered_pairs.emplace_back(x, y);
                if (c > 1) rep.multi_covered_pairs.emplace_back(x, y);
            }
        }
    rep.ok = rep.structural_errors.empty() && rep.uncovered_pairs.empty() &&
             rep.multi_covered_pairs.empty();
    return rep;
}

StsView::StsView(const TripleSystem& sys) : ts(&sys) {
    auto rep = validate_sts(sys);
    if (!rep.ok) throw std::runtime_error("StsView: not a valid STS: " + rep.summary());
    table.build(sys.v, sys.blocks);
}

Triple StsView::block_through(int x, int y) const {
    if (x == y) throw std::invalid_argument("block_through: x == y");
    int idx = table.block_index(x, y);
    if (idx < 0) throw std::runtime_error("block_through: pair not covered");
    return ts->blocks[idx];
}

TransversalDesign latin_to_td(const LatinSquare& square, const std::array<Mask, 3>& groups) {
    const int n = square.n;
    for (const auto& g : groups)
        if (popcount(g) != n) throw std::invalid_argument("latin_to_td: group size != order");
    if ((groups[0] & groups[1]) || (groups[0] & groups[2]) || (groups[1] & groups[2]))
        throw std::invalid_argument("latin_to_td: groups overlap");
    std::array<std::vector<int>, 3> pts;
    for (int g = 0; g < 3; ++g) pts[g] = mask_points(groups[g]);
    TransversalDesign td;
    td.groups = groups;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            td.blocks.emplace_back(pts[0][i], pts[1][j], pts[2][square.at(i, j)]);
    std::sort(td.blocks.begin(), td.blocks.end());
    return td;
}

LatinSquare td_to_latin(const TransversalDesign& td) {
    const int n = td.w();
    std::array<std::vector<int>, 3> pts;
    int rank[kMaxPoints][3];
    for (int g = 0; g < 3; ++g) {
        pts[g] = mask_points(td.groups[g]);
        for (int i = 0; i < n; ++i) rank[pts[g][i]][g] = i;
    }
    LatinSquare sq;
    sq.n = n;
    sq.cells.assign(n * n, 0);
    for (const auto& b : td.blocks) {
        int r = -1, c = -1, s = -1;
        for (int p : b.pts) {
            if (td.groups[0] >> p & 1) r = rank[p][0];
            if (td.groups[1] >> p & 1) c = rank[p][1];
            if (td.groups[2] >> p & 1) s = rank[p][2];
        }
        if (r < 0 || c < 0 || s < 0) throw std::runtime_error("td_to_latin: block off the groups");
        sq.at(r, c) = std::uint8_t(s);
    }
    return sq;
}

std::vector<Triple> disjoint_blocks(const StsView& sts, const Triple& t) {
    if (!std::binary_search(sts.ts->blocks.begin(), sts.ts->blocks.end(), t))
        throw std::invalid_argument("disjoint_blocks: t is not a block");
    std::vector<Triple> out;
    for (const auto& b : sts.ts->blocks)
        if ((b.mask & t.mask) == 0) out.push_back(b);
    return out;
}

std::vector<int> mask_points(Mask m) {
    std::vector<int> out;
    for (; m; m &= m - 1) out.push_back(__builtin_ctz(m));
    return out;
}

std::string mask_str(Mask m) {
    std::string s;
    for (int p : mask_points(m)) {
        if (!s.empty()) s += ',';
        s += std::to_string(p);
    }
    return s;
}

std::string format_design(const TripleSystem& ts) {
    std::string out = "v=" + std::to_string(ts.v) + "\n";
    for (const auto& b : ts.blocks) {
        out += b.str();
        out += '\n';
    }
    return out;
}

std::string format_design(const TransversalDesign& td) {
    auto sys = td.as_system();
    std::string out = "v=" + std::to_string(sys.v) + "\n";
    out += "groups=" + mask_str(td.groups[0]) + "|" + mask_str(td.groups[1]) + "|" +
           mask_str(td.groups[2]) + "\n";
    for (const auto& b : td.blocks) {
        out += b.str();
        out += '\n';
    }
    return out;
}

namespace {

Mask parse_point_list(const std::string& s) {
    Mask m = 0;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        int p = std::stoi(tok);
        if (p < 0 || p >= kMaxPoints) throw std::runtime_error("point out of range: " + tok);
        m |= 1u << p;
    }
    return m;
}

}  // namespace

ParsedDesign parse_design(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    ParsedDesign out;
    bool have_v = false;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("v=", 0) == 0) {
            out.system.v = std::stoi(line.substr(2));
            have_v = true;
        } else if (line.rfind("groups=", 0) == 0) {
            std::istringstream gs(line.substr(7));
            std::string part;
            std::array<Mask, 3> groups{};
            for (int g = 0; g < 3; ++g) {
                if (!std::getline(gs, part, '|')) throw std::runtime_error("expected 3 groups");
                groups[g] = parse_point_list(part);
            }
            out.groups = groups;
        } else {
            auto m = parse_point_list(line);
            if (popcount(m) != 3) throw std::runtime_error("block is not a 3-set: " + line);
            out.system.blocks.push_back(triple_from_mask(m));
        }
    }
    if (!have_v) throw std::runtime_error("missing v= header");
    std::sort(out.system.blocks.begin(), out.system.blocks.end());
    return out;
}

}  // namespace sts21
