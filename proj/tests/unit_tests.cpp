#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "sts21/analysis.hpp"
#include "sts21/assembler.hpp"
#include "sts21/canonical.hpp"
#include "sts21/catalog.hpp"
#include "sts21/design.hpp"
#include "sts21/doublecount.hpp"

using namespace sts21;

namespace {

TripleSystem relabel(const TripleSystem& ts, const std::vector<int>& perm) {
    std::vector<Triple> blocks;
    for (const auto& b : ts.blocks)
        blocks.emplace_back(perm[b.pts[0]], perm[b.pts[1]], perm[b.pts[2]]);
    std::sort(blocks.begin(), blocks.end());
    return TripleSystem(ts.v, std::move(blocks));
}

std::vector<int> random_perm(int n, std::mt19937& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// independent main-class counter: orbit BFS from every square under the
// generators of the paratopism group
int main_classes_by_orbit_bfs(int n) {
    // all latin squares of order n by direct backtracking
    std::vector<LatinSquare> all;
    LatinSquare sq;
    sq.n = n;
    sq.cells.assign(n * n, 0);
    std::vector<int> row_used(n, 0), col_used(n, 0);
    auto rec = [&](auto&& self, int cell) -> void {
        if (cell == n * n) {
            all.push_back(sq);
            return;
        }
        int r = cell / n, c = cell % n;
        for (int s = 0; s < n; ++s) {
            if ((row_used[r] >> s & 1) || (col_used[c] >> s & 1)) continue;
            row_used[r] |= 1 << s;
            col_used[c] |= 1 << s;
            sq.at(r, c) = std::uint8_t(s);
            self(self, cell + 1);
            row_used[r] &= ~(1 << s);
            col_used[c] &= ~(1 << s);
        }
    };
    rec(rec, 0);

    auto neighbors = [&](const LatinSquare& q) {
        std::vector<LatinSquare> out;
        LatinSquare t = q;
        // swap first two rows / columns / symbols, rotate rows, transpose,
        // and the (row, symbol) conjugate: together they generate the group
        std::swap_ranges(t.cells.begin(), t.cells.begin() + n, t.cells.begin() + n);
        out.push_back(t);
        t = q;
        for (int r = 0; r < n; ++r) std::swap(t.at(r, 0), t.at(r, 1));
        out.push_back(t);
        t = q;
        for (auto& c : t.cells) c = c == 0 ? 1 : (c == 1 ? 0 : c);
        out.push_back(t);
        t = q;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) t.at(r, c) = q.at((r + 1) % n, c);
        out.push_back(t);
        t = q;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) t.at(c, r) = q.at(r, c);
        out.push_back(t);
        t = q;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) t.at(r, q.at(r, c)) = std::uint8_t(c);
        out.push_back(t);
        return out;
    };

    std::set<LatinSquare> seen;
    int classes = 0;
    for (const auto& start : all) {
        if (seen.count(start)) continue;
        ++classes;
        std::vector<LatinSquare> frontier{start};
        seen.insert(start);
        while (!frontier.empty()) {
            LatinSquare cur = frontier.back();
            frontier.pop_back();
            for (const auto& nb : neighbors(cur))
                if (seen.insert(nb).second) frontier.push_back(nb);
        }
    }
    return classes;
}

const catalog::Td36Catalog& td36() {
    static const catalog::Td36Catalog cat =
        catalog::enumerate_td_main_classes(6, assembler::Frame::petals());
    return cat;
}

}  // namespace

TEST_CASE("triples and the text format") {
    Triple t(5, 1, 3);
    CHECK(t.pts[0] == 1);
    CHECK(t.pts[2] == 5);
    CHECK(t.mask == ((1u << 1) | (1u << 3) | (1u << 5)));
    CHECK(triple_from_mask(t.mask) == t);

    auto fam = catalog::enumerate_sts9(0x1FFu);
    auto text = format_design(fam[0]);
    auto back = parse_design(text);
    CHECK(back.system == fam[0]);
    CHECK(!back.groups);
    CHECK_THROWS_AS(parse_design("v=9\n0,1\n"), std::runtime_error);
}

TEST_CASE("validation reports instead of throwing") {
    // remove one block: six uncovered pairs
    auto fam = catalog::enumerate_sts9(0x1FFu);
    TripleSystem broken = fam[0];
    broken.blocks.pop_back();
    auto rep = validate_sts(broken);
    CHECK(!rep.ok);
    CHECK(rep.uncovered_pairs.size() == 3);

    // duplicate a block: double coverage
    broken = fam[0];
    broken.blocks.push_back(broken.blocks[0]);
    std::sort(broken.blocks.begin(), broken.blocks.end());
    rep = validate_sts(broken);
    CHECK(!rep.ok);
}

TEST_CASE("latin square <-> TD round trip") {
    std::array<Mask, 3> groups = {0x3Fu, 0x3Fu << 6, 0x3Fu << 12};
    LatinSquare sq;
    sq.n = 6;
    sq.cells.resize(36);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) sq.at(r, c) = std::uint8_t((r + c) % 6);
    auto td = latin_to_td(sq, groups);
    CHECK(validate_td(td).ok);
    CHECK(td.blocks.size() == 36);
    CHECK(td_to_latin(td) == sq);
}

TEST_CASE("STS(9) catalog counts") {
    auto fam = catalog::build_sts9_family(0x1FFu);
    CHECK(fam.all.size() == 840);
    CHECK(fam.with_block(Triple(0, 1, 2)).size() == 120);
    CHECK(fam.with_blocks({Triple(0, 1, 2), Triple(3, 4, 5), Triple(6, 7, 8)}).size() == 12);
    // two disjoint required triples: 840 systems x 12 disjoint block pairs
    // each, over the 840 possible disjoint triple pairs on 9 points
    CHECK(fam.with_blocks({Triple(0, 1, 2), Triple(3, 4, 5)}).size() == 12);
    for (const auto& ts : fam.all) CHECK(validate_sts(ts).ok);

    auto almost = fam.almost(Triple(0, 1, 2));
    CHECK(almost.size() == 120);
    for (const auto& a : almost) {
        CHECK(a.blocks.size() == 11);
        CHECK(a.missing == Triple(0, 1, 2));
    }
}

TEST_CASE("every STS(9) block is disjoint from exactly two others") {
    auto fam = catalog::build_sts9_family(0x1FFu);
    for (const auto& ts : fam.all) {
        StsView view(ts);
        for (const auto& b : ts.blocks) CHECK(disjoint_blocks(view, b).size() == 2);
    }
}

TEST_CASE("canonical engine on STS(9): one class, |Aut| = 432") {
    auto fam = catalog::build_sts9_family(0x1FFu);
    auto first = canon::canonical_form(fam.all[0]);
    CHECK(first.aut_order == 432);
    CHECK(canon::aut_order_orbit_stabilizer(fam.all[0]) == 432);
    for (const auto& ts : fam.all) {
        canon::CanonInput in(ts);
        CHECK(in.canonical_certificate() == first.certificate);
    }
    // 840 * 432 = 9!: the isomorphism class is a full orbit of S_9
    CHECK(std::uint64_t(840) * 432 == 362880);
    CHECK(canon::brute_force_isomorphic(fam.all[0], fam.all[839]));
    CHECK(canon::are_isomorphic(fam.all[1], fam.all[2]));
}

TEST_CASE("Fano plane: 30 labeled systems, |Aut| = 168") {
    auto fano = catalog::enumerate_sts9(0x7Fu);  // 7-point support
    CHECK(fano.size() == 30);
    auto first = canon::canonical_form(fano[0]);
    CHECK(first.aut_order == 168);
    for (const auto& ts : fano) CHECK(canon::canonical_form(ts).certificate == first.certificate);
    CHECK(std::uint64_t(30) * 168 == 5040);
}

TEST_CASE("certificates are relabeling invariants") {
    std::mt19937 rng(20260823);  // fixed seed, deterministic run
    auto fam = catalog::enumerate_sts9(0x1FFu);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& ts = fam[rng() % fam.size()];
        auto shuffled = relabel(ts, random_perm(9, rng));
        CHECK(canon::are_isomorphic(ts, shuffled));
        canon::CanonInput a(ts), b(shuffled);
        CHECK(a.invariant_hash() == b.invariant_hash());
        CHECK(a.canonical_certificate() == b.canonical_certificate());
    }
}

TEST_CASE("TD canonicalization distinguishes main classes") {
    const auto& cat = td36();
    REQUIRE(cat.representatives.size() == 12);
    std::set<std::string> certs;
    for (const auto& td : cat.representatives)
        certs.insert(canon::canonical_form(td).certificate);
    CHECK(certs.size() == 12);

    // a relabeled representative stays in its class
    std::mt19937 rng(7);
    const auto& td = cat.representatives[3];
    std::vector<int> perm(21);
    std::iota(perm.begin(), perm.end(), 0);
    // permute within the support only, keeping it a TD on some groups
    auto pts = mask_points(td.support());
    auto shuffled_pts = pts;
    std::shuffle(shuffled_pts.begin(), shuffled_pts.end(), rng);
    for (std::size_t i = 0; i < pts.size(); ++i) perm[pts[i]] = shuffled_pts[i];
    TransversalDesign moved;
    for (int g = 0; g < 3; ++g) {
        Mask m = 0;
        for (int p : mask_points(td.groups[g])) m |= 1u << perm[p];
        moved.groups[g] = m;
    }
    for (const auto& b : td.blocks)
        moved.blocks.emplace_back(perm[b.pts[0]], perm[b.pts[1]], perm[b.pts[2]]);
    std::sort(moved.blocks.begin(), moved.blocks.end());
    CHECK(canon::are_isomorphic(td, moved));
    CHECK(!canon::are_isomorphic(cat.representatives[0], cat.representatives[1]));
}

TEST_CASE("main-class counts for small orders match an orbit-BFS oracle") {
    for (int n : {3, 4, 5}) {
        auto cat = catalog::enumerate_td_main_classes(
            n, {Mask((1u << n) - 1), Mask(((1u << n) - 1) << n), Mask(((1u << n) - 1) << (2 * n))});
        CHECK(int(cat.representatives.size()) == main_classes_by_orbit_bfs(n));
        std::uint64_t total = 0;
        for (auto s : cat.class_sizes) total += s;
        std::uint64_t expected = n == 3 ? 12 : n == 4 ? 576 : 161280;
        CHECK(total == expected);
    }
}

TEST_CASE("order-6 catalog: 12 classes, 812851200 squares, 9408 reduced") {
    CHECK(catalog::enumerate_reduced_squares(6).size() == 9408);
    const auto& cat = td36();
    CHECK(cat.representatives.size() == 12);
    std::uint64_t total = 0;
    for (auto s : cat.class_sizes) total += s;
    CHECK(total == 812851200u);
    CHECK(total == std::uint64_t(9408) * 86400);  // reduced count cross-check
    for (const auto& td : cat.representatives) CHECK(validate_td(td).ok);
}

TEST_CASE("sub-TD(3,3) structure: partitions of four") {
    const auto& cat = td36();
    int splitting = 0;
    for (const auto& td : cat.representatives) {
        auto parts = catalog::subtd33_structure(td);
        if (parts.empty()) continue;
        ++splitting;
        for (const auto& p : parts) {
            std::set<int> used;
            for (const auto& sub : p.parts) {
                CHECK(sub.block_indices.size() == 9);
                used.insert(sub.block_indices.begin(), sub.block_indices.end());
                // each sub-TD is itself a TD(3,3)
                TransversalDesign s;
                s.groups = sub.half_groups;
                for (int i : sub.block_indices) s.blocks.push_back(td.blocks[i]);
                std::sort(s.blocks.begin(), s.blocks.end());
                CHECK(validate_td(s).ok);
            }
            CHECK(used.size() == 36);  // the four sub-TDs partition the blocks
        }
        auto aligned = catalog::align_representative(td, assembler::Frame::petal_halves());
        auto aligned_parts = catalog::subtd33_structure(aligned);
        REQUIRE(!aligned_parts.empty());
        bool on_frame = false;
        for (const auto& p : aligned_parts) {
            std::array<Mask, 2> lo = {0x7u << 3, 0x7u << 6};
            if ((p.a_halves == lo || (p.a_halves[0] == lo[1] && p.a_halves[1] == lo[0])))
                on_frame = true;
        }
        CHECK(on_frame);
    }
    CHECK(splitting > 0);

    // the cyclic order-6 square splits: {0,2,4} is a subgroup of Z6
    LatinSquare sq;
    sq.n = 6;
    sq.cells.resize(36);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) sq.at(r, c) = std::uint8_t((r + c) % 6);
    auto td = latin_to_td(sq, {0x3Fu, 0x3Fu << 6, 0x3Fu << 12});
    CHECK(!catalog::subtd33_structure(td).empty());
}

TEST_CASE("assembled candidates and their census") {
    auto fam = catalog::build_sts9_family(0x1FFu);
    const auto& cat = td36();
    auto aligned = catalog::align_representative(cat.representatives[0],
                                                 assembler::Frame::petal_halves());
    assembler::CandidateStream stream(aligned, fam, assembler::Mode::Full);
    CHECK(stream.total_candidates() == 32832000u);

    // spot-check candidates across all four patterns
    const std::uint64_t p0 = std::uint64_t(120) * 120 * 120;
    const std::uint64_t chunk = std::uint64_t(720) * 120 * 120;
    for (std::uint64_t pos : {std::uint64_t(0), p0 - 1, p0 + 5, p0 + chunk + 17,
                              p0 + 2 * chunk + 123456}) {
        auto c = stream.coords(pos);
        auto ts = stream.build(c);
        CHECK(ts.blocks.size() == 70);
        CHECK(validate_sts(ts).ok);

        auto flowers = assembler::find_flowers(ts);
        REQUIRE(!flowers.empty());
        bool constructed = false;
        const assembler::Flower* fl = nullptr;
        for (const auto& f : flowers)
            if (f.stem.mask == assembler::Frame::stem()) {
                constructed = true;
                fl = &f;
            }
        CHECK(constructed);
        CHECK(int(flowers.size()) ==
              assembler::predict_tau(ts, *fl, aligned, stream.partitions()));
        auto [sigma, supports] = assembler::count_sub_sts9(ts);
        CHECK(sigma >= 1);
        CHECK((c.pattern == 0) == fl->stem_is_block);
        // the full petal's support is a sub-STS(9)
        int petal = fl->stem_is_block ? 0 : fl->sts_petal;
        Mask sup = fl->stem.mask | fl->petals[petal];
        CHECK(std::find(supports.begin(), supports.end(), sup) != supports.end());

        auto rep = analysis::check_structure_theorems(ts);
        CHECK(rep.ok);
    }

    // stream iteration agrees with coords/build
    assembler::CandidateStream s2(aligned, fam, assembler::Mode::Full);
    s2.seek(p0 - 2);
    TripleSystem out;
    CHECK(s2.next(out));
    CHECK(out == stream.build(stream.coords(p0 - 2)));
    CHECK(s2.position() == p0 - 1);
}

TEST_CASE("assemble rejects broken membership patterns") {
    auto fam = catalog::build_sts9_family(0x1FFu);
    const auto& cat = td36();
    auto aligned = catalog::align_representative(cat.representatives[0],
                                                 assembler::Frame::petal_halves());
    auto prime = fam.with_block(Triple(0, 1, 2));
    auto part = [&](int idx, int shift, bool drop) {
        std::vector<Triple> bl;
        for (const auto& b : fam.all[idx].blocks) {
            if (drop && b == Triple(0, 1, 2)) continue;
            bl.emplace_back(b.pts[0] < 3 ? b.pts[0] : b.pts[0] + shift,
                            b.pts[1] < 3 ? b.pts[1] : b.pts[1] + shift,
                            b.pts[2] < 3 ? b.pts[2] : b.pts[2] + shift);
        }
        return bl;
    };
    int i = prime[0];
    auto good = assembler::assemble(aligned, part(i, 0, false), part(i, 6, true), part(i, 12, true));
    CHECK(validate_sts(good).ok);
    // keeping the stem block in two parts double-covers the stem pairs
    CHECK_THROWS_AS(assembler::assemble(aligned, part(i, 0, false), part(i, 6, false),
                                        part(i, 12, true)),
                    std::invalid_argument);
}

TEST_CASE("parallel classes and resolvability") {
    auto fam = catalog::enumerate_sts9(0x1FFu);
    // in AG(2,3) disjoint lines are parallel: 4 directions, 4 classes
    auto classes = analysis::parallel_classes(fam[0]);
    CHECK(classes.size() == 4);
    for (const auto& pc : classes) {
        CHECK(pc.size() == 3);
        Mask cov = 0;
        for (const auto& b : pc) cov |= b.mask;
        CHECK(cov == 0x1FFu);
    }
    analysis::Resolution witness;
    CHECK(analysis::is_resolvable(fam[0], &witness));  // STS(9) is AG(2,3)
    CHECK(witness.size() == 4);

    auto fano = catalog::enumerate_sts9(0x7Fu);
    CHECK_THROWS_AS(analysis::is_resolvable(fano[0]), std::invalid_argument);

    // tiny budget must throw, never answer "false"
    CHECK_THROWS_AS(analysis::is_resolvable(fam[0], nullptr, 2), std::runtime_error);
}

TEST_CASE("exact counting identities") {
    using doublecount::ExactInteger;
    CHECK(doublecount::factorial(6) == 720);
    CHECK(doublecount::total_flower_td_pairs() ==
          ExactInteger("101473423278637842432000000"));
    // the published census reproduces the closed formula via 21!/|Aut|
    CHECK(doublecount::expected_weighted_sum() == doublecount::total_flower_td_pairs());

    std::uint64_t classes = 0, resolvable = 0;
    for (const auto& r : doublecount::expected_census()) {
        classes += r.classes;
        resolvable += r.resolvable;
    }
    CHECK(classes == doublecount::kExpectedClasses);
    CHECK(resolvable == doublecount::kExpectedResolvable);
}

TEST_CASE("record JSONL round trip") {
    auto fam = catalog::enumerate_sts9(0x1FFu);
    assembler::ClassificationRecord rec;
    rec.blocks = fam[0];
    rec.tau6 = 3;
    rec.sigma9 = 1;
    rec.aut_order = 432;
    rec.cert_hash = 0xdeadbeef12345678ull;
    rec.resolvable = true;
    auto back = assembler::record_from_json(assembler::record_to_json(rec));
    CHECK(back.blocks == rec.blocks);
    CHECK(back.tau6 == rec.tau6);
    CHECK(back.sigma9 == rec.sigma9);
    CHECK(back.aut_order == rec.aut_order);
    CHECK(back.cert_hash == rec.cert_hash);
    REQUIRE(back.resolvable.has_value());
    CHECK(*back.resolvable);
}

TEST_CASE("pipeline: checkpoint resume and thread determinism") {
    namespace fs = std::filesystem;
    auto run = [&](int threads, const std::string& ckpt_dir) {
        assembler::ClassifyOptions opts;
        opts.mode = assembler::Mode::TauEq7;
        opts.thread_count = threads;
        opts.checkpoint_dir = ckpt_dir;
        opts.checkpoint_every = 500;
        opts.td_catalog = &td36();
        return assembler::classify_pipeline(opts);
    };
    auto keys = [](const std::vector<assembler::ClassificationRecord>& rs) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        for (const auto& r : rs) out.emplace_back(r.cert_hash, r.aut_order);
        return out;
    };

    fs::path dir = fs::temp_directory_path() / "sts21_ckpt_test";
    fs::remove_all(dir);
    auto base = run(1, "");
    REQUIRE(base.size() == 12);

    auto with_ckpt = run(1, dir.string());
    CHECK(keys(with_ckpt) == keys(base));
    CHECK(fs::exists(dir / "classify_tau7.ckpt"));
    // the saved final checkpoint resumes to the identical record set
    auto resumed = run(1, dir.string());
    CHECK(keys(resumed) == keys(base));
    fs::remove_all(dir);

    auto threaded = run(3, "");
    CHECK(keys(threaded) == keys(base));
}
