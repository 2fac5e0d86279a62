#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "mflip/canon.hpp"
#include "mflip/explorer.hpp"
#include "mflip/families.hpp"
#include "mflip/flip.hpp"
#include "oracles.hpp"

using namespace mflip;

namespace {

// Same value with shuffled triangle order, rotated triangles and permuted arc ids.
Triangulation scramble(const Triangulation& t, std::mt19937_64& rng) {
    auto arcs = t.arcs();
    std::vector<int> perm(arcs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) * 3 + 5;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Triangle> tris(t.triangles().begin(), t.triangles().end());
    std::shuffle(tris.begin(), tris.end(), rng);
    for (auto& tri : tris) {
        std::rotate(tri.begin(), tri.begin() + static_cast<long>(rng() % 3), tri.end());
        for (auto& s : tri) {
            if (s.is_boundary()) continue;
            auto idx = static_cast<std::size_t>(std::lower_bound(arcs.begin(), arcs.end(), s.arc()) - arcs.begin());
            s = Side::interior(perm[idx], s.bit() ^ static_cast<int>(perm[idx] % 2));
        }
    }
    return Triangulation::make(t.surface(), std::move(tris));
}

Triangulation random_in_class(const SurfaceClass& cls, std::mt19937_64& rng, int steps = 40) {
    return random_walk(seed_triangulation(cls), steps, rng);
}

}  // namespace

TEST_CASE("square diagonal flips to the other diagonal") {
    auto sq = fan(4, 1);
    REQUIRE(sq.arcs() == std::vector<int>{0});
    CHECK(flippable(sq, 0));
    CHECK(disk_diagonals(flip(sq, 0)) == std::vector<std::pair<int, int>>{{2, 4}});
    CHECK_THROWS_WITH_AS(flippable(sq, 7), "no such arc", SurfaceError);
}

TEST_CASE("every arc of a valid triangulation is flippable; flips stay valid") {
    std::mt19937_64 rng(11);
    for (int g = 0; g <= 2; ++g) {
        for (int n = (g == 0 ? 3 : 1); n <= 8; ++n) {
            auto t = random_in_class({g, n, 1}, rng);
            CHECK(static_cast<int>(neighbors(t).size()) == n + 6 * g - 3);
            for (int e : t.arcs()) {
                CHECK(flippable(t, e));
                CHECK(validate(flip(t, e)).ok());
            }
        }
    }
}

TEST_CASE("flip involution and neighbour symmetry") {
    std::mt19937_64 rng(12);
    for (int g = 0; g <= 2; ++g) {
        for (int n = (g == 0 ? 4 : 1); n <= 6; ++n) {
            auto t = random_in_class({g, n, 1}, rng);
            const auto& code = code_bytes(t);
            for (int e : t.arcs()) {
                auto u = flip(t, e);
                CHECK(code_bytes(flip(u, e)) == code);
                bool back = false;
                for (const auto& w : neighbors(u)) back = back || code_bytes(w) == code;
                CHECK(back);
            }
        }
    }
}

TEST_CASE("torus with one marked point: all neighbours share the code") {
    auto t = standard_core(1);
    auto nb = neighbors(t);
    CHECK(nb.size() == 4);
    for (const auto& u : nb) CHECK(code_bytes(u) == code_bytes(t));
    CHECK(equivalent(mirror(t), t));
}

TEST_CASE("pentagon neighbours are distinct") {
    auto t = fan(5, 1);
    auto nb = neighbors(t);
    std::set<std::string> codes;
    for (const auto& u : nb) codes.insert(code_bytes(u));
    codes.insert(code_bytes(t));
    CHECK(codes.size() == 3);  // two arcs -> two neighbours, plus self
}

TEST_CASE("code ignores numbering, order and rotation") {
    std::mt19937_64 rng(13);
    auto z = zigzag(7);
    for (int i = 0; i < 5; ++i) CHECK(code_bytes(scramble(z, rng)) == code_bytes(z));
    for (int g = 1; g <= 2; ++g) {
        for (int n = 1; n <= 5; ++n) {
            auto t = random_in_class({g, n, 1}, rng);
            for (int i = 0; i < 3; ++i) CHECK(code_bytes(scramble(t, rng)) == code_bytes(t));
        }
    }
}

TEST_CASE("decode round trip and hex") {
    std::mt19937_64 rng(14);
    for (int g = 0; g <= 2; ++g) {
        auto t = random_in_class({g, 5, 1}, rng);
        const auto& code = code_bytes(t);
        auto back = decode_code(code);
        CHECK(code_bytes(back) == code);
        CHECK(from_hex(to_hex(code)) == code);
        CHECK(canonical_code(t).hex() == to_hex(code));
    }
}

TEST_CASE("disk codes: Catalan counts") {
    for (int n = 4; n <= 9; ++n) {
        auto all = oracle::all_polygon_triangulations(1, n);
        std::set<std::string> codes;
        for (const auto& d : all) {
            std::vector<std::pair<int, int>> v(d.begin(), d.end());
            codes.insert(code_bytes(disk_from_diagonals(n, v)));
        }
        CHECK(codes.size() == all.size());
    }
    CHECK(oracle::all_polygon_triangulations(1, 6).size() == 14);
}

TEST_CASE("codes agree with exhaustive isomorphism search") {
    // Enumerated classes: every pair of representatives is iso iff codes match;
    // random walk samples must land on a node isomorphic to its representative.
    std::mt19937_64 rng(15);
    struct Case {
        SurfaceClass cls;
        bool mirror;
    };
    for (auto c : {Case{{1, 1, 1}, true}, Case{{1, 2, 1}, true}, Case{{1, 2, 1}, false}, Case{{0, 6, 1}, false},
                   Case{{0, 8, 1}, false}, Case{{1, 3, 1}, false}}) {
        CanonOptions opts{c.mirror};
        auto store = enumerate(seed_triangulation(c.cls), {}, 1, opts);
        INFO("g=" << c.cls.genus << " n=" << c.cls.marks << " mirror=" << c.mirror);
        REQUIRE_FALSE(store.partial());
        std::vector<Triangulation> reps;
        for (int v = 0; v < store.node_count(); ++v) reps.push_back(store.representative(v));
        bool mirror_allowed = c.mirror && c.cls.marks <= 2;
        int clashes = 0;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = i + 1; j < reps.size(); ++j) clashes += oracle::isomorphic(reps[i], reps[j], mirror_allowed);
        }
        CHECK(clashes == 0);
        for (int k = 0; k < 40; ++k) {
            auto t = random_walk(seed_triangulation(c.cls), 30, rng);
            int node = store.find(code_bytes(t, opts));
            REQUIRE(node >= 0);
            CHECK(oracle::isomorphic(t, reps[static_cast<std::size_t>(node)], mirror_allowed));
        }
    }
}

TEST_CASE("arc correspondence maps arcs to arcs of an isomorphic copy") {
    std::mt19937_64 rng(16);
    auto t = random_in_class({1, 4, 1}, rng);
    auto s = scramble(t, rng);
    auto map = arc_correspondence(t, s);
    REQUIRE(map.has_value());
    for (int e : t.arcs()) {
        int f = (*map)[static_cast<std::size_t>(e)];
        REQUIRE(s.has_arc(f));
        CHECK(code_bytes(flip(t, e)) == code_bytes(flip(s, f)));
    }
    for (int e : t.arcs()) {
        auto u = flip(t, e);
        CHECK(arc_correspondence(t, u).has_value() == (code_bytes(t) == code_bytes(u)));
    }
}

TEST_CASE("class mismatch and multi-boundary inputs are rejected") {
    CHECK_THROWS_AS(equivalent(fan(5, 1), fan(6, 1)), SurfaceError);
}
