#include "doctest.h"

#include <random>

#include "mflip/explorer.hpp"
#include "mflip/families.hpp"
#include "oracles.hpp"

using namespace mflip;

namespace {

oracle::Diagonals as_set(const Triangulation& disk) {
    auto d = disk_diagonals(disk);
    return {d.begin(), d.end()};
}

}  // namespace

TEST_CASE("small stores") {
    auto torus = enumerate(standard_core(1));
    CHECK(torus.node_count() == 1);
    CHECK(torus.edge_count() == 0);
    CHECK(diameter(torus).diameter == 0);
    auto hexagon = enumerate(fan(6, 1));
    CHECK(hexagon.node_count() == 14);
    CHECK(hexagon.edge_count() == 21);
    // Regression constant for the twice-marked torus (mirror rule on).
    CHECK(enumerate(seed_triangulation({1, 2, 1})).node_count() == 9);
}

TEST_CASE("store adjacency is symmetric and loop-free") {
    auto s = enumerate(seed_triangulation({1, 3, 1}));
    for (int v = 0; v < s.node_count(); ++v) {
        for (auto w : s.adjacent(v)) {
            CHECK(static_cast<int>(w) != v);
            auto back = s.adjacent(static_cast<int>(w));
            CHECK(std::find(back.begin(), back.end(), static_cast<std::uint32_t>(v)) != back.end());
        }
    }
}

TEST_CASE("enumeration does not depend on the thread count") {
    auto a = enumerate(seed_triangulation({1, 4, 1}), {}, 1);
    auto b = enumerate(seed_triangulation({1, 4, 1}), {}, 8);
    REQUIRE(a.node_count() == b.node_count());
    for (int v = 0; v < a.node_count(); ++v) {
        CHECK(a.code(v) == b.code(v));
        auto x = a.adjacent(v), y = b.adjacent(v);
        CHECK(std::vector<std::uint32_t>(x.begin(), x.end()) == std::vector<std::uint32_t>(y.begin(), y.end()));
    }
}

TEST_CASE("node budget yields a flagged partial store") {
    auto s = enumerate(seed_triangulation({1, 4, 1}), {50, 1e9});
    CHECK(s.partial());
    CHECK(s.node_count() <= 50);
    CHECK_THROWS_AS(diameter(s), SurfaceError);
    CHECK_THROWS_AS(distance(seed_triangulation({1, 6, 1}), a_family(Sign::Plus, 6, standard_core(1)), {100, 1e9}),
                    BudgetExceeded);
}

TEST_CASE("distances agree with the polygon oracle") {
    std::mt19937_64 rng(41);
    for (int n = 5; n <= 9; ++n) {
        auto store = enumerate(fan(n, 1));
        for (int k = 0; k < 10; ++k) {
            auto u = random_walk(fan(n, 1), 25, rng), v = random_walk(fan(n, 2), 25, rng);
            int expect = oracle::polygon_distance(as_set(u), as_set(v), n);
            CHECK(distance(store, store.find(u), store.find(v)) == expect);
            CHECK(distance(u, v) == expect);
            auto path = shortest_path(u, v);
            CHECK(path.length() == expect);
            CHECK(code_bytes(endpoint(path)) == code_bytes(v));
        }
    }
}

TEST_CASE("associahedron diameters") {
    const int expected[] = {1, 2, 4, 5, 7, 9, 11};
    for (int n = 4; n <= 10; ++n) CHECK(diameter(enumerate(fan(n, 1))).diameter == expected[n - 4]);
}

TEST_CASE("geodesics") {
    auto pent = enumerate(fan(5, 1));
    int u = pent.find(fan(5, 1));
    std::size_t seen = 0;
    auto self = all_geodesics(pent, u, u, [&](std::span<const int> nodes) {
        CHECK(nodes.size() == 1);
        ++seen;
        return true;
    });
    CHECK(self.count == 1);
    CHECK(seen == 1);
    // In the 5-cycle every distance-2 pair has exactly one geodesic.
    for (int v = 0; v < pent.node_count(); ++v) {
        if (distance(pent, u, v) != 2) continue;
        CHECK(all_geodesics(pent, u, v, [](std::span<const int>) { return true; }).count == 1);
    }
    auto hex = enumerate(fan(6, 1));
    int a = hex.find(fan(6, 1)), b = hex.find(fan(6, 4));
    auto capped = all_geodesics(hex, a, b, [](std::span<const int>) { return true; }, 1);
    CHECK_FALSE(capped.complete);
}

TEST_CASE("witness pair for the twice-marked torus") {
    auto core = standard_core(1);
    auto am = a_family(Sign::Minus, 2, core), ap = a_family(Sign::Plus, 2, core);
    int d = distance(am, ap);
    CHECK(d >= 3);
    auto store = enumerate(am);
    auto dia = diameter(store);
    CHECK(dia.diameter >= d);
    CHECK(dia.diameter <= 23 * 2 / 8 + 8);
    int u = store.find(am), v = store.find(ap);
    all_geodesics(store, u, v, [&](std::span<const int> nodes) {
        std::vector<std::string> codes;
        for (int x : nodes) codes.emplace_back(store.code(x));
        CHECK(incidence_profile(path_from_codes(am, codes), 2) >= 3);
        return true;
    });
}

TEST_CASE("incidence profile of an empty path") { CHECK(incidence_profile({fan(6, 1), {}}, 3) == 0); }
