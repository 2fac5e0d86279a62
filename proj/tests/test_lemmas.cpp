#include "doctest.h"

#include <set>

#include "mflip/families.hpp"
#include "mflip/lemmas.hpp"

using namespace mflip;

TEST_CASE("step table") {
    auto store = enumerate(fan(5, 1));
    StepTable table(store);
    int u = store.find(fan(5, 1));
    std::set<std::pair<int, int>> added;
    for (auto w : store.adjacent(u)) {
        auto steps = table.steps(u, static_cast<int>(w));
        REQUIRE(steps.size() == 1);
        added.emplace(steps[0].a, steps[0].b);
    }
    // fan(5,1) has diagonals 13 and 14; they flip to 24 and 35
    CHECK(added == std::set<std::pair<int, int>>{{2, 4}, {3, 5}});
    CHECK(table.steps(u, u).empty());
}

TEST_CASE("deletion and incidence replays on small tori") {
    CanonOptions off{false};
    for (int n = 2; n <= 3; ++n) {
        auto big = enumerate(seed_triangulation({1, n, 1}), {}, 1, off);
        auto small = enumerate(seed_triangulation({1, n - 1, 1}), {}, 1, off);
        auto dc = replay_deletion_contraction(big, small);
        CHECK(dc.instances == static_cast<long>(n * big.edge_count()));
        CHECK(dc.passed());
        auto inc = replay_incidence_inequality(big, small, 50, 3);
        CHECK(inc.instances == 50);
        CHECK(inc.passed());
        auto ear = replay_ear_condition(big);
        CHECK(ear.instances > 0);
        CHECK(ear.passed());
    }
}

TEST_CASE("first incident flip on the A family") {
    auto store = enumerate(seed_triangulation({1, 3, 1}), {}, 1, {false});
    auto r = replay_first_incident_flip(store, a_family(Sign::Minus, 3, standard_core(1)),
                                        a_family(Sign::Plus, 3, standard_core(1)));
    REQUIRE(r.size() == 2);
    CHECK(r[0].passed());
    CHECK(r[1].passed());
    CHECK(r[1].geodesics == 2);
    CHECK_THROWS_AS(replay_ear_condition(enumerate(seed_triangulation({1, 3, 1}), {20, 1e9})), SurfaceError);
}
