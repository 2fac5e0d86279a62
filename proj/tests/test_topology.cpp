#include "doctest.h"

#include <random>
#include <set>

#include "mflip/families.hpp"
#include "mflip/flip.hpp"
#include "mflip/topology.hpp"

using namespace mflip;

namespace {

int euler_sum(const CutSurface& cs) {
    int sum = 0;
    for (const auto& c : cs.components) sum += euler_characteristic(c);
    return sum;
}

}  // namespace

TEST_CASE("Euler characteristic of one-holed classes") {
    for (int g = 0; g <= 2; ++g) {
        for (int n = (g == 0 ? 3 : 1); n <= 6; ++n) CHECK(euler_characteristic(seed_triangulation({g, n, 1})) == 1 - 2 * g);
    }
}

TEST_CASE("cutting is Euler additive and keeps components valid") {
    std::mt19937_64 rng(31);
    for (int g = 0; g <= 2; ++g) {
        for (int n = (g == 0 ? 4 : 1); n <= 8; ++n) {
            auto t = random_walk(seed_triangulation({g, n, 1}), 40, rng);
            auto arcs = t.arcs();
            std::shuffle(arcs.begin(), arcs.end(), rng);
            arcs.resize(std::min<std::size_t>(arcs.size(), 1 + rng() % 4));
            auto cs = cut(t, arcs);
            CHECK(euler_sum(cs) == euler_characteristic(t) + static_cast<int>(arcs.size()));
            CHECK(cs.trace.size() == arcs.size());
            std::set<int> fresh;
            for (auto [arc, labels] : cs.trace) fresh.insert({labels.first, labels.second});
            CHECK(fresh.size() == 2 * arcs.size());
            for (const auto& c : cs.components) {
                INFO(validate(c, LabelRule::Free).summary());
                CHECK(validate(c, LabelRule::Free).ok());
            }
        }
    }
}

TEST_CASE("A_n minus: the ear arc is boundary parallel, the core loop is not") {
    for (int n = 3; n <= 7; ++n) {
        auto t = a_family(Sign::Minus, n, standard_core(1));
        int parallel = 0, core_loops = 0;
        for (int e : t.arcs()) {
            auto cs = cut(t, std::vector<int>{e});
            if (cs.components.size() == 2) {
                bool has_torus = cs.components[0].genus() == 1 || cs.components[1].genus() == 1;
                core_loops += has_torus && !is_boundary_parallel(t, e);
                parallel += is_boundary_parallel(t, e);
            }
        }
        CHECK(parallel >= 1);
        CHECK(core_loops >= 1);
    }
}

TEST_CASE("non-separating arc: one component, genus 0, two boundaries") {
    auto t = a_family(Sign::Minus, 4, standard_core(1));
    bool found = false;
    for (int e : t.arcs()) {
        auto cs = cut(t, std::vector<int>{e});
        if (cs.components.size() != 1) continue;
        found = true;
        CHECK(cs.components[0].genus() == 0);
        CHECK(cs.components[0].boundaries() == 2);
    }
    CHECK(found);
}

TEST_CASE("every arc of a disk is boundary parallel") {
    for (int n = 4; n <= 7; ++n) {
        auto z = zigzag(n);
        for (int e : z.arcs()) CHECK(is_boundary_parallel(z, e));
    }
}

TEST_CASE("cut systems cut to a polygon with n+4g vertices") {
    std::mt19937_64 rng(32);
    for (int g = 1; g <= 3; ++g) {
        for (int n = 1; n <= 6; ++n) {
            auto t = random_walk(seed_triangulation({g, n, 1}), 50, rng);
            auto sys = find_cut_system(t);
            REQUIRE(static_cast<int>(sys.size()) == 2 * g);
            auto cs = cut(t, sys);
            REQUIRE(cs.components.size() == 1);
            const auto& p = cs.components[0];
            CHECK(p.genus() == 0);
            CHECK(p.boundaries() == 1);
            CHECK(p.marks() == n + 4 * g);
            if (g == 1) {
                auto first = cut(t, std::vector<int>{sys[0]});
                CHECK(first.components.size() == 1);
                CHECK(first.components[0].boundaries() == 2);
            }
        }
    }
    auto a3 = a_family(Sign::Minus, 3, default_core(2));
    auto cs = cut(a3, find_cut_system(a3));
    CHECK(cs.components.at(0).marks() == 11);
}

TEST_CASE("untouched runs") {
    CHECK(untouched_run(16, std::vector<int>{1, 3, 5, 7, 9, 11, 13, 15}).length == 2);
    CHECK(untouched_run(16, std::vector<int>{4, 4, 4}).length == 16);
    CHECK(untouched_run(10, std::vector<int>{}).length == 10);
    auto r = untouched_run(12, std::vector<int>{2, 5, 6});
    CHECK(r.start == 6);
    CHECK(r.length == 8);
    std::mt19937_64 rng(33);
    for (int k = 0; k < 200; ++k) {
        const int n = 16;
        std::vector<int> ends;
        for (int i = 0; i < 8; ++i) ends.push_back(1 + static_cast<int>(rng() % n));
        auto run = untouched_run(n, ends);
        CHECK(run.length >= 2);
        for (int i = 1; i < run.length; ++i) {
            int v = (run.start - 1 + i) % n + 1;
            CHECK(std::find(ends.begin(), ends.end(), v) == ends.end());
        }
    }
}
