#include "doctest.h"

#include <set>

#include "mflip/canon.hpp"
#include "mflip/families.hpp"
#include "mflip/flip.hpp"
#include "mflip/surface.hpp"

using namespace mflip;

TEST_CASE("counts for one-holed classes") {
    for (int g = 0; g <= 3; ++g) {
        for (int n = 1; n <= 8; ++n) {
            SurfaceClass c{g, n, 1};
            CHECK(c.triangle_count() == n + 4 * g - 2);
            CHECK(c.interior_arc_count() == n + 6 * g - 3);
        }
    }
}

TEST_CASE("disk triangulations validate") {
    for (int n = 3; n <= 10; ++n) {
        auto z = zigzag(n);
        CHECK(validate(z).ok());
        CHECK(z.triangle_count() == n - 2);
        CHECK(z.arc_count() == n - 3);
        CHECK(vertex_count(z) == n);
        for (int apex = 1; apex <= n; ++apex) CHECK(validate(fan(n, apex)).ok());
    }
}

TEST_CASE("standard core is a valid genus-g surface") {
    for (int g = 1; g <= 3; ++g) {
        auto c = standard_core(g);
        INFO("g=" << g);
        CHECK(validate(c).ok());
        CHECK(c.triangle_count() == 4 * g - 1);
        CHECK(c.arc_count() == 6 * g - 2);
        CHECK(vertex_count(c) == 1);
        CHECK(validate(default_core(g)).ok());
    }
}

TEST_CASE("boundary cycle runs 1..n") {
    auto t = a_family(Sign::Minus, 5, standard_core(1));
    auto cycles = boundary_cycle(t);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("validation catches a duplicated side") {
    std::vector<Triangle> tris{{Side::boundary(1), Side::boundary(2), Side::interior(0, 0)},
                               {Side::interior(0, 0), Side::boundary(3), Side::boundary(4)}};
    auto rep = validate({0, 4, 1}, tris);
    CHECK_FALSE(rep.ok());
    CHECK_THROWS_AS(Triangulation::make({0, 4, 1}, tris), SurfaceError);
}

TEST_CASE("validation catches wrong triangle count") {
    std::vector<Triangle> tris{{Side::boundary(1), Side::boundary(2), Side::boundary(3)}};
    CHECK_FALSE(validate({0, 4, 1}, tris).ok());
    CHECK(validate({0, 3, 1}, tris).ok());
}

TEST_CASE("normalized renumbers densely") {
    std::vector<Triangle> tris{{Side::boundary(1), Side::boundary(2), Side::interior(7, 1)},
                               {Side::interior(7, 0), Side::boundary(3), Side::boundary(4)}};
    auto t = Triangulation::make({0, 4, 1}, tris).normalized();
    CHECK(t.arcs() == std::vector<int>{0});
    CHECK(t.triangle(0)[2] == Side::interior(0, 0));
}
