#include "mflip/families.hpp"

#include <algorithm>
#include <map>

#include "mflip/flip.hpp"

namespace mflip {

namespace {

int wrap(int label, int n) { return ((label - 1) % n + n) % n + 1; }

int max_arc_id(const Triangulation& t) {
    auto arcs = t.arcs();
    return arcs.empty() ? -1 : arcs.back();
}

}  // namespace

Triangulation disk_from_diagonals(int n, std::span<const std::pair<int, int>> diagonals) {
    if (n < 3) throw SurfaceError("disk needs n >= 3");
    if (static_cast<int>(diagonals.size()) != n - 3) throw SurfaceError("disk needs n-3 diagonals");
    std::map<std::pair<int, int>, int> diag_id;
    for (std::size_t i = 0; i < diagonals.size(); ++i) {
        auto [a, b] = diagonals[i];
        if (a > b) std::swap(a, b);
        if (a < 1 || b > n || b - a < 2 || (a == 1 && b == n)) throw SurfaceError("not a diagonal");
        diag_id[{a, b}] = static_cast<int>(i);
    }
    auto is_edge = [&](int a, int b) {
        if (b == a + 1 || (a == 1 && b == n)) return true;
        return diag_id.count({a, b}) > 0;
    };
    auto forward = [&](int a, int b) {  // side a -> b with a < b
        if (b == a + 1) return Side::boundary(a);
        return Side::interior(diag_id.at({a, b}), 0);
    };
    std::vector<Triangle> tris;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (!is_edge(i, j)) continue;
            for (int k = j + 1; k <= n; ++k) {
                if (!is_edge(j, k) || !is_edge(i, k)) continue;
                Side closing = (i == 1 && k == n) ? Side::boundary(n) : Side::interior(diag_id.at({i, k}), 1);
                tris.push_back({forward(i, j), forward(j, k), closing});
            }
        }
    }
    return Triangulation::make({0, n, 1}, std::move(tris));
}

std::vector<std::pair<int, int>> disk_diagonals(const Triangulation& disk) {
    auto tails = tail_vertices(disk);
    std::vector<std::pair<int, int>> out;
    for (int arc : disk.arcs()) {
        auto [a, b] = arc_endpoints(disk, tails, arc);
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Triangulation zigzag(int n) {
    if (n < 3) throw SurfaceError("zigzag needs n >= 3");
    // Path vertices alternate between the two sides: n, 2, n-1, 3, n-2, ...
    std::vector<int> path;
    int low = 2, high = n;
    for (int i = 0; i < n - 2; ++i) path.push_back(i % 2 == 0 ? high-- : low++);
    std::vector<std::pair<int, int>> diags;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) diags.emplace_back(path[i], path[i + 1]);
    return disk_from_diagonals(n, diags);
}

Triangulation fan(int n, int apex) {
    if (n < 3) throw SurfaceError("fan needs n >= 3");
    if (apex < 1 || apex > n) throw SurfaceError("unknown vertex label");
    std::vector<std::pair<int, int>> diags;
    for (int k = 2; k <= n - 2; ++k) diags.emplace_back(apex, wrap(apex + k, n));
    return disk_from_diagonals(n, diags);
}

Triangulation standard_core(int genus) {
    if (genus < 1) throw SurfaceError("core needs genus >= 1");
    const int m = 4 * genus;  // loop copies, polygon vertices c_0..c_m
    // Polygon side j (1..m) runs c_j -> c_{j+1}, c_{m+1} = c_0.
    auto polygon_side = [&](int j) {
        int group = (j - 1) / 4, r = (j - 1) % 4;
        int x = 2 * group, y = 2 * group + 1;
        switch (r) {
            case 0: return Side::interior(x, 0);
            case 1: return Side::interior(y, 0);
            case 2: return Side::interior(x, 1);
            default: return Side::interior(y, 1);
        }
    };
    // Fan diagonal c_0 - c_j for j = 2..m-1.
    auto diag = [&](int j, int side) { return Side::interior(2 * genus + j - 2, side); };
    std::vector<Triangle> tris;
    for (int j = 1; j <= m - 1; ++j) {
        Side first = j == 1 ? Side::boundary(1) : diag(j, 0);
        Side third = j + 1 <= m - 1 ? diag(j + 1, 1) : polygon_side(m);
        tris.push_back({first, polygon_side(j), third});
    }
    return Triangulation::make({genus, 1, 1}, std::move(tris));
}

Triangulation random_walk(const Triangulation& start, int steps, std::mt19937_64& rng) {
    Triangulation cur = start;
    for (int i = 0; i < steps; ++i) {
        auto arcs = cur.arcs();
        if (arcs.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
        cur = flip(cur, arcs[pick(rng)]);
    }
    return cur;
}

Triangulation default_core(int genus, std::uint64_t seed) {
    Triangulation core = standard_core(genus);
    if (genus == 1) return core;
    std::mt19937_64 rng(seed);
    return random_walk(core, kDefaultCoreFlips, rng).normalized();
}

Triangulation a_family(Sign sign, int n, const Triangulation& core) {
    if (n < 1) throw SurfaceError("a_family needs n >= 1");
    if (core.genus() < 1 || core.marks() != 1 || core.boundaries() != 1) {
        throw SurfaceError("core must be a genus >= 1 surface with one marked point");
    }
    if (n == 1) return core.normalized();

    std::vector<Triangle> tris;
    int gamma = 0;
    if (n == 2) {
        gamma = 0;
        Side g0 = Side::interior(gamma, 0);
        tris.push_back(sign == Sign::Minus ? Triangle{Side::boundary(1), Side::boundary(2), g0}
                                           : Triangle{Side::boundary(2), Side::boundary(1), g0});
    } else {
        Triangulation z = zigzag(n);
        const int apex = sign == Sign::Minus ? 1 : n / 2 + 1;
        const int before = wrap(apex - 1, n);
        Slot ear = z.slot_of(Side::boundary(before));
        const Triangle& et = z.triangle(ear.tri);
        Side after = et[static_cast<std::size_t>((ear.pos + 1) % 3)];
        Side closing = et[static_cast<std::size_t>((ear.pos + 2) % 3)];
        if (!(after.is_boundary() && after.label() == apex)) throw SurfaceError("zigzag has no ear at the apex");
        const int delta = max_arc_id(z) + 1;
        gamma = delta + 1;
        for (int t = 0; t < z.triangle_count(); ++t) {
            if (t == ear.tri) continue;
            tris.push_back(z.triangle(t));
        }
        // The loop sits beside the incoming boundary arc, except for the plus
        // sign at even n where it sits beside the outgoing one; this keeps
        // deletion of a_n compatible with a single relabeling for both signs.
        if (sign == Sign::Plus && n % 2 == 0) {
            tris.push_back({Side::boundary(before), Side::interior(delta, 1), closing});
            tris.push_back({Side::interior(gamma, 0), after, Side::interior(delta, 0)});
        } else {
            tris.push_back({Side::interior(delta, 1), after, closing});
            tris.push_back({Side::boundary(before), Side::interior(gamma, 0), Side::interior(delta, 0)});
        }
    }
    const int offset = gamma + 1;
    for (const auto& tri : core.triangles()) {
        Triangle copy = tri;
        for (auto& s : copy) {
            s = s.is_boundary() ? Side::interior(gamma, 1) : Side::interior(s.arc() + offset, s.bit());
        }
        tris.push_back(copy);
    }
    return Triangulation::make({core.genus(), n, 1}, std::move(tris)).normalized();
}

Triangulation construct(const FamilySpec& spec) {
    const auto& cls = spec.surface;
    switch (spec.kind) {
        case FamilyKind::Zigzag:
            if (cls.genus != 0) throw SurfaceError("zigzag requires g = 0");
            return zigzag(cls.marks);
        case FamilyKind::Fan:
            if (cls.genus != 0) throw SurfaceError("fan requires g = 0");
            return fan(cls.marks, spec.apex.value_or(1));
        case FamilyKind::AMinus:
        case FamilyKind::APlus: {
            if (cls.genus < 1) throw SurfaceError("a-minus/a-plus require g >= 1");
            Triangulation core = spec.core ? *spec.core : default_core(cls.genus);
            if (core.genus() != cls.genus) throw SurfaceError("core class mismatch");
            return a_family(spec.kind == FamilyKind::AMinus ? Sign::Minus : Sign::Plus, cls.marks, core);
        }
    }
    throw SurfaceError("unknown family");
}

bool has_ear(const Triangulation& t, int q) {
    const int n = t.marks();
    if (t.boundaries() != 1 || n < 2) throw SurfaceError("has_ear needs a one-holed surface with n >= 2");
    if (q < 1 || q > n) throw SurfaceError("unknown vertex label");
    return t.slot_of(Side::boundary(wrap(q - 1, n))).tri == t.slot_of(Side::boundary(q)).tri;
}

Triangulation delete_vertex(const Triangulation& t, int p) {
    const int n = t.marks();
    if (t.boundaries() != 1) throw SurfaceError("not a one-holed surface");
    if (n == 1) throw SurfaceError("cannot delete last vertex");
    if (p < 1 || p > n) throw SurfaceError("unknown vertex label");
    if (t.genus() == 0 && n <= 3) throw SurfaceError("cannot delete a vertex of a triangle");

    Slot at = t.slot_of(Side::boundary(p));
    Side x = t.side_at(next_slot(at));  // a_{p+1} -> apex
    Side y = t.side_at(prev_slot(at));  // apex -> a_p
    if (x.is_boundary() && y.is_boundary()) throw SurfaceError("cannot delete a vertex of a triangle");

    std::vector<Triangle> tris;
    tris.reserve(static_cast<std::size_t>(t.triangle_count() - 1));
    for (int i = 0; i < t.triangle_count(); ++i) {
        if (i == at.tri) continue;
        Triangle tri = t.triangle(i);
        for (auto& s : tri) {
            if (x.is_interior() && y.is_interior()) {
                if (s == y.twin()) s = x;
            } else if (x.is_boundary()) {
                if (s == y.twin()) s = x;
            } else {
                if (s == x.twin()) s = y;
            }
            if (s.is_boundary() && s.label() > p) s = Side::boundary(s.label() - 1);
        }
        tris.push_back(tri);
    }
    return Triangulation::make({t.genus(), n - 1, 1}, std::move(tris)).normalized();
}

bool flip_incident_to(const Triangulation& u, const Triangulation& v, int p, CanonOptions opts) {
    if (u.surface() != v.surface()) throw SurfaceError("flip_incident_to: surface class mismatch");
    const auto& target = code_bytes(v, opts);
    bool adjacent = false;
    for (const auto& w : neighbors(u)) {
        if (code_bytes(w, opts) == target) {
            adjacent = true;
            break;
        }
    }
    if (!adjacent) throw SurfaceError("flip_incident_to: triangulations are not adjacent");
    return code_bytes(delete_vertex(u, p), opts) == code_bytes(delete_vertex(v, p), opts);
}

Triangulation seed_triangulation(const SurfaceClass& cls) {
    if (cls.boundaries != 1) throw SurfaceError("not a one-holed surface");
    if (cls.genus == 0) return fan(cls.marks, 1);
    return a_family(Sign::Minus, cls.marks, default_core(cls.genus));
}

}  // namespace mflip
