#include "mflip/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mflip {

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << violations[i];
    }
    return out.str();
}

namespace {

struct SideIndex {
    std::vector<int> interior;  // raw -> 3*tri+pos, -1 absent, -2 duplicated
    std::vector<int> boundary;  // label -> 3*tri+pos
    bool duplicate_interior = false;
    bool duplicate_boundary = false;
    bool bad_label = false;
};

SideIndex build_index(std::span<const Triangle> tris) {
    SideIndex idx;
    int max_raw = -1;
    int max_label = 0;
    for (const auto& tri : tris) {
        for (Side s : tri) {
            if (s.is_interior()) {
                max_raw = std::max(max_raw, static_cast<int>(s.raw() | 1));
            } else if (s.label() <= 0) {
                idx.bad_label = true;
            } else {
                max_label = std::max(max_label, s.label());
            }
        }
    }
    idx.interior.assign(static_cast<std::size_t>(max_raw + 1), -1);
    idx.boundary.assign(static_cast<std::size_t>(max_label + 1), -1);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            Side s = tris[t][static_cast<std::size_t>(k)];
            int code = static_cast<int>(3 * t) + k;
            if (s.is_interior()) {
                auto& slot = idx.interior[static_cast<std::size_t>(s.raw())];
                if (slot != -1) {
                    idx.duplicate_interior = true;
                    slot = -2;
                } else {
                    slot = code;
                }
            } else if (s.label() > 0) {
                auto& slot = idx.boundary[static_cast<std::size_t>(s.label())];
                if (slot != -1) {
                    idx.duplicate_boundary = true;
                    slot = -2;
                } else {
                    slot = code;
                }
            }
        }
    }
    return idx;
}

Slot decode_slot(int code) {
    if (code < 0) return {};
    return {code / 3, code % 3};
}

// Union-find over triangles, used for connectivity checks.
struct Components {
    std::vector<int> parent;
    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

Triangulation Triangulation::unchecked(SurfaceClass cls, std::vector<Triangle> triangles) {
    Triangulation t;
    t.cls_ = cls;
    t.triangles_ = std::move(triangles);
    auto idx = build_index(t.triangles_);
    t.interior_slot_ = std::move(idx.interior);
    t.boundary_slot_ = std::move(idx.boundary);
    int arcs = 0;
    for (std::size_t raw = 0; raw < t.interior_slot_.size(); raw += 2) {
        if (t.interior_slot_[raw] >= 0) ++arcs;
    }
    t.arc_count_ = arcs;
    return t;
}

Triangulation Triangulation::make(SurfaceClass cls, std::vector<Triangle> triangles) {
    auto report = validate(cls, triangles);
    if (!report.ok()) throw SurfaceError("invalid triangulation: " + report.summary());
    return unchecked(cls, std::move(triangles));
}

Slot Triangulation::slot_of(Side s) const {
    if (s.is_interior()) {
        auto raw = static_cast<std::size_t>(s.raw());
        if (raw >= interior_slot_.size()) return {};
        return decode_slot(interior_slot_[raw]);
    }
    auto label = static_cast<std::size_t>(s.label());
    if (s.label() <= 0 || label >= boundary_slot_.size()) return {};
    return decode_slot(boundary_slot_[label]);
}

bool Triangulation::has_arc(int arc) const {
    return arc >= 0 && slot_of(Side::interior(arc, 0)).valid() && slot_of(Side::interior(arc, 1)).valid();
}

std::vector<int> Triangulation::arcs() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(arc_count_));
    for (std::size_t raw = 0; raw < interior_slot_.size(); raw += 2) {
        if (interior_slot_[raw] >= 0) out.push_back(static_cast<int>(raw / 2));
    }
    return out;
}

std::vector<int> Triangulation::boundary_labels() const {
    std::vector<int> out;
    for (std::size_t label = 1; label < boundary_slot_.size(); ++label) {
        if (boundary_slot_[label] >= 0) out.push_back(static_cast<int>(label));
    }
    return out;
}

Triangulation Triangulation::normalized() const {
    std::vector<int> remap(interior_slot_.size() / 2 + 1, -1);
    int next = 0;
    auto tris = triangles_;
    for (auto& tri : tris) {
        for (auto& s : tri) {
            if (!s.is_interior()) continue;
            auto& id = remap[static_cast<std::size_t>(s.arc())];
            if (id < 0) id = next++;
            s = Side::interior(id, s.bit());
        }
    }
    // First occurrence should carry side 0 so that serialization is stable.
    std::vector<char> seen(static_cast<std::size_t>(next), 0);
    std::vector<char> flip_bits(static_cast<std::size_t>(next), 0);
    for (const auto& tri : tris) {
        for (Side s : tri) {
            if (!s.is_interior() || seen[static_cast<std::size_t>(s.arc())]) continue;
            seen[static_cast<std::size_t>(s.arc())] = 1;
            flip_bits[static_cast<std::size_t>(s.arc())] = static_cast<char>(s.bit());
        }
    }
    for (auto& tri : tris) {
        for (auto& s : tri) {
            if (s.is_interior() && flip_bits[static_cast<std::size_t>(s.arc())]) s = s.twin();
        }
    }
    return unchecked(cls_, std::move(tris));
}

ValidationReport validate(const SurfaceClass& cls, std::span<const Triangle> tris, LabelRule labels) {
    ValidationReport report;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (cls.genus < 0) fail("negative genus");
    if (cls.marks < 1) fail("marks must be positive");
    if (cls.boundaries < 1) fail("boundaries must be positive");
    if (cls.boundaries == 1 && cls.genus == 0 && cls.marks < 3) fail("a disk needs at least 3 marked points");
    if (tris.empty()) {
        fail("no triangles");
        return report;
    }

    auto idx = build_index(tris);
    if (idx.bad_label) fail("boundary label must be positive");
    if (idx.duplicate_interior) fail("arc multiplicity: an interior side occurs more than once");
    if (idx.duplicate_boundary) fail("boundary multiplicity: a boundary arc occurs more than once");

    int interior_arcs = 0;
    bool unpaired = false;
    for (std::size_t raw = 0; raw < idx.interior.size(); raw += 2) {
        int a = idx.interior[raw];
        int b = raw + 1 < idx.interior.size() ? idx.interior[raw + 1] : -1;
        if (a == -1 && b == -1) continue;
        if (a == -1 || b == -1) unpaired = true;
        ++interior_arcs;
    }
    if (unpaired) fail("arc multiplicity: an interior arc is missing one of its sides");

    int boundary_arcs = 0;
    for (std::size_t label = 1; label < idx.boundary.size(); ++label) {
        if (idx.boundary[label] != -1) ++boundary_arcs;
    }
    if (cls.boundaries == 1 && labels == LabelRule::Sequential) {
        for (int p = 1; p <= cls.marks; ++p) {
            if (static_cast<std::size_t>(p) >= idx.boundary.size() || idx.boundary[static_cast<std::size_t>(p)] == -1) {
                fail("boundary arc " + std::to_string(p) + " missing");
                break;
            }
        }
        if (static_cast<int>(idx.boundary.size()) - 1 > cls.marks) fail("boundary label exceeds marks");
    }
    if (boundary_arcs != cls.marks) fail("boundary arc count != marks");

    int F = static_cast<int>(tris.size());
    if (F != cls.triangle_count()) {
        fail("triangle count != n+4g-2 = " + std::to_string(cls.triangle_count()) + " (got " + std::to_string(F) + ")");
    }
    if (interior_arcs != cls.interior_arc_count()) {
        fail("interior arc count != n+6g-3 = " + std::to_string(cls.interior_arc_count()) + " (got " +
             std::to_string(interior_arcs) + ")");
    }
    if (!report.ok()) return report;

    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& tri = tris[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (tri[static_cast<std::size_t>(i)].is_interior() && tri[static_cast<std::size_t>(j)].is_interior() &&
                    tri[static_cast<std::size_t>(i)].arc() == tri[static_cast<std::size_t>(j)].arc()) {
                    fail("self-folded triangle " + std::to_string(t));
                }
            }
        }
    }

    Components comp(tris.size());
    for (std::size_t raw = 0; raw + 1 < idx.interior.size(); raw += 2) {
        if (idx.interior[raw] >= 0 && idx.interior[raw + 1] >= 0) {
            comp.unite(idx.interior[raw] / 3, idx.interior[raw + 1] / 3);
        }
    }
    for (std::size_t t = 1; t < tris.size(); ++t) {
        if (comp.find(static_cast<int>(t)) != comp.find(0)) {
            fail("gluing is not connected");
            break;
        }
    }
    if (!report.ok()) return report;

    // Corner orbits: walk each vertex from its outgoing boundary side.
    auto tri_side = [&](Slot s) { return tris[static_cast<std::size_t>(s.tri)][static_cast<std::size_t>(s.pos)]; };
    auto slot_for = [&](Side s) {
        return decode_slot(s.is_interior() ? idx.interior[static_cast<std::size_t>(s.raw())]
                                           : idx.boundary[static_cast<std::size_t>(s.label())]);
    };
    std::vector<char> visited(3 * tris.size(), 0);
    int vertices = 0;
    for (std::size_t label = 1; label < idx.boundary.size(); ++label) {
        if (idx.boundary[label] < 0) continue;
        ++vertices;
        Slot cur = decode_slot(idx.boundary[label]);
        for (std::size_t guard = 0; guard <= 3 * tris.size(); ++guard) {
            visited[static_cast<std::size_t>(3 * cur.tri + cur.pos)] = 1;
            Side prev = tri_side(prev_slot(cur));
            if (prev.is_boundary()) break;
            cur = slot_for(prev.twin());
        }
    }
    if (std::find(visited.begin(), visited.end(), 0) != visited.end()) {
        fail("interior vertex: a corner orbit avoids the boundary");
        return report;
    }

    // Boundary cycles.
    int cycles = 0;
    std::vector<char> seen_label(idx.boundary.size(), 0);
    bool order_ok = true;
    for (std::size_t label = 1; label < idx.boundary.size(); ++label) {
        if (idx.boundary[label] < 0 || seen_label[label]) continue;
        ++cycles;
        int cur = static_cast<int>(label);
        while (!seen_label[static_cast<std::size_t>(cur)]) {
            seen_label[static_cast<std::size_t>(cur)] = 1;
            Slot s = next_slot(slot_for(Side::boundary(cur)));
            while (tri_side(s).is_interior()) s = next_slot(slot_for(tri_side(s).twin()));
            int nxt = tri_side(s).label();
            if (labels == LabelRule::Sequential && cls.boundaries == 1 && nxt != cur % cls.marks + 1) order_ok = false;
            cur = nxt;
        }
    }
    if (cycles != cls.boundaries) fail("boundary cycle count != class boundaries");
    if (!order_ok) fail("boundary cycle does not read alpha_1..alpha_n in order");

    int E = interior_arcs + boundary_arcs;
    int chi = vertices - E + F;
    int twice_genus = 2 - cycles - chi;
    if (twice_genus != 2 * cls.genus) fail("Euler genus mismatch: computed 2g = " + std::to_string(twice_genus));
    return report;
}

ValidationReport validate(const Triangulation& t, LabelRule labels) { return validate(t.surface(), t.triangles(), labels); }

std::vector<Side> corner_walk(const Triangulation& t, Side start) {
    Slot s = t.slot_of(start);
    if (!s.valid()) throw SurfaceError("corner_walk: side not in triangulation");
    // Rewind to the outgoing boundary side of this vertex.
    for (int guard = 0; t.side_at(s).is_interior(); ++guard) {
        if (guard > 3 * t.triangle_count()) throw SurfaceError("corner_walk: vertex not on boundary");
        s = next_slot(t.slot_of(t.side_at(s).twin()));
    }
    std::vector<Side> out;
    for (;;) {
        out.push_back(t.side_at(s));
        Side prev = t.side_at(prev_slot(s));
        if (prev.is_boundary()) break;
        s = t.slot_of(prev.twin());
    }
    return out;
}

std::vector<std::vector<int>> boundary_cycle(const Triangulation& t) {
    std::vector<std::vector<int>> cycles;
    auto labels = t.boundary_labels();
    std::vector<int> seen;
    for (int label : labels) {
        if (std::find(seen.begin(), seen.end(), label) != seen.end()) continue;
        std::vector<int> cycle;
        int cur = label;
        do {
            cycle.push_back(cur);
            seen.push_back(cur);
            Slot s = next_slot(t.slot_of(Side::boundary(cur)));
            while (t.side_at(s).is_interior()) s = next_slot(t.slot_of(t.side_at(s).twin()));
            cur = t.side_at(s).label();
        } while (cur != label);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

std::vector<int> tail_vertices(const Triangulation& t) {
    std::vector<int> tails(static_cast<std::size_t>(3 * t.triangle_count()), 0);
    for (int label : t.boundary_labels()) {
        Slot cur = t.slot_of(Side::boundary(label));
        for (;;) {
            tails[static_cast<std::size_t>(3 * cur.tri + cur.pos)] = label;
            Side prev = t.side_at(prev_slot(cur));
            if (prev.is_boundary()) break;
            cur = t.slot_of(prev.twin());
        }
    }
    return tails;
}

std::pair<int, int> arc_endpoints(const Triangulation& t, std::span<const int> tails, int arc) {
    Slot a = t.slot_of(Side::interior(arc, 0));
    Slot b = t.slot_of(Side::interior(arc, 1));
    if (!a.valid() || !b.valid()) throw SurfaceError("no such arc");
    return {tails[static_cast<std::size_t>(3 * a.tri + a.pos)], tails[static_cast<std::size_t>(3 * b.tri + b.pos)]};
}

int vertex_count(const Triangulation& t) { return static_cast<int>(t.boundary_labels().size()); }

}  // namespace mflip
