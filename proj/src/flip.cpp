#include "mflip/flip.hpp"

namespace mflip {

bool flippable(const Triangulation& t, int arc) {
    if (!t.has_arc(arc)) throw SurfaceError("no such arc");
    return t.slot_of(Side::interior(arc, 0)).tri != t.slot_of(Side::interior(arc, 1)).tri;
}

Triangulation flip(const Triangulation& t, int arc) {
    if (!flippable(t, arc)) throw SurfaceError("flip blocked");
    Slot s0 = t.slot_of(Side::interior(arc, 0));
    Slot s1 = t.slot_of(Side::interior(arc, 1));
    // (e0, b, c) and (e1, d, f) become (e0', c, d) and (e1', f, b).
    Side b = t.side_at(next_slot(s0));
    Side c = t.side_at(prev_slot(s0));
    Side d = t.side_at(next_slot(s1));
    Side f = t.side_at(prev_slot(s1));
    if ((c.is_interior() && d.is_interior() && c.arc() == d.arc()) ||
        (f.is_interior() && b.is_interior() && f.arc() == b.arc())) {
        throw SurfaceError("flip blocked: result would be self-folded");
    }
    std::vector<Triangle> tris(t.triangles().begin(), t.triangles().end());
    tris[static_cast<std::size_t>(s0.tri)] = {Side::interior(arc, 0), c, d};
    tris[static_cast<std::size_t>(s1.tri)] = {Side::interior(arc, 1), f, b};
    return Triangulation::unchecked(t.surface(), std::move(tris));
}

std::vector<Triangulation> neighbors(const Triangulation& t) {
    std::vector<Triangulation> out;
    for (int arc : t.arcs()) out.push_back(flip(t, arc));
    return out;
}

std::vector<Triangulation> replay(const FlipPath& path) {
    std::vector<Triangulation> out{path.start};
    for (int arc : path.moves) out.push_back(flip(out.back(), arc));
    return out;
}

Triangulation endpoint(const FlipPath& path) {
    Triangulation cur = path.start;
    for (int arc : path.moves) cur = flip(cur, arc);
    return cur;
}

}  // namespace mflip
