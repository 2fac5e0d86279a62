#pragma once

#include <vector>

#include "mflip/surface.hpp"

namespace mflip {

/// A sequence of arc flips. Each move names an arc of the triangulation
/// reached so far; flips keep arc ids, so a move list replays
/// deterministically.
struct FlipPath {
    Triangulation start;
    std::vector<int> moves;

    int length() const { return static_cast<int>(moves.size()); }
};

/// True iff the two sides of `arc` lie in distinct triangles.
/// Throws SurfaceError("no such arc") for unknown ids.
bool flippable(const Triangulation& t, int arc);

/// Replaces `arc` by the other diagonal of its quadrilateral; the new
/// diagonal keeps the id. Throws SurfaceError("flip blocked") when the arc
/// is not flippable.
Triangulation flip(const Triangulation& t, int arc);

/// One flip per interior arc, in increasing arc-id order.
std::vector<Triangulation> neighbors(const Triangulation& t);

/// Applies every move of the path and returns all intermediate values,
/// starting with `path.start`.
std::vector<Triangulation> replay(const FlipPath& path);

/// Final triangulation of a path.
Triangulation endpoint(const FlipPath& path);

}  // namespace mflip
