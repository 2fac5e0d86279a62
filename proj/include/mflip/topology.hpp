#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mflip/surface.hpp"

namespace mflip {

/// Result of cutting along interior arcs. Components keep the arc ids of
/// the input; each cut arc's sides become fresh boundary labels.
struct CutSurface {
    std::vector<Triangulation> components;
    /// cut arc -> (label of the side-0 copy, label of the side-1 copy)
    std::map<int, std::pair<int, int>> trace;
};

/// V - E + F of a (possibly multi-boundary) triangulation.
int euler_characteristic(const Triangulation& t);

CutSurface cut(const Triangulation& t, std::span<const int> arcs);

/// True iff cutting along the arc splits off a disk that does not carry the
/// whole original boundary.
bool is_boundary_parallel(const Triangulation& t, int arc);

/// Greedy cut system: 2g arcs, picked by smallest id among those whose cut
/// keeps the surface connected. Throws SurfaceError("cut system not found")
/// if the greedy search stalls.
std::vector<int> find_cut_system(const Triangulation& t);

/// Same greedy restricted to `candidates` (tried in the given order).
std::vector<int> find_cut_system_among(const Triangulation& t, std::span<const int> candidates);

/// Vertex labels of all endpoints of the given arcs.
std::vector<int> arc_endpoint_labels(const Triangulation& t, std::span<const int> arcs);

struct VertexRun {
    int start = 1;
    int length = 0;
};

/// Longest cyclic run a_s, a_{s+1}, ..., a_{s+len-1} whose members after the
/// first are not in `endpoints`. Ties go to the smallest start label.
VertexRun untouched_run(int n, std::span<const int> endpoints);

/// Run avoiding the endpoints of greedy cut systems of both triangulations.
VertexRun untouched_run(const Triangulation& t, const Triangulation& other);

}  // namespace mflip
