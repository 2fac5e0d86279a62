#include "mflip/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mflip {

int euler_characteristic(const Triangulation& t) {
    const int boundary = static_cast<int>(t.boundary_labels().size());
    return vertex_count(t) - (t.arc_count() + boundary) + t.triangle_count();
}

CutSurface cut(const Triangulation& t, std::span<const int> arcs) {
    CutSurface out;
    auto labels = t.boundary_labels();
    int fresh = labels.empty() ? 1 : labels.back() + 1;
    std::vector<Triangle> tris(t.triangles().begin(), t.triangles().end());
    for (int arc : arcs) {
        if (!t.has_arc(arc)) throw SurfaceError("no such arc");
        if (out.trace.count(arc)) continue;
        out.trace[arc] = {fresh, fresh + 1};
        for (int bit = 0; bit < 2; ++bit) {
            Slot s = t.slot_of(Side::interior(arc, bit));
            tris[static_cast<std::size_t>(s.tri)][static_cast<std::size_t>(s.pos)] = Side::boundary(fresh + bit);
        }
        fresh += 2;
    }

    const std::size_t F = tris.size();
    std::vector<int> parent(F);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int arc : t.arcs()) {
        if (out.trace.count(arc)) continue;
        int a = t.slot_of(Side::interior(arc, 0)).tri;
        int b = t.slot_of(Side::interior(arc, 1)).tri;
        parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    std::map<int, std::vector<Triangle>> groups;
    for (std::size_t i = 0; i < F; ++i) groups[find(static_cast<int>(i))].push_back(tris[i]);

    for (auto& [root, group] : groups) {
        int boundary = 0;
        for (const auto& tri : group) {
            for (Side s : tri) boundary += s.is_boundary();
        }
        // Provisional class; genus and boundary count are recomputed below.
        Triangulation comp = Triangulation::unchecked({0, boundary, 1}, group);
        int cycles = static_cast<int>(boundary_cycle(comp).size());
        int chi = euler_characteristic(comp);
        int genus = (2 - cycles - chi) / 2;
        out.components.push_back(Triangulation::unchecked({genus, boundary, cycles}, std::move(group)));
    }
    return out;
}

bool is_boundary_parallel(const Triangulation& t, int arc) {
    int arcs[] = {arc};
    auto pieces = cut(t, arcs);
    if (pieces.components.size() != 2) return false;
    // A loop around the whole boundary also splits off a disk, but that disk
    // carries every original boundary arc.
    const int original = static_cast<int>(t.boundary_labels().size());
    const int first_fresh = pieces.trace.begin()->second.first;
    return std::any_of(pieces.components.begin(), pieces.components.end(), [&](const Triangulation& c) {
        if (c.genus() != 0 || c.boundaries() != 1) return false;
        auto labels = c.boundary_labels();
        int kept = static_cast<int>(std::count_if(labels.begin(), labels.end(), [&](int l) { return l < first_fresh; }));
        return kept < original;
    });
}

std::vector<int> find_cut_system_among(const Triangulation& t, std::span<const int> candidates) {
    std::vector<int> picked;
    Triangulation current = t;
    const int target = 2 * t.genus();
    while (static_cast<int>(picked.size()) < target) {
        bool found = false;
        for (int arc : candidates) {
            if (!current.has_arc(arc)) continue;
            int one[] = {arc};
            auto pieces = cut(current, one);
            if (pieces.components.size() != 1) continue;
            current = pieces.components.front();
            picked.push_back(arc);
            found = true;
            break;
        }
        if (!found) throw SurfaceError("cut system not found");
    }
    if (current.genus() != 0 || current.boundaries() != 1) throw SurfaceError("cut system not found");
    return picked;
}

std::vector<int> find_cut_system(const Triangulation& t) {
    auto arcs = t.arcs();
    return find_cut_system_among(t, arcs);
}

std::vector<int> arc_endpoint_labels(const Triangulation& t, std::span<const int> arcs) {
    auto tails = tail_vertices(t);
    std::vector<int> out;
    for (int arc : arcs) {
        auto [a, b] = arc_endpoints(t, tails, arc);
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

VertexRun untouched_run(int n, std::span<const int> endpoints) {
    if (n < 1) throw SurfaceError("untouched_run needs n >= 1");
    std::set<int> marks(endpoints.begin(), endpoints.end());
    if (marks.size() <= 1) return {marks.empty() ? 1 : *marks.begin(), n};
    std::vector<int> sorted(marks.begin(), marks.end());
    VertexRun best{};
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        int from = sorted[i];
        int to = sorted[(i + 1) % sorted.size()];
        int length = ((to - from) % n + n) % n;
        if (length > best.length || (length == best.length && from < best.start)) best = {from, length};
    }
    return best;
}

VertexRun untouched_run(const Triangulation& t, const Triangulation& other) {
    if (t.surface() != other.surface()) throw SurfaceError("untouched_run: surface class mismatch");
    auto a = arc_endpoint_labels(t, find_cut_system(t));
    auto b = arc_endpoint_labels(other, find_cut_system(other));
    a.insert(a.end(), b.begin(), b.end());
    return untouched_run(t.marks(), a);
}

}  // namespace mflip
