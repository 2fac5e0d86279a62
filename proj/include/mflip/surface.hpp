#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mflip {

/// Raised for contract violations on triangulation values (unknown arcs,
/// blocked flips, malformed input).
class SurfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Topological type of a triangulated surface: genus, total number of
/// boundary marked points (one per boundary arc), number of boundary curves.
struct SurfaceClass {
    int genus = 0;
    int marks = 0;
    int boundaries = 1;

    auto operator<=>(const SurfaceClass&) const = default;

    int triangle_count() const { return marks + 4 * genus - 4 + 2 * boundaries; }
    int interior_arc_count() const { return marks + 6 * genus - 6 + 3 * boundaries; }
};

/// One side of a triangle: either a boundary arc (labelled, 1-based) or one
/// of the two oriented sides of an interior arc.
///
/// Encoded in a single integer: boundary label p is stored as -p, interior
/// side (arc, s) as 2*arc + s.
class Side {
public:
    constexpr Side() = default;

    static constexpr Side boundary(int label) { return Side(-label); }
    static constexpr Side interior(int arc, int side) { return Side(2 * arc + side); }

    constexpr bool is_boundary() const { return raw_ < 0; }
    constexpr bool is_interior() const { return raw_ >= 0; }
    constexpr int label() const { return -raw_; }
    constexpr int arc() const { return raw_ >> 1; }
    constexpr int bit() const { return raw_ & 1; }
    constexpr Side twin() const { return Side(raw_ ^ 1); }
    constexpr std::int32_t raw() const { return raw_; }

    constexpr auto operator<=>(const Side&) const = default;

private:
    constexpr explicit Side(std::int32_t raw) : raw_(raw) {}
    std::int32_t raw_ = -1;
};

/// Sides listed in surface orientation order. Side k runs from corner k to
/// corner k+1 (mod 3).
using Triangle = std::array<Side, 3>;

/// Position of a side inside the triangle list.
struct Slot {
    int tri = -1;
    int pos = -1;

    bool valid() const { return tri >= 0; }
    auto operator<=>(const Slot&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Immutable triangle-gluing map.
///
/// Interior arc ids and boundary labels may be sparse for transient values
/// (cut surfaces); `normalized()` renumbers arcs densely. Vertices are not
/// stored; they are the corner orbits.
class Triangulation {
public:
    Triangulation() = default;

    /// Validates and throws SurfaceError carrying the report on failure.
    static Triangulation make(SurfaceClass cls, std::vector<Triangle> triangles);

    /// Builds the side index without checking invariants. Callers guarantee
    /// that every interior side occurs exactly once.
    static Triangulation unchecked(SurfaceClass cls, std::vector<Triangle> triangles);

    const SurfaceClass& surface() const { return cls_; }
    int genus() const { return cls_.genus; }
    int marks() const { return cls_.marks; }
    int boundaries() const { return cls_.boundaries; }

    std::span<const Triangle> triangles() const { return triangles_; }
    const Triangle& triangle(int t) const { return triangles_[static_cast<std::size_t>(t)]; }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    Side side_at(Slot s) const { return triangles_[static_cast<std::size_t>(s.tri)][static_cast<std::size_t>(s.pos)]; }

    /// Slot holding `s`, or an invalid slot if `s` does not occur.
    Slot slot_of(Side s) const;
    bool has_arc(int arc) const;
    /// Interior arc ids in increasing order.
    std::vector<int> arcs() const;
    int arc_count() const { return arc_count_; }
    /// Boundary labels in increasing order.
    std::vector<int> boundary_labels() const;

    /// Copy with arc ids renumbered 0..E-1 in order of first occurrence.
    Triangulation normalized() const;

    /// Shared, lazily filled per-value cache; copies of a value share it.
    struct Cache {
        std::once_flag flags[2];
        std::string codes[2];
    };
    Cache& cache() const { return *cache_; }

private:
    SurfaceClass cls_{};
    std::vector<Triangle> triangles_;
    std::vector<int> interior_slot_;   // indexed by Side::raw()
    std::vector<int> boundary_slot_;   // indexed by label
    int arc_count_ = 0;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Sequential: boundary labels are exactly 1..n and, on one-holed surfaces,
/// the boundary cycle reads them in order. Free: any distinct positive
/// labels (cut surfaces).
enum class LabelRule { Sequential, Free };

ValidationReport validate(const SurfaceClass& cls, std::span<const Triangle> triangles,
                          LabelRule labels = LabelRule::Sequential);
ValidationReport validate(const Triangulation& t, LabelRule labels = LabelRule::Sequential);

inline Slot next_slot(Slot s) { return {s.tri, (s.pos + 1) % 3}; }
inline Slot prev_slot(Slot s) { return {s.tri, (s.pos + 2) % 3}; }

/// Sides whose tail is the tail vertex of `start`, in rotation order, from
/// the outgoing boundary side of that vertex to the last corner before the
/// incoming boundary side.
std::vector<Side> corner_walk(const Triangulation& t, Side start);

/// Boundary labels of each boundary curve, each cycle starting at its
/// smallest label; for one-holed surfaces this is (1, 2, ..., n).
std::vector<std::vector<int>> boundary_cycle(const Triangulation& t);

/// For every slot (index 3*tri+pos), the label of the outgoing boundary side
/// at the tail vertex of that side. On one-holed surfaces this is the vertex
/// label p of a_p.
std::vector<int> tail_vertices(const Triangulation& t);

/// Vertex labels of the two endpoints of an interior arc (tail of side 0,
/// tail of side 1).
std::pair<int, int> arc_endpoints(const Triangulation& t, std::span<const int> tails, int arc);

/// Number of vertices (corner orbits).
int vertex_count(const Triangulation& t);

}  // namespace mflip
