#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mflip/canon.hpp"
#include "mflip/flip.hpp"
#include "mflip/surface.hpp"

namespace mflip {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Budget {
    std::size_t max_nodes = 20'000'000;
    double max_seconds = 3600.0;
};

/// Enumerated modular flip-graph. Node identity is the canonical code;
/// codes of one class all have the same length and are stored back to back.
/// Self-loops are dropped and parallel edges collapsed.
class FlipGraphStore {
public:
    FlipGraphStore() = default;
    FlipGraphStore(SurfaceClass cls, CanonOptions opts, std::size_t code_length);

    const SurfaceClass& surface() const { return cls_; }
    CanonOptions canon() const { return opts_; }
    std::size_t code_length() const { return code_length_; }

    int node_count() const { return static_cast<int>(codes_.size() / (code_length_ ? code_length_ : 1)); }
    std::size_t edge_count() const { return targets_.size() / 2; }
    bool partial() const { return partial_; }

    std::string_view code(int node) const;
    /// Node index of `code`, or -1.
    int find(std::string_view code) const;
    int find(const Triangulation& t) const { return find(code_bytes(t, opts_)); }
    Triangulation representative(int node) const { return decode_code(std::string(code(node))); }
    std::span<const std::uint32_t> adjacent(int node) const;

    /// Inserts if absent; returns (index, inserted).
    std::pair<int, bool> insert(std::string_view code);
    /// Adjacency for nodes 0..k-1 in order (CSR); must be called once.
    void set_adjacency(std::vector<std::uint32_t> offsets, std::vector<std::uint32_t> targets);
    void set_partial(bool p) { partial_ = p; }

private:
    void grow();

    SurfaceClass cls_{};
    CanonOptions opts_{};
    std::size_t code_length_ = 0;
    std::string codes_;
    std::vector<std::int32_t> table_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> targets_;
    bool partial_ = false;
};

/// BFS closure of `seed` under flips, keyed by canonical code. Expansion of
/// each frontier runs on `threads` workers; merging is sequential in
/// frontier order, so node numbering does not depend on the thread count.
/// On budget exhaustion the store is returned flagged partial.
FlipGraphStore enumerate(const Triangulation& seed, Budget budget = {}, int threads = 1, CanonOptions opts = {});

/// Hop distances from `source` (-1 for unreachable).
std::vector<int> bfs_distances(const FlipGraphStore& store, int source);

int distance(const FlipGraphStore& store, int u, int v);

struct DiameterResult {
    int diameter = 0;
    int from = 0;
    int to = 0;
    int bfs_runs = 0;
};

/// Exact diameter by eccentricity bounding (only nodes whose upper bound
/// exceeds the current lower bound are expanded), up to `threads` BFS runs
/// per round. Throws SurfaceError on a partial store.
DiameterResult diameter(const FlipGraphStore& store, int threads = 1);

/// Shortest flip path between two triangulations by bidirectional BFS in
/// the modular flip-graph. Throws BudgetExceeded.
FlipPath shortest_path(const Triangulation& u, const Triangulation& v, Budget budget = {}, CanonOptions opts = {});
int distance(const Triangulation& u, const Triangulation& v, Budget budget = {}, CanonOptions opts = {});

/// Turns a sequence of node codes (consecutive ones adjacent) into a flip
/// path starting at `start`.
FlipPath path_from_codes(const Triangulation& start, std::span<const std::string> codes, CanonOptions opts = {});

struct GeodesicCount {
    std::size_t count = 0;
    bool complete = true;
};

/// Calls `visit` with the node sequence of every geodesic from u to v
/// (stopping early if `visit` returns false). At most `max_paths` are
/// produced; `complete` is false when the cap cut enumeration short.
GeodesicCount all_geodesics(const FlipGraphStore& store, int u, int v,
                            const std::function<bool(std::span<const int>)>& visit,
                            std::size_t max_paths = 1'000'000);

/// Number of steps of `path` that are incident to alpha_p.
int incidence_profile(const FlipPath& path, int p, CanonOptions opts = {});

/// Code of each node's deletion at p (index = node).
std::vector<std::string> deletion_codes(const FlipGraphStore& store, int p);

}  // namespace mflip
