#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mflip/canon.hpp"
#include "mflip/explorer.hpp"
#include "mflip/flip.hpp"
#include "mflip/surface.hpp"

namespace mflip {

inline constexpr const char* kPhaseFan = "fan";
inline constexpr const char* kPhaseLoopify = "loopify";
inline constexpr const char* kPhaseHandsMove = "hands-move";
inline constexpr const char* kPhaseHandsBind = "hands-bind";
inline constexpr const char* kPhaseCore = "core-equalize";

using PhaseLengths = std::map<std::string, int>;

/// A flip path together with how many of its steps each phase used.
struct PhasedPath {
    FlipPath path;
    PhaseLengths phases;
};

struct TransformOptions {
    CanonOptions canon{};
    /// Limits for the core search (g >= 2).
    Budget core_budget{};
    /// Measure D_g for the reported bound (g >= 2), within `d_g_budget`.
    bool measure_d_g = true;
    Budget d_g_budget{2'000'000, 120.0};
    /// Override of the base vertex; chosen from untouched runs otherwise.
    std::optional<int> a0;
};

struct TransformReport {
    FlipPath path;
    PhaseLengths phase_lengths;
    int a0 = 0;
    /// floor of 23n/8 + 8 (g = 1) or (4 - 1/(4g))n + 16g - 7 + D_g (g >= 2).
    int bound = 0;
    /// g >= 2 only: measured diameter of the one-marked-point flip graph
    /// (orientation preserving); -1 when it could not be measured.
    int d_g_used = -1;
    /// True when the bound rests on an unmeasured D_g.
    bool bound_conditional = false;
    bool within_bound() const { return !bound_conditional && path.length() <= bound; }
};

/// Flips arcs of a disk until every interior arc is incident to `apex`;
/// every flip raises the degree of the apex by one.
FlipPath fan_out(const Triangulation& disk, int apex);

/// Fan the polygon cut along a greedy cut system at a0, then flip the cut
/// arcs; afterwards every interior arc is incident to a0 and the cut arcs
/// are loops at a0 (when a0 is not a cut-arc endpoint). Phases: fan, loopify.
PhasedPath canonical_form(const Triangulation& t, int a0);

/// Base vertex for a pair: second vertex of the longest untouched run of the
/// greedy cut systems of both triangulations (the first if the run has
/// length 1).
int choose_base_vertex(const Triangulation& u, const Triangulation& v);

/// Hand alignment for two canonical forms at a0 (every arc incident to a0).
/// g = 1: hands are moved and bound until both sides show the same hands and
/// no bound hands remain. g >= 2: all hands of both sides are moved to a
/// common outer vertex and bound into one bundle. Phases: hands-move,
/// hands-bind.
std::pair<PhasedPath, PhasedPath> align_hands(const Triangulation& u, const Triangulation& v, int a0);

/// For g >= 2 triangulations whose hands were collected by align_hands:
/// a shortest flip sequence inside the enclosed genus-g subsurface of `u`
/// that makes it equivalent to that of `v`.
FlipPath equalize_core(const Triangulation& u, const Triangulation& v, int a0, Budget budget = {});

/// Measured diameter of the orientation-preserving flip graph of the
/// genus-g surface with one marked point (cached); nullopt over budget.
std::optional<int> measured_core_diameter(int genus, Budget budget = {});

/// Certified flip path from u to v. Throws SurfaceError when the replay does
/// not reach v.
TransformReport transform(const Triangulation& u, const Triangulation& v, const TransformOptions& opts = {});

/// Runs `transform` over pairs on `threads` workers; output order follows
/// input order.
std::vector<TransformReport> transform_batch(const std::vector<std::pair<Triangulation, Triangulation>>& pairs,
                                             const TransformOptions& opts = {}, int threads = 1);

}  // namespace mflip
