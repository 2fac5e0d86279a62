#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mflip/explorer.hpp"

namespace mflip {

/// One flip realizing a store edge u -> w: bit p of `incident` is set when
/// the flip is incident to alpha_p; (a, b) are the vertex labels of the
/// arc the flip introduces.
struct Step {
    std::uint32_t incident = 0;
    int a = 0, b = 0;
    bool operator==(const Step&) const = default;
};

/// Distinct flips realizing each directed edge of a store.
class StepTable {
public:
    explicit StepTable(const FlipGraphStore& store);
    std::span<const Step> steps(int u, int w) const;

private:
    std::unordered_map<std::uint64_t, std::vector<Step>> steps_;
};

struct ReplayTally {
    std::string name;
    long instances = 0;   // hypothesis satisfied
    long geodesics = 0;   // flip sequences checked
    long violations = 0;
    bool complete = true;  // false when a geodesic cap was hit
    bool passed() const { return violations == 0 && complete; }
};

/// Every edge of `big` maps to an edge or a single node of `small` under
/// deletion of each a_p. Both stores must use the same canon options.
ReplayTally replay_deletion_contraction(const FlipGraphStore& big, const FlipGraphStore& small);

/// d(U,V) >= d(U-p, V-p) + f for f the alpha_p-incident flips of any
/// geodesic, on `pairs` seeded random pairs of `big`.
ReplayTally replay_incidence_inequality(const FlipGraphStore& big, const FlipGraphStore& small, int pairs,
                                        std::uint64_t seed, std::size_t max_geodesics = 1'000'000);

/// For all pairs U, V and q = p+1: if U has an ear in a_q and the triangles
/// of V on alpha_p and alpha_q share no arc, every geodesic has >= 2 flips
/// incident to alpha_p or >= 2 incident to alpha_q.
ReplayTally replay_ear_condition(const FlipGraphStore& store, std::size_t max_geodesics = 1'000'000);

/// Geodesics from `minus` to `plus` classified by the arc introduced by the
/// first alpha_n-incident flip: with vertices a_1 a_n they carry >= 3
/// alpha_n-incident flips; with vertices a_1 a_2 and <= 2 alpha_n-incident
/// flips they carry >= 4 alpha_1-incident flips.
std::vector<ReplayTally> replay_first_incident_flip(const FlipGraphStore& store, const Triangulation& minus,
                                                    const Triangulation& plus, std::size_t max_geodesics = 1'000'000);

}  // namespace mflip
