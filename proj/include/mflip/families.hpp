#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>

#include "mflip/canon.hpp"
#include "mflip/surface.hpp"

namespace mflip {

/// Disk triangulation of the n-gon a_1..a_n from its diagonals (pairs of
/// vertex labels). Arc ids follow the order of `diagonals`.
Triangulation disk_from_diagonals(int n, std::span<const std::pair<int, int>> diagonals);

/// All n-3 diagonals of a disk triangulation as sorted label pairs.
std::vector<std::pair<int, int>> disk_diagonals(const Triangulation& disk);

/// Zigzag disk triangulation: interior arcs a_n-a_2-a_{n-1}-a_3-... form a
/// path alternating left and right turns. Ears at a_1 and a_{floor(n/2)+1}.
Triangulation zigzag(int n);

/// Disk triangulation with every interior arc incident to `apex`.
Triangulation fan(int n, int apex);

/// Genus-g surface with one boundary arc: a (4g+1)-gon with sides
/// alpha_1, x_1 y_1 x_1^-1 y_1^-1 ... fanned from the marked point.
Triangulation standard_core(int genus);

/// Core used when none is supplied: the standard core for g = 1, otherwise
/// the standard core after `kDefaultCoreFlips` seeded random flips.
Triangulation default_core(int genus, std::uint64_t seed = 0);
inline constexpr int kDefaultCoreFlips = 10;

enum class Sign { Minus, Plus };

/// The lower-bound witnesses: the zigzag with the ear at a_1 (Minus) or at
/// a_{floor(n/2)+1} (Plus) re-triangulated around a loop that encloses
/// `core`. For n = 2 the loop sits at a_1 / a_2; for n = 1 this is `core`.
Triangulation a_family(Sign sign, int n, const Triangulation& core);

enum class FamilyKind { Zigzag, Fan, AMinus, APlus };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Zigzag;
    SurfaceClass surface{};
    std::optional<int> apex;
    std::optional<Triangulation> core;
};

Triangulation construct(const FamilySpec& spec);

/// True iff alpha_{q-1} and alpha_q lie in one triangle.
bool has_ear(const Triangulation& t, int q);

/// Slides a_p onto a_{p+1}, removes the triangle on alpha_p and one of the
/// two arcs that become isotopic, then relabels a_i -> a_{i-1} for i > p.
Triangulation delete_vertex(const Triangulation& t, int p);

/// True iff U and V (one flip apart) have equal deletions at p.
/// Throws SurfaceError when U and V are not adjacent.
bool flip_incident_to(const Triangulation& u, const Triangulation& v, int p, CanonOptions opts = {});

/// `steps` uniformly random flips.
Triangulation random_walk(const Triangulation& start, int steps, std::mt19937_64& rng);

/// Seed triangulation for a class: fan at a_1 (g = 0) or the Minus witness
/// around the default core (g >= 1).
Triangulation seed_triangulation(const SurfaceClass& cls);

}  // namespace mflip
