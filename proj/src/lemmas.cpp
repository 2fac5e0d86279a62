#include "mflip/lemmas.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "mflip/families.hpp"
#include "mflip/flip.hpp"

namespace mflip {

namespace {

std::uint64_t edge_key(int u, int w) { return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(w); }

bool bit(std::uint32_t mask, int p) { return (mask >> p) & 1U; }

int count_bit(std::span<const Step> steps, int p) {
    int c = 0;
    for (const auto& s : steps) c += bit(s.incident, p);
    return c;
}

// Calls fn for every choice of realizing flip along a node sequence;
// returns false if fn asked to stop.
bool for_each_realization(const StepTable& table, std::span<const int> nodes, std::vector<Step>& chosen,
                          const std::function<bool(std::span<const Step>)>& fn) {
    std::size_t i = chosen.size();
    if (i + 1 >= nodes.size()) return fn(chosen);
    for (const auto& s : table.steps(nodes[i], nodes[i + 1])) {
        chosen.push_back(s);
        bool go = for_each_realization(table, nodes, chosen, fn);
        chosen.pop_back();
        if (!go) return false;
    }
    return true;
}

void require_complete(const FlipGraphStore& s) {
    if (s.partial()) throw SurfaceError("replay needs a complete store");
}

// interior arcs shared by the triangles on alpha_p and alpha_q
bool share_arc(const Triangulation& t, int p, int q) {
    const auto& a = t.triangle(t.slot_of(Side::boundary(p)).tri);
    const auto& b = t.triangle(t.slot_of(Side::boundary(q)).tri);
    for (auto x : a) {
        for (auto y : b) {
            if (x.is_interior() && y.is_interior() && x.arc() == y.arc()) return true;
        }
    }
    return false;
}

}  // namespace

StepTable::StepTable(const FlipGraphStore& store) {
    require_complete(store);
    const int n = store.surface().marks;
    std::vector<std::vector<std::string>> del;
    if (n >= 2) {
        for (int p = 1; p <= n; ++p) del.push_back(deletion_codes(store, p));
    }
    for (int u = 0; u < store.node_count(); ++u) {
        auto rep = store.representative(u);
        for (int e : rep.arcs()) {
            auto w = flip(rep, e);
            int node = store.find(w);
            if (node < 0) throw SurfaceError("store is not closed under flips");
            if (node == u) continue;
            Step s;
            for (int p = 1; p <= static_cast<int>(del.size()); ++p) {
                const auto& d = del[static_cast<std::size_t>(p - 1)];
                if (d[static_cast<std::size_t>(u)] == d[static_cast<std::size_t>(node)]) s.incident |= 1U << p;
            }
            auto [a, b] = arc_endpoints(w, tail_vertices(w), e);
            s.a = std::min(a, b);
            s.b = std::max(a, b);
            auto& list = steps_[edge_key(u, node)];
            if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(s);
        }
    }
}

std::span<const Step> StepTable::steps(int u, int w) const {
    auto it = steps_.find(edge_key(u, w));
    if (it == steps_.end()) return {};
    return it->second;
}

ReplayTally replay_deletion_contraction(const FlipGraphStore& big, const FlipGraphStore& small) {
    require_complete(big);
    require_complete(small);
    ReplayTally t{"deletion-contraction"};
    for (int p = 1; p <= big.surface().marks; ++p) {
        auto del = deletion_codes(big, p);
        for (int u = 0; u < big.node_count(); ++u) {
            int a = small.find(del[static_cast<std::size_t>(u)]);
            for (auto w : big.adjacent(u)) {
                if (static_cast<int>(w) < u) continue;
                ++t.instances;
                int b = small.find(del[w]);
                if (a < 0 || b < 0) {
                    ++t.violations;
                    continue;
                }
                auto adj = small.adjacent(a);
                if (a != b && std::find(adj.begin(), adj.end(), static_cast<std::uint32_t>(b)) == adj.end()) ++t.violations;
            }
        }
    }
    return t;
}

ReplayTally replay_incidence_inequality(const FlipGraphStore& big, const FlipGraphStore& small, int pairs,
                                        std::uint64_t seed, std::size_t max_geodesics) {
    require_complete(big);
    require_complete(small);
    ReplayTally t{"incidence-inequality"};
    const int n = big.surface().marks;
    StepTable table(big);
    std::vector<std::vector<int>> del_node(static_cast<std::size_t>(n + 1));
    for (int p = 1; p <= n; ++p) {
        for (const auto& c : deletion_codes(big, p)) del_node[static_cast<std::size_t>(p)].push_back(small.find(c));
    }
    std::map<int, std::vector<int>> small_bfs;
    auto small_dist = [&](int a, int b) {
        auto it = small_bfs.find(a);
        if (it == small_bfs.end()) it = small_bfs.emplace(a, bfs_distances(small, a)).first;
        return it->second[static_cast<std::size_t>(b)];
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, big.node_count() - 1);
    for (int k = 0; k < pairs; ++k) {
        int u = pick(rng), v = pick(rng);
        int d = distance(big, u, v);
        ++t.instances;
        auto gc = all_geodesics(
            big, u, v,
            [&](std::span<const int> nodes) {
                std::vector<Step> chosen;
                for_each_realization(table, nodes, chosen, [&](std::span<const Step> steps) {
                    ++t.geodesics;
                    for (int p = 1; p <= n; ++p) {
                        int du = del_node[static_cast<std::size_t>(p)][static_cast<std::size_t>(u)];
                        int dv = del_node[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)];
                        if (d < small_dist(du, dv) + count_bit(steps, p)) ++t.violations;
                    }
                    return true;
                });
                return true;
            },
            max_geodesics);
        t.complete = t.complete && gc.complete;
    }
    return t;
}

ReplayTally replay_ear_condition(const FlipGraphStore& store, std::size_t max_geodesics) {
    require_complete(store);
    ReplayTally t{"ear-condition"};
    const int n = store.surface().marks;
    if (n < 2) return t;
    StepTable table(store);
    const int count = store.node_count();
    std::vector<std::uint32_t> ears(static_cast<std::size_t>(count), 0), apart(static_cast<std::size_t>(count), 0);
    for (int u = 0; u < count; ++u) {
        auto rep = store.representative(u);
        for (int p = 1; p <= n; ++p) {
            int q = p % n + 1;
            if (has_ear(rep, q)) ears[static_cast<std::size_t>(u)] |= 1U << q;
            if (!share_arc(rep, p, q)) apart[static_cast<std::size_t>(u)] |= 1U << p;
        }
    }
    for (int u = 0; u < count; ++u) {
        for (int v = 0; v < count; ++v) {
            for (int p = 1; p <= n; ++p) {
                int q = p % n + 1;
                if (!bit(ears[static_cast<std::size_t>(u)], q) || !bit(apart[static_cast<std::size_t>(v)], p)) continue;
                ++t.instances;
                auto gc = all_geodesics(
                    store, u, v,
                    [&](std::span<const int> nodes) {
                        std::vector<Step> chosen;
                        for_each_realization(table, nodes, chosen, [&](std::span<const Step> steps) {
                            ++t.geodesics;
                            if (count_bit(steps, p) < 2 && count_bit(steps, q) < 2) ++t.violations;
                            return true;
                        });
                        return true;
                    },
                    max_geodesics);
                t.complete = t.complete && gc.complete;
            }
        }
    }
    return t;
}

std::vector<ReplayTally> replay_first_incident_flip(const FlipGraphStore& store, const Triangulation& minus,
                                                    const Triangulation& plus, std::size_t max_geodesics) {
    require_complete(store);
    const int n = store.surface().marks;
    ReplayTally far{"first-flip-a1-an"}, near{"first-flip-a1-a2"};
    StepTable table(store);
    int u = store.find(minus), v = store.find(plus);
    if (u < 0 || v < 0) throw SurfaceError("endpoints not in store");
    auto gc = all_geodesics(
        store, u, v,
        [&](std::span<const int> nodes) {
            std::vector<Step> chosen;
            for_each_realization(table, nodes, chosen, [&](std::span<const Step> steps) {
                auto first = std::find_if(steps.begin(), steps.end(), [&](const Step& s) { return bit(s.incident, n); });
                if (first == steps.end()) return true;
                int fn = count_bit(steps, n);
                if (first->a == 1 && first->b == n) {
                    ++far.instances;
                    ++far.geodesics;
                    if (fn < 3) ++far.violations;
                }
                if (first->a == 1 && first->b == 2) {
                    ++near.geodesics;
                    if (fn <= 2) {
                        ++near.instances;
                        if (count_bit(steps, 1) < 4) ++near.violations;
                    }
                }
                return true;
            });
            return true;
        },
        max_geodesics);
    far.complete = near.complete = gc.complete;
    return {far, near};
}

}  // namespace mflip
