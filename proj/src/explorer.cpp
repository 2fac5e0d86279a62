#include "mflip/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <thread>
#include <unordered_map>

#include "mflip/families.hpp"

namespace mflip {

namespace {

std::uint64_t hash_bytes(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ (h >> 29);
}

}  // namespace

FlipGraphStore::FlipGraphStore(SurfaceClass cls, CanonOptions opts, std::size_t code_length)
    : cls_(cls), opts_(opts), code_length_(code_length), table_(1024, -1) {}

std::string_view FlipGraphStore::code(int node) const {
    return std::string_view(codes_).substr(static_cast<std::size_t>(node) * code_length_, code_length_);
}

int FlipGraphStore::find(std::string_view code) const {
    if (code.size() != code_length_ || table_.empty()) return -1;
    const std::size_t mask = table_.size() - 1;
    for (std::size_t i = hash_bytes(code) & mask;; i = (i + 1) & mask) {
        std::int32_t node = table_[i];
        if (node < 0) return -1;
        if (this->code(node) == code) return node;
    }
}

void FlipGraphStore::grow() {
    std::vector<std::int32_t> bigger(table_.size() * 2, -1);
    const std::size_t mask = bigger.size() - 1;
    for (int node = 0; node < node_count(); ++node) {
        std::size_t i = hash_bytes(code(node)) & mask;
        while (bigger[i] >= 0) i = (i + 1) & mask;
        bigger[i] = node;
    }
    table_ = std::move(bigger);
}

std::pair<int, bool> FlipGraphStore::insert(std::string_view code) {
    if (code.size() != code_length_) throw SurfaceError("store: code length mismatch");
    if (int found = find(code); found >= 0) return {found, false};
    if (2 * static_cast<std::size_t>(node_count() + 1) > table_.size()) grow();
    const int node = node_count();
    codes_.append(code);
    const std::size_t mask = table_.size() - 1;
    std::size_t i = hash_bytes(code) & mask;
    while (table_[i] >= 0) i = (i + 1) & mask;
    table_[i] = node;
    return {node, true};
}

std::span<const std::uint32_t> FlipGraphStore::adjacent(int node) const {
    auto n = static_cast<std::size_t>(node);
    if (n + 1 >= offsets_.size()) return {};
    return std::span<const std::uint32_t>(targets_).subspan(offsets_[n], offsets_[n + 1] - offsets_[n]);
}

void FlipGraphStore::set_adjacency(std::vector<std::uint32_t> offsets, std::vector<std::uint32_t> targets) {
    offsets_ = std::move(offsets);
    targets_ = std::move(targets);
}

FlipGraphStore enumerate(const Triangulation& seed, Budget budget, int threads, CanonOptions opts) {
    if (seed.boundaries() != 1) throw SurfaceError("not a one-holed surface");
    const auto started = std::chrono::steady_clock::now();
    const std::string& seed_code = code_bytes(seed, opts);
    FlipGraphStore store(seed.surface(), opts, seed_code.size());
    store.insert(seed_code);
    threads = std::max(1, threads);

    std::vector<std::vector<std::uint32_t>> adjacency;
    std::size_t head = 0;
    bool partial = false;
    while (head < static_cast<std::size_t>(store.node_count())) {
        const std::size_t end = static_cast<std::size_t>(store.node_count());
        const std::size_t count = end - head;
        std::vector<std::vector<std::string>> found(count);
        auto work = [&](std::size_t from, std::size_t to) {
            for (std::size_t i = from; i < to; ++i) {
                Triangulation t = store.representative(static_cast<int>(head + i));
                for (const auto& nb : neighbors(t)) found[i].push_back(code_bytes(nb, opts));
            }
        };
        if (threads == 1 || count < 64) {
            work(0, count);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
            for (std::size_t from = 0; from < count; from += chunk) pool.emplace_back(work, from, std::min(count, from + chunk));
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < count && !partial; ++i) {
            std::vector<std::uint32_t> adj;
            for (const auto& c : found[i]) {
                int idx = store.find(c);
                if (idx < 0) {
                    if (static_cast<std::size_t>(store.node_count()) >= budget.max_nodes) {
                        partial = true;
                        break;
                    }
                    idx = store.insert(c).first;
                }
                if (static_cast<std::size_t>(idx) != head + i) adj.push_back(static_cast<std::uint32_t>(idx));
            }
            if (partial) break;
            std::sort(adj.begin(), adj.end());
            adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
            adjacency.push_back(std::move(adj));
        }
        if (partial) break;
        head = end;
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (elapsed > budget.max_seconds && head < static_cast<std::size_t>(store.node_count())) {
            partial = true;
            break;
        }
    }

    // Expanded nodes carry full adjacency; make it symmetric and drop
    // references to unexpanded nodes when partial.
    const std::size_t expanded = adjacency.size();
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> targets;
    for (std::size_t v = 0; v < expanded; ++v) {
        for (auto w : adjacency[v]) {
            if (w < expanded) targets.push_back(w);
        }
        offsets.push_back(static_cast<std::uint32_t>(targets.size()));
    }
    store.set_adjacency(std::move(offsets), std::move(targets));
    store.set_partial(partial);
    return store;
}

std::vector<int> bfs_distances(const FlipGraphStore& store, int source) {
    std::vector<int> dist(static_cast<std::size_t>(store.node_count()), -1);
    std::vector<int> queue;
    queue.reserve(dist.size());
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        int next = dist[static_cast<std::size_t>(v)] + 1;
        for (auto w : store.adjacent(v)) {
            if (dist[w] < 0) {
                dist[w] = next;
                queue.push_back(static_cast<int>(w));
            }
        }
    }
    return dist;
}

int distance(const FlipGraphStore& store, int u, int v) { return bfs_distances(store, u)[static_cast<std::size_t>(v)]; }

DiameterResult diameter(const FlipGraphStore& store, int threads) {
    if (store.partial()) throw SurfaceError("diameter: store is partial");
    const int N = store.node_count();
    DiameterResult result;
    if (N <= 1) return result;
    threads = std::max(1, threads);
    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    std::vector<int> lower(static_cast<std::size_t>(N), 0), upper(static_cast<std::size_t>(N), kInf);
    std::vector<int> candidates(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) candidates[static_cast<std::size_t>(i)] = i;
    int best = -1;
    bool pick_upper = true;
    std::vector<int> sources{0};
    std::vector<std::vector<int>> dists;
    while (!candidates.empty()) {
        dists.assign(sources.size(), {});
        if (sources.size() == 1) {
            dists[0] = bfs_distances(store, sources[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t k = 0; k < sources.size(); ++k) {
                pool.emplace_back([&, k] { dists[k] = bfs_distances(store, sources[k]); });
            }
            for (auto& th : pool) th.join();
        }
        for (std::size_t k = 0; k < sources.size(); ++k) {
            const auto& dist = dists[k];
            int source = sources[k];
            ++result.bfs_runs;
            int ecc = 0, far = source;
            for (int w = 0; w < N; ++w) {
                if (dist[static_cast<std::size_t>(w)] < 0) throw SurfaceError("diameter: graph is disconnected");
                if (dist[static_cast<std::size_t>(w)] > ecc) ecc = dist[static_cast<std::size_t>(w)], far = w;
            }
            if (ecc > best) {
                best = ecc;
                result.from = source;
                result.to = far;
            }
            lower[static_cast<std::size_t>(source)] = upper[static_cast<std::size_t>(source)] = ecc;
            for (int w : candidates) {
                auto i = static_cast<std::size_t>(w);
                int d = dist[i];
                lower[i] = std::max(lower[i], std::max(d, ecc - d));
                upper[i] = std::min(upper[i], ecc + d);
            }
        }
        std::vector<int> keep;
        for (int w : candidates) {
            auto i = static_cast<std::size_t>(w);
            if (upper[i] <= best) continue;
            keep.push_back(w);
        }
        candidates = std::move(keep);
        // Alternate between the loosest upper bound and the smallest lower bound.
        sources.clear();
        std::vector<bool> taken(static_cast<std::size_t>(N), false);
        while (static_cast<int>(sources.size()) < threads && sources.size() < candidates.size()) {
            auto cmp = [&](int a, int b) -> bool {
                auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
                if (taken[ia] != taken[ib]) return taken[ib];
                if (pick_upper) return upper[ia] != upper[ib] ? upper[ia] > upper[ib] : a < b;
                return lower[ia] != lower[ib] ? lower[ia] < lower[ib] : a < b;
            };
            int source = *std::min_element(candidates.begin(), candidates.end(), cmp);
            taken[static_cast<std::size_t>(source)] = true;
            sources.push_back(source);
            pick_upper = !pick_upper;
        }
    }
    result.diameter = best;
    return result;
}

FlipPath path_from_codes(const Triangulation& start, std::span<const std::string> codes, CanonOptions opts) {
    FlipPath path{start, {}};
    Triangulation cur = start;
    for (std::size_t i = 1; i < codes.size(); ++i) {
        bool moved = false;
        for (int arc : cur.arcs()) {
            Triangulation next = flip(cur, arc);
            if (code_bytes(next, opts) == codes[i]) {
                path.moves.push_back(arc);
                cur = std::move(next);
                moved = true;
                break;
            }
        }
        if (!moved) throw SurfaceError("path_from_codes: consecutive codes are not adjacent");
    }
    return path;
}

FlipPath shortest_path(const Triangulation& u, const Triangulation& v, Budget budget, CanonOptions opts) {
    if (u.surface() != v.surface()) throw SurfaceError("shortest_path: surface class mismatch");
    const auto started = std::chrono::steady_clock::now();
    const std::string& cu = code_bytes(u, opts);
    const std::string& cv = code_bytes(v, opts);
    if (cu == cv) return {u, {}};

    // parent maps: code -> predecessor code (toward the side's root)
    std::unordered_map<std::string, std::string> parent[2];
    std::vector<std::string> frontier[2];
    parent[0].emplace(cu, std::string());
    parent[1].emplace(cv, std::string());
    frontier[0].push_back(cu);
    frontier[1].push_back(cv);
    std::string meet;
    while (meet.empty()) {
        if (frontier[0].empty() || frontier[1].empty()) throw SurfaceError("shortest_path: flip-graph disconnected");
        const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<std::string> next;
        for (const auto& c : frontier[side]) {
            for (const auto& nb : neighbors(decode_code(c))) {
                const std::string& nc = code_bytes(nb, opts);
                if (parent[side].count(nc)) continue;
                parent[side].emplace(nc, c);
                if (parent[1 - side].count(nc)) {
                    meet = nc;
                    break;
                }
                next.push_back(nc);
            }
            if (!meet.empty()) break;
            if (parent[0].size() + parent[1].size() > budget.max_nodes) throw BudgetExceeded("shortest_path: node budget exceeded");
        }
        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() > budget.max_seconds) {
            throw BudgetExceeded("shortest_path: time budget exceeded");
        }
        frontier[side] = std::move(next);
    }
    std::vector<std::string> chain;
    for (std::string c = meet; !c.empty(); c = parent[0].at(c)) chain.push_back(c);
    std::reverse(chain.begin(), chain.end());
    for (std::string c = parent[1].at(meet); !c.empty(); c = parent[1].at(c)) chain.push_back(c);
    return path_from_codes(u, chain, opts);
}

int distance(const Triangulation& u, const Triangulation& v, Budget budget, CanonOptions opts) {
    return shortest_path(u, v, budget, opts).length();
}

GeodesicCount all_geodesics(const FlipGraphStore& store, int u, int v,
                            const std::function<bool(std::span<const int>)>& visit, std::size_t max_paths) {
    GeodesicCount out;
    auto from_v = bfs_distances(store, v);
    const int d = from_v[static_cast<std::size_t>(u)];
    if (d < 0) throw SurfaceError("all_geodesics: endpoints not connected");
    std::vector<int> nodes{u};
    std::vector<std::size_t> cursor{0};
    if (d == 0) {
        out.count = 1;
        visit(nodes);
        return out;
    }
    while (!nodes.empty()) {
        int x = nodes.back();
        auto adj = store.adjacent(x);
        auto& c = cursor.back();
        if (static_cast<int>(nodes.size()) - 1 == d) {
            if (out.count >= max_paths) {
                out.complete = false;
                return out;
            }
            ++out.count;
            if (!visit(nodes)) {
                out.complete = false;
                return out;
            }
            nodes.pop_back();
            cursor.pop_back();
            continue;
        }
        const int want = from_v[static_cast<std::size_t>(x)] - 1;
        while (c < adj.size() && from_v[adj[c]] != want) ++c;
        if (c == adj.size()) {
            nodes.pop_back();
            cursor.pop_back();
            continue;
        }
        nodes.push_back(static_cast<int>(adj[c++]));
        cursor.push_back(0);
    }
    return out;
}

int incidence_profile(const FlipPath& path, int p, CanonOptions opts) {
    int count = 0;
    Triangulation cur = path.start;
    std::string before = code_bytes(delete_vertex(cur, p), opts);
    for (int arc : path.moves) {
        cur = flip(cur, arc);
        std::string after = code_bytes(delete_vertex(cur, p), opts);
        count += before == after;
        before = std::move(after);
    }
    return count;
}

std::vector<std::string> deletion_codes(const FlipGraphStore& store, int p) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(store.node_count()));
    for (int v = 0; v < store.node_count(); ++v) out.push_back(code_bytes(delete_vertex(store.representative(v), p), store.canon()));
    return out;
}

}  // namespace mflip
