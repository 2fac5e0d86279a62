#include "mflip/transformer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "mflip/families.hpp"
#include "mflip/topology.hpp"

namespace mflip {

namespace {

// Arcs not incident to v that sit opposite a corner at v.
std::vector<int> fan_candidates(const Triangulation& t, int v) {
    auto tails = tail_vertices(t);
    std::vector<int> out;
    for (int i = 0; i < t.triangle_count(); ++i) {
        for (int k = 0; k < 3; ++k) {
            Side s = t.triangle(i)[static_cast<std::size_t>(k)];
            if (!s.is_interior()) continue;
            auto at = [&](int pos) { return tails[static_cast<std::size_t>(3 * i + (pos % 3))]; };
            if (at(k + 2) != v || at(k) == v || at(k + 1) == v) continue;
            out.push_back(s.arc());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

void check_base(const Triangulation& t, int a0) {
    if (t.boundaries() != 1) throw SurfaceError("one boundary curve required");
    if (a0 < 1 || a0 > t.marks()) throw SurfaceError("base vertex out of range");
}

}  // namespace

FlipPath fan_out(const Triangulation& disk, int apex) {
    check_base(disk, apex);
    FlipPath out{disk, {}};
    Triangulation cur = disk;
    for (;;) {
        auto c = fan_candidates(cur, apex);
        if (c.empty()) break;
        cur = flip(cur, c.front());
        out.moves.push_back(c.front());
    }
    return out;
}

PhasedPath canonical_form(const Triangulation& t, int a0) {
    check_base(t, a0);
    std::vector<int> sys;
    if (t.genus() > 0) sys = find_cut_system(t);
    PhasedPath out{{t, {}}, {{kPhaseFan, 0}, {kPhaseLoopify, 0}}};
    Triangulation cur = t;
    for (;;) {
        auto c = fan_candidates(cur, a0);
        if (c.empty()) break;
        // arcs of the cut system wait until the polygon around them is fanned
        auto it = std::find_if(c.begin(), c.end(), [&](int e) { return !contains(sys, e); });
        int e = it != c.end() ? *it : c.front();
        ++out.phases[it != c.end() ? kPhaseFan : kPhaseLoopify];
        cur = flip(cur, e);
        out.path.moves.push_back(e);
    }
    return out;
}

int choose_base_vertex(const Triangulation& u, const Triangulation& v) {
    auto run = untouched_run(u, v);
    return run.length >= 2 ? run.start % u.marks() + 1 : run.start;
}

namespace {

// The surface together with the polygon Q obtained by cutting along 2g loops
// at a0. Q's boundary reads c0 b1 ... b_{n-1} c1 ... c_{4g} where the c are
// copies of a0; hand i is the triangle on the side c_i c_{i+1}. Hands bound
// together share one triangle with a b apex, the bundle.
struct Hands {
    struct Bundle {
        int lo = 0, hi = 0;  // hands lo..hi-1, base c_lo c_hi
        int k = 0;           // apex b_k
        int base = -1;       // C-C arc under the apex triangle, -1 for a single hand
        int upper = -1;      // arc c_lo b_k (-1 when it is boundary)
        int lower = -1;      // arc c_hi b_k
    };

    Triangulation t, q;
    int n = 0, g = 0, a0 = 0;
    std::vector<int> fresh;  // f_1 .. f_{4g}
    std::vector<int> cidx;   // by label; 1..4g+1, 0 for b vertices
    std::vector<int> bidx;   // by label; 1..n-1
    std::vector<int> tails;
    std::vector<int> moves;
    PhaseLengths phases{{kPhaseHandsMove, 0}, {kPhaseHandsBind, 0}};

    Hands(const Triangulation& tri, int base) : t(tri), n(tri.marks()), g(tri.genus()), a0(base) {
        auto tt = tail_vertices(t);
        std::vector<int> loops;
        for (int e : t.arcs()) {
            auto [x, y] = arc_endpoints(t, tt, e);
            if (x == a0 && y == a0) loops.push_back(e);
        }
        auto sys = find_cut_system_among(t, loops);
        auto cs = cut(t, sys);
        if (cs.components.size() != 1) throw SurfaceError("loops at base vertex do not cut to a polygon");
        q = cs.components[0];
        auto cycle = boundary_cycle(q).at(0);
        if (static_cast<int>(cycle.size()) != n + 4 * g) throw SurfaceError("loops at base vertex do not cut to a polygon");
        std::rotate(cycle.begin(), std::find(cycle.begin(), cycle.end(), a0), cycle.end());
        int top = *std::max_element(cycle.begin(), cycle.end());
        cidx.assign(static_cast<std::size_t>(top + 1), 0);
        bidx.assign(static_cast<std::size_t>(top + 1), 0);
        cidx[static_cast<std::size_t>(a0)] = 4 * g + 1;
        for (int j = 1; j < n; ++j) {
            if (cycle[static_cast<std::size_t>(j)] != (a0 - 1 + j) % n + 1) throw SurfaceError("base vertex is not simple");
            bidx[static_cast<std::size_t>(cycle[static_cast<std::size_t>(j)])] = j;
        }
        for (int i = 1; i <= 4 * g; ++i) {
            int f = cycle[static_cast<std::size_t>(n - 1 + i)];
            fresh.push_back(f);
            cidx[static_cast<std::size_t>(f)] = i;
        }
        // every arc must touch a0, so every corner of Q is a c or sits on the rim
        tails = tail_vertices(q);
    }

    int vtx(int tri, int pos) const { return tails[static_cast<std::size_t>(3 * tri + (pos % 3))]; }
    int ci(int label) const { return cidx[static_cast<std::size_t>(label)]; }
    int bi(int label) const { return bidx[static_cast<std::size_t>(label)]; }

    void apply(int arc, const char* phase) {
        t = flip(t, arc);
        q = flip(q, arc);
        tails = tail_vertices(q);
        moves.push_back(arc);
        ++phases[phase];
    }

    Bundle bundle_of(int hand) const {
        Side s = Side::boundary(fresh[static_cast<std::size_t>(hand - 1)]);
        Bundle b;
        for (;;) {
            Slot sl = q.slot_of(s);
            const auto& tri = q.triangle(sl.tri);
            int p = sl.pos;
            int x = vtx(sl.tri, p), y = vtx(sl.tri, p + 1), z = vtx(sl.tri, p + 2);
            if (ci(z) == 0) {
                b.lo = std::min(ci(x), ci(y));
                b.hi = std::max(ci(x), ci(y));
                b.k = bi(z);
                b.base = s.is_interior() ? s.arc() : -1;
                Side up = tri[static_cast<std::size_t>((p + 2) % 3)];  // z -> x
                Side down = tri[static_cast<std::size_t>((p + 1) % 3)];  // y -> z
                if (ci(x) != b.lo) std::swap(up, down);
                b.upper = up.is_interior() ? up.arc() : -1;
                b.lower = down.is_interior() ? down.arc() : -1;
                return b;
            }
            int lo = std::min({ci(x), ci(y), ci(z)}), hi = std::max({ci(x), ci(y), ci(z)});
            bool found = false;
            for (int d = 1; d <= 2 && !found; ++d) {
                int a = ci(vtx(sl.tri, p + d)), c = ci(vtx(sl.tri, p + d + 1));
                if (std::min(a, c) == lo && std::max(a, c) == hi) {
                    s = tri[static_cast<std::size_t>((p + d) % 3)].twin();
                    found = true;
                }
            }
            if (!found) throw SurfaceError("malformed hand nest");
        }
    }

    std::vector<int> positions() const {
        std::vector<int> h(static_cast<std::size_t>(4 * g + 1), 0);
        for (int i = 1; i <= 4 * g; ++i) h[static_cast<std::size_t>(i)] = bundle_of(i).k;
        return h;
    }

    void unbind_all() {
        for (int i = 1; i <= 4 * g;) {
            auto b = bundle_of(i);
            if (b.base >= 0) {
                apply(b.base, kPhaseHandsBind);
                continue;
            }
            ++i;
        }
    }

    // Bind every hand into one bundle; all hands must share one apex.
    int bind_all() {
        for (;;) {
            auto b = bundle_of(1);
            if (b.hi == 4 * g + 1) return b.base;
            apply(b.lower, kPhaseHandsBind);
        }
    }
};

// Raise hands on both sides until each hand i sits at target[i] on both.
// The lowest needy hands move first; needy neighbours at the same apex are
// bound and travel as one bundle.
void sweep(Hands& u, Hands& v, const std::vector<int>& target) {
    const int m = 4 * u.g;
    for (;;) {
        Hands* side = nullptr;
        int k = 0;
        for (Hands* w : {&u, &v}) {
            auto h = w->positions();
            for (int i = 1; i <= m; ++i) {
                int hi = h[static_cast<std::size_t>(i)];
                if (hi < target[static_cast<std::size_t>(i)] && (side == nullptr || hi < k)) side = w, k = hi;
            }
        }
        if (side == nullptr) return;
        auto h = side->positions();
        int a = 0, b = 0;
        for (int i = 1; i <= m; ++i) {
            if (h[static_cast<std::size_t>(i)] != k || target[static_cast<std::size_t>(i)] <= k) continue;
            if (a == 0) a = i;
            b = i;
        }
        auto bb = side->bundle_of(b);
        if (bb.hi - 1 > b) {
            side->apply(bb.base, kPhaseHandsBind);  // split off hands that are done
        } else if (bb.lo > a) {
            side->apply(bb.upper, kPhaseHandsBind);
        } else {
            side->apply(bb.upper, kPhaseHandsMove);
        }
    }
}

// Genus-g piece enclosed by the loop `arc`, with its boundary relabelled 1.
Triangulation core_of(const Triangulation& t, int arc) {
    auto cs = cut(t, std::vector<int>{arc});
    for (const auto& c : cs.components) {
        if (c.genus() != t.genus()) continue;
        std::vector<Triangle> tris(c.triangles().begin(), c.triangles().end());
        for (auto& tri : tris) {
            for (auto& s : tri) {
                if (s.is_boundary()) s = Side::boundary(1);
            }
        }
        return Triangulation::make({t.genus(), 1, 1}, std::move(tris));
    }
    throw SurfaceError("no core behind loop");
}

// Exact hand alignment for g = 1: shortest flip path between the two cut
// polygons among triangulations without b-b diagonals (every arc stays
// incident to a0). Polygon positions: c0 = 0, b_j = j, c_i = n-1+i.
class Zipper {
public:
    using State = std::vector<std::uint64_t>;
    using Diagonal = std::pair<int, int>;

    explicit Zipper(const Hands& h) : n_(h.n), size_(h.n + 4 * h.g) {}

    bool fits() const { return size_ <= 64; }

    int position(const Hands& h, int label) const {
        int c = h.ci(label);
        if (c == 4 * h.g + 1) return 0;
        return c > 0 ? n_ - 1 + c : h.bi(label);
    }

    State state(const Hands& h) const {
        State s(static_cast<std::size_t>(size_), 0);
        for (int p = 0; p < size_; ++p) link(s, p, (p + 1) % size_);
        for (int e : h.q.arcs()) {
            auto [x, y] = arc_endpoints(h.q, h.tails, e);
            link(s, position(h, x), position(h, y));
        }
        return s;
    }

    // Diagonals to flip, in order, taking `from` to `to`; empty optional over budget.
    std::optional<std::vector<Diagonal>> path(const State& from, const State& to, std::size_t max_states) const {
        struct Node {
            std::string parent;
            Diagonal removed, added;
        };
        std::unordered_map<std::string, Node> seen[2];
        std::vector<State> frontier[2] = {{from}, {to}};
        seen[0].emplace(key(from), Node{});
        seen[1].emplace(key(to), Node{});
        std::string meet = key(from) == key(to) ? key(from) : std::string();
        while (meet.empty()) {
            if (frontier[0].empty() || frontier[1].empty()) throw SurfaceError("zipper polygons are not connected");
            int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
            std::vector<State> next;
            for (const auto& st : frontier[side]) {
                std::string here = key(st);
                for_each_flip(st, [&](State&& nb, Diagonal rem, Diagonal add) {
                    if (!meet.empty()) return;
                    std::string k = key(nb);
                    if (!seen[side].emplace(k, Node{here, rem, add}).second) return;
                    if (seen[1 - side].count(k)) meet = k;
                    next.push_back(std::move(nb));
                });
                if (!meet.empty()) break;
            }
            if (seen[0].size() + seen[1].size() > max_states) return std::nullopt;
            frontier[side] = std::move(next);
        }
        std::vector<Diagonal> out;
        for (std::string k = meet; k != key(from);) {
            const auto& nd = seen[0].at(k);
            out.push_back(nd.removed);
            k = nd.parent;
        }
        std::reverse(out.begin(), out.end());
        for (std::string k = meet; k != key(to);) {
            const auto& nd = seen[1].at(k);
            out.push_back(nd.added);
            k = nd.parent;
        }
        return out;
    }

private:
    static void link(State& s, int a, int b) {
        s[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        s[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
    }
    static void unlink(State& s, int a, int b) {
        s[static_cast<std::size_t>(a)] &= ~(std::uint64_t{1} << b);
        s[static_cast<std::size_t>(b)] &= ~(std::uint64_t{1} << a);
    }
    static std::string key(const State& s) {
        return {reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::uint64_t)};
    }
    bool is_b(int p) const { return p >= 1 && p <= n_ - 1; }

    template <class F>
    void for_each_flip(const State& s, F&& f) const {
        for (int i = 0; i < size_; ++i) {
            std::uint64_t row = s[static_cast<std::size_t>(i)] >> (i + 2);
            for (int j = i + 2; row != 0; ++j, row >>= 1) {
                if ((row & 1) == 0 || (i == 0 && j == size_ - 1)) continue;
                std::uint64_t common = s[static_cast<std::size_t>(i)] & s[static_cast<std::size_t>(j)];
                int k = std::countr_zero(common);
                int l = 63 - std::countl_zero(common);
                if (is_b(k) && is_b(l)) continue;
                State nb = s;
                unlink(nb, i, j);
                link(nb, k, l);
                f(std::move(nb), Diagonal{i, j}, Diagonal{std::min(k, l), std::max(k, l)});
            }
        }
    }

    int n_, size_;
};

// Replays polygon flips on the surface; flips that keep a c-b arc a c-b arc
// move a hand, the rest bind or unbind.
void apply_diagonals(Hands& h, const Zipper& z, const std::vector<Zipper::Diagonal>& diags) {
    auto is_cb = [&](int a, int b) { return (h.ci(a) > 0) != (h.ci(b) > 0); };
    for (auto [i, j] : diags) {
        int arc = -1;
        for (int e : h.q.arcs()) {
            auto [x, y] = arc_endpoints(h.q, h.tails, e);
            int a = z.position(h, x), b = z.position(h, y);
            if (std::min(a, b) == i && std::max(a, b) == j) arc = e;
        }
        if (arc < 0) throw SurfaceError("zipper diagonal not found");
        auto [x0, y0] = arc_endpoints(h.q, h.tails, arc);
        auto after = flip(h.q, arc);
        auto [x1, y1] = arc_endpoints(after, tail_vertices(after), arc);
        h.apply(arc, is_cb(x0, y0) && is_cb(x1, y1) ? kPhaseHandsMove : kPhaseHandsBind);
    }
}

void align(Hands& u, Hands& v) {
    if (u.g == 1) {
        Zipper z(u);
        if (z.fits()) {
            if (auto diags = z.path(z.state(u), z.state(v), 4'000'000)) {
                apply_diagonals(u, z, *diags);
                return;
            }
        }
        // greedy scan
        u.unbind_all();
        v.unbind_all();
        auto hu = u.positions(), hv = v.positions();
        std::vector<int> target(hu.size(), 0);
        for (std::size_t i = 1; i < hu.size(); ++i) target[i] = std::max(hu[i], hv[i]);
        sweep(u, v, target);
        u.unbind_all();
        v.unbind_all();
        return;
    }
    // bundles already present travel as they are
    auto hu = u.positions(), hv = v.positions();
    std::vector<int> target(hu.size(), 0);
    int top = std::max(*std::max_element(hu.begin(), hu.end()), *std::max_element(hv.begin(), hv.end()));
    std::fill(target.begin() + 1, target.end(), top);
    sweep(u, v, target);
    u.bind_all();
    v.bind_all();
}

}  // namespace

std::pair<PhasedPath, PhasedPath> align_hands(const Triangulation& u, const Triangulation& v, int a0) {
    if (u.surface() != v.surface()) throw SurfaceError("class mismatch");
    check_base(u, a0);
    if (u.genus() < 1 || u.marks() < 2) throw SurfaceError("hands need genus >= 1 and n >= 2");
    Hands hu(u, a0), hv(v, a0);
    align(hu, hv);
    return {PhasedPath{{u, hu.moves}, hu.phases}, PhasedPath{{v, hv.moves}, hv.phases}};
}

FlipPath equalize_core(const Triangulation& u, const Triangulation& v, int a0, Budget budget) {
    if (u.genus() < 2) throw SurfaceError("core equalization needs genus >= 2");
    Hands hu(u, a0), hv(v, a0);
    auto bu = hu.bundle_of(1), bv = hv.bundle_of(1);
    if (bu.hi != 4 * u.genus() + 1 || bv.hi != 4 * v.genus() + 1) throw SurfaceError("hands are not collected");
    auto path = shortest_path(core_of(u, bu.base), core_of(v, bv.base), budget, CanonOptions{false});
    return {u, std::move(path.moves)};
}

std::optional<int> measured_core_diameter(int genus, Budget budget) {
    static std::mutex mu;
    static std::map<int, int> known;
    {
        std::lock_guard lock(mu);
        if (auto it = known.find(genus); it != known.end()) return it->second;
    }
    auto store = enumerate(standard_core(genus), budget, 1, CanonOptions{false});
    if (store.partial()) return std::nullopt;
    int d = diameter(store).diameter;
    std::lock_guard lock(mu);
    known[genus] = d;
    return d;
}

namespace {

// One run of the construction at base vertex a0 (n >= 2); `shell` carries the
// bound fields and zeroed phases.
TransformReport attempt(const Triangulation& u, const Triangulation& v, const TransformOptions& opts,
                        const TransformReport& shell, int a0) {
    TransformReport rep = shell;
    rep.a0 = a0;
    const int g = u.genus();
    auto cu = canonical_form(u, a0), cv = canonical_form(v, a0);
    for (const auto* c : {&cu, &cv}) {
        for (const auto& [ph, k] : c->phases) rep.phase_lengths[ph] += k;
    }
    std::vector<int> forward = cu.path.moves, backward = cv.path.moves;
    Triangulation uf = endpoint(cu.path), vf = endpoint(cv.path);
    if (g >= 1) {
        Hands hu(uf, a0), hv(vf, a0);
        align(hu, hv);
        for (const auto* h : {&hu, &hv}) {
            for (const auto& [ph, k] : h->phases) rep.phase_lengths[ph] += k;
        }
        forward.insert(forward.end(), hu.moves.begin(), hu.moves.end());
        backward.insert(backward.end(), hv.moves.begin(), hv.moves.end());
        uf = hu.t;
        vf = hv.t;
        if (g >= 2) {
            auto core = shortest_path(core_of(uf, hu.bundle_of(1).base), core_of(vf, hv.bundle_of(1).base),
                                      opts.core_budget, CanonOptions{false});
            rep.phase_lengths[kPhaseCore] += core.length();
            forward.insert(forward.end(), core.moves.begin(), core.moves.end());
            uf = endpoint({uf, core.moves});
        }
    }
    auto map = arc_correspondence(vf, uf, opts.canon);
    if (!map) throw SurfaceError("transform: sides did not meet");
    rep.path.moves = std::move(forward);
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) rep.path.moves.push_back((*map)[static_cast<std::size_t>(*it)]);
    if (!equivalent(endpoint(rep.path), v, opts.canon)) throw SurfaceError("transform: certification failed");
    return rep;
}

}  // namespace

TransformReport transform(const Triangulation& u, const Triangulation& v, const TransformOptions& opts) {
    if (u.surface() != v.surface()) throw SurfaceError("class mismatch");
    if (u.boundaries() != 1) throw SurfaceError("one boundary curve required");
    const int n = u.marks(), g = u.genus();
    TransformReport rep;
    for (const char* ph : {kPhaseFan, kPhaseLoopify, kPhaseHandsMove, kPhaseHandsBind, kPhaseCore}) rep.phase_lengths[ph] = 0;
    if (g == 1) {
        rep.bound = (23 * n + 64) / 8;
    } else if (g >= 2) {
        auto d = opts.measure_d_g ? measured_core_diameter(g, opts.d_g_budget) : std::nullopt;
        rep.d_g_used = d.value_or(-1);
        rep.bound_conditional = !d.has_value();
        rep.bound = (16 * g - 1) * n / (4 * g) + 16 * g - 7 + d.value_or(0);
    } else {
        rep.bound = 2 * n;
        rep.bound_conditional = true;
    }
    rep.path.start = u;
    if (equivalent(u, v, opts.canon)) return rep;
    if (n == 1) {
        rep.path = shortest_path(u, v, opts.core_budget, opts.canon);
        rep.phase_lengths[kPhaseCore] = rep.path.length();
        return rep;
    }
    if (opts.a0) return attempt(u, v, opts, rep, *opts.a0);
    int first = choose_base_vertex(u, v);
    auto best = attempt(u, v, opts, rep, first);
    // the untouched-run choice is not always the cheapest; retry the others when over
    for (int a = 1; a <= n && best.path.length() > best.bound; ++a) {
        if (a == first) continue;
        auto other = attempt(u, v, opts, rep, a);
        if (other.path.length() < best.path.length()) best = std::move(other);
    }
    return best;
}

std::vector<TransformReport> transform_batch(const std::vector<std::pair<Triangulation, Triangulation>>& pairs,
                                             const TransformOptions& opts, int threads) {
    std::vector<TransformReport> out(pairs.size());
    std::vector<std::exception_ptr> errors(pairs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < pairs.size();) {
            try {
                out[i] = transform(pairs[i].first, pairs[i].second, opts);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < std::max(1, threads); ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace mflip
