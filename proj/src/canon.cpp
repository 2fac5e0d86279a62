#include "mflip/canon.hpp"

#include <algorithm>

namespace mflip {

namespace {

constexpr unsigned kBoundaryTag = 0xC000;

struct Traversal {
    std::vector<int> order;  // discovery index -> triangle
    std::vector<int> rot;    // triangle -> rotation offset
    std::vector<int> index;  // triangle -> discovery index
};

Traversal traverse(const Triangulation& t) {
    const int F = t.triangle_count();
    Traversal tr;
    tr.rot.assign(static_cast<std::size_t>(F), 0);
    tr.index.assign(static_cast<std::size_t>(F), -1);
    Slot root = t.slot_of(Side::boundary(1));
    if (!root.valid()) throw SurfaceError("canonical_code: boundary arc 1 missing");
    tr.order.push_back(root.tri);
    tr.rot[static_cast<std::size_t>(root.tri)] = root.pos;
    tr.index[static_cast<std::size_t>(root.tri)] = 0;
    for (std::size_t head = 0; head < tr.order.size(); ++head) {
        int tri = tr.order[head];
        for (int j = 0; j < 3; ++j) {
            Side s = t.triangle(tri)[static_cast<std::size_t>((tr.rot[static_cast<std::size_t>(tri)] + j) % 3)];
            if (s.is_boundary()) continue;
            Slot other = t.slot_of(s.twin());
            if (tr.index[static_cast<std::size_t>(other.tri)] >= 0) continue;
            tr.index[static_cast<std::size_t>(other.tri)] = static_cast<int>(tr.order.size());
            tr.rot[static_cast<std::size_t>(other.tri)] = other.pos;
            tr.order.push_back(other.tri);
        }
    }
    if (static_cast<int>(tr.order.size()) != F) throw SurfaceError("canonical_code: gluing is not connected");
    return tr;
}

void put16(std::string& out, unsigned v) {
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
}

unsigned get16(const std::string& in, std::size_t at) {
    return (static_cast<unsigned>(static_cast<unsigned char>(in[at])) << 8) |
           static_cast<unsigned>(static_cast<unsigned char>(in[at + 1]));
}

std::string raw_code(const Triangulation& t, const Traversal& tr) {
    std::string out;
    out.reserve(4 + 6 * tr.order.size());
    put16(out, static_cast<unsigned>(t.genus()));
    put16(out, static_cast<unsigned>(t.marks()));
    for (int tri : tr.order) {
        for (int j = 0; j < 3; ++j) {
            Side s = t.triangle(tri)[static_cast<std::size_t>((tr.rot[static_cast<std::size_t>(tri)] + j) % 3)];
            if (s.is_boundary()) {
                put16(out, kBoundaryTag | static_cast<unsigned>(s.label()));
            } else {
                Slot other = t.slot_of(s.twin());
                int rel = (other.pos - tr.rot[static_cast<std::size_t>(other.tri)] + 3) % 3;
                put16(out, static_cast<unsigned>(3 * tr.index[static_cast<std::size_t>(other.tri)] + rel));
            }
        }
    }
    return out;
}

bool uses_mirror(const Triangulation& t, CanonOptions opts) { return opts.mirror_small && t.marks() <= 2; }

// Arc ids of `t` listed per canonical position (3*index + j), -1 for boundary.
std::vector<int> arcs_by_position(const Triangulation& t, const Traversal& tr) {
    std::vector<int> out;
    out.reserve(3 * tr.order.size());
    for (int tri : tr.order) {
        for (int j = 0; j < 3; ++j) {
            Side s = t.triangle(tri)[static_cast<std::size_t>((tr.rot[static_cast<std::size_t>(tri)] + j) % 3)];
            out.push_back(s.is_interior() ? s.arc() : -1);
        }
    }
    return out;
}

}  // namespace

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xF]);
    }
    return out;
}

std::string from_hex(const std::string& hex) {
    if (hex.size() % 2) throw SurfaceError("odd-length hex code");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw SurfaceError("bad hex digit");
    };
    std::string out;
    for (std::size_t i = 0; i < hex.size(); i += 2) out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    return out;
}

std::string CanonicalCode::hex() const { return to_hex(bytes); }

Triangulation mirror(const Triangulation& t) {
    if (t.boundaries() != 1) throw SurfaceError("not a one-holed surface");
    const int n = t.marks();
    std::vector<Triangle> tris;
    tris.reserve(static_cast<std::size_t>(t.triangle_count()));
    for (const auto& tri : t.triangles()) {
        Triangle r{tri[2], tri[1], tri[0]};
        for (auto& s : r) {
            if (s.is_boundary()) s = Side::boundary(n + 1 - s.label());
        }
        tris.push_back(r);
    }
    return Triangulation::unchecked(t.surface(), std::move(tris));
}

const std::string& code_bytes(const Triangulation& t, CanonOptions opts) {
    if (t.boundaries() != 1) throw SurfaceError("not a one-holed surface");
    const int mode = uses_mirror(t, opts) ? 1 : 0;
    auto& cache = t.cache();
    std::call_once(cache.flags[mode], [&] {
        std::string code = raw_code(t, traverse(t));
        if (mode == 1) {
            Triangulation m = mirror(t);
            code = std::min(code, raw_code(m, traverse(m)));
        }
        cache.codes[mode] = std::move(code);
    });
    return cache.codes[mode];
}

CanonicalCode canonical_code(const Triangulation& t, CanonOptions opts) { return {code_bytes(t, opts), t.surface()}; }

bool equivalent(const Triangulation& u, const Triangulation& v, CanonOptions opts) {
    if (u.surface() != v.surface()) throw SurfaceError("equivalent: surface class mismatch");
    return code_bytes(u, opts) == code_bytes(v, opts);
}

Triangulation decode_code(const std::string& bytes) {
    if (bytes.size() < 4 || (bytes.size() - 4) % 6) throw SurfaceError("malformed canonical code");
    SurfaceClass cls{static_cast<int>(get16(bytes, 0)), static_cast<int>(get16(bytes, 2)), 1};
    const std::size_t entries = (bytes.size() - 4) / 2;
    std::vector<int> arc_of(entries, -1);
    std::vector<Triangle> tris((bytes.size() - 4) / 6);
    int next_arc = 0;
    for (std::size_t e = 0; e < entries; ++e) {
        unsigned v = get16(bytes, 4 + 2 * e);
        Side s;
        if ((v & kBoundaryTag) == kBoundaryTag) {
            s = Side::boundary(static_cast<int>(v & ~kBoundaryTag));
        } else {
            if (v >= entries) throw SurfaceError("malformed canonical code");
            if (arc_of[v] >= 0) {
                s = Side::interior(arc_of[v], 1);
            } else {
                arc_of[e] = next_arc;
                s = Side::interior(next_arc++, 0);
            }
        }
        tris[e / 3][e % 3] = s;
    }
    return Triangulation::make(cls, std::move(tris));
}

std::optional<std::vector<int>> arc_correspondence(const Triangulation& from, const Triangulation& to,
                                                   CanonOptions opts) {
    if (from.surface() != to.surface()) throw SurfaceError("arc_correspondence: surface class mismatch");
    Traversal tf = traverse(from);
    std::string cf = raw_code(from, tf);
    std::vector<Triangulation> candidates{to};
    if (uses_mirror(to, opts)) candidates.push_back(mirror(to));
    for (const auto& cand : candidates) {
        Traversal tt = traverse(cand);
        if (raw_code(cand, tt) != cf) continue;
        auto a = arcs_by_position(from, tf);
        auto b = arcs_by_position(cand, tt);
        int max_arc = 0;
        for (int x : a) max_arc = std::max(max_arc, x);
        std::vector<int> map(static_cast<std::size_t>(max_arc + 1), -1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] >= 0) map[static_cast<std::size_t>(a[i])] = b[i];
        }
        return map;
    }
    return std::nullopt;
}

}  // namespace mflip
