#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mflip/surface.hpp"

namespace mflip {

/// Orientation-reversing homeomorphisms only fix every labelled point when
/// n <= 2; `mirror_small` quotients by them in that range.
struct CanonOptions {
    bool mirror_small = true;
};

/// Complete invariant of a triangulation up to homeomorphisms fixing every
/// labelled marked point. Equal bytes within one class means equal vertex of
/// the modular flip-graph.
struct CanonicalCode {
    std::string bytes;
    SurfaceClass surface;

    bool operator==(const CanonicalCode& other) const { return surface == other.surface && bytes == other.bytes; }
    std::string hex() const;
};

CanonicalCode canonical_code(const Triangulation& t, CanonOptions opts = {});

/// Cached raw bytes of `canonical_code`; safe to call concurrently.
const std::string& code_bytes(const Triangulation& t, CanonOptions opts = {});

/// Throws SurfaceError on class mismatch.
bool equivalent(const Triangulation& u, const Triangulation& v, CanonOptions opts = {});

/// Orientation-reversed copy, boundary label p renamed n+1-p. Arc ids are
/// kept. One-holed surfaces only.
Triangulation mirror(const Triangulation& t);

/// Rebuilds a triangulation from code bytes (a representative of the class).
Triangulation decode_code(const std::string& bytes);

/// If `from` and `to` are equivalent, the map arc id of `from` -> arc id of
/// `to` induced by an isomorphism (indexed by arc id, -1 where unused).
std::optional<std::vector<int>> arc_correspondence(const Triangulation& from, const Triangulation& to,
                                                   CanonOptions opts = {});

std::string to_hex(const std::string& bytes);
std::string from_hex(const std::string& hex);

}  // namespace mflip
