#pragma once

#include <string>

#include "json.hpp"
#include "mflip/explorer.hpp"
#include "mflip/surface.hpp"
#include "mflip/transformer.hpp"

namespace mflip::io {

/// Malformed document (bad JSON, wrong field types, bad side strings).
class FormatError : public SurfaceError {
public:
    using SurfaceError::SurfaceError;
};

inline constexpr int kFormatVersion = 1;

/// {"format":1,"genus":g,"marks":n,"triangles":[["b:p","i:k:s",...],...]};
/// a one-holed surface is assumed.
nlohmann::json to_json(const Triangulation& t);
/// Throws FormatError on shape problems and SurfaceError (with the
/// validation report) when the gluing is not a valid triangulation.
Triangulation triangulation_from_json(const nlohmann::json& doc);

std::string dump(const Triangulation& t);
Triangulation parse_triangulation(const std::string& text);
Triangulation read_triangulation(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// {"format":1,"genus","marks","mirror_small","partial","nodes":[hex...],"edges":[[u,v],...]}
nlohmann::json to_json(const FlipGraphStore& store);
std::string to_dot(const FlipGraphStore& store);

nlohmann::json to_json(const TransformReport& report);

}  // namespace mflip::io
