#include "mflip/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mflip::io {

namespace {

std::string side_text(Side s) {
    if (s.is_boundary()) return "b:" + std::to_string(s.label());
    return "i:" + std::to_string(s.arc()) + ":" + std::to_string(s.bit());
}

int number(std::string_view text, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw FormatError("bad side '" + std::string(whole) + "'");
    }
    return v;
}

Side parse_side(const std::string& text) {
    std::string_view sv(text);
    if (sv.starts_with("b:")) {
        int p = number(sv.substr(2), sv);
        if (p < 1) throw FormatError("bad side '" + text + "'");
        return Side::boundary(p);
    }
    if (sv.starts_with("i:")) {
        auto rest = sv.substr(2);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw FormatError("bad side '" + text + "'");
        int k = number(rest.substr(0, colon), sv), s = number(rest.substr(colon + 1), sv);
        if (k < 0 || (s != 0 && s != 1)) throw FormatError("bad side '" + text + "'");
        return Side::interior(k, s);
    }
    throw FormatError("bad side '" + text + "'");
}

}  // namespace

nlohmann::json to_json(const Triangulation& t) {
    nlohmann::json tris = nlohmann::json::array();
    for (const auto& tri : t.triangles()) {
        nlohmann::json row = nlohmann::json::array();
        for (auto s : tri) row.push_back(side_text(s));
        tris.push_back(std::move(row));
    }
    return {{"format", kFormatVersion}, {"genus", t.genus()}, {"marks", t.marks()}, {"triangles", std::move(tris)}};
}

Triangulation triangulation_from_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw FormatError("triangulation document must be an object");
        if (doc.contains("format") && doc.at("format").get<int>() != kFormatVersion) {
            throw FormatError("unsupported format version");
        }
        SurfaceClass cls{doc.at("genus").get<int>(), doc.at("marks").get<int>(), 1};
        std::vector<Triangle> tris;
        for (const auto& row : doc.at("triangles")) {
            if (!row.is_array() || row.size() != 3) throw FormatError("a triangle has three sides");
            Triangle tri;
            for (std::size_t k = 0; k < 3; ++k) tri[k] = parse_side(row[k].get<std::string>());
            tris.push_back(tri);
        }
        return Triangulation::make(cls, std::move(tris));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed triangulation: ") + e.what());
    }
}

std::string dump(const Triangulation& t) { return to_json(t).dump() + "\n"; }

Triangulation parse_triangulation(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("not JSON: ") + e.what());
    }
    return triangulation_from_json(doc);
}

Triangulation read_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_triangulation(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

nlohmann::json to_json(const FlipGraphStore& store) {
    nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
    for (int v = 0; v < store.node_count(); ++v) {
        nodes.push_back(to_hex(std::string(store.code(v))));
        for (auto w : store.adjacent(v)) {
            if (static_cast<int>(w) > v) edges.push_back({v, w});
        }
    }
    return {{"format", kFormatVersion},
            {"genus", store.surface().genus},
            {"marks", store.surface().marks},
            {"mirror_small", store.canon().mirror_small},
            {"partial", store.partial()},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

std::string to_dot(const FlipGraphStore& store) {
    std::ostringstream out;
    out << "graph mf {\n";
    for (int v = 0; v < store.node_count(); ++v) out << "  n" << v << ";\n";
    for (int v = 0; v < store.node_count(); ++v) {
        for (auto w : store.adjacent(v)) {
            if (static_cast<int>(w) > v) out << "  n" << v << " -- n" << w << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

nlohmann::json to_json(const TransformReport& report) {
    nlohmann::json doc{{"format", kFormatVersion},
                       {"genus", report.path.start.genus()},
                       {"marks", report.path.start.marks()},
                       {"a0", report.a0},
                       {"length", report.path.length()},
                       {"bound", report.bound},
                       {"within_bound", report.within_bound()},
                       {"phases", report.phase_lengths},
                       {"path", report.path.moves}};
    if (report.path.start.genus() >= 2) doc["d_g_used"] = report.d_g_used;
    if (report.bound_conditional) doc["bound_conditional"] = true;
    return doc;
}

}  // namespace mflip::io
