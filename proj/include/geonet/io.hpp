#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "geonet/error.hpp"
#include "geonet/irreducible.hpp"
#include "geonet/net.hpp"
#include "geonet/solver.hpp"

namespace geonet {

inline constexpr int kFormatVersion = 1;

namespace detail {

inline std::string format_real(double v, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

/// "%.17g" prints negative zero as "-0", which JSON readers take as the
/// integer 0; keep the sign by writing it as a real.
inline std::string coordinate(double v) { return v == 0.0 && std::signbit(v) ? "-0.0" : format_real(v); }

inline const char* kind_text(VertexKind k) {
    return k == VertexKind::Balanced ? "balanced" : "unbalanced";
}

}  // namespace detail

/// Net document text. Coordinates carry 17 significant digits so that a
/// round trip restores every double exactly.
inline std::string to_document(const Net& net) {
    std::string out = "{\n  \"format_version\": " + std::to_string(kFormatVersion) + ",\n";
    out += "  \"vertices\": [";
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        const Vertex& vx = net.vertex(v);
        out += v ? ",\n    " : "\n    ";
        out += "{\"id\": " + detail::quote(vx.id) + ", \"x\": " + detail::coordinate(vx.pos.x) +
               ", \"y\": " + detail::coordinate(vx.pos.y) + ", \"kind\": \"" +
               detail::kind_text(vx.kind) + "\"";
        if (vx.label) out += ", \"label\": " + detail::quote(*vx.label);
        out += "}";
    }
    out += net.vertex_count() ? "\n  ],\n" : "],\n";
    out += "  \"edges\": [";
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edges()[e];
        out += e ? ",\n    " : "\n    ";
        out += "[" + detail::quote(net.vertex(ed.u).id) + ", " + detail::quote(net.vertex(ed.v).id) + "]";
    }
    out += net.edge_count() ? "\n  ]\n}\n" : "]\n}\n";
    return out;
}

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw Error(ErrorCode::ParseError, where + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

inline double real_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& j = field(obj, key, where);
    if (!j.is_number()) throw Error(ErrorCode::ParseError, where + "." + key + ": expected a number");
    return j.get<double>();
}

inline std::string text_field(const nlohmann::json& obj, const char* key, const std::string& where) {
    const auto& j = field(obj, key, where);
    if (!j.is_string()) throw Error(ErrorCode::ParseError, where + "." + key + ": expected a string");
    return j.get<std::string>();
}

}  // namespace detail

/// Parses a net document and re-checks every Net invariant.
inline Net parse_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(detail::line_of(text, e.byte)) +
                                               ": " + e.what());
    }
    const auto& version = detail::field(doc, "format_version", "document");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
        throw Error(ErrorCode::ParseError, "document.format_version: unsupported version " + version.dump());
    }
    const auto& vertices = detail::field(doc, "vertices", "document");
    const auto& edges = detail::field(doc, "edges", "document");
    if (!vertices.is_array()) throw Error(ErrorCode::ParseError, "document.vertices: expected an array");
    if (!edges.is_array()) throw Error(ErrorCode::ParseError, "document.edges: expected an array");

    Net net;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        const auto& jv = vertices[i];
        Vertex v;
        v.id = detail::text_field(jv, "id", where);
        v.pos = {detail::real_field(jv, "x", where), detail::real_field(jv, "y", where)};
        const std::string kind = detail::text_field(jv, "kind", where);
        if (kind == "balanced") {
            v.kind = VertexKind::Balanced;
        } else if (kind == "unbalanced") {
            v.kind = VertexKind::Unbalanced;
        } else {
            throw Error(ErrorCode::ParseError, where + ".kind: unknown kind '" + kind + "'");
        }
        if (jv.contains("label")) v.label = detail::text_field(jv, "label", where);
        net.add_vertex(std::move(v));
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const auto& je = edges[i];
        if (!je.is_array() || je.size() != 2 || !je[0].is_string() || !je[1].is_string()) {
            throw Error(ErrorCode::ParseError, where + ": expected a pair of vertex ids");
        }
        const auto a = je[0].get<std::string>();
        const auto b = je[1].get<std::string>();
        for (const auto& id : {a, b}) {
            if (!net.find(id)) {
                throw Error(ErrorCode::InvariantViolation, where + ": unknown vertex '" + id + "'");
            }
        }
        net.add_edge(a, b);
    }
    return net;
}

inline void save(const Net& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
    out << to_document(net);
}

inline Net load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

struct SvgOptions {
    double width = 800.0;
    bool show_labels = false;
    std::optional<EdgeSubset> highlight;
};

/// Deterministic SVG drawing, y axis pointing up, fitted with a 5% margin.
inline std::string render_svg(const Net& net, const SvgOptions& opt = {}) {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        const Point p = net.vertex(v).pos;
        if (v == 0) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
        }
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double span = std::max(max_x - min_x, max_y - min_y);
    if (span <= 0) span = 1;
    const double margin = 0.05 * span;
    const double scale = opt.width / (max_x - min_x + 2 * margin);
    const double height = (max_y - min_y + 2 * margin) * scale;
    auto sx = [&](double x) { return detail::format_real((x - min_x + margin) * scale, "%.3f"); };
    auto sy = [&](double y) { return detail::format_real((max_y + margin - y) * scale, "%.3f"); };

    std::vector<bool> hot(net.edge_count(), false);
    if (opt.highlight) {
        for (std::size_t e : *opt.highlight) hot.at(e) = true;
    }

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           detail::format_real(opt.width, "%.3f") + "\" height=\"" +
           detail::format_real(height, "%.3f") + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Segment s = net.segment(e);
        out += "<line x1=\"" + sx(s.p.x) + "\" y1=\"" + sy(s.p.y) + "\" x2=\"" + sx(s.q.x) +
               "\" y2=\"" + sy(s.q.y) + "\" " +
               (hot[e] ? "stroke=\"#d62728\" stroke-width=\"3\"" : "stroke=\"black\" stroke-width=\"1\"") +
               "/>\n";
    }
    for (const auto& v : net.vertices()) {
        const bool fixed = !v.balanced();
        out += "<circle cx=\"" + sx(v.pos.x) + "\" cy=\"" + sy(v.pos.y) + "\" r=\"" +
               (fixed ? "5" : "2.5") + "\" fill=\"" + (fixed ? "black" : "#555555") + "\"/>\n";
    }
    if (opt.show_labels) {
        for (const auto& v : net.vertices()) {
            std::string text = v.label.value_or(v.id);
            std::string escaped;
            for (char ch : text) {
                if (ch == '<') escaped += "&lt;";
                else if (ch == '>') escaped += "&gt;";
                else if (ch == '&') escaped += "&amp;";
                else escaped += ch;
            }
            out += "<text x=\"" + sx(v.pos.x) + "\" y=\"" + sy(v.pos.y) +
                   "\" dx=\"6\" dy=\"-6\" font-family=\"sans-serif\" font-size=\"12\">" + escaped +
                   "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

inline nlohmann::json to_json(const Net& net, const VerifyReport& r) {
    nlohmann::json j;
    j["passed"] = r.passed;
    j["tol"] = r.tol;
    j["max_residual"] = r.max_residual;
    j["connected"] = r.connected;
    j["residuals"] = nlohmann::json::array();
    for (const auto& [id, res] : r.residuals) j["residuals"].push_back({{"id", id}, {"residual", res}});
    j["degree_violations"] = nlohmann::json::array();
    for (const auto& [id, deg] : r.degree_violations) {
        j["degree_violations"].push_back({{"id", id}, {"degree", deg}});
    }
    j["overlay_findings"] = nlohmann::json::array();
    for (const auto& f : r.overlay_findings) {
        j["overlay_findings"].push_back(
            {{"edges", {net.edge_name(f.first), net.edge_name(f.second)}}, {"kind", kind_name(f.kind)}});
    }
    j["unplanarized_crossings"] = nlohmann::json::array();
    for (const auto& f : r.unplanarized_crossings) {
        j["unplanarized_crossings"].push_back(
            {{"edges", {net.edge_name(f.first), net.edge_name(f.second)}}, {"at", {f.at.x, f.at.y}}});
    }
    j["unbalanced_to_unbalanced_edges"] = nlohmann::json::array();
    for (std::size_t e : r.unbalanced_to_unbalanced_edges) {
        j["unbalanced_to_unbalanced_edges"].push_back(net.edge_name(e));
    }
    return j;
}

inline nlohmann::json to_json(const Net& net, const SubnetCertificate& cert) {
    nlohmann::json j;
    auto names = [&](const EdgeSubset& s) {
        nlohmann::json a = nlohmann::json::array();
        for (std::size_t e : s) a.push_back(net.edge_name(e));
        return a;
    };
    if (const auto* ir = std::get_if<Irreducible>(&cert)) {
        j["result"] = "irreducible";
        j["nodes"] = ir->nodes;
        j["trace"] = nlohmann::json::array();
        for (const auto& step : ir->trace) {
            j["trace"].push_back({{"vertex", step.vertex}, {"forces", names(step.forced_edges)}});
        }
        j["warnings"] = ir->warnings;
    } else {
        const auto& rd = std::get<Reducible>(cert);
        j["result"] = "reducible";
        j["nodes"] = rd.nodes;
        j["witness"] = names(rd.witness);
        j["warnings"] = rd.warnings;
    }
    return j;
}

}  // namespace geonet
