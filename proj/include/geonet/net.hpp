#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "geonet/error.hpp"
#include "geonet/geom.hpp"

namespace geonet {

/// Default tolerance for balance residuals.
inline constexpr double kBalanceTol = 1e-9;

using VertexId = std::string;

enum class VertexKind { Unbalanced, Balanced };

struct Vertex {
    VertexId id;
    Point pos;
    VertexKind kind = VertexKind::Balanced;
    std::optional<std::string> label;

    bool balanced() const { return kind == VertexKind::Balanced; }
    bool operator==(const Vertex&) const = default;
};

/// Undirected edge between two vertex indices of the owning Net.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    bool operator==(const Edge&) const = default;
};

/// Embedded straight-line graph whose vertices are either pinned (unbalanced)
/// or free (balanced). Vertex and edge order is insertion order and is kept
/// stable by every operation in the library.
class Net {
public:
    std::size_t add_vertex(Vertex v) {
        if (index_.contains(v.id)) {
            throw Error(ErrorCode::InvariantViolation, "duplicate vertex id '" + v.id + "'");
        }
        if (!is_finite(v.pos)) {
            throw Error(ErrorCode::InvariantViolation, "non-finite position for '" + v.id + "'");
        }
        for (const auto& w : vertices_) {
            if (coincide(w.pos, v.pos)) {
                throw Error(ErrorCode::InvariantViolation,
                            "vertices '" + w.id + "' and '" + v.id + "' coincide");
            }
        }
        index_.emplace(v.id, vertices_.size());
        vertices_.push_back(std::move(v));
        incident_.emplace_back();
        return vertices_.size() - 1;
    }

    std::size_t add_vertex(VertexId id, Point pos, VertexKind kind,
                           std::optional<std::string> label = std::nullopt) {
        return add_vertex(Vertex{std::move(id), pos, kind, std::move(label)});
    }

    std::size_t add_edge(std::size_t u, std::size_t v) {
        if (u >= vertices_.size() || v >= vertices_.size()) {
            throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
        }
        if (u == v) {
            throw Error(ErrorCode::InvariantViolation, "self-loop at '" + vertices_[u].id + "'");
        }
        if (find_edge(u, v)) {
            throw Error(ErrorCode::InvariantViolation,
                        "duplicate edge " + vertices_[u].id + "-" + vertices_[v].id);
        }
        edges_.push_back({u, v});
        incident_[u].push_back(edges_.size() - 1);
        incident_[v].push_back(edges_.size() - 1);
        return edges_.size() - 1;
    }

    std::size_t add_edge(const VertexId& a, const VertexId& b) {
        return add_edge(index_of(a), index_of(b));
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    const Vertex& vertex(const VertexId& id) const { return vertices_[index_of(id)]; }

    std::optional<std::size_t> find(const VertexId& id) const {
        if (auto it = index_.find(id); it != index_.end()) return it->second;
        return std::nullopt;
    }

    std::size_t index_of(const VertexId& id) const {
        if (auto i = find(id)) return *i;
        throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + id + "'");
    }

    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_.at(v); }
    std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }

    std::size_t opposite(std::size_t e, std::size_t v) const {
        const Edge& ed = edges_.at(e);
        return ed.u == v ? ed.v : ed.u;
    }

    std::optional<std::size_t> find_edge(std::size_t u, std::size_t v) const {
        for (std::size_t e : incident_.at(u)) {
            if (opposite(e, u) == v) return e;
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find_edge(const VertexId& a, const VertexId& b) const {
        auto u = find(a);
        auto v = find(b);
        if (!u || !v) return std::nullopt;
        return find_edge(*u, *v);
    }

    Segment segment(std::size_t e) const {
        const Edge& ed = edges_.at(e);
        return {vertices_[ed.u].pos, vertices_[ed.v].pos};
    }

    /// Ids of the endpoints, smaller id first.
    std::pair<VertexId, VertexId> edge_key(std::size_t e) const {
        const Edge& ed = edges_.at(e);
        const auto& a = vertices_[ed.u].id;
        const auto& b = vertices_[ed.v].id;
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }

    std::string edge_name(std::size_t e) const {
        const Edge& ed = edges_.at(e);
        return vertices_[ed.u].id + "-" + vertices_[ed.v].id;
    }

    Net with_vertex_moved(const VertexId& id, Point pos) const {
        index_of(id);
        Net out;
        for (const auto& v : vertices_) {
            Vertex w = v;
            if (w.id == id) w.pos = pos;
            out.add_vertex(std::move(w));
        }
        for (const auto& e : edges_) out.add_edge(e.u, e.v);
        return out;
    }

    Net without_edge(std::size_t e) const {
        Net out;
        for (const auto& v : vertices_) out.add_vertex(v);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (i != e) out.add_edge(edges_[i].u, edges_[i].v);
        }
        return out;
    }

    /// Copy with ids replaced according to `mapping`; labels follow the new ids.
    Net renamed(const std::map<VertexId, VertexId>& mapping) const {
        Net out;
        for (const auto& v : vertices_) {
            Vertex w = v;
            if (auto it = mapping.find(v.id); it != mapping.end()) {
                w.id = it->second;
                w.label = it->second;
            }
            out.add_vertex(std::move(w));
        }
        for (const auto& e : edges_) out.add_edge(e.u, e.v);
        return out;
    }

    bool operator==(const Net& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::unordered_map<VertexId, std::size_t> index_;
};

inline Point balance_residual(const Net& net, std::size_t v) {
    if (net.degree(v) == 0) {
        throw Error(ErrorCode::IsolatedVertex, "vertex '" + net.vertex(v).id + "' has no edges");
    }
    Point sum;
    const Point at = net.vertex(v).pos;
    for (std::size_t e : net.incident(v)) {
        sum += unit_vector(at, net.vertex(net.opposite(e, v)).pos).as_point();
    }
    return sum;
}

/// Sum of unit vectors from the vertex along all its edges.
inline Point balance_residual(const Net& net, const VertexId& id) {
    return balance_residual(net, net.index_of(id));
}

inline bool is_connected(const Net& net) {
    const std::size_t n = net.vertex_count();
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> todo;
    todo.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        for (std::size_t e : net.incident(v)) {
            const std::size_t w = net.opposite(e, v);
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                todo.push(w);
            }
        }
    }
    return reached == n;
}

struct OverlayFinding {
    std::size_t first;
    std::size_t second;
    IntersectionKind kind;
};

struct CrossingFinding {
    std::size_t first;
    std::size_t second;
    Point at;
};

struct VerifyReport {
    double tol = kBalanceTol;
    /// Residual magnitude per balanced vertex, in vertex order.
    std::vector<std::pair<VertexId, double>> residuals;
    double max_residual = 0.0;
    std::vector<std::pair<VertexId, std::size_t>> degree_violations;
    std::vector<OverlayFinding> overlay_findings;
    std::vector<CrossingFinding> unplanarized_crossings;
    std::vector<std::size_t> unbalanced_to_unbalanced_edges;
    bool connected = false;
    bool passed = false;

    double residual_of(const VertexId& id) const {
        for (const auto& [vid, r] : residuals) {
            if (vid == id) return r;
        }
        throw Error(ErrorCode::UnknownVertex, "no residual recorded for '" + id + "'");
    }
};

/// Checks that `net` is a geodesic net: balanced vertices balanced within
/// `tol` and of degree at least 3, edges meet only at shared endpoints, no
/// edge joins two unbalanced vertices, and the graph is connected.
inline VerifyReport verify(const Net& net, double tol = kBalanceTol) {
    VerifyReport r;
    r.tol = tol;
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        const Vertex& vx = net.vertex(v);
        if (!vx.balanced()) continue;
        const std::size_t deg = net.degree(v);
        if (deg < 3) r.degree_violations.emplace_back(vx.id, deg);
        if (deg == 0) continue;
        const double mag = norm(balance_residual(net, v));
        r.residuals.emplace_back(vx.id, mag);
        r.max_residual = std::max(r.max_residual, mag);
    }

    const auto& edges = net.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const bool share = edges[i].u == edges[j].u || edges[i].u == edges[j].v ||
                               edges[i].v == edges[j].u || edges[i].v == edges[j].v;
            const IntersectionKind kind = intersect(net.segment(i), net.segment(j));
            if (std::holds_alternative<intersection::CollinearOverlap>(kind)) {
                r.overlay_findings.push_back({i, j, kind});
            } else if (share || std::holds_alternative<intersection::Disjoint>(kind)) {
                continue;
            } else if (auto* pc = std::get_if<intersection::ProperCrossing>(&kind)) {
                r.unplanarized_crossings.push_back({i, j, pc->at});
            } else if (auto* ei = std::get_if<intersection::EndpointOnInterior>(&kind)) {
                r.unplanarized_crossings.push_back({i, j, ei->at});
            } else if (auto* se = std::get_if<intersection::AtSharedEndpoint>(&kind)) {
                r.unplanarized_crossings.push_back({i, j, se->at});
            }
        }
        if (!net.vertex(edges[i].u).balanced() && !net.vertex(edges[i].v).balanced()) {
            r.unbalanced_to_unbalanced_edges.push_back(i);
        }
    }

    r.connected = is_connected(net);
    r.passed = r.max_residual <= tol && r.degree_violations.empty() &&
               r.overlay_findings.empty() && r.unplanarized_crossings.empty() &&
               r.unbalanced_to_unbalanced_edges.empty() && r.connected;
    return r;
}

/// Edge indices sorted by their (smaller id, larger id) key.
inline std::vector<std::size_t> canonical_edge_order(const Net& net) {
    std::vector<std::size_t> order(net.edge_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return net.edge_key(a) < net.edge_key(b);
    });
    return order;
}

namespace detail {

inline VertexId mint_id(const Net& net, std::size_t& counter) {
    for (;;) {
        VertexId id = "x" + std::to_string(counter++);
        if (!net.find(id)) return id;
    }
}

inline double param_on(const Segment& s, const Point& p) {
    const Point d = s.direction();
    return dot(p - s.p, d) / dot(d, d);
}

}  // namespace detail

/// Turns every interior contact between edges into a balanced vertex and
/// splits the edges through it. Crossing points closer than `eps` share one
/// vertex. New vertices are named x1, x2, ... (skipping taken ids) in the
/// canonical order of the edge pairs that produce them.
inline Net planarize(const Net& net, double eps = kDegeneracyEps) {
    Net out;
    for (const auto& v : net.vertices()) out.add_vertex(v);

    struct Split {
        double t;
        std::size_t vertex;
    };
    std::vector<std::vector<Split>> splits(net.edge_count());
    std::size_t counter = 1;

    auto vertex_at = [&](const Point& p) -> std::size_t {
        for (std::size_t i = 0; i < out.vertex_count(); ++i) {
            if (distance(out.vertex(i).pos, p) < eps) return i;
        }
        VertexId id = detail::mint_id(out, counter);
        return out.add_vertex(id, p, VertexKind::Balanced, id);
    };
    auto split = [&](std::size_t e, std::size_t v) {
        const Edge& ed = net.edges()[e];
        if (v == ed.u || v == ed.v) return;
        splits[e].push_back({detail::param_on(net.segment(e), out.vertex(v).pos), v});
    };

    const auto order = canonical_edge_order(net);
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const std::size_t i = order[a];
            const std::size_t j = order[b];
            const IntersectionKind kind = intersect(net.segment(i), net.segment(j));
            if (std::holds_alternative<intersection::CollinearOverlap>(kind)) {
                throw Error(ErrorCode::OverlayEdges,
                            "edges " + net.edge_name(i) + " and " + net.edge_name(j) + " overlap");
            }
            if (auto* pc = std::get_if<intersection::ProperCrossing>(&kind)) {
                const std::size_t v = vertex_at(pc->at);
                split(i, v);
                split(j, v);
            } else if (auto* ei = std::get_if<intersection::EndpointOnInterior>(&kind)) {
                const std::size_t v = vertex_at(ei->at);
                split(i, v);
                split(j, v);
            }
        }
    }

    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        auto& pts = splits[e];
        std::sort(pts.begin(), pts.end(), [](const Split& x, const Split& y) { return x.t < y.t; });
        std::vector<std::size_t> chain{net.edges()[e].u};
        for (const auto& s : pts) {
            if (s.vertex != chain.back()) chain.push_back(s.vertex);
        }
        if (net.edges()[e].v != chain.back()) chain.push_back(net.edges()[e].v);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            if (!out.find_edge(chain[k], chain[k + 1])) out.add_edge(chain[k], chain[k + 1]);
        }
    }
    return out;
}

/// True iff rotating the net by 90 degrees about the origin maps it onto
/// itself: positions match within `tol`, kinds and adjacency are preserved.
inline bool is_symmetric_under_quarter_turn(const Net& net, double tol = kBalanceTol) {
    const std::size_t n = net.vertex_count();
    std::vector<std::size_t> image(n);
    std::vector<bool> taken(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        const Point target = rotate(net.vertex(v).pos, 1);
        bool found = false;
        for (std::size_t w = 0; w < n; ++w) {
            if (!taken[w] && net.vertex(w).kind == net.vertex(v).kind &&
                distance(net.vertex(w).pos, target) <= tol) {
                image[v] = w;
                taken[w] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    for (const auto& e : net.edges()) {
        if (!net.find_edge(image[e.u], image[e.v])) return false;
    }
    return true;
}

/// Union of nets: vertices at the same position (within `eps`) are identified
/// and must agree on kind; identical edges are kept once. No planarization.
inline Net merge_nets(std::span<const Net> parts, double eps = kDegeneracyEps) {
    Net out;
    for (const Net& part : parts) {
        std::vector<std::size_t> map(part.vertex_count());
        for (std::size_t v = 0; v < part.vertex_count(); ++v) {
            const Vertex& vx = part.vertex(v);
            std::optional<std::size_t> hit;
            for (std::size_t w = 0; w < out.vertex_count(); ++w) {
                if (distance(out.vertex(w).pos, vx.pos) < eps) {
                    hit = w;
                    break;
                }
            }
            if (hit) {
                if (out.vertex(*hit).kind != vx.kind) {
                    throw Error(ErrorCode::InvariantViolation,
                                "merged vertex '" + vx.id + "' changes kind");
                }
                map[v] = *hit;
            } else {
                map[v] = out.add_vertex(vx);
            }
        }
        for (const auto& e : part.edges()) {
            if (!out.find_edge(map[e.u], map[e.v])) out.add_edge(map[e.u], map[e.v]);
        }
    }
    return out;
}

/// The net spanned by a subset of edges; vertices touching none are dropped.
inline Net subnet(const Net& net, std::span<const std::size_t> edge_subset) {
    std::vector<bool> used(net.edge_count(), false);
    for (std::size_t e : edge_subset) used.at(e) = true;
    std::vector<bool> keep(net.vertex_count(), false);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        if (used[e]) keep[net.edges()[e].u] = keep[net.edges()[e].v] = true;
    }
    Net out;
    std::vector<std::size_t> map(net.vertex_count());
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        if (keep[v]) map[v] = out.add_vertex(net.vertex(v));
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        if (used[e]) out.add_edge(map[net.edges()[e].u], map[net.edges()[e].v]);
    }
    return out;
}

/// Removes balanced degree-2 vertices whose two edges continue each other in
/// a straight line, joining their neighbours directly.
inline Net suppress_pass_through(const Net& net, double tol = kBalanceTol) {
    Net cur = net;
    for (;;) {
        std::optional<std::size_t> victim;
        for (std::size_t v = 0; v < cur.vertex_count() && !victim; ++v) {
            if (!cur.vertex(v).balanced() || cur.degree(v) != 2) continue;
            if (norm(balance_residual(cur, v)) > tol) continue;
            const std::size_t a = cur.opposite(cur.incident(v)[0], v);
            const std::size_t b = cur.opposite(cur.incident(v)[1], v);
            if (!cur.find_edge(a, b)) victim = v;
        }
        if (!victim) return cur;
        const std::size_t v = *victim;
        const std::size_t a = cur.opposite(cur.incident(v)[0], v);
        const std::size_t b = cur.opposite(cur.incident(v)[1], v);
        Net next;
        std::vector<std::size_t> map(cur.vertex_count());
        for (std::size_t w = 0; w < cur.vertex_count(); ++w) {
            if (w != v) map[w] = next.add_vertex(cur.vertex(w));
        }
        for (const auto& e : cur.edges()) {
            if (e.u != v && e.v != v) next.add_edge(map[e.u], map[e.v]);
        }
        next.add_edge(map[a], map[b]);
        cur = std::move(next);
    }
}

/// Edges of `net` lying on the segment `s` (both endpoints within `eps`).
inline std::vector<std::size_t> edges_along(const Net& net, const Segment& s,
                                            double eps = 1e-7) {
    auto on = [&](const Point& p) {
        const double t = detail::param_on(s, p);
        return t >= -eps && t <= 1.0 + eps && distance(s.at(t), p) < eps;
    };
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        const Segment seg = net.segment(e);
        if (on(seg.p) && on(seg.q)) out.push_back(e);
    }
    return out;
}

}  // namespace geonet
