#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geonet/geonet.hpp"

namespace oracle {

using geonet::Net;
using geonet::Point;

/// Weiszfeld fixed-point iteration for the geometric median of three points.
inline Point weiszfeld(const geonet::Triangle& t, int iters = 200000) {
    const Point pts[3] = {t.a, t.b, t.c};
    Point x = (t.a + t.b + t.c) / 3.0;
    for (int it = 0; it < iters; ++it) {
        Point num;
        double den = 0.0;
        for (const auto& p : pts) {
            const double d = geonet::distance(x, p);
            if (d < 1e-300) return x;
            num += p / d;
            den += 1.0 / d;
        }
        const Point next = num / den;
        if (geonet::distance(next, x) < 1e-16) return next;
        x = next;
    }
    return x;
}

/// Intersection kind by long double arithmetic. Only meant for inputs far
/// from the tolerance bands, where it must agree with the library.
inline std::string classify(const geonet::Segment& s1, const geonet::Segment& s2) {
    using L = long double;
    const L ax = s1.p.x, ay = s1.p.y, bx = s1.q.x, by = s1.q.y;
    const L cx = s2.p.x, cy = s2.p.y, dx = s2.q.x, dy = s2.q.y;
    auto orient = [](L px, L py, L qx, L qy, L rx, L ry) {
        return (qx - px) * (ry - py) - (qy - py) * (rx - px);
    };
    const L o1 = orient(ax, ay, bx, by, cx, cy);
    const L o2 = orient(ax, ay, bx, by, dx, dy);
    const L o3 = orient(cx, cy, dx, dy, ax, ay);
    const L o4 = orient(cx, cy, dx, dy, bx, by);
    auto sgn = [](L v) { return (v > 0) - (v < 0); };
    const bool shared = (ax == cx && ay == cy) || (ax == dx && ay == dy) || (bx == cx && by == cy) ||
                        (bx == dx && by == dy);
    if (shared) return "AtSharedEndpoint";
    if (sgn(o1) * sgn(o2) < 0 && sgn(o3) * sgn(o4) < 0) return "ProperCrossing";
    return "Disjoint";
}

/// Central differences of total length, one entry per balanced vertex.
inline std::map<std::string, Point> fd_gradient(const Net& net, double h = 1e-6) {
    std::map<std::string, Point> out;
    for (const auto& v : net.vertices()) {
        if (!v.balanced()) continue;
        auto len_at = [&](Point p) { return geonet::total_length(net.with_vertex_moved(v.id, p)); };
        const Point ex{h, 0.0}, ey{0.0, h};
        out[v.id] = {(len_at(v.pos + ex) - len_at(v.pos - ex)) / (2 * h),
                     (len_at(v.pos + ey) - len_at(v.pos - ey)) / (2 * h)};
    }
    return out;
}

/// Balanced subsets at one vertex by summing raw direction vectors, as
/// sorted lists of incident edge indices.
inline std::vector<std::vector<std::size_t>> balanced_subsets(const Net& net, const std::string& id,
                                                              double tol = geonet::kBalanceTol) {
    const std::size_t v = net.index_of(id);
    std::vector<std::size_t> inc = net.incident(v);
    std::sort(inc.begin(), inc.end());
    std::vector<std::vector<std::size_t>> out;
    const std::size_t n = inc.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double sx = 0.0, sy = 0.0;
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            const Point d = net.vertex(net.opposite(inc[i], v)).pos - net.vertex(v).pos;
            const double len = std::sqrt(d.x * d.x + d.y * d.y);
            sx += d.x / len;
            sy += d.y / len;
            chosen.push_back(inc[i]);
        }
        if (std::sqrt(sx * sx + sy * sy) <= tol) out.push_back(chosen);
    }
    return out;
}

/// A subset is a subnet when the materialized net, with straight degree-2
/// vertices suppressed, verifies as a geodesic net on its own.
inline bool materialized_is_geodesic(const Net& net, const std::vector<std::size_t>& edges) {
    if (edges.empty()) return false;
    const Net part = geonet::suppress_pass_through(geonet::subnet(net, edges));
    const auto r = geonet::verify(part);
    bool residuals_ok = r.max_residual <= r.tol && r.degree_violations.empty();
    return residuals_ok && r.unbalanced_to_unbalanced_edges.empty();
}

/// Every proper non-empty subset that passes `materialized_is_geodesic`.
inline std::vector<std::vector<std::size_t>> enumerate_subnets(const Net& net) {
    const std::size_t m = net.edge_count();
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> edges;
        for (std::size_t e = 0; e < m; ++e) {
            if (mask >> e & 1) edges.push_back(e);
        }
        if (materialized_is_geodesic(net, edges)) out.push_back(edges);
    }
    return out;
}

/// Random connected net on `n` vertices with edges at least `min_len` long
/// and no two vertices closer than `min_len`.
inline Net random_net(std::mt19937_64& rng, std::size_t n = 10, double min_len = 0.1) {
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::bernoulli_distribution balanced(0.6);
    Net net;
    while (net.vertex_count() < n) {
        const Point p{coord(rng), coord(rng)};
        bool far = true;
        for (const auto& v : net.vertices()) far = far && geonet::distance(v.pos, p) > min_len;
        if (!far) continue;
        net.add_vertex("v" + std::to_string(net.vertex_count()), p,
                       balanced(rng) ? geonet::VertexKind::Balanced : geonet::VertexKind::Unbalanced);
    }
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, v - 1);
        net.add_edge(v, pick(rng));
    }
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    for (int k = 0; k < static_cast<int>(n); ++k) {
        const std::size_t a = any(rng), b = any(rng);
        if (a != b && !net.find_edge(a, b)) net.add_edge(a, b);
    }
    return net;
}

}  // namespace oracle
