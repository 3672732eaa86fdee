#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "geonet/error.hpp"
#include "geonet/geom.hpp"
#include "geonet/net.hpp"

namespace geonet {

/// Angles and lengths of the 16-balanced-vertex net, derived at run time from
/// cos 75 and sin 75.
struct PaperConstants {
    double cos75;
    double sin75;
    /// cos(alpha) = 1/2 - cos 75; alpha is the angle at a2 of the triangle a2 O c1.
    double cos_alpha;
    double alpha_deg;
    double tan_alpha;
    double octagon_a_angle = 150.0;
    double octagon_b_angle = 120.0;
    double a_radius = 1.0;
};

inline PaperConstants paper_constants() {
    PaperConstants k{};
    k.cos75 = std::cos(deg_to_rad(75.0));
    k.sin75 = std::sin(deg_to_rad(75.0));
    k.cos_alpha = 0.5 - k.cos75;
    k.alpha_deg = rad_to_deg(std::acos(k.cos_alpha));
    k.tan_alpha = std::sqrt(1.0 - k.cos_alpha * k.cos_alpha) / k.cos_alpha;
    return k;
}

struct Triangle {
    Point a;
    Point b;
    Point c;

    double area() const { return std::abs(cross(b - a, c - a)) / 2; }
};

namespace detail {

/// Apex of the equilateral triangle erected on `p`-`q`, on the side opposite `away`.
inline Point equilateral_apex(const Point& p, const Point& q, const Point& away) {
    const Point mid = (p + q) / 2;
    const Point d = q - p;
    Point n{-d.y, d.x};
    if (dot(n, away - mid) > 0) n = -n;
    return mid + n * (std::sqrt(3.0) / 2);
}

inline Point line_intersection(const Point& p, const Point& r, const Point& q, const Point& s) {
    const Point dr = r - p;
    const Point ds = s - q;
    const double t = cross(q - p, ds) / cross(dr, ds);
    return p + dr * t;
}

/// Newton steps on the total distance to the corners.
inline Point refine_fermat(const Triangle& t, Point x) {
    const std::array<Point, 3> corners{t.a, t.b, t.c};
    auto grad_norm = [&](const Point& y) {
        Point g;
        for (const auto& c : corners) g += (y - c) / distance(y, c);
        return norm(g);
    };
    double best = grad_norm(x);
    for (int it = 0; it < 8 && best > 1e-15; ++it) {
        Point g;
        double hxx = 0, hxy = 0, hyy = 0;
        for (const auto& c : corners) {
            const double r = distance(x, c);
            const Point u = (x - c) / r;
            g += u;
            hxx += (1 - u.x * u.x) / r;
            hxy += -u.x * u.y / r;
            hyy += (1 - u.y * u.y) / r;
        }
        const double det = hxx * hyy - hxy * hxy;
        if (!(det > 0)) break;
        const Point step{(hyy * g.x - hxy * g.y) / det, (hxx * g.y - hxy * g.x) / det};
        const Point next = x - step;
        const double gn = grad_norm(next);
        if (!(gn < best)) break;
        x = next;
        best = gn;
    }
    return x;
}

}  // namespace detail

/// The point seeing every pair of corners at 120 degrees.
inline Point fermat_point(const Triangle& t) {
    if (!(t.area() > 1e-12)) {
        throw Error(ErrorCode::DegenerateTriangle, "fermat_point: degenerate triangle");
    }
    const double angles[3] = {angle_at(t.a, t.b, t.c), angle_at(t.b, t.a, t.c),
                              angle_at(t.c, t.a, t.b)};
    for (double ang : angles) {
        if (ang >= 120.0 - 1e-9) {
            throw Error(ErrorCode::WideAngleTriangle,
                        "fermat_point: interior angle " + std::to_string(ang) + " >= 120 degrees");
        }
    }
    const Point apex_a = detail::equilateral_apex(t.b, t.c, t.a);
    const Point apex_b = detail::equilateral_apex(t.c, t.a, t.b);
    return detail::refine_fermat(t, detail::line_intersection(t.a, apex_a, t.b, apex_b));
}

struct Octagon {
    std::array<Point, 4> a;
    std::array<Point, 4> b;
};

/// a_i on the unit axes, b_i on the diagonals so that the interior angles are
/// 150 degrees at a_i and 120 degrees at b_i.
inline Octagon build_octagon() {
    const PaperConstants k = paper_constants();
    // b1 = a2 + t (sin 75, -cos 75) meets the diagonal x = y.
    const double s = k.sin75 / (k.sin75 + k.cos75);
    Octagon o;
    for (int i = 0; i < 4; ++i) {
        o.a[i] = rotate(Point{1.0, 0.0}, i);
        o.b[i] = rotate(Point{s, s}, i);
    }
    return o;
}

/// The unbalanced vertices c_i = rotate((tan alpha, 0), i).
inline std::array<Point, 4> place_boundary() {
    const PaperConstants k = paper_constants();
    std::array<Point, 4> c;
    for (int i = 0; i < 4; ++i) c[i] = rotate(Point{k.tan_alpha, 0.0}, i);
    return c;
}

namespace detail {
inline std::string idx(const char* prefix, int i) { return prefix + std::to_string(i + 1); }
}  // namespace detail

/// The 16 vertices a_i, b_i, c_i, d_i and 32 edges before crossings are made
/// into vertices.
inline Net build_paper_prenet() {
    using detail::idx;
    const Octagon oct = build_octagon();
    const auto c = place_boundary();
    const Point d1 = fermat_point({oct.b[0], c[0], c[1]});

    Net net;
    for (int i = 0; i < 4; ++i) net.add_vertex(idx("a", i), oct.a[i], VertexKind::Balanced, idx("a", i));
    for (int i = 0; i < 4; ++i) net.add_vertex(idx("b", i), oct.b[i], VertexKind::Balanced, idx("b", i));
    for (int i = 0; i < 4; ++i) net.add_vertex(idx("c", i), c[i], VertexKind::Unbalanced, idx("c", i));
    for (int i = 0; i < 4; ++i) net.add_vertex(idx("d", i), rotate(d1, i), VertexKind::Balanced, idx("d", i));

    for (int i = 0; i < 4; ++i) {
        const int j = (i + 1) % 4;
        net.add_edge(idx("a", i), idx("b", i));
        net.add_edge(idx("a", j), idx("b", i));
    }
    for (int i = 0; i < 4; ++i) net.add_edge(idx("a", i), idx("c", i));
    for (int i = 0; i < 4; ++i) {
        const int j = (i + 1) % 4;
        net.add_edge(idx("a", i), idx("c", j));
        net.add_edge(idx("a", j), idx("c", i));
    }
    for (int i = 0; i < 4; ++i) {
        const int j = (i + 1) % 4;
        net.add_edge(idx("d", i), idx("b", i));
        net.add_edge(idx("d", i), idx("c", i));
        net.add_edge(idx("d", i), idx("c", j));
    }
    return net;
}

/// The planarized 20-vertex, 44-edge net; the crossing on b_i-d_i is named x_i.
inline Net build_paper_net() {
    const Net pre = build_paper_prenet();
    const Net planar = planarize(pre);
    std::map<VertexId, VertexId> names;
    for (std::size_t v = pre.vertex_count(); v < planar.vertex_count(); ++v) {
        const Point p = planar.vertex(v).pos;
        for (int i = 0; i < 4; ++i) {
            const Segment bd{pre.vertex(detail::idx("b", i)).pos, pre.vertex(detail::idx("d", i)).pos};
            const double t = detail::param_on(bd, p);
            if (t > 0 && t < 1 && distance(bd.at(t), p) < 1e-9) {
                names[planar.vertex(v).id] = detail::idx("x", i);
            }
        }
    }
    return planar.renamed(names);
}

/// Three unbalanced corners t1, t2, t3 joined to their Fermat point f.
inline Net build_fermat_tripod(const Triangle& t) {
    const Point f = fermat_point(t);
    Net net;
    net.add_vertex("t1", t.a, VertexKind::Unbalanced, "t1");
    net.add_vertex("t2", t.b, VertexKind::Unbalanced, "t2");
    net.add_vertex("t3", t.c, VertexKind::Unbalanced, "t3");
    net.add_vertex("f", f, VertexKind::Balanced, "f");
    net.add_edge("t1", "f");
    net.add_edge("t2", "f");
    net.add_edge("t3", "f");
    return net;
}

/// Balanced points (s1, s2) of the four-terminal tree in which s1 joins p1, p2
/// and s2 joins q1, q2, with every angle at s1 and s2 equal to 120 degrees.
inline std::pair<Point, Point> steiner_pair(const Point& p1, const Point& p2,
                                            const Point& q1, const Point& q2) {
    const Point apex_p = detail::equilateral_apex(p1, p2, (q1 + q2) / 2);
    const Point apex_q = detail::equilateral_apex(q1, q2, (p1 + p2) / 2);
    const Point s1 = fermat_point({p1, p2, apex_q});
    const Point s2 = fermat_point({q1, q2, apex_p});
    if (coincide(s1, s2)) {
        throw Error(ErrorCode::DegenerateTerminals, "steiner_pair: balanced points coincide");
    }
    auto residual = [](const Point& at, const Point& x, const Point& y, const Point& z) {
        return norm(unit_vector(at, x).as_point() + unit_vector(at, y).as_point() +
                    unit_vector(at, z).as_point());
    };
    if (residual(s1, p1, p2, s2) > kBalanceTol || residual(s2, q1, q2, s1) > kBalanceTol) {
        throw Error(ErrorCode::DegenerateTerminals,
                    "steiner_pair: terminals admit no two-point tree of this pairing");
    }
    return {s1, s2};
}

/// Unbalanced p1, p2, q1, q2 with balanced s1 (joined to p1, p2) and s2
/// (joined to q1, q2), s1-s2 joined.
inline Net build_double_tripod(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const auto [s1, s2] = steiner_pair(p1, p2, q1, q2);
    Net net;
    net.add_vertex("p1", p1, VertexKind::Unbalanced, "p1");
    net.add_vertex("p2", p2, VertexKind::Unbalanced, "p2");
    net.add_vertex("q1", q1, VertexKind::Unbalanced, "q1");
    net.add_vertex("q2", q2, VertexKind::Unbalanced, "q2");
    net.add_vertex("s1", s1, VertexKind::Balanced, "s1");
    net.add_vertex("s2", s2, VertexKind::Balanced, "s2");
    net.add_edge("p1", "s1");
    net.add_edge("p2", "s1");
    net.add_edge("s1", "s2");
    net.add_edge("q1", "s2");
    net.add_edge("q2", "s2");
    return net;
}

struct OverlayTerminals {
    Point a;
    Point c;
    Point x;
    Point z;
};

/// Terminals A, C on rays at 210 and 330 degrees from (0, 15) at distance 6;
/// X, Z at radius 3 on the 150 and 30 degree rays.
inline OverlayTerminals default_overlay_terminals() {
    const double r3 = std::sqrt(3.0);
    return {{-3 * r3, 12.0}, {3 * r3, 12.0}, {-1.5 * r3, 1.5}, {1.5 * r3, 1.5}};
}

/// The seven trees whose union is the overlay net, each with unplanarized
/// edges: tripods through B1 (A, C, X), B3 (A, C, Z), Y1 (X, Z, A),
/// Y3 (X, Z, C); the B2-Y2 tree pairing {A, C} with {X, Z}; the L-N tree
/// pairing {A, X} with {C, Z}; and the two segments A-Z and C-X.
inline std::vector<Net> overlay_trees(const OverlayTerminals& t) {
    const Point b1 = fermat_point({t.a, t.c, t.x});
    const Point b3 = fermat_point({t.a, t.c, t.z});
    const Point y1 = fermat_point({t.x, t.z, t.a});
    const Point y3 = fermat_point({t.x, t.z, t.c});
    const auto [b2, y2] = steiner_pair(t.a, t.c, t.x, t.z);
    const auto [l, n] = steiner_pair(t.a, t.x, t.c, t.z);

    auto terminals = [&](Net& net) {
        net.add_vertex("A", t.a, VertexKind::Unbalanced, "A");
        net.add_vertex("C", t.c, VertexKind::Unbalanced, "C");
        net.add_vertex("X", t.x, VertexKind::Unbalanced, "X");
        net.add_vertex("Z", t.z, VertexKind::Unbalanced, "Z");
    };
    auto tripod = [&](const char* center, Point at, const char* u, const char* v, const char* w) {
        Net net;
        terminals(net);
        net.add_vertex(center, at, VertexKind::Balanced, center);
        net.add_edge(u, center);
        net.add_edge(v, center);
        net.add_edge(w, center);
        return net;
    };
    auto pair_tree = [&](const char* s1, Point at1, const char* s2, Point at2, const char* p1,
                         const char* p2, const char* q1, const char* q2) {
        Net net;
        terminals(net);
        net.add_vertex(s1, at1, VertexKind::Balanced, s1);
        net.add_vertex(s2, at2, VertexKind::Balanced, s2);
        net.add_edge(p1, s1);
        net.add_edge(p2, s1);
        net.add_edge(s1, s2);
        net.add_edge(q1, s2);
        net.add_edge(q2, s2);
        return net;
    };

    std::vector<Net> trees;
    trees.push_back(tripod("B1", b1, "A", "C", "X"));
    trees.push_back(tripod("B3", b3, "A", "C", "Z"));
    trees.push_back(pair_tree("B2", b2, "Y2", y2, "A", "C", "X", "Z"));
    trees.push_back(tripod("Y1", y1, "X", "Z", "A"));
    trees.push_back(tripod("Y3", y3, "X", "Z", "C"));
    trees.push_back(pair_tree("L", l, "N", n, "A", "X", "C", "Z"));
    Net cross_pair;
    terminals(cross_pair);
    cross_pair.add_edge("A", "Z");
    cross_pair.add_edge("C", "X");
    trees.push_back(std::move(cross_pair));

    for (auto& tree : trees) {
        std::vector<std::size_t> all(tree.edge_count());
        for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
        tree = subnet(tree, all);
    }
    return trees;
}

/// Union of the seven overlay trees with all crossings made into vertices.
inline Net build_overlay_net(const OverlayTerminals& t = default_overlay_terminals()) {
    const auto trees = overlay_trees(t);
    return planarize(merge_nets(trees));
}

}  // namespace geonet
