#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "geonet/error.hpp"

namespace geonet {

/// Two points closer than this are the same point.
inline constexpr double kDegeneracyEps = 1e-9;
/// Parametric band around segment endpoints that counts as endpoint contact.
inline constexpr double kParamEps = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator-() const { return {-x, -y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr Point operator/(double s) const { return {x / s, y / s}; }
    constexpr Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
    constexpr Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Point&) const = default;
};

constexpr Point operator*(double s, const Point& p) { return p * s; }

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point& a, const Point& b) { return norm(b - a); }
inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool coincide(const Point& a, const Point& b, double eps = kDegeneracyEps) {
    return distance(a, b) < eps;
}

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Direction of unit length. Only obtainable through unit_vector().
class UnitVec {
public:
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    Point as_point() const { return {dx_, dy_}; }
    UnitVec operator-() const { return UnitVec(-dx_, -dy_); }

private:
    constexpr UnitVec(double dx, double dy) : dx_(dx), dy_(dy) {}
    friend UnitVec unit_vector(const Point& from, const Point& to);

    double dx_;
    double dy_;
};

inline UnitVec unit_vector(const Point& from, const Point& to) {
    const Point d = to - from;
    const double len = norm(d);
    if (!(len >= kDegeneracyEps)) {
        throw Error(ErrorCode::DegenerateSegment, "unit_vector: endpoints coincide");
    }
    return UnitVec(d.x / len, d.y / len);
}

/// Unsigned angle at `b` between the rays towards `a` and `c`, in degrees.
inline double angle_at(const Point& b, const Point& a, const Point& c) {
    const Point u = unit_vector(b, a).as_point();
    const Point v = unit_vector(b, c).as_point();
    return rad_to_deg(std::atan2(std::abs(cross(u, v)), dot(u, v)));
}

/// Exact rotation about the origin by quarter_turns * 90 degrees.
constexpr Point rotate(const Point& p, int quarter_turns) {
    switch (((quarter_turns % 4) + 4) % 4) {
        case 1: return {-p.y, p.x};
        case 2: return {-p.x, -p.y};
        case 3: return {p.y, -p.x};
        default: return p;
    }
}

struct Segment {
    Point p;
    Point q;

    Point direction() const { return q - p; }
    double length() const { return distance(p, q); }
    Point at(double t) const { return p + (q - p) * t; }
};

inline Segment make_segment(const Point& p, const Point& q) {
    if (coincide(p, q)) {
        throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
    }
    return {p, q};
}

namespace intersection {
struct Disjoint {};
struct AtSharedEndpoint { Point at; };
struct ProperCrossing { Point at; };
struct EndpointOnInterior { Point at; };
struct CollinearOverlap { Segment overlap; };
}  // namespace intersection

using IntersectionKind = std::variant<intersection::Disjoint,
                                      intersection::AtSharedEndpoint,
                                      intersection::ProperCrossing,
                                      intersection::EndpointOnInterior,
                                      intersection::CollinearOverlap>;

inline const char* kind_name(const IntersectionKind& k) {
    switch (k.index()) {
        case 0: return "Disjoint";
        case 1: return "AtSharedEndpoint";
        case 2: return "ProperCrossing";
        case 3: return "EndpointOnInterior";
        default: return "CollinearOverlap";
    }
}

namespace detail {

enum class ParamZone { Interior, NearEnd, Outside };

inline ParamZone zone(double t) {
    if (t >= kParamEps && t <= 1.0 - kParamEps) return ParamZone::Interior;
    if (t >= -kParamEps && t <= 1.0 + kParamEps) return ParamZone::NearEnd;
    return ParamZone::Outside;
}

inline double distance_to_line(const Point& x, const Point& p, const Point& d) {
    return std::abs(cross(x - p, d)) / norm(d);
}

inline Point nearer_endpoint(const Segment& s, double t) { return t < 0.5 ? s.p : s.q; }

}  // namespace detail

/// Classifies how two non-degenerate segments meet. The returned kind does not
/// depend on argument order.
inline IntersectionKind intersect(const Segment& s1, const Segment& s2) {
    using namespace intersection;
    const Point d1 = s1.direction();
    const Point d2 = s2.direction();
    const double len1 = norm(d1);
    const double len2 = norm(d2);
    if (len1 < kDegeneracyEps || len2 < kDegeneracyEps) {
        throw Error(ErrorCode::DegenerateSegment, "intersect: degenerate segment");
    }

    const bool pp = coincide(s1.p, s2.p);
    const bool pq = coincide(s1.p, s2.q);
    const bool qp = coincide(s1.q, s2.p);
    const bool qq = coincide(s1.q, s2.q);
    if ((pp && qq) || (pq && qp)) return CollinearOverlap{s1};

    const double cr = cross(d1, d2);
    if (std::abs(cr) <= 1e-12 * len1 * len2) {
        const bool collinear = detail::distance_to_line(s2.p, s1.p, d1) < kDegeneracyEps &&
                               detail::distance_to_line(s2.q, s1.p, d1) < kDegeneracyEps &&
                               detail::distance_to_line(s1.p, s2.p, d2) < kDegeneracyEps &&
                               detail::distance_to_line(s1.q, s2.p, d2) < kDegeneracyEps;
        if (!collinear) return Disjoint{};
        const Point u = d1 / len1;
        const double a = dot(s2.p - s1.p, u);
        const double b = dot(s2.q - s1.p, u);
        const double lo = std::max(0.0, std::min(a, b));
        const double hi = std::min(len1, std::max(a, b));
        if (hi - lo > kDegeneracyEps) return CollinearOverlap{{s1.p + u * lo, s1.p + u * hi}};
        if (hi - lo >= -kDegeneracyEps) {
            if (pp || pq) return AtSharedEndpoint{s1.p};
            if (qp || qq) return AtSharedEndpoint{s1.q};
            return AtSharedEndpoint{s1.p + u * ((lo + hi) / 2)};
        }
        return Disjoint{};
    }

    if (pp || pq) return AtSharedEndpoint{s1.p};
    if (qp || qq) return AtSharedEndpoint{s1.q};

    const Point w = s2.p - s1.p;
    const double t = cross(w, d2) / cr;
    const double u = cross(w, d1) / cr;
    const auto zt = detail::zone(t);
    const auto zu = detail::zone(u);
    using detail::ParamZone;
    if (zt == ParamZone::Outside || zu == ParamZone::Outside) return Disjoint{};
    if (zt == ParamZone::Interior && zu == ParamZone::Interior) return ProperCrossing{s1.at(t)};
    if (zt == ParamZone::Interior) return EndpointOnInterior{detail::nearer_endpoint(s2, u)};
    if (zu == ParamZone::Interior) return EndpointOnInterior{detail::nearer_endpoint(s1, t)};
    const Point e1 = detail::nearer_endpoint(s1, t);
    const Point e2 = detail::nearer_endpoint(s2, u);
    return AtSharedEndpoint{(e1 + e2) / 2};
}

}  // namespace geonet
