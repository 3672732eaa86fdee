#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "geonet/geom.hpp"
#include "oracles.hpp"

using namespace geonet;

namespace {

template <class K>
const K& as(const IntersectionKind& k) {
    EXPECT_TRUE(std::holds_alternative<K>(k)) << "got " << kind_name(k);
    return std::get<K>(k);
}

void expect_point(const Point& got, Point want, double tol = 1e-12) {
    EXPECT_NEAR(got.x, want.x, tol);
    EXPECT_NEAR(got.y, want.y, tol);
}

}  // namespace

TEST(UnitVector, AxisAligned) {
    const UnitVec u = unit_vector({0, 0}, {1, 0});
    EXPECT_DOUBLE_EQ(u.dx(), 1.0);
    EXPECT_DOUBLE_EQ(u.dy(), 0.0);
}

TEST(UnitVector, ThreeFourFive) {
    const UnitVec u = unit_vector({0, 0}, {3, 4});
    EXPECT_NEAR(u.dx(), 0.6, 1e-15);
    EXPECT_NEAR(u.dy(), 0.8, 1e-15);
}

TEST(UnitVector, CoincidentPointsThrow) {
    try {
        unit_vector({0, 0}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSegment);
    }
    EXPECT_THROW(unit_vector({1, 1}, {1 + 1e-10, 1}), Error);
}

TEST(UnitVector, Antisymmetric) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> c(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
        const UnitVec ab = unit_vector(a, b), ba = unit_vector(b, a);
        EXPECT_NEAR(ab.dx(), -ba.dx(), 1e-15);
        EXPECT_NEAR(ab.dy(), -ba.dy(), 1e-15);
    }
}

TEST(AngleAt, RightAngle) { EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {0, 1}), 90.0, 1e-12); }

TEST(AngleAt, StraightAndZero) {
    EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {-2, 0}), 180.0, 1e-12);
    EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {3, 0}), 0.0, 1e-12);
    // tiny angles keep full precision
    EXPECT_NEAR(angle_at({0, 0}, {1, 0}, {1, 1e-8}), rad_to_deg(1e-8), 1e-18);
}

TEST(AngleAt, SymmetricInArms) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)}, d{c(rng), c(rng)};
        EXPECT_DOUBLE_EQ(angle_at(b, a, d), angle_at(b, d, a));
    }
}

TEST(AngleAt, DegenerateArmThrows) { EXPECT_THROW(angle_at({0, 0}, {0, 0}, {1, 0}), Error); }

TEST(Rotate, QuarterTurns) {
    EXPECT_EQ(rotate({1, 0}, 1), (Point{0, 1}));
    EXPECT_EQ(rotate({1, 0}, 4), (Point{1, 0}));
    EXPECT_EQ(rotate({1, 2}, 2), (Point{-1, -2}));
    EXPECT_EQ(rotate({1, 2}, -1), rotate({1, 2}, 3));
}

TEST(Rotate, FourTimesIsIdentityBitForBit) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-5, 5);
    for (int i = 0; i < 1000; ++i) {
        const Point p{c(rng), c(rng)};
        const Point r = rotate(rotate(rotate(rotate(p, 1), 1), 1), 1);
        EXPECT_EQ(std::memcmp(&p, &r, sizeof p), 0);
    }
}

TEST(Intersect, PerpendicularCross) {
    const auto k = intersect({{0, 0}, {2, 0}}, {{1, -1}, {1, 1}});
    expect_point(as<intersection::ProperCrossing>(k).at, {1, 0});
}

TEST(Intersect, SharedEndpoint) {
    const auto k = intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 1}});
    expect_point(as<intersection::AtSharedEndpoint>(k).at, {1, 0});
}

TEST(Intersect, CollinearOverlap) {
    const auto k = intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
    const Segment s = as<intersection::CollinearOverlap>(k).overlap;
    expect_point(s.p, {1, 0});
    expect_point(s.q, {2, 0});
}

TEST(Intersect, EndpointOnInterior) {
    const auto k = intersect({{0, 0}, {2, 0}}, {{1, 0}, {1, 3}});
    expect_point(as<intersection::EndpointOnInterior>(k).at, {1, 0});
}

TEST(Intersect, NearEndpointIsNotACrossing) {
    // crossing parameter within 1e-9 of an end counts as endpoint contact
    const auto k = intersect({{0, 0}, {1, 0}}, {{1 - 1e-11, -1}, {1 - 1e-11, 1}});
    EXPECT_TRUE(std::holds_alternative<intersection::EndpointOnInterior>(k)) << kind_name(k);
}

TEST(Intersect, ParallelAndCollinearDisjoint) {
    EXPECT_TRUE(std::holds_alternative<intersection::Disjoint>(intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}})));
    EXPECT_TRUE(std::holds_alternative<intersection::Disjoint>(intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}})));
    EXPECT_TRUE(
        std::holds_alternative<intersection::AtSharedEndpoint>(intersect({{0, 0}, {1, 0}}, {{1, 0}, {3, 0}})));
}

TEST(Intersect, DegenerateSegmentThrows) {
    EXPECT_THROW(intersect({{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}), Error);
    EXPECT_THROW(make_segment({1, 1}, {1, 1}), Error);
}

TEST(Intersect, SymmetricInArguments) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-5, 5);
    for (int i = 0; i < 2000; ++i) {
        const Segment s1{{c(rng), c(rng)}, {c(rng), c(rng)}};
        const Segment s2{{c(rng), c(rng)}, {c(rng), c(rng)}};
        EXPECT_EQ(intersect(s1, s2).index(), intersect(s2, s1).index());
    }
}

TEST(Intersect, AgreesWithLongDoubleOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> c(-5, 5);
    int crossings = 0;
    for (int i = 0; i < 10000; ++i) {
        const Segment s1{{c(rng), c(rng)}, {c(rng), c(rng)}};
        // one in ten pairs shares an endpoint
        const Point start = i % 10 == 0 ? s1.q : Point{c(rng), c(rng)};
        const Segment s2{start, {c(rng), c(rng)}};
        const auto k = intersect(s1, s2);
        EXPECT_EQ(std::string(kind_name(k)), oracle::classify(s1, s2)) << "pair " << i;
        if (auto* pc = std::get_if<intersection::ProperCrossing>(&k)) {
            ++crossings;
            const double t = detail::param_on(s1, pc->at);
            const double u = detail::param_on(s2, pc->at);
            EXPECT_GT(t, 0.0);
            EXPECT_LT(t, 1.0);
            EXPECT_GT(u, 0.0);
            EXPECT_LT(u, 1.0);
        }
    }
    EXPECT_GT(crossings, 1000);
}
