#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "geonet/error.hpp"
#include "geonet/geom.hpp"
#include "geonet/net.hpp"

namespace geonet {

/// A net read as an optimization problem: unbalanced vertices are pinned at
/// their positions, balanced vertex positions are the starting guess.
using Topology = Net;

inline double total_length(const Net& net) {
    double sum = 0.0;
    for (std::size_t e = 0; e < net.edge_count(); ++e) sum += net.segment(e).length();
    return sum;
}

/// Gradient of total length with respect to each balanced vertex position,
/// which is the negated balance residual. Unbalanced vertices are omitted.
inline std::map<VertexId, Point> length_gradient(const Net& net) {
    std::map<VertexId, Point> grad;
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        if (!net.vertex(v).balanced()) continue;
        Point g;
        for (std::size_t e : net.incident(v)) {
            g -= unit_vector(net.vertex(v).pos, net.vertex(net.opposite(e, v)).pos).as_point();
        }
        grad.emplace(net.vertex(v).id, g);
    }
    return grad;
}

struct RelaxParams {
    double step = 0.1;
    std::size_t max_iter = 100000;
    double tol = kBalanceTol;
};

struct RelaxResult {
    Net net;
    /// Largest residual magnitude over balanced vertices at the final iterate.
    double final_residual = 0.0;
    /// Accepted descent steps.
    std::size_t iterations = 0;
    bool converged = false;
    /// Total length at the start and after every accepted step.
    std::vector<double> length_trace;
};

namespace detail {

class LengthProblem {
public:
    explicit LengthProblem(const Net& net) : net_(net) {
        for (std::size_t v = 0; v < net.vertex_count(); ++v) {
            positions_.push_back(net.vertex(v).pos);
            if (net.vertex(v).balanced()) free_.push_back(v);
        }
    }

    const std::vector<Point>& positions() const { return positions_; }
    const std::vector<std::size_t>& free_vertices() const { return free_; }

    /// Per-free-vertex gradient; throws VertexCollision on a collapsed edge.
    std::vector<Point> gradient(const std::vector<Point>& x) const {
        std::vector<Point> g(free_.size());
        for (std::size_t k = 0; k < free_.size(); ++k) {
            const std::size_t v = free_[k];
            for (std::size_t e : net_.incident(v)) {
                const Point d = x[net_.opposite(e, v)] - x[v];
                const double len = norm(d);
                if (len < kDegeneracyEps) {
                    throw Error(ErrorCode::VertexCollision,
                                "relax: vertices '" + net_.vertex(v).id + "' and '" +
                                    net_.vertex(net_.opposite(e, v)).id + "' collided");
                }
                g[k] -= d / len;
            }
        }
        return g;
    }

    /// Length change when moving from x to y, accurate for tiny moves.
    double length_change(const std::vector<Point>& x, const std::vector<Point>& y) const {
        double delta = 0.0;
        for (const auto& e : net_.edges()) {
            const Point dx = x[e.v] - x[e.u];
            const Point dy = y[e.v] - y[e.u];
            const Point shift = (y[e.v] - x[e.v]) - (y[e.u] - x[e.u]);
            const double denom = norm(dx) + norm(dy);
            if (denom > 0) delta += dot(shift, dx + dy) / denom;
        }
        return delta;
    }

    double length(const std::vector<Point>& x) const {
        double sum = 0.0;
        for (const auto& e : net_.edges()) sum += distance(x[e.u], x[e.v]);
        return sum;
    }

    Net with_positions(const std::vector<Point>& x) const {
        Net out;
        for (std::size_t v = 0; v < net_.vertex_count(); ++v) {
            Vertex w = net_.vertex(v);
            w.pos = x[v];
            out.add_vertex(std::move(w));
        }
        for (const auto& e : net_.edges()) out.add_edge(e.u, e.v);
        return out;
    }

private:
    const Net& net_;
    std::vector<Point> positions_;
    std::vector<std::size_t> free_;
};

inline double max_norm(const std::vector<Point>& g) {
    double m = 0.0;
    for (const auto& p : g) m = std::max(m, norm(p));
    return m;
}

}  // namespace detail

/// Gradient descent on total length over the balanced vertices with Armijo
/// backtracking (c = 1e-4, halving). Stops once every balanced residual is
/// below `params.tol` or after `params.max_iter` accepted steps.
inline RelaxResult relax(const Topology& topo, const RelaxParams& params = {}) {
    if (!(params.step > 0)) {
        throw Error(ErrorCode::InvariantViolation, "relax: step must be positive");
    }
    constexpr double kArmijo = 1e-4;
    constexpr double kMinStep = 1e-30;

    detail::LengthProblem problem(topo);
    const auto& free = problem.free_vertices();
    std::vector<Point> x = problem.positions();
    std::vector<Point> g = problem.gradient(x);

    RelaxResult result;
    result.length_trace.push_back(problem.length(x));
    double step = params.step;
    double residual = detail::max_norm(g);

    while (residual >= params.tol && result.iterations < params.max_iter) {
        double g2 = 0.0;
        for (const auto& gi : g) g2 += dot(gi, gi);

        std::vector<Point> trial = x;
        bool accepted = false;
        while (step >= kMinStep) {
            for (std::size_t k = 0; k < free.size(); ++k) trial[free[k]] = x[free[k]] - g[k] * step;
            if (problem.length_change(x, trial) <= -kArmijo * step * g2) {
                accepted = true;
                break;
            }
            step /= 2;
        }
        if (!accepted) break;

        x = std::move(trial);
        g = problem.gradient(x);
        residual = detail::max_norm(g);
        ++result.iterations;
        result.length_trace.push_back(problem.length(x));
        step = std::min(params.step, step * 2);
    }

    result.net = problem.with_positions(x);
    result.final_residual = residual;
    result.converged = residual < params.tol;
    return result;
}

}  // namespace geonet
