#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geonet/error.hpp"
#include "geonet/geom.hpp"
#include "geonet/net.hpp"

namespace geonet {

/// Sorted edge indices of a parent net.
using EdgeSubset = std::vector<std::size_t>;

inline constexpr std::size_t kMaxSubsetDegree = 24;
inline constexpr std::size_t kDefaultNodeBudget = 100'000'000;

namespace detail {

struct LocalSubsets {
    std::vector<std::size_t> incident;  // sorted parent edge indices
    std::vector<std::uint32_t> masks;   // bit i selects incident[i]
    std::vector<std::string> warnings;
};

inline LocalSubsets local_balanced_subsets(const Net& net, std::size_t v, double tol) {
    LocalSubsets out;
    out.incident = net.incident(v);
    std::sort(out.incident.begin(), out.incident.end());
    const std::size_t deg = out.incident.size();
    if (deg > kMaxSubsetDegree) {
        throw Error(ErrorCode::DegreeTooLarge, "vertex '" + net.vertex(v).id + "' has degree " +
                                                   std::to_string(deg) + " > " +
                                                   std::to_string(kMaxSubsetDegree));
    }
    std::vector<Point> dirs;
    for (std::size_t e : out.incident) {
        dirs.push_back(unit_vector(net.vertex(v).pos, net.vertex(net.opposite(e, v)).pos).as_point());
    }
    const std::uint32_t count = std::uint32_t{1} << deg;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        Point sum;
        for (std::size_t i = 0; i < deg; ++i) {
            if (mask >> i & 1u) sum += dirs[i];
        }
        const double r = norm(sum);
        if (r <= tol) {
            out.masks.push_back(mask);
        } else if (r <= 1e3 * tol) {
            out.warnings.push_back("vertex '" + net.vertex(v).id + "': edge subset with residual " +
                                   std::to_string(r) + " is within 1000x of the tolerance");
        }
    }
    return out;
}

inline EdgeSubset expand(const LocalSubsets& local, std::uint32_t mask) {
    EdgeSubset s;
    for (std::size_t i = 0; i < local.incident.size(); ++i) {
        if (mask >> i & 1u) s.push_back(local.incident[i]);
    }
    return s;
}

}  // namespace detail

/// Every subset of the edges at `id` whose unit vectors sum to at most `tol`
/// in magnitude, including the empty set. Ordered by bitmask over the
/// vertex's incident edges sorted by edge index.
inline std::vector<EdgeSubset> balanced_edge_subsets(const Net& net, const VertexId& id,
                                                     double tol = kBalanceTol) {
    const auto local = detail::local_balanced_subsets(net, net.index_of(id), tol);
    std::vector<EdgeSubset> out;
    for (std::uint32_t mask : local.masks) out.push_back(detail::expand(local, mask));
    return out;
}

/// True iff following straight degree-2 balanced vertices from an unbalanced
/// endpoint of a selected edge always ends at a genuine balanced vertex.
inline bool has_no_unbalanced_chain(const Net& net, const std::vector<bool>& selected) {
    std::vector<std::vector<std::size_t>> sel(net.vertex_count());
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        if (!selected[e]) continue;
        sel[net.edges()[e].u].push_back(e);
        sel[net.edges()[e].v].push_back(e);
    }
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
        if (!selected[e]) continue;
        const Edge& ed = net.edges()[e];
        for (std::size_t start : {ed.u, ed.v}) {
            if (net.vertex(start).balanced()) continue;
            std::size_t via = e;
            std::size_t cur = net.opposite(e, start);
            while (net.vertex(cur).balanced() && sel[cur].size() == 2) {
                via = sel[cur][0] == via ? sel[cur][1] : sel[cur][0];
                cur = net.opposite(via, cur);
            }
            if (!net.vertex(cur).balanced()) return false;
        }
    }
    return true;
}

/// A non-empty edge subset forms a geodesic net (degree-2 straight
/// pass-through vertices allowed) with no chain of edges running directly
/// between two unbalanced vertices.
inline bool is_geodesic_subnet(const Net& net, std::span<const std::size_t> edges,
                               double tol = kBalanceTol) {
    if (edges.empty()) return false;
    std::vector<bool> selected(net.edge_count(), false);
    for (std::size_t e : edges) selected.at(e) = true;
    for (std::size_t v = 0; v < net.vertex_count(); ++v) {
        if (!net.vertex(v).balanced()) continue;
        Point sum;
        bool touched = false;
        for (std::size_t e : net.incident(v)) {
            if (!selected[e]) continue;
            touched = true;
            sum += unit_vector(net.vertex(v).pos, net.vertex(net.opposite(e, v)).pos).as_point();
        }
        if (touched && norm(sum) > tol) return false;
    }
    return has_no_unbalanced_chain(net, selected);
}

struct TraceStep {
    VertexId vertex;
    /// Edges that this vertex forces into every subnet containing the seed.
    EdgeSubset forced_edges;
};

struct Irreducible {
    /// Unit propagation from the seed vertex, in order.
    std::vector<TraceStep> trace;
    std::size_t nodes = 0;
    std::vector<std::string> warnings;
};

struct Reducible {
    /// Minimal: no proper geodesic subnet uses a strict subset of these edges.
    EdgeSubset witness;
    std::size_t nodes = 0;
    std::vector<std::string> warnings;
};

using SubnetCertificate = std::variant<Irreducible, Reducible>;

namespace detail {

/// Subnet existence as a constraint problem: one variable per balanced
/// vertex ranging over its balanced edge subsets, agreeing on shared edges.
class SubnetSearch {
public:
    SubnetSearch(const Net& net, double tol, std::size_t budget)
        : net_(net), budget_(budget), var_of_(net.vertex_count(), kNone) {
        for (std::size_t v = 0; v < net.vertex_count(); ++v) {
            if (!net.vertex(v).balanced() || net.degree(v) == 0) continue;
            var_of_[v] = vars_.size();
            vars_.push_back(local_balanced_subsets(net, v, tol));
            vertex_of_.push_back(v);
            for (auto& w : vars_.back().warnings) warnings_.push_back(std::move(w));
        }
    }

    std::size_t nodes() const { return nodes_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// First valid edge set inside `universe` that differs from it, if any.
    std::optional<EdgeSubset> find_within(const std::vector<bool>& universe) {
        std::optional<EdgeSubset> found;
        enumerate_within(universe, [&](const EdgeSubset& s) {
            found = s;
            return true;
        });
        return found;
    }

    /// Calls `visit` for every valid edge set inside `universe` other than the
    /// universe itself, until `visit` returns true.
    void enumerate_within(const std::vector<bool>& universe,
                          const std::function<bool(const EdgeSubset&)>& visit) {
        std::vector<std::size_t> members;
        for (std::size_t e = 0; e < universe.size(); ++e) {
            if (universe[e]) members.push_back(e);
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            State st = initial_state();
            for (std::size_t e = 0; e < net_.edge_count(); ++e) {
                if (!universe[e]) st.edges[e] = kOut;
            }
            for (std::size_t j = 0; j < k; ++j) st.edges[members[j]] = kOut;
            st.edges[members[k]] = kIn;
            std::deque<std::size_t> queue(vars_.size());
            for (std::size_t i = 0; i < vars_.size(); ++i) queue[i] = i;
            if (!propagate(st, queue, nullptr)) continue;
            bool stop = false;
            search(st, [&](const State& done) {
                std::vector<bool> chosen(net_.edge_count(), false);
                EdgeSubset s;
                for (std::size_t e = 0; e < net_.edge_count(); ++e) {
                    if (done.edges[e] == kIn) {
                        chosen[e] = true;
                        s.push_back(e);
                    }
                }
                if (s.size() == members.size()) return false;
                if (!has_no_unbalanced_chain(net_, chosen)) return false;
                stop = visit(s);
                return stop;
            });
            if (stop) return;
        }
    }

    /// Propagation log of "the first balanced vertex keeps some edge".
    std::vector<TraceStep> seed_trace() {
        std::vector<TraceStep> trace;
        if (vars_.empty()) return trace;
        State st = initial_state();
        auto& dom = st.domains[0];
        dom.erase(std::remove(dom.begin(), dom.end(), 0u), dom.end());
        std::deque<std::size_t> queue{0};
        propagate(st, queue, &trace);
        return trace;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    static constexpr std::int8_t kUnknown = -1;
    static constexpr std::int8_t kOut = 0;
    static constexpr std::int8_t kIn = 1;

    struct State {
        std::vector<std::int8_t> edges;
        std::vector<std::vector<std::uint32_t>> domains;
    };

    State initial_state() const {
        State st;
        st.edges.assign(net_.edge_count(), kUnknown);
        for (const auto& var : vars_) st.domains.push_back(var.masks);
        return st;
    }

    bool propagate(State& st, std::deque<std::size_t>& queue, std::vector<TraceStep>* trace) {
        std::vector<bool> queued(vars_.size(), false);
        for (std::size_t i : queue) queued[i] = true;
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            queued[i] = false;
            const auto& inc = vars_[i].incident;
            auto& dom = st.domains[i];
            std::uint32_t must_in = 0;
            std::uint32_t must_out = 0;
            for (std::size_t b = 0; b < inc.size(); ++b) {
                if (st.edges[inc[b]] == kIn) must_in |= 1u << b;
                if (st.edges[inc[b]] == kOut) must_out |= 1u << b;
            }
            std::erase_if(dom, [&](std::uint32_t m) {
                return (m & must_in) != must_in || (m & must_out) != 0;
            });
            if (dom.empty()) return false;
            std::uint32_t all = ~0u;
            std::uint32_t any = 0;
            for (std::uint32_t m : dom) {
                all &= m;
                any |= m;
            }
            EdgeSubset forced;
            for (std::size_t b = 0; b < inc.size(); ++b) {
                const std::size_t e = inc[b];
                if (st.edges[e] != kUnknown) continue;
                if (all >> b & 1u) {
                    st.edges[e] = kIn;
                    forced.push_back(e);
                } else if (!(any >> b & 1u)) {
                    st.edges[e] = kOut;
                } else {
                    continue;
                }
                const std::size_t w = net_.opposite(e, vertex_of_[i]);
                if (var_of_[w] != kNone && !queued[var_of_[w]]) {
                    queued[var_of_[w]] = true;
                    queue.push_back(var_of_[w]);
                }
            }
            if (trace && !forced.empty()) {
                trace->push_back({net_.vertex(vertex_of_[i]).id, std::move(forced)});
            }
        }
        return true;
    }

    bool search(State& st, const std::function<bool(const State&)>& on_solution) {
        if (++nodes_ > budget_) {
            throw Error(ErrorCode::SearchBudgetExceeded,
                        "subnet search exceeded " + std::to_string(budget_) + " nodes");
        }
        std::size_t pick = kNone;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (st.domains[i].size() > 1 &&
                (pick == kNone || st.domains[i].size() < st.domains[pick].size())) {
                pick = i;
            }
        }
        if (pick == kNone) return on_solution(st);
        for (std::uint32_t mask : st.domains[pick]) {
            State next = st;
            next.domains[pick] = {mask};
            std::deque<std::size_t> queue{pick};
            if (!propagate(next, queue, nullptr)) continue;
            if (search(next, on_solution)) return true;
        }
        return false;
    }

    const Net& net_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::vector<LocalSubsets> vars_;
    std::vector<std::size_t> vertex_of_;
    std::vector<std::size_t> var_of_;
    std::vector<std::string> warnings_;
};

inline void require_geodesic_net(const Net& net, double tol) {
    const VerifyReport report = verify(net, tol);
    if (!report.passed) {
        throw Error(ErrorCode::NotAGeodesicNet, "subnet search needs a net that passes verify");
    }
}

inline std::vector<bool> as_mask(std::size_t size, std::span<const std::size_t> edges) {
    std::vector<bool> m(size, false);
    for (std::size_t e : edges) m[e] = true;
    return m;
}

}  // namespace detail

/// Decides whether `net` has a proper geodesic subnet. Subnets are edge
/// subsets; vertices left without edges are dropped, straight degree-2
/// pass-through vertices count as balanced, and no chain of such vertices may
/// join two unbalanced vertices. A reducible net yields a minimal witness; an
/// irreducible one the forcing trace from its first balanced vertex.
inline SubnetCertificate find_proper_subnet(const Net& net, double tol = kBalanceTol,
                                            std::size_t node_budget = kDefaultNodeBudget) {
    detail::require_geodesic_net(net, tol);
    detail::SubnetSearch search(net, tol, node_budget);
    std::vector<bool> universe(net.edge_count(), true);
    std::optional<EdgeSubset> found = search.find_within(universe);
    if (!found) {
        return Irreducible{search.seed_trace(), search.nodes(), search.warnings()};
    }
    // Shrink until no valid subset remains inside the current witness.
    while (auto smaller = search.find_within(detail::as_mask(net.edge_count(), *found))) {
        found = std::move(smaller);
    }
    return Reducible{std::move(*found), search.nodes(), search.warnings()};
}

inline bool is_irreducible(const Net& net, double tol = kBalanceTol,
                           std::size_t node_budget = kDefaultNodeBudget) {
    return std::holds_alternative<Irreducible>(find_proper_subnet(net, tol, node_budget));
}

/// All minimal proper geodesic subnets, in lexicographic order of edge lists.
inline std::vector<EdgeSubset> minimal_proper_subnets(const Net& net, double tol = kBalanceTol,
                                                      std::size_t node_budget = kDefaultNodeBudget) {
    detail::require_geodesic_net(net, tol);
    detail::SubnetSearch search(net, tol, node_budget);
    std::vector<EdgeSubset> all;
    search.enumerate_within(std::vector<bool>(net.edge_count(), true), [&](const EdgeSubset& s) {
        all.push_back(s);
        return false;
    });
    std::sort(all.begin(), all.end(),
              [](const EdgeSubset& a, const EdgeSubset& b) { return a.size() < b.size(); });
    std::vector<EdgeSubset> minimal;
    for (const auto& s : all) {
        const auto mask = detail::as_mask(net.edge_count(), s);
        const bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const EdgeSubset& m) {
            return std::all_of(m.begin(), m.end(), [&](std::size_t e) { return mask[e]; });
        });
        if (!dominated) minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

}  // namespace geonet
