#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cyclic {

using vertex_t = std::int32_t;
using step_index_t = std::int64_t;

struct invalid_step : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite cyclic graph, encoded by its counterclockwise reach vector:
/// vertex i has a directed edge to (i+j) mod n exactly for 1 <= j <= reach[i].
struct graph {
    std::vector<vertex_t> reach;

    graph() = default;
    explicit graph(vertex_t n) : reach(static_cast<std::size_t>(n), 0) {}
    explicit graph(std::vector<vertex_t> r) : reach(std::move(r)) {}

    vertex_t size() const { return static_cast<vertex_t>(reach.size()); }

    vertex_t gap(vertex_t u, vertex_t v) const {
        vertex_t n = size();
        return static_cast<vertex_t>(((v - u) % n + n) % n);
    }

    bool has_edge(vertex_t u, vertex_t v) const {
        if (u == v) return false;
        return gap(u, v) <= reach[static_cast<std::size_t>(u)];
    }

    /// Counterclockwise-furthest out-neighbor of v, or v itself when v has none.
    vertex_t furthest(vertex_t v) const {
        vertex_t r = reach[static_cast<std::size_t>(v)];
        return r == 0 ? v : static_cast<vertex_t>((v + r) % size());
    }

    bool operator==(const graph&) const = default;
};

enum class violation_kind { reach_range, cyclicity, antiparallel };

struct violation {
    violation_kind kind;
    vertex_t index;  // vertex at which the invariant fails

    std::string describe() const {
        switch (kind) {
            case violation_kind::reach_range:
                return "reach out of range at vertex " + std::to_string(index);
            case violation_kind::cyclicity:
                return "cyclicity fails at vertex " + std::to_string(index);
            case violation_kind::antiparallel:
                return "antiparallel edge from vertex " + std::to_string(index);
        }
        return "unknown violation";
    }
};

/// Every violated invariant, with the offending vertex. Empty iff `g` is a
/// cyclic graph. The antiparallel scan is per-edge so that reports stay
/// precise even when cyclicity already fails.
inline std::vector<violation> validate(const graph& g) {
    std::vector<violation> out;
    const vertex_t n = g.size();
    if (n == 0) return out;
    for (vertex_t i = 0; i < n; ++i) {
        vertex_t r = g.reach[static_cast<std::size_t>(i)];
        if (r < 0 || r > n - 1) {
            out.push_back({violation_kind::reach_range, i});
        }
    }
    if (!out.empty()) return out;  // index arithmetic below assumes sane ranges
    for (vertex_t i = 0; i < n; ++i) {
        vertex_t next = static_cast<vertex_t>((i + 1) % n);
        if (g.reach[static_cast<std::size_t>(next)] < g.reach[static_cast<std::size_t>(i)] - 1)
            out.push_back({violation_kind::cyclicity, i});
    }
    for (vertex_t i = 0; i < n; ++i) {
        vertex_t r = g.reach[static_cast<std::size_t>(i)];
        for (vertex_t j = 1; j <= r; ++j) {
            vertex_t t = static_cast<vertex_t>((i + j) % n);
            if (g.reach[static_cast<std::size_t>(t)] >= n - j) {
                out.push_back({violation_kind::antiparallel, i});
                break;
            }
        }
    }
    return out;
}

inline bool is_valid(const graph& g) { return validate(g).empty(); }

/// In-degree plus out-degree of v.
inline vertex_t degree(const graph& g, vertex_t v) {
    const vertex_t n = g.size();
    vertex_t d = g.reach[static_cast<std::size_t>(v)];
    for (vertex_t u = 0; u < n; ++u)
        if (u != v && g.has_edge(u, v)) ++d;
    return d;
}

/// All undirected degrees in O(n), via a cyclic difference array over the
/// out-neighbor intervals.
inline std::vector<vertex_t> all_degrees(const graph& g) {
    const vertex_t n = g.size();
    std::vector<vertex_t> diff(static_cast<std::size_t>(n) + 1, 0);
    for (vertex_t i = 0; i < n; ++i) {
        vertex_t r = g.reach[static_cast<std::size_t>(i)];
        if (r == 0) continue;
        vertex_t a = static_cast<vertex_t>((i + 1) % n);
        if (a + r <= n) {
            diff[static_cast<std::size_t>(a)] += 1;
            diff[static_cast<std::size_t>(a + r)] -= 1;
        } else {
            diff[static_cast<std::size_t>(a)] += 1;
            diff[static_cast<std::size_t>(n)] -= 1;
            diff[0] += 1;
            diff[static_cast<std::size_t>((a + r) % n)] -= 1;
        }
    }
    std::vector<vertex_t> deg(static_cast<std::size_t>(n), 0);
    vertex_t run = 0;
    for (vertex_t v = 0; v < n; ++v) {
        run += diff[static_cast<std::size_t>(v)];
        deg[static_cast<std::size_t>(v)] = run + g.reach[static_cast<std::size_t>(v)];
    }
    return deg;
}

/// Least-index vertex of full degree n-1, if any.
inline std::optional<vertex_t> is_cone(const graph& g) {
    const vertex_t n = g.size();
    if (n == 1) return 0;  // a single point is trivially its own apex
    auto deg = all_degrees(g);
    for (vertex_t v = 0; v < n; ++v)
        if (deg[static_cast<std::size_t>(v)] == n - 1) return v;
    return std::nullopt;
}

/// Adds the directed edge source -> (source + reach[source] + 1) mod n.
struct add_edge {
    vertex_t source;
    bool operator==(const add_edge&) const = default;
};

/// Inserts a new vertex into cyclic slot `position` (it becomes that index;
/// existing vertices at indices >= position shift up; position == n appends).
/// The new vertex points at its next `out_reach` counterclockwise successors,
/// and every vertex in `in_sources` gains an edge to it.
struct add_vertex {
    vertex_t position;
    vertex_t out_reach;
    std::vector<vertex_t> in_sources;  // pre-insertion indices
    bool operator==(const add_vertex&) const = default;
};

using step = std::variant<add_edge, add_vertex>;

/// O(1) validity check for add_edge on a valid graph.
inline bool can_add_edge(const graph& g, vertex_t src) {
    const vertex_t n = g.size();
    if (n < 2 || src < 0 || src >= n) return false;
    vertex_t r = g.reach[static_cast<std::size_t>(src)];
    if (r + 1 > n - 1) return false;
    if (g.reach[static_cast<std::size_t>((src + 1) % n)] < r) return false;  // cyclicity after increment
    vertex_t t = static_cast<vertex_t>((src + r + 1) % n);
    if (g.reach[static_cast<std::size_t>(t)] + r + 1 >= n) return false;  // would be antiparallel
    return true;
}

namespace detail {

// Number of counterclockwise steps from u (pre-insertion labels) after which
// the slot just before `position` is crossed; n when the slot sits behind u.
inline vertex_t slot_cross(vertex_t u, vertex_t position, vertex_t n) {
    vertex_t g0 = static_cast<vertex_t>(((position - u) % n + n) % n);
    return g0 == 0 ? n : g0;
}

}  // namespace detail

/// New reach vector after an add_vertex step, or an explanation of failure.
/// Pre-insertion vertex u keeps its out-interval only if the slot does not
/// split it; u in in_sources must sit at slot-cross <= reach[u]+1.
inline std::variant<std::vector<vertex_t>, std::string> vertex_insertion_reach(
    const graph& g, const add_vertex& av) {
    const vertex_t n = g.size();
    if (av.position < 0 || av.position > n) return std::string("position out of range");
    if (av.out_reach < 0 || av.out_reach > n) return std::string("out_reach out of range");
    if (n == 0) {
        if (av.out_reach != 0 || !av.in_sources.empty())
            return std::string("first vertex cannot carry edges");
        return std::vector<vertex_t>{0};
    }
    const vertex_t p = av.position;
    const vertex_t slot = static_cast<vertex_t>(av.position % n);

    std::vector<char> in_src(static_cast<std::size_t>(n), 0);
    for (vertex_t u : av.in_sources) {
        if (u < 0 || u >= n) return std::string("in_source out of range");
        if (in_src[static_cast<std::size_t>(u)]) return std::string("duplicate in_source");
        in_src[static_cast<std::size_t>(u)] = 1;
    }

    std::vector<vertex_t> out(static_cast<std::size_t>(n) + 1, 0);
    const std::size_t v_new = static_cast<std::size_t>(p);
    out[v_new] = av.out_reach;
    for (vertex_t u = 0; u < n; ++u) {
        vertex_t r = g.reach[static_cast<std::size_t>(u)];
        vertex_t c = detail::slot_cross(u, slot, n);
        vertex_t nr;
        if (in_src[static_cast<std::size_t>(u)]) {
            if (c > r + 1)
                return "in_source " + std::to_string(u) + " cannot reach the new vertex";
            nr = static_cast<vertex_t>(r + 1);
        } else {
            if (c <= r)
                return "vertex " + std::to_string(u) +
                       " spans the insertion slot but is not an in_source";
            nr = r;
        }
        std::size_t idx = static_cast<std::size_t>(u < p ? u : u + 1);
        out[idx] = nr;
    }
    return out;
}

/// Applies a filtration step, returning the grown graph.
/// Throws invalid_step when the result would not be a cyclic graph.
inline graph apply_step(const graph& g, const step& s) {
    if (const auto* e = std::get_if<add_edge>(&s)) {
        if (!can_add_edge(g, e->source))
            throw invalid_step("add_edge at vertex " + std::to_string(e->source) +
                               " breaks a cyclic graph invariant");
        graph out = g;
        ++out.reach[static_cast<std::size_t>(e->source)];
        return out;
    }
    const auto& av = std::get<add_vertex>(s);
    auto res = vertex_insertion_reach(g, av);
    if (auto* err = std::get_if<std::string>(&res)) throw invalid_step("add_vertex: " + *err);
    graph out{std::move(std::get<std::vector<vertex_t>>(res))};
    auto viol = validate(out);
    if (!viol.empty()) throw invalid_step("add_vertex: " + viol.front().describe());
    return out;
}

/// Marks the scale at which a growing Vietoris-Rips complex became
/// contractible and the filtration was truncated. `apex` names the
/// full-degree vertex when one exists; it is absent when contractibility
/// sets in through the underlying curve before any sample vertex completes.
struct cone_event {
    std::optional<vertex_t> apex;
    std::optional<double> scale;
};

/// An increasing sequence of cyclic graphs: an initial graph plus
/// cyclicity-preserving growth steps, optionally scale-stamped; a terminal
/// cone marker records where the geometric pipeline truncated.
struct filtration {
    graph initial;
    std::vector<step> steps;
    std::vector<double> scales;  // empty, or one non-decreasing value per step
    std::optional<cone_event> cone;

    std::size_t num_steps() const { return steps.size(); }

    bool has_scales() const { return !scales.empty(); }

    /// Scale of filtration index i (0 = initial graph, i = after step i).
    double scale_at(step_index_t i) const {
        if (i <= 0 || scales.empty()) return 0.0;
        return scales[static_cast<std::size_t>(i - 1)];
    }

    graph final_graph() const {
        graph g = initial;
        for (const auto& s : steps) g = apply_step(g, s);
        return g;
    }
};

/// Replays and fully re-validates every prefix; returns the first problem as
/// (prefix index, message) or nullopt when the filtration is sound.
inline std::optional<std::pair<step_index_t, std::string>> validate_filtration(const filtration& f) {
    {
        auto v = validate(f.initial);
        if (!v.empty()) return std::make_pair(step_index_t{0}, v.front().describe());
    }
    if (!f.scales.empty()) {
        if (f.scales.size() != f.steps.size())
            return std::make_pair(step_index_t{0}, std::string("scales/steps length mismatch"));
        for (std::size_t i = 1; i < f.scales.size(); ++i)
            if (f.scales[i] < f.scales[i - 1])
                return std::make_pair(static_cast<step_index_t>(i + 1),
                                      std::string("scales decrease"));
    }
    graph g = f.initial;
    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        try {
            g = apply_step(g, f.steps[i]);
        } catch (const invalid_step& e) {
            return std::make_pair(static_cast<step_index_t>(i + 1), std::string(e.what()));
        }
        auto v = validate(g);
        if (!v.empty())
            return std::make_pair(static_cast<step_index_t>(i + 1), v.front().describe());
    }
    return std::nullopt;
}

/// Rebuilds a graph from an explicit directed edge list. Throws invalid_step
/// if some out-neighborhood is not a contiguous counterclockwise interval.
inline graph graph_from_edges(vertex_t n,
                              const std::vector<std::pair<vertex_t, vertex_t>>& edges) {
    graph g(n);
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v)
            throw invalid_step("bad edge endpoint");
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    }
    for (vertex_t u = 0; u < n; ++u) {
        vertex_t r = 0;
        while (r < n - 1 && adj[static_cast<std::size_t>(u)]
                               [static_cast<std::size_t>((u + r + 1) % n)])
            ++r;
        for (vertex_t j = r + 1; j < n; ++j)
            if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>((u + j) % n)])
                throw invalid_step("out-neighborhood of vertex " + std::to_string(u) +
                                   " is not a cyclic interval");
        g.reach[static_cast<std::size_t>(u)] = r;
    }
    return g;
}

/// Explicit directed edge list of a graph, in (source, target) order.
inline std::vector<std::pair<vertex_t, vertex_t>> edge_list(const graph& g) {
    std::vector<std::pair<vertex_t, vertex_t>> out;
    const vertex_t n = g.size();
    for (vertex_t u = 0; u < n; ++u)
        for (vertex_t j = 1; j <= g.reach[static_cast<std::size_t>(u)]; ++j)
            out.emplace_back(u, static_cast<vertex_t>((u + j) % n));
    return out;
}

}  // namespace cyclic
