#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cyclic/graph.hpp"

namespace testutil {

using cyclic::add_edge;
using cyclic::add_vertex;
using cyclic::filtration;
using cyclic::graph;
using cyclic::vertex_t;

/// Random cyclicity-preserving filtration: starts edgeless, grows by valid
/// add_edge steps with occasional add_vertex steps, and stops before any
/// vertex reaches full degree (so no prefix is a cone).
inline filtration random_filtration(std::uint64_t seed, vertex_t n_start, vertex_t n_max,
                                    int max_steps, bool allow_add_vertex = true) {
    std::mt19937_64 rng(seed);
    filtration f;
    f.initial = graph(n_start);
    graph g = f.initial;

    auto would_cone = [&](const graph& h) {
        return cyclic::is_cone(h).has_value();
    };

    for (int s = 0; s < max_steps; ++s) {
        std::vector<cyclic::step> options;
        for (vertex_t v = 0; v < g.size(); ++v)
            if (cyclic::can_add_edge(g, v)) options.push_back(add_edge{v});

        if (allow_add_vertex && g.size() < n_max) {
            // try a few random vertex insertions; keep the valid ones
            std::uniform_int_distribution<vertex_t> pos_d(0, g.size());
            for (int attempt = 0; attempt < 4; ++attempt) {
                vertex_t p = pos_d(rng);
                add_vertex av;
                av.position = p;
                const vertex_t n = g.size();
                // forced in_sources: out-intervals spanning the slot; optional
                // extensions may also attach
                for (vertex_t u = 0; u < n; ++u) {
                    vertex_t r = g.reach[static_cast<std::size_t>(u)];
                    vertex_t c = cyclic::detail::slot_cross(u, static_cast<vertex_t>(p % n), n);
                    if (c <= r)
                        av.in_sources.push_back(u);
                    else if (c == r + 1 && (rng() & 1))
                        av.in_sources.push_back(u);
                }
                std::uniform_int_distribution<vertex_t> reach_d(0, 2);
                av.out_reach = reach_d(rng);
                try {
                    graph h = cyclic::apply_step(g, av);
                    if (!would_cone(h)) options.push_back(av);
                } catch (const cyclic::invalid_step&) {
                }
                break;  // one candidate per step keeps vertex adds occasional
            }
        }

        std::vector<cyclic::step> usable;
        for (auto& opt : options) {
            graph h = cyclic::apply_step(g, opt);
            if (!would_cone(h)) usable.push_back(opt);
        }
        if (usable.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
        auto chosen = usable[pick(rng)];
        g = cyclic::apply_step(g, chosen);
        f.steps.push_back(std::move(chosen));
    }
    return f;
}

/// A random valid cyclic graph, as the endpoint of a random edge filtration.
inline graph random_graph(std::uint64_t seed, vertex_t n, int edge_steps) {
    std::mt19937_64 rng(seed);
    graph g(n);
    for (int s = 0; s < edge_steps; ++s) {
        std::vector<vertex_t> sources;
        for (vertex_t v = 0; v < n; ++v)
            if (cyclic::can_add_edge(g, v)) sources.push_back(v);
        if (sources.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
        ++g.reach[static_cast<std::size_t>(sources[pick(rng)])];
    }
    return g;
}

/// Edge filtration from the edgeless graph up to `target`, adding a valid
/// edge wherever one is still missing (round-robin sweeps).
inline filtration regrow(const graph& target) {
    filtration f;
    f.initial = graph(target.size());
    graph cur = f.initial;
    bool progress = true;
    while (progress) {
        progress = false;
        for (vertex_t v = 0; v < target.size(); ++v)
            if (cur.reach[static_cast<std::size_t>(v)] <
                    target.reach[static_cast<std::size_t>(v)] &&
                cyclic::can_add_edge(cur, v)) {
                f.steps.push_back(add_edge{v});
                ++cur.reach[static_cast<std::size_t>(v)];
                progress = true;
            }
    }
    if (cur.reach != target.reach) throw std::runtime_error("regrow failed");
    return f;
}

/// All valid cyclic graphs on n vertices (exhaustive; n small).
inline std::vector<graph> all_cyclic_graphs(vertex_t n) {
    std::vector<graph> out;
    std::vector<vertex_t> reach(static_cast<std::size_t>(n), 0);
    while (true) {
        graph g{reach};
        if (cyclic::is_valid(g)) out.push_back(g);
        // odometer increment
        std::size_t i = 0;
        while (i < reach.size()) {
            if (++reach[i] <= n - 1) break;
            reach[i] = 0;
            ++i;
        }
        if (i == reach.size()) break;
    }
    return out;
}

}  // namespace testutil
