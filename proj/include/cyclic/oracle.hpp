#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclic/barcode.hpp"
#include "cyclic/graph.hpp"

namespace cyclic::oracle {

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct filtered_simplex {
    std::vector<vertex_t> vertices;  // ascending
    step_index_t step;               // first index at which all faces exist

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Clique complex of every prefix graph of a filtration, as one simplex list
/// sorted by (step, dimension, lexicographic vertices).
struct filtered_complex {
    std::vector<filtered_simplex> simplices;
    int max_dim = 0;
    vertex_t n = 0;
};

inline constexpr vertex_t default_vertex_cap = 16;

namespace detail {

struct replay_arrivals {
    vertex_t n = 0;                                     // final count
    std::vector<step_index_t> vertex_step;              // by final id
    std::vector<std::vector<step_index_t>> edge_step;   // -1 = absent
};

// Replays a filtration assigning stable ids to vertices so that edge arrival
// steps survive the index shifts of add_vertex.
inline replay_arrivals replay(const filtration& f) {
    replay_arrivals out;
    graph g = f.initial;
    vertex_t next_id = g.size();
    std::vector<vertex_t> id_at(static_cast<std::size_t>(g.size()));
    for (vertex_t v = 0; v < g.size(); ++v) id_at[static_cast<std::size_t>(v)] = v;

    vertex_t final_n = g.size();
    for (const auto& s : f.steps)
        if (std::holds_alternative<add_vertex>(s)) ++final_n;

    out.n = final_n;
    out.vertex_step.assign(static_cast<std::size_t>(final_n), 0);
    out.edge_step.assign(static_cast<std::size_t>(final_n),
                         std::vector<step_index_t>(static_cast<std::size_t>(final_n), -1));

    auto mark_edge = [&](vertex_t u, vertex_t v, step_index_t at) {
        vertex_t a = id_at[static_cast<std::size_t>(u)];
        vertex_t b = id_at[static_cast<std::size_t>(v)];
        if (out.edge_step[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] < 0) {
            out.edge_step[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = at;
            out.edge_step[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = at;
        }
    };

    for (auto [u, v] : edge_list(g)) mark_edge(u, v, 0);

    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        const step_index_t at = static_cast<step_index_t>(i + 1);
        if (const auto* e = std::get_if<add_edge>(&f.steps[i])) {
            vertex_t t = static_cast<vertex_t>(
                (e->source + g.reach[static_cast<std::size_t>(e->source)] + 1) % g.size());
            mark_edge(e->source, t, at);
            g = apply_step(g, f.steps[i]);
        } else {
            const auto& av = std::get<add_vertex>(f.steps[i]);
            g = apply_step(g, f.steps[i]);
            vertex_t pos = av.position;
            id_at.insert(id_at.begin() + pos, next_id);
            out.vertex_step[static_cast<std::size_t>(next_id)] = at;
            ++next_id;
            const vertex_t n_new = g.size();
            for (vertex_t j = 1; j <= av.out_reach; ++j)
                mark_edge(pos, static_cast<vertex_t>((pos + j) % n_new), at);
            // in-edges: translate pre-insertion labels through the shift
            for (vertex_t u_old : av.in_sources) {
                vertex_t u_new = u_old < pos ? u_old : static_cast<vertex_t>(u_old + 1);
                mark_edge(u_new, pos, at);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Every clique of size <= max_dim + 2 across all prefixes, stamped with the
/// first step index at which all of its vertices and edges exist.
inline filtered_complex clique_complex(const filtration& f, int max_dim,
                                       vertex_t cap = default_vertex_cap) {
    auto arr = detail::replay(f);
    if (arr.n > cap)
        throw cap_exceeded("oracle cap " + std::to_string(cap) + " exceeded by n = " +
                           std::to_string(arr.n));
    filtered_complex out;
    out.max_dim = max_dim;
    out.n = arr.n;

    const std::size_t max_size = static_cast<std::size_t>(max_dim) + 2;
    std::vector<vertex_t> cur;
    std::vector<step_index_t> step_stack;  // arrival of the prefix clique

    auto extend = [&](auto&& self, vertex_t from, step_index_t arrived) -> void {
        if (!cur.empty())
            out.simplices.push_back({cur, arrived});
        if (cur.size() == max_size) return;
        for (vertex_t v = from; v < arr.n; ++v) {
            step_index_t at = std::max(arrived, arr.vertex_step[static_cast<std::size_t>(v)]);
            bool ok = true;
            for (vertex_t u : cur) {
                step_index_t es =
                    arr.edge_step[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
                if (es < 0) {
                    ok = false;
                    break;
                }
                at = std::max(at, es);
            }
            if (!ok) continue;
            cur.push_back(v);
            self(self, static_cast<vertex_t>(v + 1), at);
            cur.pop_back();
        }
    };
    extend(extend, 0, 0);

    std::sort(out.simplices.begin(), out.simplices.end(),
              [](const filtered_simplex& a, const filtered_simplex& b) {
                  if (a.step != b.step) return a.step < b.step;
                  if (a.vertices.size() != b.vertices.size())
                      return a.vertices.size() < b.vertices.size();
                  return a.vertices < b.vertices;
              });
    return out;
}

/// Standard persistence by column reduction over the two-element field, with
/// an empty simplex adjoined so that dimension 0 is reduced.
inline barcode reduce(const filtered_complex& cx) {
    const std::size_t m = cx.simplices.size() + 1;  // row 0 = empty simplex
    std::map<std::vector<vertex_t>, std::size_t> index_of;
    for (std::size_t i = 0; i < cx.simplices.size(); ++i)
        index_of[cx.simplices[i].vertices] = i + 1;

    // columns as ascending row-index lists; F2 addition = symmetric difference
    std::vector<std::vector<std::size_t>> cols(m);
    for (std::size_t i = 0; i < cx.simplices.size(); ++i) {
        const auto& s = cx.simplices[i];
        auto& col = cols[i + 1];
        if (s.dim() == 0) {
            col.push_back(0);
        } else {
            std::vector<vertex_t> face(s.vertices.begin(), s.vertices.end() - 1);
            for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
                std::vector<vertex_t> fv;
                fv.reserve(s.vertices.size() - 1);
                for (std::size_t j = 0; j < s.vertices.size(); ++j)
                    if (j != drop) fv.push_back(s.vertices[j]);
                col.push_back(index_of.at(fv));
            }
            std::sort(col.begin(), col.end());
        }
    }

    auto add_into = [](std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        out.reserve(a.size() + b.size());
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(out));
        a = std::move(out);
    };

    std::vector<std::size_t> pivot_owner(m, 0);  // 0 = free (column 0 is never a boundary)
    std::vector<char> killed(m, 0);

    auto dim_of = [&](std::size_t idx) {
        return idx == 0 ? -1 : cx.simplices[idx - 1].dim();
    };
    auto step_of = [&](std::size_t idx) {
        return idx == 0 ? step_index_t{0} : cx.simplices[idx - 1].step;
    };

    barcode out;
    out.n_final = cx.n;
    for (int d = 0; d <= cx.max_dim; ++d) out.dims.push_back(d);

    for (std::size_t j = 1; j < m; ++j) {
        auto& col = cols[j];
        while (!col.empty()) {
            std::size_t low = col.back();
            std::size_t owner = pivot_owner[low];
            if (owner == 0) break;
            add_into(col, cols[owner]);
        }
        if (col.empty()) continue;  // j creates a class; may die later
        std::size_t low = col.back();
        pivot_owner[low] = j;
        killed[low] = 1;
        int d = dim_of(low);
        if (d >= 0 && d <= cx.max_dim && step_of(low) < step_of(j))
            out.intervals.push_back({d, step_of(low), step_of(j), {}, {}, {}});
    }
    for (std::size_t j = 1; j < m; ++j) {
        if (!cols[j].empty() || killed[j]) continue;
        int d = dim_of(j);
        if (d >= 0 && d <= cx.max_dim)
            out.intervals.push_back({d, step_of(j), std::nullopt, {}, {}, {}});
    }
    sort_intervals(out);
    return out;
}

/// Alternating sum of simplex counts at the final filtration stage.
inline std::int64_t euler_characteristic(const filtered_complex& cx) {
    std::int64_t chi = 0;
    for (const auto& s : cx.simplices) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

}  // namespace cyclic::oracle
