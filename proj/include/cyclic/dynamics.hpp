#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclic/graph.hpp"

namespace cyclic {

/// Winding number over orbit length, kept unreduced as measured on the orbit
/// and compared as an exact rational.
struct winding_fraction {
    std::int64_t omega = 0;
    std::int64_t ell = 1;

    // sign of omega/ell - num/den by cross multiplication
    int compare(std::int64_t num, std::int64_t den) const {
        std::int64_t lhs = omega * den;
        std::int64_t rhs = num * ell;
        return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
    }
    int compare(const winding_fraction& o) const { return compare(o.omega, o.ell); }

    friend bool operator==(const winding_fraction& a, const winding_fraction& b) {
        return a.compare(b) == 0;
    }
};

/// The cyclic dynamical system of a graph: f sends every vertex to its
/// counterclockwise-furthest out-neighbor (itself when it has none).
struct dynamics_state {
    std::vector<vertex_t> f;
    std::vector<char> periodic;
    std::vector<std::int32_t> orbit_label;  // -1 on nonperiodic vertices
    std::int32_t orbit_count = 0;
};

inline std::vector<vertex_t> dynamics_map(const graph& g) {
    const vertex_t n = g.size();
    std::vector<vertex_t> f(static_cast<std::size_t>(n));
    for (vertex_t v = 0; v < n; ++v) f[static_cast<std::size_t>(v)] = g.furthest(v);
    return f;
}

/// Finds every periodic orbit of f by path marking, O(n). Orbit labels are
/// assigned in order of discovery starting from vertex 0.
inline dynamics_state dynamics_of(const graph& g) {
    const vertex_t n = g.size();
    dynamics_state st;
    st.f = dynamics_map(g);
    st.periodic.assign(static_cast<std::size_t>(n), 0);
    st.orbit_label.assign(static_cast<std::size_t>(n), -1);

    // 0 = unvisited, 1 = on the current path, 2 = settled
    std::vector<char> color(static_cast<std::size_t>(n), 0);
    std::vector<vertex_t> path;
    for (vertex_t v = 0; v < n; ++v) {
        if (color[static_cast<std::size_t>(v)] != 0) continue;
        path.clear();
        vertex_t u = v;
        while (color[static_cast<std::size_t>(u)] == 0) {
            color[static_cast<std::size_t>(u)] = 1;
            path.push_back(u);
            u = st.f[static_cast<std::size_t>(u)];
        }
        if (color[static_cast<std::size_t>(u)] == 1) {
            // new cycle: everything from u onward in the current path
            std::int32_t label = st.orbit_count++;
            vertex_t w = u;
            do {
                st.periodic[static_cast<std::size_t>(w)] = 1;
                st.orbit_label[static_cast<std::size_t>(w)] = label;
                w = st.f[static_cast<std::size_t>(w)];
            } while (w != u);
        }
        for (vertex_t w : path) color[static_cast<std::size_t>(w)] = 2;
    }
    return st;
}

/// (length, winding) of one orbit of f, walked from `start` which must be
/// periodic. Winding counts full wraps of the cyclic order.
inline winding_fraction orbit_parameters(const std::vector<vertex_t>& f, vertex_t start,
                                         vertex_t n) {
    std::int64_t len = 0, total_gap = 0;
    vertex_t u = start;
    do {
        vertex_t next = f[static_cast<std::size_t>(u)];
        total_gap += ((next - u) % n + n) % n;
        u = next;
        ++len;
    } while (u != start);
    return winding_fraction{total_gap / n, len};
}

/// Winding fraction of the graph: walk f from any vertex until a cycle is
/// entered, then measure it. All orbits of a cyclic graph share these values.
inline winding_fraction compute_winding_fraction(const graph& g) {
    const vertex_t n = g.size();
    if (n <= 0) throw std::domain_error("winding fraction of an empty graph");
    auto f = dynamics_map(g);
    vertex_t u = 0;
    for (vertex_t i = 0; i < n; ++i) u = f[static_cast<std::size_t>(u)];  // now on a cycle
    return orbit_parameters(f, u, n);
}

/// Homotopy type of the clique complex of a cyclic graph: contractible, an
/// odd sphere S^{2k+1}, or a wedge of even spheres with m >= 1 copies.
struct homotopy_type {
    enum class kind_t { point, odd_sphere, even_wedge };
    kind_t kind = kind_t::point;
    int k = 0;       // sphere dimension 2k+1 (odd) or 2k (even)
    int copies = 0;  // wedge copies, >= 1 for even_wedge

    static homotopy_type point() { return {}; }
    static homotopy_type odd_sphere(int k) { return {kind_t::odd_sphere, k, 1}; }
    static homotopy_type even_wedge(int copies, int k) {
        if (copies <= 0) return point();  // the 0-fold wedge is a point
        return {kind_t::even_wedge, k, copies};
    }

    int sphere_dim() const { return kind == kind_t::odd_sphere ? 2 * k + 1 : 2 * k; }

    std::string to_string() const {
        switch (kind) {
            case kind_t::point: return "point";
            case kind_t::odd_sphere: return "S^" + std::to_string(2 * k + 1);
            case kind_t::even_wedge:
                if (copies == 1) return "S^" + std::to_string(2 * k);
                return "wedge(" + std::to_string(copies) + ", S^" + std::to_string(2 * k) + ")";
        }
        return "point";
    }

    bool operator==(const homotopy_type&) const = default;
};

/// Classification of Cl(G) from the winding fraction and orbit count:
/// a wedge of P-1 copies of S^{2k} when wf = k/(2k+1) exactly, otherwise
/// S^{2k+1} for the unique k with k/(2k+1) < wf < (k+1)/(2k+3).
inline homotopy_type classify(const winding_fraction& wf, std::int32_t orbit_count) {
    if (orbit_count < 1) throw std::domain_error("classify: need at least one periodic orbit");
    if (wf.omega < 0 || wf.ell <= 0 || wf.compare(1, 2) >= 0)
        throw std::domain_error("classify: winding fraction must lie in [0, 1/2)");
    // largest k with k/(2k+1) <= wf, via k <= omega / (ell - 2*omega)
    std::int64_t k = wf.omega / (wf.ell - 2 * wf.omega);
    if (wf.compare(k, 2 * k + 1) == 0)
        return homotopy_type::even_wedge(orbit_count - 1, static_cast<int>(k));
    return homotopy_type::odd_sphere(static_cast<int>(k));
}

/// Homotopy type of Cl(G): contractible for cones, otherwise classified from
/// the dynamics.
inline homotopy_type homotopy_type_of(const graph& g) {
    if (is_cone(g)) return homotopy_type::point();
    auto st = dynamics_of(g);
    vertex_t rep = 0;
    for (vertex_t v = 0; v < g.size(); ++v)
        if (st.periodic[static_cast<std::size_t>(v)]) {
            rep = v;
            break;
        }
    auto wf = orbit_parameters(st.f, rep, g.size());
    return classify(wf, st.orbit_count);
}

}  // namespace cyclic
