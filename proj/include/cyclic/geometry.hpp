#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cyclic/graph.hpp"

namespace cyclic::geo {

struct not_convex_position : std::runtime_error {
    int index;
    explicit not_convex_position(int idx)
        : std::runtime_error("point " + std::to_string(idx) +
                             " is not a vertex of the convex hull"),
          index(idx) {}
};

struct not_cyclic_geometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct point_cloud {
    int dim = 2;
    std::vector<double> data;  // row-major, size() * dim entries

    std::size_t size() const { return dim > 0 ? data.size() / static_cast<std::size_t>(dim) : 0; }
    double coord(std::size_t i, int j) const {
        return data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
    }
};

inline double sq_dist(const point_cloud& pts, std::size_t i, std::size_t j) {
    double s = 0;
    for (int c = 0; c < pts.dim; ++c) {
        double d = pts.coord(i, c) - pts.coord(j, c);
        s += d * d;
    }
    return s;
}

inline double dist(const point_cloud& pts, std::size_t i, std::size_t j) {
    return std::sqrt(sq_dist(pts, i, j));
}

struct circle_spec {
    double radius = 1.0;
};
struct ellipse_spec {
    double a = 1.0;
    double b = 1.0;
};
struct moment_curve_spec {
    double alpha = 0.5;
};
using curve_spec = std::variant<circle_spec, ellipse_spec, moment_curve_spec>;

inline void append_curve_point(point_cloud& out, const curve_spec& spec, double t) {
    if (const auto* c = std::get_if<circle_spec>(&spec)) {
        out.data.push_back(c->radius * std::cos(t));
        out.data.push_back(c->radius * std::sin(t));
    } else if (const auto* e = std::get_if<ellipse_spec>(&spec)) {
        out.data.push_back(e->a * std::cos(t));
        out.data.push_back(e->b * std::sin(t));
    } else {
        const auto& m = std::get<moment_curve_spec>(spec);
        out.data.push_back(std::cos(t));
        out.data.push_back(std::sin(t));
        out.data.push_back(m.alpha * std::cos(3 * t));
        out.data.push_back(m.alpha * std::sin(3 * t));
    }
}

inline point_cloud sample_curve(const curve_spec& spec, const std::vector<double>& angles) {
    point_cloud out;
    out.dim = std::holds_alternative<moment_curve_spec>(spec) ? 4 : 2;
    out.data.reserve(angles.size() * static_cast<std::size_t>(out.dim));
    for (double t : angles) append_curve_point(out, spec, t);
    return out;
}

/// Evenly spaced parameters.
inline point_cloud sample_curve(const curve_spec& spec, int n) {
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        angles[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / n;
    return sample_curve(spec, angles);
}

/// Seeded random parameters, sorted so the sample is in parameter order.
inline point_cloud sample_curve(const curve_spec& spec, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist01(0.0, 2.0 * std::numbers::pi);
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (auto& t : angles) t = dist01(rng);
    std::sort(angles.begin(), angles.end());
    return sample_curve(spec, angles);
}

namespace detail {

// Sign of the turn a->b->c with a fixed relative tolerance; 0 means the
// triple counts as collinear.
inline int turn_sign(const point_cloud& pts, int a, int b, int c, double tol) {
    double cross = (pts.coord(static_cast<std::size_t>(b), 0) - pts.coord(static_cast<std::size_t>(a), 0)) *
                       (pts.coord(static_cast<std::size_t>(c), 1) - pts.coord(static_cast<std::size_t>(a), 1)) -
                   (pts.coord(static_cast<std::size_t>(b), 1) - pts.coord(static_cast<std::size_t>(a), 1)) *
                       (pts.coord(static_cast<std::size_t>(c), 0) - pts.coord(static_cast<std::size_t>(a), 0));
    if (cross > tol) return 1;
    if (cross < -tol) return -1;
    return 0;
}

}  // namespace detail

/// Counterclockwise convex-hull order of strictly convex planar points,
/// starting from the lexicographically least point. Throws
/// not_convex_position when some point is interior or collinear on the hull.
/// Collinearity uses a fixed 1e-12 tolerance relative to the coordinate span.
inline std::vector<int> cyclic_order(const point_cloud& pts) {
    if (pts.dim != 2) throw std::invalid_argument("cyclic_order needs planar points");
    const int n = static_cast<int>(pts.size());
    if (n < 3) {
        std::vector<int> trivial(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) trivial[static_cast<std::size_t>(i)] = i;
        return trivial;
    }
    double scale = 1.0;
    for (double v : pts.data) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * scale * scale;

    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        auto ka = std::pair(pts.coord(static_cast<std::size_t>(a), 0),
                            pts.coord(static_cast<std::size_t>(a), 1));
        auto kb = std::pair(pts.coord(static_cast<std::size_t>(b), 0),
                            pts.coord(static_cast<std::size_t>(b), 1));
        return ka < kb;
    });

    // monotone chain, strict turns only
    std::vector<int> hull;
    auto build = [&](auto begin, auto end) {
        std::size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   detail::turn_sign(pts, hull[hull.size() - 2], hull.back(), *it, tol) <= 0)
                hull.pop_back();
            hull.push_back(*it);
        }
        hull.pop_back();
    };
    build(idx.begin(), idx.end());
    build(idx.rbegin(), idx.rend());

    if (static_cast<int>(hull.size()) != n) {
        std::vector<char> on_hull(static_cast<std::size_t>(n), 0);
        for (int h : hull) on_hull[static_cast<std::size_t>(h)] = 1;
        for (int i = 0; i < n; ++i)
            if (!on_hull[static_cast<std::size_t>(i)]) throw not_convex_position(i);
        throw not_convex_position(hull.empty() ? 0 : hull.front());  // duplicates
    }
    // monotone chain emits ccw order beginning at the lexicographic minimum
    return hull;
}

/// Directed edge chosen for the next shortest pair, in cyclic-order indices.
struct oriented_edge {
    vertex_t source;
    vertex_t target;
    double scale;
};

struct cone_hit {
    vertex_t apex;
};

/// Infers the direction of the next shortest absent pair {x, y}. The new
/// edge must extend an out-interval by exactly one slot (that is what an
/// add_edge step encodes); which side extends is read off the interval
/// boundaries, exactly one of which touches {x, y} in sound convex-position
/// geometry. A vertex about to attain full degree means the complex has
/// become a cone. A both-ways-representable pair is provably a cone
/// completion as well, so the tie branch below is only a totality fallback
/// (shorter counterclockwise arc, ties counterclockwise from x).
inline std::variant<oriented_edge, cone_hit> orient_new_edge(const graph& g,
                                                             const std::vector<vertex_t>& indeg,
                                                             vertex_t x, vertex_t y,
                                                             double scale = 0.0) {
    const vertex_t n = g.size();
    auto undirected_degree = [&](vertex_t v) {
        return g.reach[static_cast<std::size_t>(v)] + indeg[static_cast<std::size_t>(v)];
    };
    if (undirected_degree(x) == n - 2) return cone_hit{x};
    if (undirected_degree(y) == n - 2) return cone_hit{y};

    auto out_extends = [&](vertex_t from, vertex_t to) {
        return (from + g.reach[static_cast<std::size_t>(from)] + 1) % n == to;
    };
    auto in_extends = [&](vertex_t from, vertex_t to) {
        // `from` sits one slot clockwise of `to`'s in-interval
        return ((to - indeg[static_cast<std::size_t>(to)] - 1) % n + n) % n == from;
    };
    const bool enc_xy = out_extends(x, y) && can_add_edge(g, x);
    const bool enc_yx = out_extends(y, x) && can_add_edge(g, y);
    if (enc_xy && enc_yx) {
        const bool vote_xy = in_extends(x, y);
        const bool vote_yx = in_extends(y, x);
        if (vote_xy != vote_yx)
            return vote_xy ? oriented_edge{x, y, scale} : oriented_edge{y, x, scale};
        vertex_t ccw = g.gap(x, y);
        return ccw * 2 <= n ? oriented_edge{x, y, scale} : oriented_edge{y, x, scale};
    }
    if (enc_xy) return oriented_edge{x, y, scale};
    if (enc_yx) return oriented_edge{y, x, scale};
    throw not_cyclic_geometry("pair {" + std::to_string(x) + "," + std::to_string(y) +
                              "} admits no cyclicity-preserving orientation");
}

/// Vietoris-Rips filtration of points with a given counterclockwise order:
/// all pairs sorted by distance (ties by index), oriented one at a time;
/// the filtration is truncated once the complex turns contractible. That
/// happens through a full-degree vertex (a cone), or, when the scale passes
/// the point where the underlying curve cones off before any sample vertex
/// completes, through a pair that admits no cyclicity-preserving
/// orientation. Both truncations carry the triggering scale.
inline filtration build_filtration(const point_cloud& pts, const std::vector<int>& order) {
    const vertex_t n = static_cast<vertex_t>(pts.size());
    if (static_cast<vertex_t>(order.size()) != n)
        throw std::invalid_argument("cyclic order size mismatch");

    struct pair_rec {
        double d;
        vertex_t i, j;  // cyclic-order indices, i < j
    };
    std::vector<pair_rec> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (vertex_t i = 0; i < n; ++i)
        for (vertex_t j = i + 1; j < n; ++j) {
            double d = dist(pts, static_cast<std::size_t>(order[static_cast<std::size_t>(i)]),
                            static_cast<std::size_t>(order[static_cast<std::size_t>(j)]));
            if (d == 0.0) throw not_convex_position(order[static_cast<std::size_t>(j)]);
            pairs.push_back({d, i, j});
        }
    std::sort(pairs.begin(), pairs.end(), [](const pair_rec& a, const pair_rec& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    filtration out;
    out.initial = graph(n);
    graph g = out.initial;
    std::vector<vertex_t> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& pr : pairs) {
        try {
            auto res = orient_new_edge(g, indeg, pr.i, pr.j, pr.d);
            if (const auto* cone = std::get_if<cone_hit>(&res)) {
                out.cone = cone_event{cone->apex, pr.d};
                break;
            }
            const auto& e = std::get<oriented_edge>(res);
            out.steps.push_back(add_edge{e.source});
            out.scales.push_back(e.scale);
            ++g.reach[static_cast<std::size_t>(e.source)];
            ++indeg[static_cast<std::size_t>(e.target)];
        } catch (const not_cyclic_geometry&) {
            out.cone = cone_event{std::nullopt, pr.d};
            break;
        }
    }
    return out;
}

/// Planar overload: the order is recovered from the convex hull.
inline filtration build_filtration(const point_cloud& pts) {
    return build_filtration(pts, cyclic_order(pts));
}

/// Whether the convex hull of the ellipse with semi-axes a >= b contains its
/// evolute, i.e. a/b <= sqrt(2). The comparison allows 1e-12 relative slack
/// so the boundary ratio holds under floating-point rounding.
inline bool ellipse_evolute_contained(double a, double b) {
    if (!(a >= b) || !(b > 0)) throw std::domain_error("require a >= b > 0");
    return a * a - 2 * b * b <= 1e-12 * (a * a + 2 * b * b);
}

/// Point of the evolute of the ellipse (a cos t, b sin t).
inline std::pair<double, double> ellipse_evolute_point(double a, double b, double t) {
    double c = std::cos(t), s = std::sin(t);
    return {(a * a - b * b) / a * c * c * c, (b * b - a * a) / b * s * s * s};
}

/// Squared distance between points of the scaled symmetric moment curve at
/// parameter offset t: 2(1 - cos t + a^2 - a^2 cos 3t), evaluated in the
/// half-angle form 4 sin^2(t/2) + 4 a^2 sin^2(3t/2) which stays accurate for
/// offsets near 0 and 2 pi.
inline double moment_sq_dist(double alpha, double t) {
    double s1 = std::sin(0.5 * t);
    double s3 = std::sin(1.5 * t);
    return 4.0 * (s1 * s1 + alpha * alpha * s3 * s3);
}

/// Whether the squared-distance function along the curve has critical points
/// only at offsets 0 and pi, so balls meet the curve in single arcs at every
/// radius up to the diameter.
inline bool moment_arc_condition(double alpha) { return alpha < 1.0 / std::sqrt(3.0); }

/// Empirical arc condition at one radius: every closed ball around a sample
/// point meets the sample in a contiguous run of the cyclic order.
inline bool arc_condition_check(const point_cloud& pts, const std::vector<int>& order, double r) {
    const int n = static_cast<int>(pts.size());
    std::vector<char> in_ball(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            in_ball[static_cast<std::size_t>(b)] =
                b == a || dist(pts, static_cast<std::size_t>(order[static_cast<std::size_t>(a)]),
                               static_cast<std::size_t>(order[static_cast<std::size_t>(b)])) <= r;
        int falling = 0;
        for (int b = 0; b < n; ++b)
            if (in_ball[static_cast<std::size_t>(b)] && !in_ball[static_cast<std::size_t>((b + 1) % n)])
                ++falling;
        if (falling > 1) return false;
    }
    return true;
}

/// Arc condition at every radius at once: from each sample point, distance
/// must be weakly unimodal around the cyclic order (no interior dip).
inline bool arc_condition_all_scales(const point_cloud& pts, const std::vector<int>& order) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> d(static_cast<std::size_t>(std::max(n - 1, 0)));
    for (int a = 0; a < n; ++a) {
        for (int s = 1; s < n; ++s)
            d[static_cast<std::size_t>(s - 1)] =
                dist(pts, static_cast<std::size_t>(order[static_cast<std::size_t>(a)]),
                     static_cast<std::size_t>(order[static_cast<std::size_t>((a + s) % n)]));
        double run_max = -1.0;
        double later_max = -1.0;
        std::vector<double> max_after(d.size() + 1, -1.0);
        for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
            later_max = std::max(later_max, d[static_cast<std::size_t>(i)]);
            max_after[static_cast<std::size_t>(i)] = later_max;
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] < run_max && d[i] < max_after[i + 1]) return false;
            run_max = std::max(run_max, d[i]);
        }
    }
    return true;
}

/// Largest pairwise distance of the sample.
inline double diameter(const point_cloud& pts) {
    double best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts, i, j));
    return best;
}

}  // namespace cyclic::geo
