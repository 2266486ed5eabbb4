#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cyclic/barcode.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/graph.hpp"

namespace cyclic {

struct orbit_created {
    step_index_t step;
    int dim;
    std::int32_t label;
    bool operator==(const orbit_created&) const = default;
};
struct orbit_destroyed {
    step_index_t step;
    int dim;
    std::int32_t label;
    std::optional<std::int32_t> survivor;
    bool operator==(const orbit_destroyed&) const = default;
};
struct label_moved {
    step_index_t step;
    int dim;
    std::int32_t from;
    std::int32_t to;
    bool operator==(const label_moved&) const = default;
};
struct cone_reached {
    step_index_t step;
    int dim;
    vertex_t apex;
    bool operator==(const cone_reached&) const = default;
};

using event = std::variant<orbit_created, orbit_destroyed, label_moved, cone_reached>;
using event_log = std::vector<event>;

struct scan_options {
    /// After every step, recompute f, the periodic flags, and the orbit count
    /// from scratch and compare with the maintained state (throws
    /// std::logic_error on disagreement).
    bool check_invariants = false;
};

struct even_scan_result {
    barcode bars;  // dimension-2k intervals, index-valued
    event_log events;
    std::optional<step_index_t> first_orbit_step;  // earliest index with a tracked orbit
    std::optional<step_index_t> last_orbit_step;   // latest index with a tracked orbit
    std::optional<step_index_t> cone_step;
    std::optional<vertex_t> cone_apex;
};

namespace detail {

/// Fast unvalidated prefix replay (the inputs have been validated by the
/// scans before the resolver ever replays them).
inline graph replay_prefix(const filtration& filt, step_index_t upto) {
    graph g = filt.initial;
    for (step_index_t i = 0; i < upto; ++i) {
        const auto& s = filt.steps[static_cast<std::size_t>(i)];
        if (const auto* e = std::get_if<add_edge>(&s)) {
            ++g.reach[static_cast<std::size_t>(e->source)];
        } else {
            auto res = vertex_insertion_reach(g, std::get<add_vertex>(s));
            g.reach = std::move(std::get<std::vector<vertex_t>>(res));
        }
    }
    return g;
}

/// The dimension-2k scan: maintains the cyclic dynamics f, the periodic
/// flags, and the count of orbits of winding fraction k/(2k+1) across one
/// pass over the filtration, together with interval bookkeeping.
class even_scan {
public:
    even_scan(const filtration& filt, int k, scan_options opt)
        : filt_(filt), k_(k), walk_len_(2 * k + 1), opt_(opt) {}

    even_scan_result run() {
        init();
        const auto m = static_cast<step_index_t>(filt_.steps.size());
        for (step_index_t i = 1; i <= m; ++i) {
            const auto& s = filt_.steps[static_cast<std::size_t>(i - 1)];
            if (const auto* e = std::get_if<add_edge>(&s))
                process_edge(*e, i);
            else
                process_vertex(std::get<add_vertex>(s), i);
            note_orbit_presence(i);
            if (opt_.check_invariants) verify_state();
        }
        if (filt_.cone && !frozen_) freeze(m + 1, filt_.cone->apex.value_or(-1));
        return finish();
    }

private:
    const filtration& filt_;
    const int k_;
    const vertex_t walk_len_;
    const scan_options opt_;

    vertex_t n_ = 0;
    std::vector<vertex_t> reach_, f_, deg_;
    std::vector<char> periodic_;
    std::vector<std::int32_t> label_;
    std::int64_t orbit_count_ = 0;  // P: live orbits of winding fraction k/(2k+1)

    struct orbit_info {
        step_index_t birth;
        std::int64_t itv;  // index into itvs_, or -1 for the basepoint class
    };
    std::unordered_map<std::int32_t, orbit_info> alive_;
    std::int32_t next_label_ = 0;

    struct itv_rec {
        step_index_t birth;
        step_index_t death = -1;  // -1 = open
        std::vector<std::int32_t> labels;
    };
    std::vector<itv_rec> itvs_;
    std::int64_t open_itvs_ = 0;

    bool frozen_ = false;
    even_scan_result result_;

    void init() {
        n_ = filt_.initial.size();
        reach_ = filt_.initial.reach;
        f_ = dynamics_map(filt_.initial);
        deg_ = all_degrees(filt_.initial);
        periodic_.assign(static_cast<std::size_t>(n_), 0);
        label_.assign(static_cast<std::size_t>(n_), -1);

        auto st = dynamics_of(filt_.initial);
        std::vector<std::int32_t> created;
        std::vector<char> seen(static_cast<std::size_t>(std::max(st.orbit_count, 1)), 0);
        for (vertex_t v = 0; v < n_; ++v) {
            if (!st.periodic[static_cast<std::size_t>(v)]) continue;
            auto raw = st.orbit_label[static_cast<std::size_t>(v)];
            if (seen[static_cast<std::size_t>(raw)]) continue;
            seen[static_cast<std::size_t>(raw)] = 1;
            auto params = orbit_parameters(st.f, v, n_);
            if (params.ell == walk_len_ && params.omega == k_) {
                std::int32_t lab = next_label_++;
                mark_orbit(v, lab);
                ++orbit_count_;
                created.push_back(lab);
            }
        }
        bookkeeping(0, {}, created);
        note_orbit_presence(0);
        check_cone_full(0);
        if (opt_.check_invariants) verify_state();
    }

    void mark_orbit(vertex_t start, std::int32_t lab) {
        vertex_t y = start;
        do {
            periodic_[static_cast<std::size_t>(y)] = 1;
            label_[static_cast<std::size_t>(y)] = lab;
            y = f_[static_cast<std::size_t>(y)];
        } while (y != start);
    }

    void unmark_orbit(vertex_t start) {
        vertex_t y = start;
        do {
            periodic_[static_cast<std::size_t>(y)] = 0;
            label_[static_cast<std::size_t>(y)] = -1;
            y = f_[static_cast<std::size_t>(y)];
        } while (y != start);
    }

    // Walks 2k+1 steps from u; marks a fresh orbit when the walk closed up
    // after winding exactly k times.
    std::optional<std::int32_t> try_create(vertex_t u) {
        vertex_t y = u;
        std::int64_t gap = 0;
        for (vertex_t s = 0; s < walk_len_; ++s) {
            vertex_t next = f_[static_cast<std::size_t>(y)];
            gap += ((next - y) % n_ + n_) % n_;
            y = next;
        }
        if (y != u || gap != static_cast<std::int64_t>(k_) * n_) return std::nullopt;
        std::int32_t lab = next_label_++;
        mark_orbit(u, lab);
        ++orbit_count_;
        return lab;
    }

    std::optional<std::int32_t> find_survivor(vertex_t from) const {
        if (orbit_count_ == 0) return std::nullopt;
        vertex_t y = from;
        // with live orbits present the trajectory must enter one; the cap
        // only guards against a state corruption
        for (std::int64_t s = 0; s <= 2 * static_cast<std::int64_t>(n_) + walk_len_; ++s) {
            if (periodic_[static_cast<std::size_t>(y)])
                return label_[static_cast<std::size_t>(y)];
            y = f_[static_cast<std::size_t>(y)];
        }
        return std::nullopt;
    }

    bool edge_addable(vertex_t src) const {
        if (n_ < 2 || src < 0 || src >= n_) return false;
        vertex_t r = reach_[static_cast<std::size_t>(src)];
        if (r + 1 > n_ - 1) return false;
        if (reach_[static_cast<std::size_t>((src + 1) % n_)] < r) return false;
        vertex_t t = static_cast<vertex_t>((src + r + 1) % n_);
        return reach_[static_cast<std::size_t>(t)] + r + 1 < n_;
    }

    void process_edge(const add_edge& e, step_index_t i) {
        const vertex_t src = e.source;
        if (!edge_addable(src))
            throw invalid_step("filtration step " + std::to_string(i) +
                               ": add_edge at vertex " + std::to_string(src) +
                               " breaks a cyclic graph invariant");
        std::vector<std::pair<std::int32_t, vertex_t>> destroyed;
        if (periodic_[static_cast<std::size_t>(src)]) {
            destroyed.emplace_back(label_[static_cast<std::size_t>(src)], src);
            unmark_orbit(src);
            --orbit_count_;
        }
        ++reach_[static_cast<std::size_t>(src)];
        const vertex_t tgt =
            static_cast<vertex_t>((src + reach_[static_cast<std::size_t>(src)]) % n_);
        f_[static_cast<std::size_t>(src)] = tgt;
        ++deg_[static_cast<std::size_t>(src)];
        ++deg_[static_cast<std::size_t>(tgt)];

        std::vector<std::int32_t> created;
        if (auto lab = try_create(src)) created.push_back(*lab);

        bookkeeping(i, destroyed, created);

        if (deg_[static_cast<std::size_t>(src)] == n_ - 1)
            check_cone(i, src);
        else if (deg_[static_cast<std::size_t>(tgt)] == n_ - 1)
            check_cone(i, tgt);
    }

    void process_vertex(const add_vertex& av, step_index_t i) {
        auto res = vertex_insertion_reach(graph{reach_}, av);
        if (auto* err = std::get_if<std::string>(&res))
            throw invalid_step("filtration step " + std::to_string(i) + ": add_vertex: " + *err);

        const vertex_t p = av.position;
        const vertex_t slot = static_cast<vertex_t>(p % n_);
        const vertex_t n_new = n_ + 1;

        // vertices whose dynamics pointer changes: the new vertex, plus every
        // in_source for which the new vertex lands beyond its old interval
        std::vector<vertex_t> changed;  // post-insertion labels
        changed.push_back(p);
        for (vertex_t u : av.in_sources) {
            vertex_t c = detail::slot_cross(u, slot, n_);
            if (c == reach_[static_cast<std::size_t>(u)] + 1)
                changed.push_back(u < p ? u : static_cast<vertex_t>(u + 1));
        }
        std::sort(changed.begin(), changed.end());

        reach_ = std::move(std::get<std::vector<vertex_t>>(res));
        auto shift = [&](vertex_t x) { return x < p ? x : static_cast<vertex_t>(x + 1); };
        for (auto& x : f_) x = shift(x);
        f_.insert(f_.begin() + p, p);
        periodic_.insert(periodic_.begin() + p, 0);
        label_.insert(label_.begin() + p, -1);
        n_ = n_new;

        std::vector<std::pair<std::int32_t, vertex_t>> destroyed;
        for (vertex_t u : changed) {
            if (!periodic_[static_cast<std::size_t>(u)]) continue;
            destroyed.emplace_back(label_[static_cast<std::size_t>(u)], u);
            unmark_orbit(u);
            --orbit_count_;
        }
        for (vertex_t u : changed)
            f_[static_cast<std::size_t>(u)] =
                reach_[static_cast<std::size_t>(u)] == 0
                    ? u
                    : static_cast<vertex_t>((u + reach_[static_cast<std::size_t>(u)]) % n_);

        std::vector<std::int32_t> created;
        for (vertex_t u : changed)
            if (!periodic_[static_cast<std::size_t>(u)])
                if (auto lab = try_create(u)) created.push_back(*lab);

        deg_ = all_degrees(graph{reach_});
        bookkeeping(i, destroyed, created);
        check_cone_full(i);
    }

    void bookkeeping(step_index_t i,
                     const std::vector<std::pair<std::int32_t, vertex_t>>& destroyed,
                     const std::vector<std::int32_t>& created) {
        if (frozen_) return;
        const std::int64_t before_creations =
            orbit_count_ - static_cast<std::int64_t>(created.size());
        std::int64_t running = before_creations;
        for (std::int32_t lab : created) {
            if (running == 0) {
                alive_[lab] = {i, -1};  // the class reduced homology quotients away
            } else {
                itvs_.push_back({i, -1, {lab}});
                ++open_itvs_;
                alive_[lab] = {i, static_cast<std::int64_t>(itvs_.size()) - 1};
            }
            ++running;
            result_.events.push_back(orbit_created{i, 2 * k_, lab});
        }
        for (auto [lab, break_vertex] : destroyed) {
            auto survivor = find_survivor(break_vertex);
            if (!survivor) {
                auto it = alive_.find(lab);
                if (it->second.itv >= 0) close_interval(it->second.itv, i);
                alive_.erase(it);
                result_.events.push_back(orbit_destroyed{i, 2 * k_, lab, std::nullopt});
            } else {
                merge(lab, *survivor, i);
                result_.events.push_back(orbit_destroyed{i, 2 * k_, lab, survivor});
            }
        }
        assert(frozen_ || open_itvs_ == std::max<std::int64_t>(orbit_count_ - 1, 0));
    }

    // Ends the younger of the two classes carried by orbits dying/surviving,
    // where the basepoint class (no interval) outranks every interval. The
    // continuing class is carried by the surviving orbit afterwards.
    void merge(std::int32_t dying, std::int32_t surviving, step_index_t i) {
        auto d = alive_.find(dying);
        auto s = alive_.find(surviving);
        if (d->second.itv < 0 && s->second.itv < 0) {
            // lone orbit relabeled; the basepoint class just moves
        } else if (d->second.itv < 0) {
            close_interval(s->second.itv, i);
            s->second.itv = -1;
        } else if (s->second.itv < 0) {
            close_interval(d->second.itv, i);
        } else {
            const auto& di = itvs_[static_cast<std::size_t>(d->second.itv)];
            const auto& si = itvs_[static_cast<std::size_t>(s->second.itv)];
            auto key = [](const itv_rec& r) { return std::pair(r.birth, r.labels.front()); };
            if (key(di) < key(si)) {
                // the dying orbit carries the elder interval: it continues,
                // relabeled by the surviving orbit
                close_interval(s->second.itv, i);
                itvs_[static_cast<std::size_t>(d->second.itv)].labels.push_back(surviving);
                result_.events.push_back(label_moved{i, 2 * k_, dying, surviving});
                s->second.itv = d->second.itv;
            } else {
                close_interval(d->second.itv, i);
            }
        }
        alive_.erase(d);
    }

    void close_interval(std::int64_t idx, step_index_t i) {
        itvs_[static_cast<std::size_t>(idx)].death = i;  // birth == death drops later
        --open_itvs_;
    }

    void check_cone(step_index_t i, vertex_t apex) {
        if (!frozen_) freeze(i, apex);
    }

    void check_cone_full(step_index_t i) {
        if (frozen_ || n_ < 2) return;
        for (vertex_t v = 0; v < n_; ++v)
            if (deg_[static_cast<std::size_t>(v)] == n_ - 1) {
                freeze(i, v);
                return;
            }
    }

    void freeze(step_index_t i, vertex_t apex) {
        for (auto& [lab, info] : alive_)
            if (info.itv >= 0) {
                close_interval(info.itv, i);
                info.itv = -1;
            }
        result_.events.push_back(cone_reached{i, 2 * k_, apex});
        result_.cone_step = i;
        result_.cone_apex = apex;
        frozen_ = true;
    }

    void note_orbit_presence(step_index_t i) {
        if (orbit_count_ < 1) return;
        if (!result_.first_orbit_step) result_.first_orbit_step = i;
        result_.last_orbit_step = i;
    }

    void verify_state() const {
        graph g{reach_};
        auto st = dynamics_of(g);
        if (st.f != f_) throw std::logic_error("scan invariant: dynamics map drifted");
        std::int64_t expect_count = 0;
        std::vector<char> expect_periodic(static_cast<std::size_t>(n_), 0);
        std::vector<char> seen(static_cast<std::size_t>(std::max(st.orbit_count, 1)), 0);
        for (vertex_t v = 0; v < n_; ++v) {
            if (!st.periodic[static_cast<std::size_t>(v)]) continue;
            auto raw = st.orbit_label[static_cast<std::size_t>(v)];
            if (seen[static_cast<std::size_t>(raw)]) continue;
            seen[static_cast<std::size_t>(raw)] = 1;
            auto params = orbit_parameters(st.f, v, n_);
            if (params.ell == walk_len_ && params.omega == k_) {
                ++expect_count;
                vertex_t y = v;
                do {
                    expect_periodic[static_cast<std::size_t>(y)] = 1;
                    y = st.f[static_cast<std::size_t>(y)];
                } while (y != v);
            }
        }
        if (expect_periodic != periodic_)
            throw std::logic_error("scan invariant: periodic flags drifted");
        if (expect_count != orbit_count_)
            throw std::logic_error("scan invariant: orbit count drifted");
    }

    even_scan_result finish() {
        result_.bars.n_final = n_;
        result_.bars.dims = {2 * k_};
        for (const auto& r : itvs_) {
            if (r.death == r.birth) continue;  // instantaneous class, never visible
            persistence_interval itv;
            itv.dim = 2 * k_;
            itv.birth = r.birth;
            if (r.death >= 0) itv.death = r.death;
            itv.labels = r.labels;
            result_.bars.intervals.push_back(std::move(itv));
        }
        sort_intervals(result_.bars);
        return std::move(result_);
    }
};

/// Memoized exact winding fractions of prefix graphs.
class wf_cache {
public:
    explicit wf_cache(const filtration& f) : filt_(f) {}

    winding_fraction at(step_index_t s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        auto wf = compute_winding_fraction(replay_prefix(filt_, s));
        memo_.emplace(s, wf);
        return wf;
    }

private:
    const filtration& filt_;
    std::map<step_index_t, winding_fraction> memo_;
};

/// First index in [0, m] satisfying a predicate that is monotone along the
/// filtration (winding fractions never decrease); m+1 when none does.
template <typename Pred>
step_index_t first_step_where(wf_cache& cache, step_index_t m, Pred pred) {
    if (!pred(cache.at(m))) return m + 1;
    if (pred(cache.at(0))) return 0;
    step_index_t lo = 0, hi = m;
    while (hi - lo > 1) {
        step_index_t mid = lo + (hi - lo) / 2;
        (pred(cache.at(mid)) ? hi : lo) = mid;
    }
    return hi;
}

/// The single dimension-(2k+1) interval, when it exists: born when the
/// winding fraction first exceeds k/(2k+1), dead when it reaches
/// (k+1)/(2k+3) or the filtration reaches a cone.
inline std::optional<persistence_interval> derive_odd_interval(
    const filtration& filt, int k, const even_scan_result& low, const even_scan_result& high,
    wf_cache& cache) {
    const auto m = static_cast<step_index_t>(filt.steps.size());
    const std::int64_t lo_num = k, lo_den = 2 * k + 1;
    const std::int64_t hi_num = k + 1, hi_den = 2 * k + 3;
    auto above_lo = [&](const winding_fraction& w) { return w.compare(lo_num, lo_den) > 0; };
    auto at_hi = [&](const winding_fraction& w) { return w.compare(hi_num, hi_den) >= 0; };

    // birth: the step right after the last tracked k/(2k+1) orbit, verified
    // against the exact winding fraction; binary search otherwise
    step_index_t birth;
    if (low.last_orbit_step && *low.last_orbit_step >= m) {
        return std::nullopt;  // equality regime still alive at the end
    } else if (low.last_orbit_step && above_lo(cache.at(*low.last_orbit_step + 1)) &&
               !above_lo(cache.at(*low.last_orbit_step))) {
        birth = *low.last_orbit_step + 1;
    } else {
        birth = first_step_where(cache, m, above_lo);
        if (birth > m) return std::nullopt;
    }

    step_index_t death;
    if (high.first_orbit_step && at_hi(cache.at(*high.first_orbit_step)) &&
        (*high.first_orbit_step == 0 || !at_hi(cache.at(*high.first_orbit_step - 1)))) {
        death = *high.first_orbit_step;
    } else {
        death = first_step_where(cache, m, at_hi);
    }

    constexpr step_index_t never = std::numeric_limits<step_index_t>::max();
    step_index_t cone_at = never;
    if (low.cone_step) cone_at = *low.cone_step;
    if (birth >= cone_at) return std::nullopt;
    step_index_t death_at = death <= m ? death : never;
    if (cone_at < death_at) death_at = cone_at;

    if (death_at <= birth) return std::nullopt;
    persistence_interval itv;
    itv.dim = 2 * k + 1;
    itv.birth = birth;
    if (death_at != never) itv.death = death_at;
    return itv;
}

}  // namespace detail

/// Dimension-2k persistent homology of a filtration by the online orbit scan.
inline even_scan_result even_persistence(const filtration& filt, int k, scan_options opt = {}) {
    if (k < 0) throw std::domain_error("homological dimension must be non-negative");
    return detail::even_scan(filt, k, opt).run();
}

/// Dimension-(2k+1) persistent homology, derived from the even scans in
/// dimensions 2k and 2k+2.
inline barcode odd_persistence(const filtration& filt, int k, scan_options opt = {}) {
    auto low = even_persistence(filt, k, opt);
    auto high = even_persistence(filt, k + 1, opt);
    detail::wf_cache cache(filt);
    barcode out;
    out.n_final = low.bars.n_final;
    out.dims = {2 * k + 1};
    if (auto itv = detail::derive_odd_interval(filt, k, low, high, cache))
        out.intervals.push_back(std::move(*itv));
    sort_intervals(out);
    return out;
}

/// Persistent homology in every dimension up to max_dim; scale-valued
/// intervals are attached when the filtration is scale-stamped.
inline barcode full_persistence(const filtration& filt, int max_dim, scan_options opt = {}) {
    if (max_dim < 0) throw std::domain_error("max_dim must be non-negative");
    const int k_top = (max_dim + 1) / 2;
    std::vector<even_scan_result> scans;
    scans.reserve(static_cast<std::size_t>(k_top) + 1);
    for (int k = 0; k <= k_top; ++k) scans.push_back(even_persistence(filt, k, opt));

    barcode out;
    out.n_final = scans.front().bars.n_final;
    for (int d = 0; d <= max_dim; ++d) out.dims.push_back(d);

    for (int k = 0; k <= k_top && 2 * k <= max_dim; ++k)
        for (const auto& itv : scans[static_cast<std::size_t>(k)].bars.intervals)
            out.intervals.push_back(itv);

    detail::wf_cache cache(filt);
    for (int k = 0; 2 * k + 1 <= max_dim; ++k)
        if (auto itv = detail::derive_odd_interval(filt, k, scans[static_cast<std::size_t>(k)],
                                                   scans[static_cast<std::size_t>(k + 1)], cache))
            out.intervals.push_back(std::move(*itv));

    attach_scales(out, filt);
    sort_intervals(out);
    return out;
}

}  // namespace cyclic
