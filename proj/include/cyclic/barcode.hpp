#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

#include "cyclic/graph.hpp"

namespace cyclic {

/// One dimension-tagged birth-death pair, index-valued with optional scale
/// stamps. Death is absent for classes alive at the end of the filtration.
/// `labels` records the periodic-orbit provenance of even-dimensional
/// intervals, oldest label first.
struct persistence_interval {
    int dim = 0;
    step_index_t birth = 0;
    std::optional<step_index_t> death;
    std::optional<double> birth_scale;
    std::optional<double> death_scale;
    std::vector<std::int32_t> labels;

    bool scale_degenerate() const {
        return birth_scale && death_scale && *birth_scale == *death_scale;
    }
};

struct barcode {
    std::vector<persistence_interval> intervals;
    vertex_t n_final = 0;
    std::vector<int> dims;
};

inline void sort_intervals(barcode& b) {
    std::sort(b.intervals.begin(), b.intervals.end(),
              [](const persistence_interval& x, const persistence_interval& y) {
                  auto key = [](const persistence_interval& i) {
                      return std::tuple(i.dim, i.birth,
                                        i.death.value_or(std::numeric_limits<step_index_t>::max()));
                  };
                  return key(x) < key(y);
              });
}

/// Copies scale stamps from a filtration onto index-valued intervals.
/// Index 0 maps to scale 0; index i >= 1 to the scale of step i; one index
/// past the last step maps to the cone scale when present.
inline void attach_scales(barcode& b, const filtration& f) {
    if (!f.has_scales()) return;
    const step_index_t last = static_cast<step_index_t>(f.num_steps());
    auto scale_of = [&](step_index_t i) -> std::optional<double> {
        if (i <= last) return f.scale_at(i);
        if (f.cone && f.cone->scale) return *f.cone->scale;
        return std::nullopt;
    };
    for (auto& itv : b.intervals) {
        itv.birth_scale = scale_of(itv.birth);
        if (itv.death) itv.death_scale = scale_of(*itv.death);
    }
}

/// (dim, birth, death) triples for multiset comparison across implementations.
inline std::vector<std::tuple<int, step_index_t, step_index_t>> index_triples(const barcode& b) {
    std::vector<std::tuple<int, step_index_t, step_index_t>> out;
    out.reserve(b.intervals.size());
    for (const auto& i : b.intervals)
        out.emplace_back(i.dim, i.birth,
                         i.death.value_or(std::numeric_limits<step_index_t>::max()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cyclic
