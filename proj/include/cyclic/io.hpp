#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclic/barcode.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/geometry.hpp"
#include "cyclic/graph.hpp"
#include "cyclic/persistence.hpp"

namespace cyclic::io {

using nlohmann::json;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- filtration

inline json filtration_to_json(const filtration& f) {
    json steps = json::array();
    for (const auto& s : f.steps) {
        if (const auto* e = std::get_if<add_edge>(&s)) {
            steps.push_back({{"type", "edge"}, {"source", e->source}});
        } else {
            const auto& av = std::get<add_vertex>(s);
            steps.push_back({{"type", "vertex"},
                             {"position", av.position},
                             {"out_reach", av.out_reach},
                             {"in_sources", av.in_sources}});
        }
    }
    json out{{"n", f.initial.size()}, {"steps", std::move(steps)}};
    bool edgeless = true;
    for (vertex_t r : f.initial.reach) edgeless = edgeless && r == 0;
    if (!edgeless) out["initial_reach"] = f.initial.reach;
    if (!f.scales.empty()) out["scales"] = f.scales;
    if (f.cone) {
        json cone;
        cone["apex"] = f.cone->apex ? json(*f.cone->apex) : json(nullptr);
        if (f.cone->scale) cone["scale"] = *f.cone->scale;
        out["cone"] = std::move(cone);
    }
    return out;
}

inline filtration filtration_from_json(const json& j) {
    filtration f;
    try {
        if (j.contains("initial_reach"))
            f.initial = graph{j.at("initial_reach").get<std::vector<vertex_t>>()};
        else
            f.initial = graph(j.at("n").get<vertex_t>());
        for (const auto& js : j.at("steps")) {
            auto type = js.at("type").get<std::string>();
            if (type == "edge") {
                f.steps.push_back(add_edge{js.at("source").get<vertex_t>()});
            } else if (type == "vertex") {
                add_vertex av;
                av.position = js.at("position").get<vertex_t>();
                av.out_reach = js.at("out_reach").get<vertex_t>();
                av.in_sources = js.at("in_sources").get<std::vector<vertex_t>>();
                f.steps.push_back(std::move(av));
            } else {
                throw parse_error("unknown step type '" + type + "'");
            }
        }
        if (j.contains("scales")) f.scales = j.at("scales").get<std::vector<double>>();
        if (j.contains("cone")) {
            cone_event c;
            const auto& jc = j.at("cone");
            if (jc.contains("apex") && !jc.at("apex").is_null())
                c.apex = jc.at("apex").get<vertex_t>();
            if (jc.contains("scale")) c.scale = jc.at("scale").get<double>();
            f.cone = c;
        }
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad filtration JSON: ") + e.what());
    }
    return f;
}

// ------------------------------------------------------------------- barcode

inline json barcode_to_json(const barcode& b) {
    json intervals = json::array();
    for (const auto& i : b.intervals) {
        json ji{{"dim", i.dim}, {"birth", i.birth}};
        ji["death"] = i.death ? json(*i.death) : json(nullptr);
        if (i.birth_scale) ji["birth_scale"] = *i.birth_scale;
        if (i.death_scale) ji["death_scale"] = *i.death_scale;
        if (i.scale_degenerate()) ji["degenerate_scale"] = true;
        intervals.push_back(std::move(ji));
    }
    return json{{"dims", b.dims}, {"intervals", std::move(intervals)}};
}

inline std::string barcode_to_text(const barcode& b) {
    std::ostringstream out;
    out << "dim\tbirth\tdeath";
    const bool scales = !b.intervals.empty() && b.intervals.front().birth_scale.has_value();
    if (scales) out << "\tbirth_scale\tdeath_scale";
    out << '\n';
    for (const auto& i : b.intervals) {
        out << i.dim << '\t' << i.birth << '\t';
        if (i.death)
            out << *i.death;
        else
            out << "inf";
        if (scales) {
            out << '\t';
            if (i.birth_scale)
                out << *i.birth_scale;
            else
                out << "-";
            out << '\t';
            if (i.death_scale)
                out << *i.death_scale;
            else
                out << (i.death ? "-" : "inf");
            if (i.scale_degenerate()) out << "\t*";
        }
        out << '\n';
    }
    return out.str();
}

/// Presentation toggle: unreduced homology carries one extra everlasting
/// component in dimension 0.
inline barcode with_unreduced_component(barcode b) {
    persistence_interval base;
    base.dim = 0;
    base.birth = 0;
    if (!b.intervals.empty() && b.intervals.front().birth_scale.has_value())
        base.birth_scale = 0.0;
    b.intervals.push_back(std::move(base));
    sort_intervals(b);
    return b;
}

// -------------------------------------------------------------- homotopy type

inline json homotopy_to_json(const homotopy_type& h) {
    switch (h.kind) {
        case homotopy_type::kind_t::point: return json{{"type", "point"}};
        case homotopy_type::kind_t::odd_sphere:
            return json{{"type", "sphere"}, {"dim", 2 * h.k + 1}};
        case homotopy_type::kind_t::even_wedge:
            if (h.copies == 1) return json{{"type", "sphere"}, {"dim", 2 * h.k}};
            return json{{"type", "wedge"}, {"copies", h.copies}, {"dim", 2 * h.k}};
    }
    return json{{"type", "point"}};
}

// ----------------------------------------------------------------- event log

inline std::string events_to_jsonl(const event_log& log) {
    std::ostringstream out;
    for (const auto& ev : log) {
        json j;
        if (const auto* c = std::get_if<orbit_created>(&ev)) {
            j = {{"step", c->step}, {"dim", c->dim}, {"event", "orbit_created"},
                 {"label", c->label}};
        } else if (const auto* d = std::get_if<orbit_destroyed>(&ev)) {
            j = {{"step", d->step}, {"dim", d->dim}, {"event", "orbit_destroyed"},
                 {"label", d->label}};
            j["surviving_label"] = d->survivor ? json(*d->survivor) : json(nullptr);
        } else if (const auto* m = std::get_if<label_moved>(&ev)) {
            j = {{"step", m->step}, {"dim", m->dim}, {"event", "label_moved"},
                 {"old", m->from}, {"new", m->to}};
        } else if (const auto* k = std::get_if<cone_reached>(&ev)) {
            j = {{"step", k->step}, {"dim", k->dim}, {"event", "cone_reached"},
                 {"apex", k->apex}};
        }
        out << j.dump() << '\n';
    }
    return out.str();
}

// -------------------------------------------------------------------- points

/// One point per line, comma-separated coordinates, optional header line.
inline geo::point_cloud read_points_csv(std::istream& in) {
    geo::point_cloud out;
    out.dim = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (out.dim == 0 && out.data.empty()) continue;  // header
            throw parse_error("line " + std::to_string(lineno) + ": non-numeric cell");
        }
        if (out.dim == 0) out.dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != out.dim)
            throw parse_error("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(out.dim) + " coordinates, got " +
                              std::to_string(row.size()));
        out.data.insert(out.data.end(), row.begin(), row.end());
    }
    if (out.dim == 0) throw parse_error("no points found");
    return out;
}

inline geo::point_cloud read_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    return read_points_csv(in);
}

inline filtration read_filtration_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad JSON in '") + path + "': " + e.what());
    }
    return filtration_from_json(j);
}

}  // namespace cyclic::io
