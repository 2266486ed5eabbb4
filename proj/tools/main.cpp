#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclic/bench.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/geometry.hpp"
#include "cyclic/io.hpp"
#include "cyclic/oracle.hpp"
#include "cyclic/persistence.hpp"

namespace {

using namespace cyclic;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_input = 2;
constexpr int exit_mismatch = 3;

struct input_options {
    std::string points_file;
    std::string filtration_file;
    std::string curve;
    double a = 1.0, b = 1.0, alpha = 0.5;
    int n = 0;
    std::optional<std::uint64_t> seed;
};

void add_input_flags(CLI::App* cmd, input_options& in) {
    auto* points = cmd->add_option("--points", in.points_file, "points CSV, one point per line");
    auto* filt = cmd->add_option("--filtration", in.filtration_file, "filtration JSON file");
    auto* curve = cmd->add_option("--curve", in.curve, "sample a curve: circle, ellipse, moment")
                      ->check(CLI::IsMember({"circle", "ellipse", "moment"}));
    points->excludes(filt)->excludes(curve);
    filt->excludes(curve);
    cmd->add_option("--a", in.a, "ellipse semi-axis a (also the circle radius)");
    cmd->add_option("--b", in.b, "ellipse semi-axis b");
    cmd->add_option("--alpha", in.alpha, "moment curve scale factor");
    cmd->add_option("--n", in.n, "number of sample points");
    cmd->add_option("--seed", in.seed, "random angles with this seed (default: evenly spaced)");
}

geo::point_cloud sample_from(const input_options& in) {
    if (in.n < 3) throw io::parse_error("--curve needs --n of at least 3");
    geo::curve_spec spec;
    if (in.curve == "circle")
        spec = geo::circle_spec{in.a};
    else if (in.curve == "ellipse")
        spec = geo::ellipse_spec{in.a, in.b};
    else
        spec = geo::moment_curve_spec{in.alpha};
    return in.seed ? geo::sample_curve(spec, in.n, *in.seed) : geo::sample_curve(spec, in.n);
}

std::vector<int> file_order(std::size_t n) {
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    return order;
}

// Points in R^2 are ordered by their convex hull; higher-dimensional input
// (the moment curve) is taken in file or parameter order.
filtration filtration_from(const input_options& in) {
    if (!in.filtration_file.empty()) return io::read_filtration_file(in.filtration_file);
    geo::point_cloud pts;
    if (!in.points_file.empty())
        pts = io::read_points_csv_file(in.points_file);
    else
        pts = sample_from(in);
    if (pts.dim == 2) return geo::build_filtration(pts);
    return geo::build_filtration(pts, file_order(pts.size()));
}

bool has_input(const input_options& in) {
    return !in.points_file.empty() || !in.filtration_file.empty() || !in.curve.empty();
}

filtration truncate_at_scale(filtration f, double r) {
    if (!f.has_scales()) throw io::parse_error("--r needs a scale-stamped filtration");
    filtration out;
    out.initial = f.initial;
    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        if (f.scales[i] > r) break;
        out.steps.push_back(f.steps[i]);
        out.scales.push_back(f.scales[i]);
    }
    if (f.cone && f.cone->scale && *f.cone->scale <= r) out.cone = f.cone;
    return out;
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io::parse_error("cannot write '" + out_path + "'");
    out << payload;
}

// Oracle comparison uses the same truncation semantics as the fast path: a
// recorded cone ends every class one index past the last step.
barcode oracle_barcode(const filtration& f, int max_dim, vertex_t cap) {
    auto slow = oracle::reduce(oracle::clique_complex(f, max_dim, cap));
    if (f.cone) {
        auto cone_at = static_cast<step_index_t>(f.num_steps()) + 1;
        for (auto& itv : slow.intervals)
            if (!itv.death) itv.death = cone_at;
        std::erase_if(slow.intervals,
                      [](const persistence_interval& i) { return i.death == i.birth; });
    }
    return slow;
}

int run_command(const input_options& in, double r, bool has_r, int max_dim, bool unreduced,
                bool oracle_check, vertex_t oracle_cap, const std::string& bench_sizes,
                int bench_reps, const std::string& out_path, const std::string& format,
                const std::string& events_path) {
    if (!bench_sizes.empty()) {
        std::vector<int> sizes;
        std::stringstream ss(bench_sizes);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
        auto rows = bench::run_circle_ladder(sizes, max_dim, bench_reps);
        write_output(out_path, bench::rows_to_csv(rows, bench::fit_exponent(rows)));
        return exit_ok;
    }

    filtration f = filtration_from(in);
    if (has_r) f = truncate_at_scale(std::move(f), r);

    auto bars = full_persistence(f, max_dim);
    auto shown = unreduced ? io::with_unreduced_component(bars) : bars;

    std::string payload;
    if (format == "json")
        payload = io::barcode_to_json(shown).dump(2) + "\n";
    else
        payload = io::barcode_to_text(shown);
    write_output(out_path, payload);

    if (!events_path.empty()) {
        event_log all;
        for (int k = 0; 2 * k <= max_dim + 1; ++k) {
            auto res = even_persistence(f, k);
            all.insert(all.end(), res.events.begin(), res.events.end());
        }
        std::ofstream ev(events_path);
        if (!ev) throw io::parse_error("cannot write '" + events_path + "'");
        ev << io::events_to_jsonl(all);
    }

    if (oracle_check) {
        auto slow = oracle_barcode(f, max_dim, oracle_cap);
        auto fast_triples = index_triples(bars);
        auto slow_triples = index_triples(slow);
        if (fast_triples != slow_triples) {
            auto describe = [](const std::tuple<int, step_index_t, step_index_t>& t) {
                auto [d, birth, death] = t;
                std::string s = "dim " + std::to_string(d) + " [" + std::to_string(birth) + ", ";
                s += death == std::numeric_limits<step_index_t>::max() ? "inf"
                                                                       : std::to_string(death);
                return s + ")";
            };
            std::size_t i = 0;
            while (i < fast_triples.size() && i < slow_triples.size() &&
                   fast_triples[i] == slow_triples[i])
                ++i;
            std::cerr << "oracle mismatch at interval " << i << ": fast "
                      << (i < fast_triples.size() ? describe(fast_triples[i]) : "missing")
                      << " vs oracle "
                      << (i < slow_triples.size() ? describe(slow_triples[i]) : "missing")
                      << "\n";
            return exit_mismatch;
        }
        std::cerr << "oracle check passed (" << slow_triples.size() << " intervals)\n";
    }
    return exit_ok;
}

int homotopy_command(const input_options& in, double r, bool has_r, const std::string& format) {
    homotopy_type ht;
    if (!in.filtration_file.empty()) {
        auto f = io::read_filtration_file(in.filtration_file);
        if (has_r) f = truncate_at_scale(std::move(f), r);
        if (f.cone)
            ht = homotopy_type::point();
        else
            ht = homotopy_type_of(f.final_graph());
    } else {
        if (!has_r) throw io::parse_error("homotopy from points needs --r");
        geo::point_cloud pts;
        if (!in.points_file.empty())
            pts = io::read_points_csv_file(in.points_file);
        else
            pts = sample_from(in);
        auto order = pts.dim == 2 ? geo::cyclic_order(pts) : file_order(pts.size());
        const auto n = static_cast<vertex_t>(pts.size());

        bool cone = false;
        for (vertex_t i = 0; i < n && !cone; ++i) {
            bool sees_all = true;
            for (vertex_t j = 0; j < n; ++j)
                if (j != i &&
                    geo::dist(pts, static_cast<std::size_t>(order[static_cast<std::size_t>(i)]),
                              static_cast<std::size_t>(order[static_cast<std::size_t>(j)])) > r) {
                    sees_all = false;
                    break;
                }
            cone = sees_all;
        }
        if (cone) {
            ht = homotopy_type::point();
        } else {
            // counterclockwise runs give the reach vector; re-validation makes
            // sure the graph at this scale really is cyclic
            graph g(n);
            std::size_t within = 0, runs = 0;
            for (vertex_t i = 0; i < n; ++i) {
                vertex_t run = 0;
                while (run < n - 1 &&
                       geo::dist(pts,
                                 static_cast<std::size_t>(order[static_cast<std::size_t>(i)]),
                                 static_cast<std::size_t>(
                                     order[static_cast<std::size_t>((i + run + 1) % n)])) <= r)
                    ++run;
                g.reach[static_cast<std::size_t>(i)] = run;
                runs += static_cast<std::size_t>(run);
                for (vertex_t j = 0; j < n; ++j)
                    if (j != i &&
                        geo::dist(pts,
                                  static_cast<std::size_t>(order[static_cast<std::size_t>(i)]),
                                  static_cast<std::size_t>(order[static_cast<std::size_t>(j)])) <=
                            r)
                        ++within;
            }
            if (within != 2 * runs || !is_valid(g))
                throw geo::not_cyclic_geometry("the graph at this scale is not cyclic");
            ht = homotopy_type_of(g);
        }
    }
    if (format == "json")
        std::cout << io::homotopy_to_json(ht).dump() << "\n";
    else
        std::cout << ht.to_string() << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology of Vietoris-Rips filtrations of cyclic graphs"};
    app.require_subcommand(1);

    input_options run_in, hom_in;
    double run_r = 0, hom_r = 0;
    int max_dim = 1;
    bool unreduced = false, oracle_check = false;
    int oracle_cap = 16;
    std::string bench_sizes, out_path, run_format = "text", hom_format = "text", events_path;
    int bench_reps = 1;

    auto* run = app.add_subcommand("run", "compute a barcode (or run the benchmark ladder)");
    add_input_flags(run, run_in);
    auto* bench_opt =
        run->add_option("--bench", bench_sizes, "comma-separated sizes; time the circle pipeline");
    for (const std::string name : {"--points", "--filtration", "--curve"})
        bench_opt->excludes(run->get_option(name));
    auto* r_opt = run->add_option("--r", run_r, "truncate the filtration at this scale");
    run->add_option("--max-dim", max_dim, "largest homological dimension")->check(CLI::NonNegativeNumber);
    run->add_flag("--unreduced,!--reduced", unreduced,
                  "report unreduced homology in dimension 0");
    run->add_flag("--oracle-check", oracle_check,
                  "cross-check against matrix-reduction persistence (small n)");
    run->add_option("--oracle-cap", oracle_cap, "vertex cap for the oracle check");
    run->add_option("--reps", bench_reps, "benchmark repetitions per size");
    run->add_option("--out", out_path, "write the barcode (or bench CSV) here");
    run->add_option("--format", run_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_option("--events", events_path, "write the orbit event log (JSONL) here");

    auto* hom = app.add_subcommand("homotopy", "homotopy type of a single clique complex");
    add_input_flags(hom, hom_in);
    auto* hom_r_opt = hom->add_option("--r", hom_r, "Vietoris-Rips scale");
    hom->add_option("--format", hom_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? exit_ok : exit_usage;
    }

    try {
        if (run->parsed()) {
            if (bench_sizes.empty() && !has_input(run_in)) {
                std::cerr << "run: need one of --points, --filtration, --curve, or --bench\n";
                return exit_usage;
            }
            return run_command(run_in, run_r, r_opt->count() > 0, max_dim, unreduced,
                               oracle_check, static_cast<cyclic::vertex_t>(oracle_cap),
                               bench_sizes, bench_reps, out_path, run_format, events_path);
        }
        return homotopy_command(hom_in, hom_r, hom_r_opt->count() > 0, hom_format);
    } catch (const cyclic::geo::not_convex_position& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const cyclic::geo::not_cyclic_geometry& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const cyclic::io::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const cyclic::invalid_step& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const cyclic::oracle::cap_exceeded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}
