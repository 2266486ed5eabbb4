#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cyclic/io.hpp"
#include "helpers.hpp"

using namespace cyclic;

TEST_CASE("filtrations survive a JSON round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto f = testutil::random_filtration(seed * 3 + 2, 4, 9, 25);
        f.scales.clear();
        double s = 0.0;
        for (std::size_t i = 0; i < f.steps.size(); ++i) f.scales.push_back(s += 0.25);
        auto j = io::filtration_to_json(f);
        auto g = io::filtration_from_json(j);
        CAPTURE(seed);
        REQUIRE(g.initial == f.initial);
        REQUIRE(g.steps == f.steps);
        REQUIRE(g.scales == f.scales);
        REQUIRE(index_triples(full_persistence(g, 4)) ==
                index_triples(full_persistence(f, 4)));
    }
}

TEST_CASE("filtration JSON uses the documented field names") {
    filtration f;
    f.initial = graph(4);
    f.steps = {add_edge{1}, add_vertex{2, 1, {1}}};
    f.scales = {0.5, 0.75};
    auto j = io::filtration_to_json(f);
    CHECK(j["n"] == 4);
    CHECK(j["steps"][0] == io::json({{"type", "edge"}, {"source", 1}}));
    CHECK(j["steps"][1]["type"] == "vertex");
    CHECK(j["steps"][1]["position"] == 2);
    CHECK(j["steps"][1]["out_reach"] == 1);
    CHECK(j["steps"][1]["in_sources"] == io::json::array({1}));
    CHECK(j["scales"] == io::json::array({0.5, 0.75}));
}

TEST_CASE("barcode JSON carries dims, intervals, and scale stamps") {
    filtration f;
    f.initial = graph(4);
    f.steps = {add_edge{0}, add_edge{1}, add_edge{2}, add_edge{3}};
    f.scales = {1, 1, 1, 1};
    auto b = full_persistence(f, 2);
    auto j = io::barcode_to_json(b);
    CHECK(j["dims"] == io::json::array({0, 1, 2}));
    bool found_loop = false;
    for (auto& ji : j["intervals"]) {
        REQUIRE(ji.contains("dim"));
        REQUIRE(ji.contains("birth"));
        REQUIRE(ji.contains("death"));
        if (ji["dim"] == 1) {
            found_loop = true;
            CHECK(ji["death"].is_null());
            CHECK(ji["birth_scale"] == 1.0);
        }
    }
    CHECK(found_loop);
}

TEST_CASE("intervals that never span a scale are flagged") {
    filtration f;
    f.initial = graph(4);
    f.steps = {add_edge{0}, add_edge{1}, add_edge{2}, add_edge{3}};
    f.scales = {1, 1, 1, 1};
    f.cone = cone_event{std::nullopt, 1.0};  // the loop is born and killed at scale 1
    auto b = full_persistence(f, 1);
    auto j = io::barcode_to_json(b);
    bool found_degenerate = false;
    for (auto& ji : j["intervals"])
        if (ji["dim"] == 1) {
            found_degenerate = true;
            CHECK(ji["birth"] == 4);
            CHECK(ji["death"] == 5);  // retained in index form
            CHECK(ji.contains("degenerate_scale"));
        }
    CHECK(found_degenerate);
}

TEST_CASE("text barcode lists one interval per line") {
    filtration f;
    f.initial = graph(3);
    f.steps = {add_edge{0}, add_edge{1}};
    auto text = io::barcode_to_text(full_persistence(f, 1));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "dim\tbirth\tdeath");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);  // two component merges, nothing else
}

TEST_CASE("unreduced view adds exactly one everlasting component") {
    filtration f;
    f.initial = graph(5);
    auto reduced = full_persistence(f, 1);
    auto unreduced = io::with_unreduced_component(reduced);
    CHECK(unreduced.intervals.size() == reduced.intervals.size() + 1);
    int everlasting = 0;
    for (const auto& i : unreduced.intervals)
        if (i.dim == 0 && !i.death) ++everlasting;
    CHECK(everlasting == 5);  // 4 reduced components + the basepoint
}

TEST_CASE("homotopy JSON forms") {
    CHECK(io::homotopy_to_json(homotopy_type::point()) == io::json({{"type", "point"}}));
    CHECK(io::homotopy_to_json(homotopy_type::odd_sphere(1)) ==
          io::json({{"type", "sphere"}, {"dim", 3}}));
    CHECK(io::homotopy_to_json(homotopy_type::even_wedge(1, 1)) ==
          io::json({{"type", "sphere"}, {"dim", 2}}));
    CHECK(io::homotopy_to_json(homotopy_type::even_wedge(2, 1)) ==
          io::json({{"type", "wedge"}, {"copies", 2}, {"dim", 2}}));
}

TEST_CASE("event JSONL emits one record per line") {
    filtration f;
    f.initial = graph(3);
    f.steps = {add_edge{0}, add_edge{1}, add_edge{2}};
    auto res = even_persistence(f, 0);
    auto text = io::events_to_jsonl(res.events);
    std::istringstream in(text);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        auto j = io::json::parse(line);
        REQUIRE(j.contains("step"));
        REQUIRE(j.contains("event"));
        ++lines;
    }
    CHECK(lines == res.events.size());
}

TEST_CASE("points CSV accepts optional headers and rejects ragged rows") {
    std::istringstream with_header("x,y\n1,0\n0,1\n-1,0\n");
    auto pts = io::read_points_csv(with_header);
    CHECK(pts.dim == 2);
    CHECK(pts.size() == 3);
    CHECK(pts.coord(2, 0) == -1.0);

    std::istringstream ragged("1,0\n0,1,5\n");
    CHECK_THROWS_AS(io::read_points_csv(ragged), io::parse_error);

    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_points_csv(empty), io::parse_error);
}

TEST_CASE("cone markers survive the JSON round trip") {
    filtration f;
    f.initial = graph(4);
    f.steps = {add_edge{0}};
    f.scales = {1.5};
    f.cone = cone_event{2, 2.5};
    auto g = io::filtration_from_json(io::filtration_to_json(f));
    REQUIRE(g.cone.has_value());
    CHECK(g.cone->apex == 2);
    CHECK(g.cone->scale == 2.5);

    f.cone = cone_event{std::nullopt, 3.0};
    auto h = io::filtration_from_json(io::filtration_to_json(f));
    REQUIRE(h.cone.has_value());
    CHECK_FALSE(h.cone->apex.has_value());
}
