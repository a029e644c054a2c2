#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "subnetx/netio.hpp"
#include "test_support.hpp"

using namespace subnetx;
namespace fs = std::filesystem;
using test_support::TempDir;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

SyntheticSpec demo_spec() {
    SyntheticSpec spec;
    spec.atlas_size = 20;
    spec.planted_nodes = {1, 4, 7, 9, 12};
    spec.subjects_per_class = 6;
    spec.base_edge_prob = 0.15;
    spec.planted_edge_prob = 0.6;
    spec.weight_noise_sd = 0.05;
    spec.seed = 99;
    return spec;
}

} // namespace

TEST_CASE("manifest with two labeled zero matrices loads") {
    TempDir tmp("load");
    write_file(tmp.path / "a.csv", "0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n");
    write_file(tmp.path / "b.csv", "0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 4,
        "subjects": [
            {"id": "a", "label": 0, "matrix_file": "a.csv"},
            {"id": "b", "label": 1, "matrix_file": "b.csv"}
        ]})");
    const auto ds = load_dataset(tmp.path / "manifest.json");
    CHECK(ds.atlas_size == 4);
    CHECK(ds.subjects.size() == 2);
    CHECK(ds.subjects[0].label == 0);
    CHECK(ds.subjects[1].label == 1);
    CHECK(ds.subjects[0].matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("loader rejects a non-square matrix") {
    TempDir tmp("nonsquare");
    write_file(tmp.path / "a.csv", "0,0,0,0\n0,0,0,0\n0,0,0,0\n");
    write_file(tmp.path / "b.csv", "0,0,0\n0,0,0\n0,0,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 3,
        "subjects": [
            {"id": "a", "label": 0, "matrix_file": "a.csv"},
            {"id": "b", "label": 1, "matrix_file": "b.csv"}
        ]})");
    CHECK_THROWS_WITH(load_dataset(tmp.path / "manifest.json"),
                      Catch::Matchers::ContainsSubstring("non-square matrix"));
}

TEST_CASE("loader rejects an atlas-size mismatch") {
    TempDir tmp("mismatch");
    write_file(tmp.path / "a.csv", "0,1\n1,0\n");
    write_file(tmp.path / "b.csv", "0,1,0\n1,0,0\n0,0,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 2,
        "subjects": [
            {"id": "a", "label": 0, "matrix_file": "a.csv"},
            {"id": "b", "label": 1, "matrix_file": "b.csv"}
        ]})");
    CHECK_THROWS_WITH(load_dataset(tmp.path / "manifest.json"),
                      Catch::Matchers::ContainsSubstring("atlas-size mismatch"));
}

TEST_CASE("loader rejects labels outside {0,1}") {
    TempDir tmp("label");
    write_file(tmp.path / "a.csv", "0,1\n1,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 2,
        "subjects": [{"id": "a", "label": 2, "matrix_file": "a.csv"}]})");
    CHECK_THROWS_WITH(load_dataset(tmp.path / "manifest.json"),
                      Catch::Matchers::ContainsSubstring("label outside {0,1}"));
}

TEST_CASE("loader rejects asymmetry beyond tolerance and missing files") {
    TempDir tmp("asym");
    write_file(tmp.path / "a.csv", "0,0.5\n0.6,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 2,
        "subjects": [{"id": "a", "label": 0, "matrix_file": "a.csv"}]})");
    CHECK_THROWS_WITH(load_dataset(tmp.path / "manifest.json"),
                      Catch::Matchers::ContainsSubstring("asymmetry beyond tolerance"));

    write_file(tmp.path / "manifest2.json", R"({
        "atlas_size": 2,
        "subjects": [{"id": "x", "label": 0, "matrix_file": "missing.csv"}]})");
    CHECK_THROWS_WITH(load_dataset(tmp.path / "manifest2.json"),
                      Catch::Matchers::ContainsSubstring("missing matrix file"));
    CHECK_THROWS_AS(load_dataset(tmp.path / "nope.json"), DataError);
}

TEST_CASE("loader symmetrizes float noise and zeroes the diagonal") {
    TempDir tmp("symmetrize");
    write_file(tmp.path / "a.csv", "0.7,0.5\n0.5000000001,0\n");
    write_file(tmp.path / "b.csv", "0,0.25\n0.25,0\n");
    write_file(tmp.path / "manifest.json", R"({
        "atlas_size": 2,
        "subjects": [
            {"id": "a", "label": 0, "matrix_file": "a.csv"},
            {"id": "b", "label": 1, "matrix_file": "b.csv"}
        ]})");
    const auto ds = load_dataset(tmp.path / "manifest.json");
    CHECK(ds.subjects[0].matrix(0, 0) == 0.0);
    CHECK(ds.subjects[0].matrix(0, 1) == Catch::Approx(0.50000000005).epsilon(1e-12));
    CHECK(ds.subjects[0].matrix(0, 1) == ds.subjects[0].matrix(1, 0));
}

TEST_CASE("dataset round-trips through save and load") {
    const auto ds = generate_synthetic(demo_spec());
    TempDir tmp("roundtrip");
    const auto manifest = save_dataset(ds, tmp.path / "ds");
    const auto back = load_dataset(manifest);
    REQUIRE(back.subjects.size() == ds.subjects.size());
    CHECK(back.atlas_size == ds.atlas_size);
    for (std::size_t i = 0; i < ds.subjects.size(); ++i) {
        CHECK(back.subjects[i].label == ds.subjects[i].label);
        CHECK(back.subjects[i].id == ds.subjects[i].id);
        CHECK((back.subjects[i].matrix - ds.subjects[i].matrix).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("synthetic generation is a pure function of the spec") {
    const auto a = generate_synthetic(demo_spec());
    const auto b = generate_synthetic(demo_spec());
    REQUIRE(a.subjects.size() == b.subjects.size());
    for (std::size_t i = 0; i < a.subjects.size(); ++i) {
        CHECK(a.subjects[i].matrix == b.subjects[i].matrix);
    }
    auto spec = demo_spec();
    spec.seed = 100;
    const auto c = generate_synthetic(spec);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.subjects.size(); ++i) {
        if (a.subjects[i].matrix != c.subjects[i].matrix) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("synthetic shape and validation") {
    SyntheticSpec spec;
    spec.atlas_size = 60;
    for (int i = 0; i < 15; ++i) spec.planted_nodes.push_back(i * 4);
    spec.subjects_per_class = 40;
    spec.base_edge_prob = 0.1;
    spec.planted_edge_prob = 0.45;
    spec.seed = 7;
    const auto ds = generate_synthetic(spec);
    CHECK(ds.atlas_size == 60);
    CHECK(ds.subjects.size() == 80);
    int cases = 0;
    for (const auto& s : ds.subjects) cases += s.label;
    CHECK(cases == 40);

    spec.planted_edge_prob = spec.base_edge_prob;
    CHECK_THROWS_WITH(generate_synthetic(spec), "planted probability equals base");
    spec.planted_edge_prob = 0.45;
    spec.planted_nodes = {0, 1};
    CHECK_THROWS_AS(generate_synthetic(spec), DataError);
    spec.planted_nodes = {0, 1, 60};
    CHECK_THROWS_AS(generate_synthetic(spec), DataError);
}

TEST_CASE("planted pairs hit p1 and the rest hit p0 within 3 standard errors") {
    SyntheticSpec spec;
    spec.atlas_size = 30;
    for (int i = 0; i < 10; ++i) spec.planted_nodes.push_back(i * 3);
    spec.subjects_per_class = 150;
    spec.base_edge_prob = 0.1;
    spec.planted_edge_prob = 0.45;
    spec.weight_noise_sd = 0.0;
    spec.seed = 5;
    const auto ds = generate_synthetic(spec);

    std::vector<char> planted(30, 0);
    for (int v : spec.planted_nodes) planted[static_cast<std::size_t>(v)] = 1;

    long inside_edges = 0, inside_pairs = 0, outside_edges = 0, outside_pairs = 0;
    for (const auto& s : ds.subjects) {
        if (s.label != 1) continue;
        for (int u = 0; u < 30; ++u) {
            for (int v = u + 1; v < 30; ++v) {
                const bool in = planted[static_cast<std::size_t>(u)] &&
                                planted[static_cast<std::size_t>(v)];
                const bool edge = s.matrix(u, v) != 0.0;
                if (in) {
                    ++inside_pairs;
                    inside_edges += edge;
                } else {
                    ++outside_pairs;
                    outside_edges += edge;
                }
            }
        }
    }
    const double f_in = static_cast<double>(inside_edges) / inside_pairs;
    const double se_in = std::sqrt(0.45 * 0.55 / inside_pairs);
    CHECK(std::abs(f_in - 0.45) <= 3.0 * se_in);

    const double f_out = static_cast<double>(outside_edges) / outside_pairs;
    const double se_out = std::sqrt(0.1 * 0.9 / outside_pairs);
    CHECK(std::abs(f_out - 0.1) <= 3.0 * se_out);
}

TEST_CASE("report writes one-decimal percentages and round-trips") {
    FinalReport report;
    report.dataset = "demo";
    report.classifier = "knn";
    report.best_fitness = 0.8625;
    report.best_mask = SubnetMask::from_string("0110100101");
    report.eval.accuracy = 82.24;
    report.eval.precision = 81.04;
    report.eval.recall = 84.96;
    report.eval.tp = 17;
    report.eval.fp = 4;
    report.eval.tn = 15;
    report.eval.fn = 3;
    report.run_seeds = {1, 2, 3};
    report.config_digest = "deadbeef00000000";

    TempDir tmp("report");
    const auto path = tmp.path / "report.json";
    write_report(report, path);

    const auto doc = nlohmann::json::parse(detail::read_file(path));
    CHECK(doc["accuracy"].get<double>() == 82.2);
    CHECK(doc["precision"].get<double>() == 81.0);
    CHECK(doc["recall"].get<double>() == 85.0);
    CHECK(doc["selected_nodes"].size() == 5);

    const auto back = load_report(path);
    CHECK(back.eval.accuracy == 82.2);
    CHECK(back.eval.precision == 81.0);
    CHECK(back.eval.recall == 85.0);
    CHECK(back.best_mask == report.best_mask);
    CHECK(back.run_seeds == report.run_seeds);
    CHECK(back.config_digest == report.config_digest);

    // second paper row round-trips losslessly as well
    report.eval.accuracy = 73.1;
    report.eval.precision = 71.1;
    report.eval.recall = 89.0;
    write_report(report, path);
    const auto again = load_report(path);
    CHECK(again.eval.accuracy == 73.1);
    CHECK(again.eval.precision == 71.1);
    CHECK(again.eval.recall == 89.0);
}

TEST_CASE("report rejects an empty mask") {
    FinalReport report;
    report.best_mask = SubnetMask(8);
    TempDir tmp("emptymask");
    CHECK_THROWS_WITH(write_report(report, tmp.path / "r.json"), "empty sub-network");
}

TEST_CASE("generation curves export") {
    RunHistory history;
    history.best_mask = SubnetMask::from_string("101");
    history.generations.push_back({0.5, 0.4, 0.2, 120});

    TempDir tmp("curves");
    const auto path = tmp.path / "curves.csv";
    export_generation_curves(history, path);
    const auto text = detail::read_file(path);
    CHECK(text ==
          "generation,global_max_fitness,local_mean_fitness,local_min_fitness,diversity\n"
          "1,0.500000,0.400000,0.200000,120\n");

    for (int g = 1; g < 50; ++g) {
        history.generations.push_back(
            {0.5 + 0.01 * g, 0.4, 0.2, 120 - g});
    }
    export_generation_curves(history, path);
    std::ifstream in(path);
    std::string line;
    int rows = -1; // header
    double prev = -1.0;
    while (std::getline(in, line)) {
        if (rows >= 0) {
            const auto second_comma = line.find(',', line.find(',') + 1);
            const double v = std::stod(line.substr(line.find(',') + 1,
                                                   second_comma - line.find(',') - 1));
            CHECK(v >= prev);
            prev = v;
        }
        ++rows;
    }
    CHECK(rows == 50);
}

TEST_CASE("curves export rejects a non-monotone best-so-far column") {
    RunHistory history;
    history.generations.push_back({0.6, 0.4, 0.2, 10});
    history.generations.push_back({0.5, 0.4, 0.2, 10});
    TempDir tmp("nonmono");
    CHECK_THROWS_WITH(export_generation_curves(history, tmp.path / "c.csv"),
                      "non-monotone best-so-far");

    RunHistory empty;
    CHECK_THROWS_AS(export_generation_curves(empty, tmp.path / "c.csv"), DataError);
}

TEST_CASE("atomic writes leave no temp file behind") {
    TempDir tmp("atomic");
    const auto path = tmp.path / "x.txt";
    detail::write_text_atomic(path, "hello");
    CHECK(detail::read_file(path) == "hello");
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}
