#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nullsurf/analysis.hpp"
#include "nullsurf/report_io.hpp"
#include "oracles.hpp"

using namespace nullsurf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("catalog lists the required entries") {
    auto entries = catalog();
    auto has = [&](const std::string& name, const std::string& kind) {
        for (const auto& e : entries)
            if (e.name == name && e.kind == kind) return true;
        return false;
    };
    CHECK(has("minkowski", "metric"));
    CHECK(has("de_sitter", "metric"));
    CHECK(has("anti_de_sitter", "metric"));
    CHECK(has("eddington_finkelstein", "metric"));
    CHECK(has("null_hyperplane", "hypersurface"));
    CHECK(has("light_cone", "hypersurface"));
    CHECK(has("ellipsoid_null_congruence", "hypersurface"));
    CHECK(has("schwarzschild_horizon", "hypersurface"));
    CHECK(has("custom", "hypersurface"));
}

TEST_CASE("config parsing and validation") {
    AnalysisConfig cfg = parse_config(
        "# comment\n"
        "metric.name = de_sitter\n"
        "metric.K = 2.0\n"
        "hypersurface.name = light_cone\n"
        "grid.u1 = 0.3:0.8:4\n"
        "grid.u2 = 0.9:1.3:3\n"
        "grid.u3 = 0.5:1.0:3\n"
        "outputs = shape,invariants\n"
        "gauge_seed = 7\n");
    CHECK(cfg.metric_name == "de_sitter");
    CHECK(cfg.metric_params.at("K") == doctest::Approx(2.0));
    CHECK(cfg.grid[0].count == 4);
    CHECK(cfg.gauge_seed == 7);
    CHECK(cfg.outputs.count(OutputKind::invariants) == 1);
    CHECK(cfg.outputs.count(OutputKind::screens) == 0);

    CHECK_THROWS_WITH_AS(parse_config("bogus.key = 1\n"),
                         "bogus.key: unknown configuration key", ConfigError);
    CHECK_THROWS_AS(parse_config("grid.u1 = 5:1:3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.u1 = 0:1:1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("metric.dim = 3\noutputs = screens\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("outputs = connection\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("metric.K = banana\n"), ConfigError);
}

TEST_CASE("analyze: totally geodesic hyperplane end to end") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = null_hyperplane\n"
        "grid.u1 = -0.3:0.3:2\n"
        "grid.u2 = -0.3:0.3:2\n"
        "grid.u3 = -0.3:0.3:2\n"
        "outputs = shape,invariants,screens,foci\n");
    Report report = analyze(cfg);
    REQUIRE(report.points.size() == 8);
    for (const PointRecord& rec : report.points) {
        CHECK(rec.classification == "totally_geodesic");
        CHECK(rec.lambda_norm < 1e-8);
        REQUIRE(rec.screens.size() == 3);
        for (const ScreenRecord& s : rec.screens) {
            CHECK_FALSE(s.available);
            CHECK(s.reason == "totally_geodesic");
        }
        for (const FocusRecord& f : rec.foci) CHECK(f.at_infinity);
    }
    CHECK(report.summary.classification_histogram.at("totally_geodesic") == 8);
    CHECK(report.summary.unavailable_reasons.at("totally_geodesic") == 24);
}

TEST_CASE("analyze: light cone end to end") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = light_cone\n"
        "grid.u1 = 0.4:0.8:3\n"
        "grid.u2 = 0.9:1.4:2\n"
        "grid.u3 = 0.5:1.1:2\n"
        "outputs = shape,invariants,screens,foci\n");
    Report report = analyze(cfg);
    for (const PointRecord& rec : report.points) {
        CHECK(rec.classification == "totally_umbilical");
        CHECK(rec.umbilical_lambda == doctest::Approx(1.0 / rec.params[0]).epsilon(1e-6));
        REQUIRE(rec.foci.size() == 1);
        CHECK(rec.foci[0].multiplicity == 2);
        CHECK(rec.foci[0].development.cwiseAbs().maxCoeff() < 1e-8);
        for (const ScreenRecord& s : rec.screens) CHECK(s.reason == "equal_eigenvalues");
    }
}

TEST_CASE("analyze: ellipsoid congruence with screens and connection") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = ellipsoid_null_congruence\n"
        "grid.u1 = 0.2:0.4:2\n"
        "grid.u2 = 0.9:1.2:2\n"
        "grid.u3 = 0.5:0.9:2\n"
        "outputs = shape,invariants,sectional,screens,foci,connection\n"
        "gauge_seed = 11\n"
        "gauge.samples = 2\n"
        "gauge.points = 2\n");
    Report report = analyze(cfg);
    for (const PointRecord& rec : report.points) {
        CHECK(rec.classification == "generic");
        REQUIRE(rec.screens.size() == 3);
        CHECK(rec.screens[0].reason == "K_proportional_to_eigenvalues");
        CHECK(rec.screens[1].reason == "K_proportional_to_eigenvalues");
        REQUIRE(rec.screens[2].available);
        CHECK(rec.screens[2].integrable);
        REQUIRE(rec.eigenvalue_ratio.has_value());
        CHECK(*rec.eigenvalue_ratio > 0.0);
        CHECK(*rec.eigenvalue_ratio < 1.0);
        REQUIRE(rec.sectional_max_abs.has_value());
        CHECK(*rec.sectional_max_abs < 1e-6);  // flat ambient chart
        for (const FocusRecord& f : rec.foci) CHECK_FALSE(f.at_infinity);
    }
    CHECK(report.summary.screens_available == 8);
    CHECK(report.summary.screens_integrable == 8);
    CHECK(report.summary.gauge_projector_residual_max < 1e-5);
    CHECK(report.summary.gauge_invariant_residual_max < 1e-6);
}

TEST_CASE("analyze rejects a non-lightlike surface naming the grid point") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = custom\n"
        "hypersurface.custom.x0 = u1\n"
        "hypersurface.custom.x1 = u2\n"
        "hypersurface.custom.x2 = u3\n"
        "hypersurface.custom.x3 = 0\n"
        "grid.u1 = -0.2:0.2:2\n"
        "grid.u2 = -0.2:0.2:2\n"
        "grid.u3 = -0.2:0.2:2\n");
    CHECK_THROWS_WITH_AS(analyze(cfg), "grid point 0: surface is not lightlike",
                         NotLightlikeError);
}

TEST_CASE("custom expression hypersurface reproduces the null hyperplane") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = custom\n"
        "hypersurface.custom.x0 = u1\n"
        "hypersurface.custom.x1 = u2\n"
        "hypersurface.custom.x2 = u3\n"
        "hypersurface.custom.x3 = u1\n"
        "grid.u1 = -0.2:0.2:2\n"
        "grid.u2 = -0.2:0.2:2\n"
        "grid.u3 = -0.2:0.2:2\n"
        "outputs = shape\n");
    Report report = analyze(cfg);
    for (const PointRecord& rec : report.points) {
        CHECK(rec.classification == "totally_geodesic");
        CHECK(rec.lambda_norm < 1e-7);
    }
}

TEST_CASE("emit: formats, determinism, column registry") {
    AnalysisConfig cfg = parse_config(
        "metric.name = minkowski\n"
        "hypersurface.name = light_cone\n"
        "grid.u1 = 0.4:0.8:2\n"
        "grid.u2 = 0.9:1.4:2\n"
        "grid.u3 = 0.5:1.1:2\n"
        "outputs = shape,invariants,foci\n");
    Report report = analyze(cfg);

    fs::path dir = fs::temp_directory_path() / "nullsurf_test_emit";
    fs::remove_all(dir);

    auto table = emit(report, EmitFormat::table, dir / "a");
    REQUIRE(table.size() == 1);
    std::string csv = slurp(table[0]);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header.rfind("index,u1,u2,u3,x0,x1,x2,x3,classification", 0) == 0);
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8);

    // byte determinism across a fresh pipeline run
    Report again = analyze(cfg);
    auto table2 = emit(again, EmitFormat::table, dir / "b");
    CHECK(slurp(table[0]) == slurp(table2[0]));

    auto structured = emit(report, EmitFormat::structured, dir / "a");
    std::string txt = slurp(structured[0]);
    CHECK(txt.find("provenance.tool = ") != std::string::npos);
    CHECK(txt.find("provenance.config_hash = ") != std::string::npos);
    CHECK(txt.find("summary.classification.totally_umbilical = 8") != std::string::npos);

    auto plots = emit(report, EmitFormat::plotdata, dir / "a");
    bool found_sheet = false;
    for (const auto& p : plots) {
        if (p.filename().string().rfind("focal_sheet", 0) != 0) continue;
        found_sheet = true;
        std::istringstream sheet(slurp(p));
        std::string row;
        std::getline(sheet, row);  // header
        while (std::getline(sheet, row)) {
            if (row.empty()) continue;
            std::istringstream cols(row);
            double v;
            std::vector<double> vals;
            while (cols >> v) vals.push_back(v);
            REQUIRE(vals.size() == 8);  // u1..u3, s, F0..F3
            for (int i = 4; i < 8; ++i) CHECK(std::abs(vals[i]) < 1e-8);  // cone apex
        }
    }
    CHECK(found_sheet);

    CHECK_THROWS_AS(emit(report, EmitFormat::table, "/proc/nullsurf_forbidden"), IoError);
}
