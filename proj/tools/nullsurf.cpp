// nullsurf command-line tool: catalog listing, batch analysis, selftest.
// Exit codes: 0 success, 1 selftest failure, 2 config error, 3 geometry
// error, 4 I/O error.
#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "nullsurf/analysis.hpp"
#include "nullsurf/catalog.hpp"
#include "nullsurf/report_io.hpp"
#include "nullsurf/selftest.hpp"
#include "nullsurf/version.hpp"

namespace {

int run_catalog() {
    std::printf("%-14s %-28s %-40s %s\n", "kind", "name", "parameters", "description");
    for (const auto& e : nullsurf::catalog())
        std::printf("%-14s %-28s %-40s %s\n", e.kind.c_str(), e.name.c_str(),
                    e.parameters.c_str(), e.description.c_str());
    return 0;
}

int run_analyze(const std::string& config_path, const std::string& out_dir,
                const std::string& format_name) {
    nullsurf::AnalysisConfig cfg = nullsurf::parse_config_file(config_path);
    nullsurf::EmitFormat format = nullsurf::parse_emit_format(format_name);
    nullsurf::Report report = nullsurf::analyze(cfg);
    std::vector<std::filesystem::path> files = nullsurf::emit(report, format, out_dir);
    for (const auto& p : files) std::printf("wrote %s\n", p.string().c_str());
    std::printf("%zu grid points, config hash %llu\n", report.points.size(),
                static_cast<unsigned long long>(report.config_hash));
    return 0;
}

int run_selftest() {
    std::vector<nullsurf::CriterionResult> results = nullsurf::run_acceptance();
    std::fputs(nullsurf::render_acceptance(results).c_str(), stdout);
    return nullsurf::acceptance_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical analysis of lightlike hypersurfaces in Lorentzian charts"};
    app.set_version_flag("--version", std::string(nullsurf::kVersion));
    app.require_subcommand(1);

    CLI::App* cat = app.add_subcommand("catalog", "list built-in metrics and hypersurfaces");

    CLI::App* analyze = app.add_subcommand("analyze", "run the analysis pipeline over a grid");
    std::string config_path, out_dir = "out", format = "table";
    analyze->add_option("--config", config_path, "analysis configuration file")->required();
    analyze->add_option("--out", out_dir, "output directory");
    analyze->add_option("--format", format, "table | structured | plotdata");

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cat->parsed()) return run_catalog();
        if (analyze->parsed()) return run_analyze(config_path, out_dir, format);
        if (selftest->parsed()) return run_selftest();
    } catch (const nullsurf::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const nullsurf::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const nullsurf::Error& e) {
        std::fprintf(stderr, "geometry error: %s\n", e.what());
        return 3;
    }
    return 0;
}
