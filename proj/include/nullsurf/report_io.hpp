// nullsurf: report serialization (table / structured / plotdata)
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nullsurf/analysis.hpp"

namespace nullsurf {

enum class EmitFormat { table, structured, plotdata };

inline EmitFormat parse_emit_format(const std::string& name) {
    if (name == "table") return EmitFormat::table;
    if (name == "structured") return EmitFormat::structured;
    if (name == "plotdata") return EmitFormat::plotdata;
    throw ConfigError("format: expected table, structured or plotdata, got '" + name + "'");
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace detail

// Delimiter-separated table, one row per grid point. The column registry is
// fixed by the report contents: absent quantities print as "na".
inline std::filesystem::path emit_table(const Report& report,
                                        const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::filesystem::path path = dir / "report.csv";
    std::ofstream out = detail::open_out(path);

    const int pdim = static_cast<int>(report.grid.size());
    const int m = pdim - 1;  // screen dimension n - 2

    out << "index";
    for (int k = 1; k <= pdim; ++k) out << ",u" << k;
    for (int i = 0; i <= pdim; ++i) out << ",x" << i;
    out << ",classification,umbilical_lambda,lambda_norm,symmetry_residual";
    for (int a = 0; a < m; ++a) out << ",lambda_" << a + 2;
    for (int p = 1; p <= m; ++p) out << ",I_" << p;
    for (int p = 1; p <= m; ++p) out << ",Itilde_" << p;
    out << ",eigenvalue_ratio,sectional_max_abs";
    const char* screen_names[3] = {"screen_lambda2", "screen_lambda3", "screen_ratio"};
    for (const char* s : screen_names)
        out << "," << s << "_status," << s << "_integrable," << s << "_nu_antisym";
    for (int a = 0; a < m; ++a)
        out << ",focus_" << a + 1 << "_s,focus_" << a + 1 << "_mult,focus_" << a + 1
            << "_at_infinity";
    out << "\n";

    auto opt = [&](bool have, double v) { return have ? detail::fmt(v) : std::string("na"); };

    for (const PointRecord& rec : report.points) {
        out << rec.index;
        for (int k = 0; k < pdim; ++k) out << "," << detail::fmt(rec.params[k]);
        for (int i = 0; i <= pdim; ++i)
            out << "," << (rec.point.size() ? detail::fmt(rec.point[i]) : "na");
        out << "," << rec.classification << "," << detail::fmt(rec.umbilical_lambda) << ","
            << detail::fmt(rec.lambda_norm) << "," << detail::fmt(rec.symmetry_residual);
        for (int a = 0; a < m; ++a)
            out << "," << (rec.eigenvalues.size() ? detail::fmt(rec.eigenvalues[a]) : "na");
        for (int p = 0; p < m; ++p)
            out << ","
                << (rec.invariants_elementary.size() ? detail::fmt(rec.invariants_elementary[p])
                                                     : "na");
        for (int p = 0; p < m; ++p)
            out << ","
                << (rec.invariants_power_sum.size() ? detail::fmt(rec.invariants_power_sum[p])
                                                    : "na");
        out << "," << opt(rec.eigenvalue_ratio.has_value(), rec.eigenvalue_ratio.value_or(0));
        out << "," << opt(rec.sectional_max_abs.has_value(), rec.sectional_max_abs.value_or(0));
        for (int s = 0; s < 3; ++s) {
            if (s < static_cast<int>(rec.screens.size())) {
                const ScreenRecord& sc = rec.screens[s];
                out << "," << (sc.available ? "available" : sc.reason);
                out << "," << (sc.available ? (sc.integrable ? "1" : "0") : "na");
                out << ","
                    << (sc.available && sc.nu_a.size() ? detail::fmt(sc.nu_antisymmetry) : "na");
            } else {
                out << ",na,na,na";
            }
        }
        for (int a = 0; a < m; ++a) {
            if (a < static_cast<int>(rec.foci.size())) {
                const FocusRecord& f = rec.foci[a];
                out << "," << (f.at_infinity ? "na" : detail::fmt(f.s)) << "," << f.multiplicity
                    << "," << (f.at_infinity ? "1" : "0");
            } else {
                out << ",na,na,na";
            }
        }
        out << "\n";
    }
    return path;
}

// Nested key = value text mirroring the Report structure.
inline std::filesystem::path emit_structured(const Report& report,
                                             const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::filesystem::path path = dir / "report.txt";
    std::ofstream out = detail::open_out(path);

    out << "provenance.tool = " << report.version << "\n";
    out << "provenance.config_hash = " << report.config_hash << "\n";
    out << "provenance.convention = " << report.convention_note << "\n";
    out << "metric = " << report.metric_name << "\n";
    out << "hypersurface = " << report.surface_name << "\n";
    for (size_t k = 0; k < report.grid.size(); ++k)
        out << "grid.u" << k + 1 << " = " << detail::fmt(report.grid[k].lo) << ":"
            << detail::fmt(report.grid[k].hi) << ":" << report.grid[k].count << "\n";

    for (const auto& [name, count] : report.summary.classification_histogram)
        out << "summary.classification." << name << " = " << count << "\n";
    for (const auto& [name, range] : report.summary.invariant_ranges)
        out << "summary.range." << name << " = " << detail::fmt(range.first) << " .. "
            << detail::fmt(range.second) << "\n";
    out << "summary.screens.available = " << report.summary.screens_available << "\n";
    out << "summary.screens.integrable = " << report.summary.screens_integrable << "\n";
    for (const auto& [reason, count] : report.summary.unavailable_reasons)
        out << "summary.screens.unavailable." << reason << " = " << count << "\n";
    out << "summary.gauge.projector_residual_max = "
        << detail::fmt(report.summary.gauge_projector_residual_max) << "\n";
    out << "summary.gauge.invariant_residual_max = "
        << detail::fmt(report.summary.gauge_invariant_residual_max) << "\n";

    for (const PointRecord& rec : report.points) {
        std::string prefix = "point." + std::to_string(rec.index) + ".";
        for (int k = 0; k < rec.params.size(); ++k)
            out << prefix << "u" << k + 1 << " = " << detail::fmt(rec.params[k]) << "\n";
        for (int i = 0; i < rec.point.size(); ++i)
            out << prefix << "x" << i << " = " << detail::fmt(rec.point[i]) << "\n";
        out << prefix << "classification = " << rec.classification << "\n";
        out << prefix << "lambda_norm = " << detail::fmt(rec.lambda_norm) << "\n";
        out << prefix << "symmetry_residual = " << detail::fmt(rec.symmetry_residual) << "\n";
        if (rec.classification == "totally_umbilical")
            out << prefix << "umbilical_lambda = " << detail::fmt(rec.umbilical_lambda) << "\n";
        for (int a = 0; a < rec.eigenvalues.size(); ++a)
            out << prefix << "lambda_" << a + 2 << " = " << detail::fmt(rec.eigenvalues[a])
                << "\n";
        for (int p = 0; p < rec.invariants_elementary.size(); ++p)
            out << prefix << "I_" << p + 1 << " = " << detail::fmt(rec.invariants_elementary[p])
                << "\n";
        for (int p = 0; p < rec.invariants_power_sum.size(); ++p)
            out << prefix << "Itilde_" << p + 1 << " = "
                << detail::fmt(rec.invariants_power_sum[p]) << "\n";
        if (rec.eigenvalue_ratio)
            out << prefix << "eigenvalue_ratio = " << detail::fmt(*rec.eigenvalue_ratio) << "\n";
        if (rec.sectional_max_abs)
            out << prefix << "sectional_max_abs = " << detail::fmt(*rec.sectional_max_abs)
                << "\n";
        for (size_t s = 0; s < rec.screens.size(); ++s) {
            const ScreenRecord& sc = rec.screens[s];
            std::string sp = prefix + "screen." + sc.method + ".";
            out << sp << "status = " << (sc.available ? "available" : sc.reason) << "\n";
            if (sc.available) {
                for (int a = 0; a < sc.L.size(); ++a)
                    out << sp << "L_" << a + 2 << " = " << detail::fmt(sc.L[a]) << "\n";
                if (sc.nu_a.size()) {
                    out << sp << "integrable = " << (sc.integrable ? "true" : "false") << "\n";
                    out << sp << "nu_antisymmetry = " << detail::fmt(sc.nu_antisymmetry) << "\n";
                    for (int a = 0; a < sc.nu_a.size(); ++a)
                        out << sp << "nu_" << a + 2 << " = " << detail::fmt(sc.nu_a[a]) << "\n";
                    for (int a = 0; a < sc.nu_ab.rows(); ++a)
                        for (int b = 0; b < sc.nu_ab.cols(); ++b)
                            out << sp << "nu_" << a + 2 << b + 2 << " = "
                                << detail::fmt(sc.nu_ab(a, b)) << "\n";
                }
            }
        }
        for (size_t f = 0; f < rec.foci.size(); ++f) {
            std::string fp = prefix + "focus." + std::to_string(f + 1) + ".";
            out << fp << "multiplicity = " << rec.foci[f].multiplicity << "\n";
            if (rec.foci[f].at_infinity) {
                out << fp << "at_infinity = true\n";
            } else {
                out << fp << "s = " << detail::fmt(rec.foci[f].s) << "\n";
                for (int i = 0; i < rec.foci[f].development.size(); ++i)
                    out << fp << "F" << i << " = " << detail::fmt(rec.foci[f].development[i])
                        << "\n";
            }
        }
    }
    return path;
}

// Per-quantity columnar files for external plotting.
inline std::vector<std::filesystem::path> emit_plotdata(const Report& report,
                                                        const std::filesystem::path& dir) {
    std::filesystem::path plots = dir / "plot";
    std::filesystem::create_directories(plots);
    std::vector<std::filesystem::path> written;
    const int pdim = static_cast<int>(report.grid.size());

    auto params_row = [&](std::ofstream& out, const PointRecord& rec) {
        for (int k = 0; k < pdim; ++k) out << (k ? " " : "") << detail::fmt(rec.params[k]);
    };

    {
        std::filesystem::path p = plots / "eigenvalues.dat";
        std::ofstream out = detail::open_out(p);
        out << "#";
        for (int k = 1; k <= pdim; ++k) out << " u" << k;
        for (int a = 0; a < pdim - 1; ++a) out << " lambda_" << a + 2;
        out << "\n";
        for (const PointRecord& rec : report.points) {
            params_row(out, rec);
            for (int a = 0; a < rec.eigenvalues.size(); ++a)
                out << " " << detail::fmt(rec.eigenvalues[a]);
            out << "\n";
        }
        written.push_back(p);
    }
    if (!report.points.empty() && report.points.front().invariants_elementary.size()) {
        std::filesystem::path p = plots / "invariants.dat";
        std::ofstream out = detail::open_out(p);
        out << "#";
        for (int k = 1; k <= pdim; ++k) out << " u" << k;
        for (int q = 1; q < pdim; ++q) out << " I_" << q;
        out << " ratio\n";
        for (const PointRecord& rec : report.points) {
            params_row(out, rec);
            for (int q = 0; q < rec.invariants_elementary.size(); ++q)
                out << " " << detail::fmt(rec.invariants_elementary[q]);
            out << " "
                << (rec.eigenvalue_ratio ? detail::fmt(*rec.eigenvalue_ratio)
                                         : std::string("na"))
                << "\n";
        }
        written.push_back(p);
    }
    if (!report.points.empty() && report.points.front().sectional_max_abs) {
        std::filesystem::path p = plots / "sectional.dat";
        std::ofstream out = detail::open_out(p);
        out << "#";
        for (int k = 1; k <= pdim; ++k) out << " u" << k;
        out << " K_N_max_abs\n";
        for (const PointRecord& rec : report.points) {
            params_row(out, rec);
            out << " " << detail::fmt(rec.sectional_max_abs.value_or(0.0)) << "\n";
        }
        written.push_back(p);
    }
    // focal sheets: one file per focus slot, finite foci only
    for (int sheet = 0; sheet < pdim - 1; ++sheet) {
        bool any = false;
        for (const PointRecord& rec : report.points)
            if (sheet < static_cast<int>(rec.foci.size()) && !rec.foci[sheet].at_infinity)
                any = true;
        if (!any) continue;
        std::filesystem::path p = plots / ("focal_sheet_" + std::to_string(sheet + 1) + ".dat");
        std::ofstream out = detail::open_out(p);
        out << "#";
        for (int k = 1; k <= pdim; ++k) out << " u" << k;
        out << " s";
        for (int i = 0; i <= pdim; ++i) out << " F" << i;
        out << "\n";
        for (const PointRecord& rec : report.points) {
            if (sheet >= static_cast<int>(rec.foci.size()) || rec.foci[sheet].at_infinity)
                continue;
            params_row(out, rec);
            out << " " << detail::fmt(rec.foci[sheet].s);
            for (int i = 0; i < rec.foci[sheet].development.size(); ++i)
                out << " " << detail::fmt(rec.foci[sheet].development[i]);
            out << "\n";
        }
        written.push_back(p);
    }
    if (!report.points.empty() && !report.points.front().screens.empty()) {
        std::filesystem::path p = plots / "screens.dat";
        std::ofstream out = detail::open_out(p);
        out << "#";
        for (int k = 1; k <= pdim; ++k) out << " u" << k;
        out << " lambda2_status lambda3_status ratio_status ratio_L2 ratio_L3\n";
        for (const PointRecord& rec : report.points) {
            params_row(out, rec);
            for (const ScreenRecord& sc : rec.screens)
                out << " " << (sc.available ? "available" : sc.reason);
            const ScreenRecord& ratio = rec.screens.back();
            if (ratio.available && ratio.L.size() == 2)
                out << " " << detail::fmt(ratio.L[0]) << " " << detail::fmt(ratio.L[1]);
            else
                out << " na na";
            out << "\n";
        }
        written.push_back(p);
    }
    return written;
}

inline std::vector<std::filesystem::path> emit(const Report& report, EmitFormat format,
                                               const std::filesystem::path& dir) {
    try {
        switch (format) {
            case EmitFormat::table: return {emit_table(report, dir)};
            case EmitFormat::structured: return {emit_structured(report, dir)};
            case EmitFormat::plotdata: return emit_plotdata(report, dir);
        }
    } catch (const std::filesystem::filesystem_error& e) {
        throw IoError(e.what());
    }
    return {};
}

}  // namespace nullsurf
