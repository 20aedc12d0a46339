// nullsurf: acceptance suite shared by the `selftest` CLI verb and the
// ctest acceptance binary; one pass/fail line per criterion
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nullsurf/analysis.hpp"
#include "nullsurf/geodesics.hpp"
#include "nullsurf/normalization.hpp"
#include "nullsurf/report_io.hpp"

namespace nullsurf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace selftest_detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + x * (hi - lo);
}

inline GaugeTransform random_gauge(std::mt19937_64& rng, int m, bool full) {
    GaugeTransform g = GaugeTransform::identity(m);
    g.c = uniform(rng, 0.4, 2.5);
    if (full) {
        for (int i = 0; i < m; ++i) {
            g.t[i] = uniform(rng, -0.8, 0.8);
            for (int j = 0; j < m; ++j) g.A(i, j) += uniform(rng, -0.3, 0.3);
        }
    }
    return g;
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

inline Vec random_chart_point(std::mt19937_64& rng, const MetricField& metric, double margin) {
    Vec x(metric.dim());
    for (int i = 0; i < metric.dim(); ++i) {
        auto [lo, hi] = metric.chart_bounds()[i];
        x[i] = uniform(rng, lo + margin, hi - margin);
    }
    return x;
}

inline std::vector<Vec> grid_points(const std::vector<GridAxis>& grid) {
    int total = 1;
    for (const auto& a : grid) total *= a.count;
    std::vector<Vec> out;
    out.reserve(total);
    for (int idx = 0; idx < total; ++idx) out.push_back(detail::grid_point(grid, idx));
    return out;
}

inline std::vector<MetricField> catalog_metrics() {
    return {minkowski_metric(4), de_sitter_metric(4, 1.0), anti_de_sitter_metric(4, -1.0),
            eddington_finkelstein_metric(1.0)};
}

// 1. riemann on the finite-difference path reproduces the constant-curvature
//    closed form; pins the curvature convention.
inline CriterionResult constant_curvature_oracle() {
    CriterionResult r{1, "constant-curvature oracle (de Sitter vs closed form)", false, ""};
    MetricField ds = de_sitter_metric(4, 1.0);
    MetricField ds_fd = ds.without_analytic_derivatives();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        Vec x = random_chart_point(rng, ds, 0.15);
        CurvatureTensor expected = constant_curvature_riemann(1.0, ds, x);
        CurvatureTensor got = riemann(ds_fd, x);
        double scale = expected.riemann_down.max_abs();
        double err = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        err = std::max(err, std::abs(got.riemann_down(i, j, k, l) -
                                                     expected.riemann_down(i, j, k, l)));
        worst = std::max(worst, err / scale);
    }
    r.pass = worst < 1e-5;
    r.detail = "max relative deviation " + fmt(worst) + " (tol 1e-5, 25 points)";
    return r;
}

// 2. curvature symmetries on every catalog metric.
inline CriterionResult curvature_symmetries() {
    CriterionResult r{2, "curvature symmetries on catalog metrics", false, ""};
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (const MetricField& m : catalog_metrics()) {
        for (int trial = 0; trial < 25; ++trial) {
            Vec x = random_chart_point(rng, m, 0.15);
            if (m.name() == "eddington_finkelstein") {
                x[0] = uniform(rng, -1.0, 1.0);
                x[1] = uniform(rng, 1.5, 6.0);
                x[3] = uniform(rng, -1.0, 1.0);
            }
            CurvatureTensor curv = riemann(m, x);
            double scale = std::max(1.0, curv.riemann_down.max_abs());
            worst = std::max(worst, curvature_symmetry_residual(curv) / scale);
        }
    }
    r.pass = worst < 1e-6;
    r.detail = "max symmetry residual " + fmt(worst) + " (tol 1e-6, 4 metrics x 25 points)";
    return r;
}

// 3. totally geodesic fixtures: null hyperplane and the Schwarzschild horizon.
inline CriterionResult totally_geodesic_fixture() {
    CriterionResult r{3, "totally geodesic fixtures (hyperplane, horizon)", false, ""};
    double worst_plane = 0.0;
    bool all_unavailable = true;
    {
        MetricField mink = minkowski_metric(4);
        HypersurfacePatch plane = null_hyperplane_patch(4);
        FrameField frames(mink, plane);
        for (const Vec& u : grid_points({{-0.3, 0.3, 3}, {-0.3, 0.3, 3}, {-0.3, 0.3, 3}})) {
            ShapeData shape = shape_from_field(frames.local(u), u);
            worst_plane = std::max(worst_plane, shape.lambda_norm());
            TripleNormalizations t = triple_normalizations_4d(frames, u, {}, false);
            if (t.from_lambda2.available() || t.from_lambda3.available() ||
                t.from_ratio.available())
                all_unavailable = false;
            if (t.from_lambda2.reason != ScreenUnavailability::totally_geodesic)
                all_unavailable = false;
        }
    }
    double worst_horizon = 0.0;
    bool horizon_geodesic = true;
    {
        MetricField ef = eddington_finkelstein_metric(1.0);
        HypersurfacePatch horizon = schwarzschild_horizon_patch(1.0);
        FrameField frames(ef, horizon);
        for (const Vec& u : grid_points({{-0.5, 0.5, 3}, {0.9, 2.1, 3}, {0.3, 1.1, 3}})) {
            ShapeData shape = shape_from_field(frames.local(u), u);
            worst_horizon = std::max(worst_horizon, shape.lambda_norm());
            if (classify(shape).kind != ShapeClass::totally_geodesic) horizon_geodesic = false;
        }
    }
    r.pass = worst_plane < 1e-8 && all_unavailable && worst_horizon < 1e-5 && horizon_geodesic;
    r.detail = "|lambda| hyperplane " + fmt(worst_plane) + " (tol 1e-8), horizon " +
               fmt(worst_horizon) + " (tol 1e-5), normalizations unavailable: " +
               (all_unavailable ? "yes" : "no");
    return r;
}

// 4. totally umbilical fixture: the light cone with lambda = 1/s and a single
//    multiplicity-2 focus at the apex, gauge-independent.
inline CriterionResult totally_umbilical_fixture() {
    CriterionResult r{4, "totally umbilical fixture (light cone)", false, ""};
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    double worst_lambda = 0.0, worst_focus = 0.0;
    bool structure_ok = true;
    for (const Vec& u : grid_points({{0.3, 0.9, 3}, {0.8, 1.6, 3}, {0.4, 1.2, 3}})) {
        for (double c : {0.5, 1.0, 3.0}) {
            FrameField frames(mink, cone, [c](const Vec&) { return GaugeTransform::rescale(c, 2); });
            ShapeData shape = shape_from_field(frames.local(u), u);
            Classification cls = classify(shape);
            if (cls.kind != ShapeClass::totally_umbilical) structure_ok = false;
            if (c == 1.0)
                worst_lambda = std::max(worst_lambda,
                                        std::abs(cls.umbilical_lambda - 1.0 / u[0]) * u[0]);
            FocalSet foci = focal_points(shape, shape.frame);
            if (foci.foci.size() != 1 || foci.foci[0].multiplicity != 2 ||
                foci.foci[0].at_infinity)
                structure_ok = false;
            else
                worst_focus =
                    std::max(worst_focus, foci.foci[0].development.cwiseAbs().maxCoeff());
        }
    }
    r.pass = structure_ok && worst_lambda < 1e-6 && worst_focus < 1e-8;
    r.detail = "lambda rel err " + fmt(worst_lambda) + " (tol 1e-6), |F - apex| " +
               fmt(worst_focus) + " (tol 1e-8), multiplicity-2 focus: " +
               (structure_ok ? "yes" : "no");
    return r;
}

// 5. isotropic sectional curvature: vanishes on the constant-curvature
//    charts, scales quadratically in the isotropic direction.
inline CriterionResult sectional_curvature() {
    CriterionResult r{5, "isotropic sectional curvature (vanishing + scaling)", false, ""};
    std::mt19937_64 rng(105);
    double worst_zero = 0.0;
    struct Case {
        MetricField metric;
        HypersurfacePatch patch;
        std::vector<GridAxis> grid;
    };
    std::vector<Case> cases;
    cases.push_back({minkowski_metric(4), light_cone_patch(4),
                     {{0.3, 0.9, 3}, {0.8, 1.6, 3}, {0.4, 1.2, 3}}});
    cases.push_back({de_sitter_metric(4, 1.0), light_cone_patch(4),
                     {{0.3, 0.8, 3}, {0.8, 1.6, 3}, {0.4, 1.2, 3}}});
    cases.push_back({anti_de_sitter_metric(4, -1.0), light_cone_patch(4),
                     {{0.3, 0.8, 3}, {0.8, 1.6, 3}, {0.4, 1.2, 3}}});
    for (const Case& c : cases) {
        FrameField frames(c.metric, c.patch);
        for (const Vec& u : grid_points(c.grid)) {
            IsotropicFrame frame = frames.frame(u);
            CurvatureTensor curv = riemann(c.metric, frame.point);
            for (int trial = 0; trial < 10; ++trial) {
                Vec p(2);
                p << uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0);
                if (p.norm() < 0.1) p[0] += 1.0;
                worst_zero = std::max(worst_zero, std::abs(isotropic_sectional_curvature(
                                                      c.metric, frame, p, curv)));
            }
        }
    }

    // quadratic scaling on a genuinely curved plane (tilted null direction in
    // the Schwarzschild chart)
    MetricField ef = eddington_finkelstein_metric(1.0);
    Vec x(4);
    x << 0.0, 5.0, 1.2, 0.7;
    Mat g = ef.eval(x);
    Vec n(4);
    n << 1.0, 0.0, 0.2, 0.0;
    n[1] = -(n[0] * n[0] * g(0, 0) + n[2] * n[2] * g(2, 2)) / (2.0 * n[0] * g(0, 1));
    Vec p(4);
    p << 0.0, 0.0, 0.0, 1.0;
    CurvatureTensor curv = riemann(ef, x);
    double k0 = isotropic_sectional_curvature_plane(ef, x, n, p, curv);
    double worst_scale = 0.0;
    for (double c : {0.5, 3.0}) {
        double kc = isotropic_sectional_curvature_plane(ef, x, Vec(c * n), p, curv);
        worst_scale = std::max(worst_scale, std::abs(kc - c * c * k0) / std::abs(c * c * k0));
    }
    r.pass = worst_zero < 1e-6 && worst_scale < 1e-6 && std::abs(k0) > 1e-4;
    r.detail = "max |K_N| on constant curvature " + fmt(worst_zero) +
               " (tol 1e-6), c^2-scaling rel err " + fmt(worst_scale) + " (tol 1e-6)";
    return r;
}

// 6. weight laws: I_p ~ c^p, lambda_a ~ c, normalized e1 and absolute
//    invariants gauge-independent.
inline CriterionResult weight_laws() {
    CriterionResult r{6, "weight laws and gauge invariance of invariants", false, ""};
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch patch = ellipsoid_congruence_patch(1.0, 1.3, 1.7);
    FrameField base(mink, patch);
    double worst = 0.0;
    std::mt19937_64 rng(106);
    for (const Vec& u : grid_points({{0.15, 0.45, 2}, {0.8, 1.3, 2}, {0.4, 1.1, 2}})) {
        ShapeData shape0 = shape_from_field(base.local(u), u);
        InvariantSet inv0 = invariant_set(shape0);
        Vec tilde0 = normalized_e1(shape0.frame, inv0.elementary(1));
        for (double c : {0.5, 3.0}) {
            FrameField gauged(mink, patch,
                              [c](const Vec&) { return GaugeTransform::rescale(c, 2); });
            ShapeData shape = shape_from_field(gauged.local(u), u);
            InvariantSet inv = invariant_set(shape);
            for (int pdx = 1; pdx <= 2; ++pdx)
                worst = std::max(worst, std::abs(inv.elementary(pdx) -
                                                 std::pow(c, pdx) * inv0.elementary(pdx)) /
                                            std::abs(std::pow(c, pdx) * inv0.elementary(pdx)));
            for (int a = 0; a < 2; ++a)
                worst = std::max(worst, std::abs(inv.eigenvalues[a] - c * inv0.eigenvalues[a]) /
                                            std::abs(c * inv0.eigenvalues[a]));
            Vec tilde = normalized_e1(shape.frame, inv.elementary(1));
            worst = std::max(worst, (tilde - tilde0).norm() / tilde0.norm());
        }
        double j0 = eigenvalue_ratio(inv0, 0, 1);
        InvariantPower i1sq{InvariantPower::Base::elementary, 1, 2};
        InvariantPower it2{InvariantPower::Base::power_sum, 2, 1};
        double q0 = absolute_invariant(inv0, i1sq, it2);
        for (int trial = 0; trial < 20; ++trial) {
            GaugeTransform g = random_gauge(rng, 2, true);
            FrameField gauged(mink, patch, [g](const Vec&) { return g; });
            InvariantSet inv = invariant_set(shape_from_field(gauged.local(u), u));
            worst = std::max(worst, std::abs(eigenvalue_ratio(inv, 0, 1) - j0) / std::abs(j0));
            worst = std::max(worst,
                             std::abs(absolute_invariant(inv, i1sq, it2) - q0) / std::abs(q0));
        }
    }
    r.pass = worst < 1e-6;
    r.detail = "max relative deviation " + fmt(worst) + " (tol 1e-6)";
    return r;
}

// 7. intrinsic-ness of constructed screens across admissible gauges.
inline CriterionResult screen_intrinsicness() {
    CriterionResult r{7, "intrinsic screens under 20 random gauges", false, ""};
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch patch = ellipsoid_congruence_patch(1.0, 1.3, 1.7);
    FrameField base(mink, patch);
    NormalizationTolerances tol;
    std::mt19937_64 rng(107);

    double worst_proj = 0.0, worst_tangency = 0.0;
    bool integrable_ok = true;
    std::vector<Vec> samples;
    {
        Vec u(3);
        u << 0.25, 1.0, 0.7;
        samples.push_back(u);
        u << 0.4, 1.2, 0.5;
        samples.push_back(u);
        u << 0.15, 0.9, 1.0;
        samples.push_back(u);
    }
    for (const Vec& u : samples) {
        LocalFrameField local = base.local(u);

        // absolute-invariant screen from the eigenvalue ratio
        TripleNormalizations triple = triple_normalizations_4d(base, u, tol, true);
        if (!triple.from_ratio.available()) {
            r.detail = "ratio screen unavailable at a sample point";
            return r;
        }
        const ScreenSample& ratio = *triple.from_ratio.screen;
        if (!ratio.integrable) integrable_ok = false;
        worst_tangency = std::max(
            worst_tangency,
            level_set_tangency_residual(eigenvalue_ratio_field(local, 0, 1), local, u, ratio));

        // relative-invariant screen from the trace invariant I_1
        auto trace_field = [local](const Vec& v) {
            return shape_from_field(local, v).lambda_up.trace();
        };
        ShapeData shape0 = shape_from_field(local, u);
        ScreenSample rel0 = screen_from_relative_invariant(
            shape0, invariant_log_derivative(trace_field, local, u, tol), tol);

        for (int trial = 0; trial < 20; ++trial) {
            GaugeTransform g = random_gauge(rng, 2, true);
            FrameField gauged(mink, patch, [g](const Vec&) { return g; });
            LocalFrameField glocal = gauged.local(u);
            TripleNormalizations gt = triple_normalizations_4d(gauged, u, tol, false);
            if (!gt.from_ratio.available()) {
                r.detail = "ratio screen lost under a gauge";
                return r;
            }
            worst_proj = std::max(
                worst_proj, (gt.from_ratio.screen->projector - ratio.projector).norm());
            auto gtrace = [glocal](const Vec& v) {
                return shape_from_field(glocal, v).lambda_up.trace();
            };
            ShapeData gshape = shape_from_field(glocal, u);
            ScreenSample grel = screen_from_relative_invariant(
                gshape, invariant_log_derivative(gtrace, glocal, u, tol), tol);
            worst_proj = std::max(worst_proj, (grel.projector - rel0.projector).norm());
        }
    }
    r.pass = worst_proj < 1e-5 && integrable_ok && worst_tangency < 1e-6;
    r.detail = "max projector deviation " + fmt(worst_proj) +
               " (tol 1e-5), tangency residual " + fmt(worst_tangency) +
               " (tol 1e-6), ratio screens integrable: " + (integrable_ok ? "yes" : "no");
    return r;
}

// 8. Theorem-6 hypothesis boundary: forced K on the spectrum, flat-space
//    degeneration of the eigenvalue screens.
inline CriterionResult hypothesis_boundary() {
    CriterionResult r{8, "hypothesis boundaries (K on spectrum, flat-space triple)", false, ""};
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch patch = ellipsoid_congruence_patch(1.0, 1.3, 1.7);
    FrameField frames(mink, patch);
    Vec u(3);
    u << 0.3, 1.0, 0.7;
    ShapeData shape = shape_from_field(frames.local(u), u);

    bool forced_rejected = false;
    InvariantFieldDerivative forced;
    forced.value = 1.0;
    forced.K = shape.eigenvalues[1];
    forced.K_a = Vec::Zero(2);
    try {
        screen_from_relative_invariant(shape, forced);
    } catch (const ScreenUnavailableError& e) {
        forced_rejected = e.reason() == ScreenUnavailability::k_is_eigenvalue;
    }

    TripleNormalizations triple = triple_normalizations_4d(frames, u, {}, false);
    bool flat_degenerate =
        !triple.from_lambda2.available() && !triple.from_lambda3.available() &&
        triple.from_lambda2.reason == ScreenUnavailability::k_proportional_to_eigenvalues &&
        triple.from_lambda3.reason == ScreenUnavailability::k_proportional_to_eigenvalues;
    bool ratio_produced = triple.from_ratio.available();

    r.pass = forced_rejected && flat_degenerate && ratio_produced;
    r.detail = std::string("forced K rejected: ") + (forced_rejected ? "yes" : "no") +
               ", flat-space eigenvalue screens degenerate: " +
               (flat_degenerate ? "yes" : "no") +
               ", ratio screen produced: " + (ratio_produced ? "yes" : "no");
    return r;
}

// 9. geodesic contracts: drift, straight lines, staying on the cone.
inline CriterionResult geodesic_contracts() {
    CriterionResult r{9, "geodesic contracts (drift, lines, cone)", false, ""};
    double worst_drift = 0.0;
    for (const MetricField& m : catalog_metrics()) {
        Vec x0, v0;
        if (m.name() == "eddington_finkelstein") {
            x0 = Vec(4);
            x0 << 0.0, 5.0, 1.4, 0.5;
            v0 = Vec(4);
            v0 << 0.0, -0.3, 0.0, 0.0;
        } else {
            x0 = Vec::Zero(4);
            Vec dir(4);
            dir << std::cos(0.3), std::sin(0.3) * std::cos(0.8), std::sin(0.3) * std::sin(0.8),
                1.0;
            v0 = (m.name() == "minkowski" ? 1.0 : 0.12) * dir;
        }
        GeodesicRecord rec = integrate_isotropic_geodesic(m, x0, v0, 5.0, 11);
        if (rec.exited_chart) {
            r.detail = m.name() + ": geodesic left the chart";
            return r;
        }
        worst_drift = std::max(worst_drift, rec.max_null_drift());
    }

    MetricField mink = minkowski_metric(4);
    Vec x0(4), v0(4);
    x0 << 0.1, -0.3, 0.2, 0.0;
    v0 << 0.6, 0.0, 0.8, 1.0;
    GeodesicRecord line = integrate_isotropic_geodesic(mink, x0, v0, 5.0, 11);
    double worst_line = 0.0;
    for (size_t i = 0; i < line.s.size(); ++i)
        worst_line = std::max(worst_line,
                              (line.x[i] - (x0 + line.s[i] * v0)).cwiseAbs().maxCoeff());

    Vec dir(4);
    dir << std::cos(0.4), std::sin(0.4) * std::cos(1.0), std::sin(0.4) * std::sin(1.0), 1.0;
    GeodesicRecord gen = integrate_isotropic_geodesic(mink, Vec(0.5 * dir), dir, 4.0, 21);
    double worst_cone = 0.0;
    for (const Vec& x : gen.x)
        worst_cone = std::max(worst_cone, std::abs(x.head(3).norm() - std::abs(x[3])));

    r.pass = worst_drift < 1e-7 && worst_line < 1e-10 && worst_cone < 1e-8;
    r.detail = "null drift " + fmt(worst_drift) + " (tol 1e-7), line error " + fmt(worst_line) +
               " (tol 1e-10), cone residual " + fmt(worst_cone) + " (tol 1e-8)";
    return r;
}

// 10. transport identity on de Sitter light cones: the generator derivative
//     of lambda_ab reduces to -(lambda g^-1 lambda).
inline CriterionResult transport_identity() {
    CriterionResult r{10, "constant-curvature transport identity (de Sitter cone)", false, ""};
    MetricField ds = de_sitter_metric(4, 1.0);
    HypersurfacePatch cone = light_cone_patch(4);
    FrameField frames(ds, cone);
    double worst = 0.0;
    for (const Vec& u : grid_points({{0.35, 0.75, 3}, {0.9, 1.5, 2}, {0.5, 1.1, 2}})) {
        Mat residual = shape_transport_residual(frames.local(u), u);
        worst = std::max(worst, residual.cwiseAbs().maxCoeff());
    }
    r.pass = worst < 1e-4;
    r.detail = "max residual " + fmt(worst) + " (tol 1e-4, 12 cone points)";
    return r;
}

// 11. determinism: repeated analyze runs emit byte-identical files.
inline CriterionResult determinism() {
    CriterionResult r{11, "determinism of analyze and selftest", false, ""};
    const char* cfg_text =
        "metric.name = minkowski\n"
        "metric.dim = 4\n"
        "hypersurface.name = ellipsoid_null_congruence\n"
        "grid.u1 = 0.2:0.4:2\n"
        "grid.u2 = 0.9:1.2:2\n"
        "grid.u3 = 0.5:0.9:2\n"
        "outputs = shape,invariants,sectional,screens,foci,connection\n"
        "gauge_seed = 42\n"
        "gauge.samples = 2\n"
        "gauge.points = 2\n";
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "nullsurf_selftest";
    fs::remove_all(tmp);

    auto run = [&](const fs::path& dir) {
        AnalysisConfig cfg = parse_config(cfg_text);
        Report report = analyze(cfg);
        std::vector<fs::path> files;
        for (EmitFormat f : {EmitFormat::table, EmitFormat::structured, EmitFormat::plotdata})
            for (const auto& p : emit(report, f, dir)) files.push_back(p);
        return files;
    };
    std::vector<fs::path> first = run(tmp / "a");
    std::vector<fs::path> second = run(tmp / "b");

    bool identical = first.size() == second.size();
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    for (size_t i = 0; identical && i < first.size(); ++i)
        identical = slurp(first[i]) == slurp(second[i]);

    // a representative criterion re-run must render identically
    CriterionResult once = totally_umbilical_fixture();
    CriterionResult twice = totally_umbilical_fixture();
    bool criterion_stable = once.detail == twice.detail && once.pass == twice.pass;

    r.pass = identical && criterion_stable;
    r.detail = std::string("emitted files byte-identical: ") + (identical ? "yes" : "no") +
               ", criterion output stable: " + (criterion_stable ? "yes" : "no");
    return r;
}

}  // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance() {
    using namespace selftest_detail;
    std::vector<CriterionResult> out;
    out.push_back(constant_curvature_oracle());
    out.push_back(curvature_symmetries());
    out.push_back(totally_geodesic_fixture());
    out.push_back(totally_umbilical_fixture());
    out.push_back(sectional_curvature());
    out.push_back(weight_laws());
    out.push_back(screen_intrinsicness());
    out.push_back(hypothesis_boundary());
    out.push_back(geodesic_contracts());
    out.push_back(transport_identity());
    out.push_back(determinism());
    return out;
}

inline std::string render_acceptance(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    int passed = 0;
    for (const CriterionResult& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.detail
            << "\n";
        if (r.pass) ++passed;
    }
    out << passed << "/" << results.size() << " acceptance criteria passed\n";
    return out.str();
}

inline int acceptance_exit_code(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace nullsurf
