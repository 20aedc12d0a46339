// nullsurf: config-driven batch analysis over a parameter grid
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nullsurf/config.hpp"
#include "nullsurf/framefield.hpp"
#include "nullsurf/geodesics.hpp"
#include "nullsurf/invariants.hpp"
#include "nullsurf/normalization.hpp"
#include "nullsurf/version.hpp"

namespace nullsurf {

struct ScreenRecord {
    std::string method;
    bool available = false;
    std::string reason;  // empty when available
    Vec L;
    bool integrable = false;
    double nu_antisymmetry = 0.0;
    Vec nu_a;
    Mat nu_ab;
    Mat projector;
};

struct FocusRecord {
    double s = 0.0;
    int multiplicity = 1;
    bool at_infinity = false;
    Vec development;
};

struct PointRecord {
    int index = 0;
    Vec params;
    Vec point;

    std::string classification;
    double umbilical_lambda = 0.0;
    double lambda_norm = 0.0;
    double symmetry_residual = 0.0;
    Vec eigenvalues;

    Vec invariants_elementary;
    Vec invariants_power_sum;
    std::optional<double> eigenvalue_ratio;  // lambda_min / lambda_max (4d)

    std::optional<double> sectional_max_abs;

    std::vector<ScreenRecord> screens;
    std::vector<FocusRecord> foci;
};

struct Summary {
    std::map<std::string, int> classification_histogram;
    std::map<std::string, std::pair<double, double>> invariant_ranges;
    int screens_available = 0;
    int screens_integrable = 0;
    std::map<std::string, int> unavailable_reasons;
    double gauge_projector_residual_max = 0.0;  // across seeded gauge reruns
    double gauge_invariant_residual_max = 0.0;  // absolute invariant drift
};

struct Report {
    AnalysisConfig config;
    std::string metric_name;
    std::string surface_name;
    std::vector<GridAxis> grid;
    std::vector<PointRecord> points;
    Summary summary;
    std::uint64_t config_hash = 0;
    std::string version = kVersion;
    std::string convention_note =
        "curvature convention pinned by the constant-curvature calibration: "
        "R_ijkl = K (g_ik g_jl - g_il g_jk)";
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline double seeded_uniform(std::mt19937_64& rng, double lo, double hi) {
    double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + x * (hi - lo);
}

inline GaugeTransform random_admissible_gauge(std::mt19937_64& rng, int m) {
    GaugeTransform g = GaugeTransform::identity(m);
    g.c = seeded_uniform(rng, 0.4, 2.5);
    for (int i = 0; i < m; ++i) {
        g.t[i] = seeded_uniform(rng, -0.8, 0.8);
        for (int j = 0; j < m; ++j) g.A(i, j) += seeded_uniform(rng, -0.3, 0.3);
    }
    return g;
}

inline int thread_count() {
    if (const char* env = std::getenv("NULLSURF_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline Vec grid_point(const std::vector<GridAxis>& grid, int flat_index) {
    Vec u(grid.size());
    int rest = flat_index;
    for (int k = static_cast<int>(grid.size()) - 1; k >= 0; --k) {
        int i = rest % grid[k].count;
        rest /= grid[k].count;
        u[k] = grid[k].lo + (grid[k].hi - grid[k].lo) * i / (grid[k].count - 1);
    }
    return u;
}

inline ScreenRecord to_record(const ScreenResult& r, const char* method) {
    ScreenRecord rec;
    rec.method = method;
    if (r.available()) {
        const ScreenSample& s = *r.screen;
        rec.available = true;
        rec.L = s.L;
        rec.integrable = s.integrable;
        rec.nu_antisymmetry = s.nu_antisymmetry;
        rec.nu_a = s.nu_a;
        rec.nu_ab = s.nu_ab;
        rec.projector = s.projector;
    } else if (r.reason) {
        rec.reason = to_string(*r.reason);
    }
    return rec;
}

}  // namespace detail

// Runs the full per-point pipeline over the configured grid: lightlike
// verification, frame, shape operator, invariants, sectional curvature
// samples, the three 4-dimensional screens, foci, and induced connections.
// A non-lightlike point is a hard error naming the first failing grid index.
inline Report analyze(const AnalysisConfig& cfg) {
    MetricField metric = make_metric(cfg);
    HypersurfacePatch patch = make_patch(cfg);
    if (patch.ambient_dim() != metric.dim())
        throw ConfigError("hypersurface.name: dimension does not match the metric");
    std::vector<GridAxis> grid = resolve_grid(cfg, patch);

    Report report;
    report.config = cfg;
    report.metric_name = metric.name();
    report.surface_name = patch.name();
    report.grid = grid;
    report.config_hash = detail::fnv1a(cfg.canonical);

    int total = 1;
    for (const auto& axis : grid) total *= axis.count;
    report.points.resize(total);

    FrameField frames(metric, patch);
    bool want_screens = cfg.outputs.count(OutputKind::screens) > 0;
    bool want_connection = cfg.outputs.count(OutputKind::connection) > 0;
    bool want_sectional = cfg.outputs.count(OutputKind::sectional) > 0;
    bool want_foci = cfg.outputs.count(OutputKind::foci) > 0;
    bool want_invariants = cfg.outputs.count(OutputKind::invariants) > 0;

    std::vector<std::string> failures(total);
    std::atomic<int> next(0);

    auto worker = [&]() {
        while (true) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            PointRecord& rec = report.points[idx];
            rec.index = idx;
            rec.params = detail::grid_point(grid, idx);
            try {
                if (verify_lightlike(patch, metric, rec.params) != SurfaceCausalType::lightlike) {
                    failures[idx] = "surface is not lightlike";
                    continue;
                }
                LocalFrameField local = frames.local(rec.params);
                ShapeData shape = shape_from_field(local, rec.params);
                rec.point = shape.point;
                Classification cls = classify(shape, cfg.classify_tol);
                rec.classification = to_string(cls.kind);
                rec.umbilical_lambda = cls.umbilical_lambda;
                rec.lambda_norm = shape.lambda_norm();
                rec.symmetry_residual = shape.symmetry_residual;
                rec.eigenvalues = shape.eigenvalues;

                if (want_invariants) {
                    InvariantSet inv = invariant_set(shape);
                    rec.invariants_elementary = inv.I;
                    rec.invariants_power_sum = inv.I_tilde;
                    int m = static_cast<int>(shape.eigenvalues.size());
                    if (m == 2 && std::abs(shape.eigenvalues[1]) > kInvariantDegeneracyTol)
                        rec.eigenvalue_ratio = shape.eigenvalues[0] / shape.eigenvalues[1];
                }

                if (want_sectional) {
                    CurvatureTensor curv = riemann(metric, shape.point);
                    std::mt19937_64 rng(cfg.gauge_seed ^ (0x9e3779b97f4a7c15ull * (idx + 1)));
                    double worst = 0.0;
                    for (int trial = 0; trial < cfg.sectional_samples; ++trial) {
                        Vec p(shape.eigenvalues.size());
                        for (int a = 0; a < p.size(); ++a)
                            p[a] = detail::seeded_uniform(rng, -1.0, 1.0);
                        if (p.norm() < 0.1) p[0] += 1.0;
                        worst = std::max(worst, std::abs(isotropic_sectional_curvature(
                                                    metric, shape.frame, p, curv)));
                    }
                    rec.sectional_max_abs = worst;
                }

                if (want_screens) {
                    TripleNormalizations triple = triple_normalizations_4d(
                        frames, rec.params, cfg.norm_tol, want_connection);
                    rec.screens.push_back(detail::to_record(triple.from_lambda2, "lambda_2"));
                    rec.screens.push_back(detail::to_record(triple.from_lambda3, "lambda_3"));
                    rec.screens.push_back(detail::to_record(triple.from_ratio, "lambda_2/lambda_3"));
                }

                if (want_foci) {
                    FocalSet foci = focal_points(shape, shape.frame);
                    for (const FocalEntry& f : foci.foci) {
                        FocusRecord fr;
                        fr.s = f.s;
                        fr.multiplicity = f.multiplicity;
                        fr.at_infinity = f.at_infinity;
                        if (!f.at_infinity) fr.development = f.development;
                        rec.foci.push_back(fr);
                    }
                }
            } catch (const Error& e) {
                failures[idx] = e.what();
            }
        }
    };

    int workers = std::min(detail::thread_count(), total);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (int i = 0; i < total; ++i)
        if (!failures[i].empty())
            throw NotLightlikeError("grid point " + std::to_string(i) + ": " + failures[i]);

    // summary
    Summary& sum = report.summary;
    for (const PointRecord& rec : report.points) {
        sum.classification_histogram[rec.classification]++;
        auto track = [&](const std::string& name, double v) {
            auto it = sum.invariant_ranges.find(name);
            if (it == sum.invariant_ranges.end())
                sum.invariant_ranges[name] = {v, v};
            else {
                it->second.first = std::min(it->second.first, v);
                it->second.second = std::max(it->second.second, v);
            }
        };
        for (int p = 0; p < rec.invariants_elementary.size(); ++p)
            track("I_" + std::to_string(p + 1), rec.invariants_elementary[p]);
        for (int a = 0; a < rec.eigenvalues.size(); ++a)
            track("lambda_" + std::to_string(a + 2), rec.eigenvalues[a]);
        for (const ScreenRecord& s : rec.screens) {
            if (s.available) {
                ++sum.screens_available;
                if (s.integrable) ++sum.screens_integrable;
            } else if (!s.reason.empty()) {
                sum.unavailable_reasons[s.reason]++;
            }
        }
    }

    // gauge-invariance residuals at a few sample points
    if (want_screens && total > 0 && cfg.gauge_points > 0 && cfg.gauge_samples > 0) {
        std::mt19937_64 rng(cfg.gauge_seed);
        for (int pick = 0; pick < cfg.gauge_points; ++pick) {
            int idx = (total - 1) * pick / std::max(1, cfg.gauge_points - 1);
            const PointRecord& rec = report.points[idx];
            std::vector<Mat> base_projectors;
            for (const ScreenRecord& s : rec.screens)
                if (s.available) base_projectors.push_back(s.projector);
            double base_ratio = rec.eigenvalue_ratio.value_or(0.0);
            for (int trial = 0; trial < cfg.gauge_samples; ++trial) {
                GaugeTransform g =
                    detail::random_admissible_gauge(rng, metric.dim() - 2);
                FrameField gauged(metric, patch, [g](const Vec&) { return g; });
                TripleNormalizations triple =
                    triple_normalizations_4d(gauged, rec.params, cfg.norm_tol, false);
                std::vector<Mat> projectors;
                for (const ScreenResult* r :
                     {&triple.from_lambda2, &triple.from_lambda3, &triple.from_ratio})
                    if (r->available()) projectors.push_back(r->screen->projector);
                for (size_t i = 0;
                     i < std::min(projectors.size(), base_projectors.size()); ++i)
                    sum.gauge_projector_residual_max =
                        std::max(sum.gauge_projector_residual_max,
                                 (projectors[i] - base_projectors[i]).norm());
                if (rec.eigenvalue_ratio) {
                    ShapeData shape = shape_from_field(gauged.local(rec.params), rec.params);
                    double ratio = shape.eigenvalues[0] / shape.eigenvalues[1];
                    sum.gauge_invariant_residual_max = std::max(
                        sum.gauge_invariant_residual_max, std::abs(ratio - base_ratio));
                }
            }
        }
    }
    return report;
}

}  // namespace nullsurf
