// nullsurf: isotropic geodesic integration, focal points and foci of
// umbilical hypersurfaces
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "nullsurf/framefield.hpp"
#include "nullsurf/tensorcalc.hpp"

namespace nullsurf {

// Sampled solution of the geodesic equation x'' + Gamma(x)(x', x') = 0.
struct GeodesicRecord {
    Vec x0;
    Vec v0;
    std::vector<double> s;
    std::vector<Vec> x;
    std::vector<Vec> v;
    std::vector<double> null_norm;            // g(v, v) per sample
    std::vector<double> on_surface_residual;  // filled by attach_surface_residual
    bool exited_chart = false;

    double max_null_drift() const {
        double worst = 0.0;
        for (double q : null_norm) worst = std::max(worst, std::abs(q));
        return worst;
    }

    void attach_surface_residual(const std::function<double(const Vec&)>& distance) {
        on_surface_residual.clear();
        on_surface_residual.reserve(x.size());
        for (const Vec& p : x) on_surface_residual.push_back(distance(p));
    }
};

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-12;
};

namespace detail {

// Dormand-Prince 5(4) embedded pair.
struct Dopri5 {
    static constexpr int stages = 7;
    double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    double b5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                    -2187.0 / 6784, 11.0 / 84,  0.0};
    double b4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
};

}  // namespace detail

// Integrates one null geodesic with adaptive Dormand-Prince steps, sampling
// the state at `samples` uniformly spaced parameter values in [0, s_max].
// Null-norm drift is recorded, never renormalized away. Leaving the chart
// truncates the record and sets the exit flag.
inline GeodesicRecord integrate_isotropic_geodesic(const MetricField& metric, const Vec& x0,
                                                   const Vec& v0, double s_max, int samples,
                                                   IntegratorOptions opt = {}) {
    const int n = metric.dim();
    if (samples < 2) throw DegenerateInputError("need at least two samples");
    {
        double q = metric.scalar_product(x0, v0, v0);
        if (std::abs(q) > 1e-8 * std::max(1.0, v0.squaredNorm()))
            throw DegenerateInputError("initial velocity is not null");
    }

    auto rhs = [&](const Vec& x, const Vec& v) {
        Tensor3 gamma = christoffel(metric, x);
        Vec acc = Vec::Zero(n);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) s += gamma(i, p, q) * v[p] * v[q];
            acc[i] = -s;
        }
        return acc;
    };

    GeodesicRecord rec;
    rec.x0 = x0;
    rec.v0 = v0;

    detail::Dopri5 tab;
    Vec x = x0, v = v0;
    double s = 0.0;
    double h = opt.initial_step * std::max(1.0, s_max);

    auto record = [&](double sk, const Vec& xk, const Vec& vk) {
        rec.s.push_back(sk);
        rec.x.push_back(xk);
        rec.v.push_back(vk);
        rec.null_norm.push_back(metric.scalar_product(xk, vk, vk));
    };
    record(0.0, x, v);

    for (int target = 1; target < samples; ++target) {
        double s_target = s_max * target / (samples - 1);
        while (s < s_target) {
            double step = std::min(h, s_target - s);
            Vec kx[7], kv[7];
            bool in_chart = true;
            try {
                for (int stage = 0; stage < 7; ++stage) {
                    Vec xs = x, vs = v;
                    for (int j = 0; j < stage; ++j) {
                        xs += step * tab.a[stage][j] * kx[j];
                        vs += step * tab.a[stage][j] * kv[j];
                    }
                    kx[stage] = vs;
                    kv[stage] = rhs(xs, vs);
                }
            } catch (const ChartDomainError&) {
                in_chart = false;
            }
            if (!in_chart) {
                h = step / 2.0;
                if (h < opt.min_step) {
                    rec.exited_chart = true;
                    return rec;
                }
                continue;
            }

            Vec x5 = x, v5 = v, x4 = x, v4 = v;
            for (int j = 0; j < 7; ++j) {
                x5 += step * tab.b5[j] * kx[j];
                v5 += step * tab.b5[j] * kv[j];
                x4 += step * tab.b4[j] * kx[j];
                v4 += step * tab.b4[j] * kv[j];
            }
            double err = 0.0;
            for (int i = 0; i < n; ++i) {
                double sx = opt.abs_tol + opt.rel_tol * std::max(std::abs(x[i]), std::abs(x5[i]));
                double sv = opt.abs_tol + opt.rel_tol * std::max(std::abs(v[i]), std::abs(v5[i]));
                err = std::max(err, std::abs(x5[i] - x4[i]) / sx);
                err = std::max(err, std::abs(v5[i] - v4[i]) / sv);
            }
            if (err <= 1.0) {
                x = x5;
                v = v5;
                s += step;
                if (!metric.contains(x)) {
                    rec.exited_chart = true;
                    return rec;
                }
            }
            double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h = step * std::min(5.0, std::max(0.2, factor));
            if (h < opt.min_step) {
                rec.exited_chart = true;
                return rec;
            }
        }
        record(s, x, v);
    }
    return rec;
}

// One focus of an isotropic generator.
struct FocalEntry {
    double s = 0.0;                    // generator parameter, s_a = -1/lambda_a
    int multiplicity = 1;
    bool at_infinity = false;
    Vec development;                   // x - (1/lambda_a) e1 in the flat development
    std::optional<Vec> exponential;    // exp-map image when reachable in-chart
    double jacobian_witness = 0.0;     // |det(I + s lambda^a_b)| at the focus
};

struct FocalSet {
    Vec base_point;
    std::vector<FocalEntry> foci;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& f : foci) m += f.multiplicity;
        return m;
    }
    int finite_count() const {
        int m = 0;
        for (const auto& f : foci)
            if (!f.at_infinity) m += f.multiplicity;
        return m;
    }
};

// Singular points of the generator map: det(delta^a_b + s lambda^a_b) = 0 at
// s_a = -1/lambda_a; vanishing eigenvalues push the focus to infinity.
inline FocalSet focal_points(const ShapeData& shape, const IsotropicFrame& frame) {
    FocalSet out;
    out.base_point = shape.point;
    const int m = static_cast<int>(shape.eigenvalues.size());
    double scale = std::max(1.0, shape.eigenvalues.cwiseAbs().maxCoeff());
    for (const ShapeEigenvalue& ev : shape.clustered) {
        FocalEntry f;
        f.multiplicity = ev.multiplicity;
        if (std::abs(ev.value) < 1e-8 * scale) {
            f.at_infinity = true;
        } else {
            f.s = -1.0 / ev.value;
            f.development = shape.point + f.s * frame.e1;
            f.jacobian_witness =
                std::abs((Mat::Identity(m, m) + f.s * shape.lambda_up).determinant());
        }
        out.foci.push_back(f);
    }
    return out;
}

// Fills exponential-map images for finite foci whose geodesic stays in-chart.
inline void exponential_focal_points(const MetricField& metric, const IsotropicFrame& frame,
                                     FocalSet& set, IntegratorOptions opt = {}) {
    for (FocalEntry& f : set.foci) {
        if (f.at_infinity) continue;
        double span = std::abs(f.s);
        if (span == 0.0) continue;
        Vec v = (f.s > 0 ? 1.0 : -1.0) * frame.e1;
        GeodesicRecord rec = integrate_isotropic_geodesic(metric, set.base_point, v, span, 2, opt);
        if (!rec.exited_chart && rec.x.size() == 2) f.exponential = rec.x.back();
    }
}

// The single focus F = x - (1/lambda) e1 of a totally umbilical point.
inline Vec umbilical_focus(const ShapeData& shape, const IsotropicFrame& frame) {
    Classification cls = classify(shape);
    if (cls.kind != ShapeClass::totally_umbilical || cls.umbilical_lambda == 0.0)
        throw DegenerateInputError("umbilical focus needs a totally umbilical point");
    return shape.point - (1.0 / cls.umbilical_lambda) * frame.e1;
}

// Differential of the focus field F(u) = x(u) - (1/lambda(u)) e1(u) over the
// patch directions, measured covariantly in the development:
//   dF(w) = w + (d lambda(w)/lambda^2) e1 - (1/lambda) nabla_w e1.
// For umbilical surfaces dF is proportional to omega^1 e1; its kernel is the
// screen tangent to the fixed-focus directions.
inline Mat umbilical_focus_differential(const LocalFrameField& field, const Vec& u) {
    const MetricField& metric = field.metric();
    ShapeData shape = shape_from_field(field, u);
    Classification cls = classify(shape);
    if (cls.kind != ShapeClass::totally_umbilical || cls.umbilical_lambda == 0.0)
        throw DegenerateInputError("umbilical focus needs a totally umbilical point");
    double lambda = cls.umbilical_lambda;

    auto lambda_field = [&](const Vec& v) {
        ShapeData s = shape_from_field(field, v);
        Mat gram_inv = MetricField::invert(s.g_ab);
        return (gram_inv * s.lambda_ab).trace() / s.g_ab.cols();
    };

    Mat t = field.tangent(u);
    Mat df(metric.dim(), field.patch().param_dim());
    for (int k = 0; k < field.patch().param_dim(); ++k) {
        double h = metric.fd_policy().field_step(u[k]);
        double dlam = central_diff4(lambda_field, u, k, h);
        Vec de1 = field.covariant_frame_derivative(k, u).col(0);
        df.col(k) = t.col(k) + (dlam / (lambda * lambda)) * shape.frame.e1 - de1 / lambda;
    }
    return df;
}

}  // namespace nullsurf
