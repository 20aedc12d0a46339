// nullsurf: built-in metrics and hypersurface patches
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "nullsurf/hypersurface.hpp"
#include "nullsurf/metric.hpp"

namespace nullsurf {

inline Vec minkowski_eta(int n) {
    Vec d = Vec::Ones(n);
    d[n - 1] = -1.0;
    return d;
}

// Flat metric diag(1, .., 1, -1); time is the last coordinate.
inline MetricField minkowski_metric(int n) {
    Vec eta = minkowski_eta(n);
    auto comp = [eta](const Vec&) { return Mat(eta.asDiagonal()); };
    auto zero1 = [n](const Vec&) { return std::vector<Mat>(n, Mat::Zero(n, n)); };
    auto zero2 = [n](const Vec&) { return std::vector<Mat>(n * n, Mat::Zero(n, n)); };
    std::vector<std::pair<double, double>> bounds(n, {-10.0, 10.0});
    return MetricField(n, comp, bounds, "minkowski").with_analytic_derivatives(zero1, zero2);
}

// Constant-curvature metric in the conformally flat chart,
// g_ij = eta_ij / (1 + (K/4) <x,x>_eta)^2. Valid for either sign of K inside
// the unit box; carries analytic first and second derivatives.
inline MetricField conformal_constant_curvature_metric(int n, double curvature,
                                                       const std::string& name) {
    Vec eta = minkowski_eta(n);
    double k4 = curvature / 4.0;
    auto factor = [eta, k4, name](const Vec& x) {
        double q = (eta.array() * x.array() * x.array()).sum();
        double denom = 1.0 + k4 * q;
        if (std::abs(denom) < 0.05)
            throw ChartDomainError(name + ": conformal factor singular near this point");
        return 1.0 / denom;
    };
    auto comp = [eta, factor](const Vec& x) {
        double f = factor(x);
        return Mat((f * f * eta).asDiagonal());
    };
    double k = curvature;
    auto d1 = [eta, factor, k, n](const Vec& x) {
        double f = factor(x);
        Vec etax = eta.array() * x.array();  // (eta x)_m
        std::vector<Mat> out(n);
        for (int m = 0; m < n; ++m) {
            double fm = -(k / 2.0) * f * f * etax[m];
            out[m] = Mat((2.0 * f * fm * eta).asDiagonal());
        }
        return out;
    };
    auto d2 = [eta, factor, k, n](const Vec& x) {
        double f = factor(x);
        Vec etax = eta.array() * x.array();
        std::vector<Mat> out(n * n);
        for (int p = 0; p < n; ++p)
            for (int m = 0; m < n; ++m) {
                double fp = -(k / 2.0) * f * f * etax[p];
                double fm = -(k / 2.0) * f * f * etax[m];
                double fpm = (k * k / 2.0) * f * f * f * etax[p] * etax[m] -
                             (p == m ? (k / 2.0) * f * f * eta[p] : 0.0);
                out[p * n + m] = Mat((2.0 * (fp * fm + f * fpm) * eta).asDiagonal());
            }
        return out;
    };
    std::vector<std::pair<double, double>> bounds(n, {-1.0, 1.0});
    return MetricField(n, comp, bounds, name).with_analytic_derivatives(d1, d2);
}

inline MetricField de_sitter_metric(int n, double curvature) {
    if (!(curvature > 0.0)) throw ConfigError("de_sitter requires K > 0");
    return conformal_constant_curvature_metric(n, curvature, "de_sitter");
}

inline MetricField anti_de_sitter_metric(int n, double curvature) {
    if (!(curvature < 0.0)) throw ConfigError("anti_de_sitter requires K < 0");
    return conformal_constant_curvature_metric(n, curvature, "anti_de_sitter");
}

// Schwarzschild in ingoing Eddington-Finkelstein coordinates (v, r, th, ph):
// ds^2 = -(1 - 2m/r) dv^2 + 2 dv dr + r^2 (dth^2 + sin^2 th dph^2).
inline MetricField eddington_finkelstein_metric(double mass) {
    const int n = 4;
    auto comp = [mass](const Vec& x) {
        double r = x[1], th = x[2];
        Mat g = Mat::Zero(4, 4);
        g(0, 0) = -(1.0 - 2.0 * mass / r);
        g(0, 1) = g(1, 0) = 1.0;
        g(2, 2) = r * r;
        g(3, 3) = r * r * std::sin(th) * std::sin(th);
        return g;
    };
    auto d1 = [mass](const Vec& x) {
        double r = x[1], th = x[2];
        std::vector<Mat> out(4, Mat::Zero(4, 4));
        out[1](0, 0) = -2.0 * mass / (r * r);
        out[1](2, 2) = 2.0 * r;
        out[1](3, 3) = 2.0 * r * std::sin(th) * std::sin(th);
        out[2](3, 3) = 2.0 * r * r * std::sin(th) * std::cos(th);
        return out;
    };
    auto d2 = [mass](const Vec& x) {
        double r = x[1], th = x[2];
        std::vector<Mat> out(16, Mat::Zero(4, 4));
        Mat rr = Mat::Zero(4, 4);
        rr(0, 0) = 4.0 * mass / (r * r * r);
        rr(2, 2) = 2.0;
        rr(3, 3) = 2.0 * std::sin(th) * std::sin(th);
        out[1 * 4 + 1] = rr;
        Mat rth = Mat::Zero(4, 4);
        rth(3, 3) = 4.0 * r * std::sin(th) * std::cos(th);
        out[1 * 4 + 2] = rth;
        out[2 * 4 + 1] = rth;
        Mat thth = Mat::Zero(4, 4);
        thth(3, 3) = 2.0 * r * r * std::cos(2.0 * th);
        out[2 * 4 + 2] = thth;
        return out;
    };
    std::vector<std::pair<double, double>> bounds = {
        {-100.0, 100.0}, {0.05, 100.0}, {0.05, M_PI - 0.05}, {-100.0, 100.0}};
    return MetricField(4, comp, bounds, "eddington_finkelstein")
        .with_analytic_derivatives(d1, d2);
}

namespace detail {

// Unit vector on S^{d-1} from d-1 angles:
//   n_0 = cos a_0, n_1 = sin a_0 cos a_1, ..., n_{d-1} = sin a_0 .. sin a_{d-2}.
inline Vec sphere_point(int d, const Vec& angles) {
    Vec out(d);
    double prod = 1.0;
    for (int j = 0; j < d; ++j) {
        out[j] = prod * (j < d - 1 ? std::cos(angles[j]) : 1.0);
        if (j < d - 1) prod *= std::sin(angles[j]);
    }
    return out;
}

inline Mat sphere_point_jacobian(int d, const Vec& angles) {
    Mat out = Mat::Zero(d, d - 1);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d - 1; ++i) {
            if (i > j || (i == j && j == d - 1)) continue;
            double v = 1.0;
            for (int k = 0; k < std::min(j, d - 1); ++k) {
                double f = std::sin(angles[k]);
                if (k == i) f = std::cos(angles[k]);
                v *= f;
            }
            if (j < d - 1) v *= (i == j ? -std::sin(angles[j]) : std::cos(angles[j]));
            out(j, i) = v;
        }
    return out;
}

}  // namespace detail

// Null hyperplane x^1 = x^n through the origin: u^1 runs along the isotropic
// direction, the remaining parameters along spatial axes.
inline HypersurfacePatch null_hyperplane_patch(int n) {
    auto map = [n](const Vec& u) {
        Vec x = Vec::Zero(n);
        x[0] = u[0];
        x[n - 1] = u[0];
        for (int k = 1; k < n - 1; ++k) x[k] = u[k];
        return x;
    };
    auto jac = [n](const Vec&) {
        Mat j = Mat::Zero(n, n - 1);
        j(0, 0) = 1.0;
        j(n - 1, 0) = 1.0;
        for (int k = 1; k < n - 1; ++k) j(k, k) = 1.0;
        return j;
    };
    std::vector<std::pair<double, double>> bounds(n - 1, {-0.45, 0.45});
    return HypersurfacePatch(n, map, bounds, "null_hyperplane").with_analytic_jacobian(jac);
}

// Future light cone of an apex: x(u) = apex + u^1 (nhat(angles), 1) with u^1
// the generator parameter. Defaults keep the patch inside the conformal
// charts of the constant-curvature metrics.
inline HypersurfacePatch light_cone_patch(int n, Vec apex = Vec()) {
    if (apex.size() == 0) apex = Vec::Zero(n);
    auto map = [n, apex](const Vec& u) {
        Vec dir(n);
        dir.head(n - 1) = detail::sphere_point(n - 1, u.tail(n - 2));
        dir[n - 1] = 1.0;
        return Vec(apex + u[0] * dir);
    };
    auto jac = [n](const Vec& u) {
        Mat j = Mat::Zero(n, n - 1);
        Vec nhat = detail::sphere_point(n - 1, u.tail(n - 2));
        Mat dn = detail::sphere_point_jacobian(n - 1, u.tail(n - 2));
        j.col(0).head(n - 1) = nhat;
        j(n - 1, 0) = 1.0;
        j.block(0, 1, n - 1, n - 2) = u[0] * dn;
        return j;
    };
    std::vector<std::pair<double, double>> bounds(n - 1, {0.3, M_PI - 0.3});
    bounds[0] = {0.1, 0.95};
    bounds[n - 2] = {-3.0, 3.0};
    return HypersurfacePatch(n, map, bounds, "light_cone").with_analytic_jacobian(jac);
}

// Null hypersurface swept by future-directed null geodesics fired
// orthogonally off a triaxial ellipsoid in the t = 0 slice of a 4-dimensional
// chart. Generic shape operator with distinct nonzero eigenvalues.
inline HypersurfacePatch ellipsoid_congruence_patch(double a, double b, double c) {
    auto surface = [a, b, c](double th, double ph) {
        Eigen::Vector3d p(a * std::sin(th) * std::cos(ph), b * std::sin(th) * std::sin(ph),
                          c * std::cos(th));
        return p;
    };
    auto surface_jac = [a, b, c](double th, double ph) {
        Eigen::Matrix<double, 3, 2> j;
        j.col(0) << a * std::cos(th) * std::cos(ph), b * std::cos(th) * std::sin(ph),
            -c * std::sin(th);
        j.col(1) << -a * std::sin(th) * std::sin(ph), b * std::sin(th) * std::cos(ph), 0.0;
        return j;
    };
    Eigen::Vector3d inv2(1.0 / (a * a), 1.0 / (b * b), 1.0 / (c * c));
    auto map = [surface, inv2](const Vec& u) {
        Eigen::Vector3d p = surface(u[1], u[2]);
        Eigen::Vector3d w = inv2.cwiseProduct(p);
        Eigen::Vector3d nu = w.normalized();
        Vec x(4);
        x.head(3) = p + u[0] * nu;
        x[3] = u[0];
        return x;
    };
    auto jac = [surface, surface_jac, inv2](const Vec& u) {
        Eigen::Vector3d p = surface(u[1], u[2]);
        Eigen::Matrix<double, 3, 2> dp = surface_jac(u[1], u[2]);
        Eigen::Vector3d w = inv2.cwiseProduct(p);
        double wn = w.norm();
        Eigen::Vector3d nu = w / wn;
        Mat j = Mat::Zero(4, 3);
        j.col(0).head(3) = nu;
        j(3, 0) = 1.0;
        for (int k = 0; k < 2; ++k) {
            Eigen::Vector3d dw = inv2.cwiseProduct(Eigen::Vector3d(dp.col(k)));
            Eigen::Vector3d dnu = (dw - nu * nu.dot(dw)) / wn;
            j.col(k + 1).head(3) = Eigen::Vector3d(dp.col(k)) + u[0] * dnu;
        }
        return j;
    };
    std::vector<std::pair<double, double>> bounds = {{0.05, 0.8}, {0.6, 1.5}, {0.2, 1.3}};
    return HypersurfacePatch(4, map, bounds, "ellipsoid_null_congruence")
        .with_analytic_jacobian(jac);
}

// The r = 2m horizon in the ingoing Eddington-Finkelstein chart; u^1 is the
// advanced time v along the null generators.
inline HypersurfacePatch schwarzschild_horizon_patch(double mass) {
    auto map = [mass](const Vec& u) {
        Vec x(4);
        x << u[0], 2.0 * mass, u[1], u[2];
        return x;
    };
    auto jac = [](const Vec&) {
        Mat j = Mat::Zero(4, 3);
        j(0, 0) = 1.0;
        j(2, 1) = 1.0;
        j(3, 2) = 1.0;
        return j;
    };
    std::vector<std::pair<double, double>> bounds = {{-1.0, 1.0}, {0.7, 2.4}, {0.2, 1.2}};
    return HypersurfacePatch(4, map, bounds, "schwarzschild_horizon").with_analytic_jacobian(jac);
}

// Ingoing null cone v = const in the Eddington-Finkelstein chart; a curved
// lightlike hypersurface with nonvanishing isotropic sectional curvature.
inline HypersurfacePatch ef_ingoing_cone_patch(double v0) {
    auto map = [v0](const Vec& u) {
        Vec x(4);
        x << v0, u[0], u[1], u[2];
        return x;
    };
    auto jac = [](const Vec&) {
        Mat j = Mat::Zero(4, 3);
        j(1, 0) = 1.0;
        j(2, 1) = 1.0;
        j(3, 2) = 1.0;
        return j;
    };
    std::vector<std::pair<double, double>> bounds = {{2.5, 8.0}, {0.7, 2.4}, {0.2, 1.2}};
    return HypersurfacePatch(4, map, bounds, "ef_ingoing_cone").with_analytic_jacobian(jac);
}

struct CatalogEntry {
    std::string name;
    std::string kind;  // "metric" or "hypersurface"
    std::string parameters;
    std::string description;
};

inline std::vector<CatalogEntry> catalog() {
    return {
        {"minkowski", "metric", "dim=4", "flat metric diag(1,..,1,-1), time last"},
        {"de_sitter", "metric", "dim=4, K=1",
         "constant positive curvature, conformally flat chart on [-1,1]^n"},
        {"anti_de_sitter", "metric", "dim=4, K=-1",
         "constant negative curvature, conformally flat chart on [-1,1]^n"},
        {"eddington_finkelstein", "metric", "m=1",
         "Schwarzschild in ingoing Eddington-Finkelstein coordinates (v,r,th,ph)"},
        {"null_hyperplane", "hypersurface", "",
         "isotropic hyperplane x^1 = x^n through the origin (totally geodesic)"},
        {"light_cone", "hypersurface", "apex=0,..,0",
         "future light cone of the apex (totally umbilical)"},
        {"ellipsoid_null_congruence", "hypersurface", "a=1, b=1.3, c=1.7",
         "null congruence fired orthogonally off a triaxial ellipsoid (generic)"},
        {"schwarzschild_horizon", "hypersurface", "m=1",
         "r = 2m horizon, generators along advanced time (totally geodesic)"},
        {"ef_ingoing_cone", "hypersurface", "v0=0",
         "ingoing null cone v = const in the Eddington-Finkelstein chart"},
        {"custom", "hypersurface", "dim, x0..x{n-1} expressions in u1..u{n-1}",
         "expression-defined parameterization"},
    };
}

}  // namespace nullsurf
