// nullsurf: coordinate tensor calculus (Christoffel symbols, curvature)
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nullsurf/metric.hpp"

namespace nullsurf {

// Dense rank-3 array indexed (i, j, k), all extents equal to dim.
class Tensor3 {
public:
    explicit Tensor3(int n) : n_(n), v_(static_cast<size_t>(n) * n * n, 0.0) {}
    double& operator()(int i, int j, int k) { return v_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
    double operator()(int i, int j, int k) const {
        return v_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }
    int dim() const { return n_; }
    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    int n_;
    std::vector<double> v_;
};

class Tensor4 {
public:
    explicit Tensor4(int n) : n_(n), v_(static_cast<size_t>(n) * n * n * n, 0.0) {}
    double& operator()(int i, int j, int k, int l) {
        return v_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(int i, int j, int k, int l) const {
        return v_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    int dim() const { return n_; }
    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    int n_;
    std::vector<double> v_;
};

// Curvature of the chart at one point, in both index positions.
// Convention (pinned by the constant-curvature calibration test):
//   R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//             + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj},
//   R_ijkl = g_im R^m_{jkl},
// so that a constant-curvature metric gives R_ijkl = K (g_ik g_jl - g_il g_jk)
// with the conventional sign of K.
struct CurvatureTensor {
    Vec point;
    Tensor4 riemann_up;
    Tensor4 riemann_down;
};

// Levi-Civita connection coefficients Gamma^i_{jk}; symmetric in (j, k) by
// construction (lower pair assembled once and mirrored).
inline Tensor3 christoffel(const MetricField& metric, const Vec& point) {
    const int n = metric.dim();
    Mat ginv = metric.inverse(point);
    std::vector<Mat> dg = metric.first_derivatives(point);

    Tensor3 gamma(n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
                gamma(i, j, k) = 0.5 * s;
                gamma(i, k, j) = gamma(i, j, k);
            }
        }
    return gamma;
}

inline CurvatureTensor riemann(const MetricField& metric, const Vec& point) {
    const int n = metric.dim();
    Mat g = metric.eval(point);
    Mat ginv = MetricField::invert(g);
    std::vector<Mat> dg = metric.first_derivatives(point);
    std::vector<Mat> ddg = metric.second_derivatives(point);

    // d_k g^{im} = -g^{ip} (d_k g_pq) g^{qm}
    std::vector<Mat> dginv(n);
    for (int k = 0; k < n; ++k) dginv[k] = -ginv * dg[k] * ginv;

    Tensor3 gamma = christoffel(metric, point);

    // dgamma[k](i, l, j) = d_k Gamma^i_{lj}, assembled algebraically from the
    // metric derivatives rather than by differencing Gamma itself.
    auto dgamma = [&](int k, int i, int l, int j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) {
            s += dginv[k](i, m) * (dg[l](m, j) + dg[j](m, l) - dg[m](l, j));
            s += ginv(i, m) *
                 (ddg[k * n + l](m, j) + ddg[k * n + j](m, l) - ddg[k * n + m](l, j));
        }
        return 0.5 * s;
    };

    CurvatureTensor out{point, Tensor4(n), Tensor4(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    double r = dgamma(k, i, l, j) - dgamma(l, i, k, j);
                    for (int m = 0; m < n; ++m)
                        r += gamma(i, k, m) * gamma(m, l, j) - gamma(i, l, m) * gamma(m, k, j);
                    out.riemann_up(i, j, k, l) = r;
                    out.riemann_up(i, j, l, k) = -r;
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = 0.0;
                    for (int m = 0; m < n; ++m) r += g(i, m) * out.riemann_up(m, j, k, l);
                    out.riemann_down(i, j, k, l) = r;
                }
    return out;
}

// Closed-form curvature of a constant-curvature space,
// R_ijkl = K (g_ik g_jl - g_il g_jk); serves as the oracle for riemann().
inline CurvatureTensor constant_curvature_riemann(double curvature, const MetricField& metric,
                                                  const Vec& point) {
    const int n = metric.dim();
    Mat g = metric.eval(point);
    Mat ginv = MetricField::invert(g);
    CurvatureTensor out{point, Tensor4(n), Tensor4(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    out.riemann_down(i, j, k, l) =
                        curvature * (g(i, k) * g(j, l) - g(i, l) * g(j, k));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = 0.0;
                    for (int m = 0; m < n; ++m) r += ginv(i, m) * out.riemann_down(m, j, k, l);
                    out.riemann_up(i, j, k, l) = r;
                }
    return out;
}

// Largest violation of the index symmetries
//   R_ijkl = -R_jikl = -R_ijlk,  R_ijkl = R_klij,  R_i[jkl] = 0
// over all index combinations.
inline double curvature_symmetry_residual(const CurvatureTensor& curv) {
    const int n = curv.riemann_down.dim();
    const Tensor4& r = curv.riemann_down;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, i, k, l)));
                    worst = std::max(worst, std::abs(r(i, j, k, l) + r(i, j, l, k)));
                    worst = std::max(worst, std::abs(r(i, j, k, l) - r(k, l, i, j)));
                    worst = std::max(worst,
                                     std::abs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k)));
                }
    return worst;
}

// Residual of metric compatibility, max |d_k g_ij - Gamma^m_{ki} g_mj
// - Gamma^m_{kj} g_im|; a consistency diagnostic for christoffel().
inline double metric_compatibility_residual(const MetricField& metric, const Vec& point) {
    const int n = metric.dim();
    Mat g = metric.eval(point);
    std::vector<Mat> dg = metric.first_derivatives(point);
    Tensor3 gamma = christoffel(metric, point);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = dg[k](i, j);
                for (int m = 0; m < n; ++m)
                    s -= gamma(m, k, i) * g(m, j) + gamma(m, k, j) * g(i, m);
                worst = std::max(worst, std::abs(s));
            }
    return worst;
}

}  // namespace nullsurf
