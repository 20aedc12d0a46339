// nullsurf: adapted isotropic frames (e_1, e_a, e_n) and their gauge group
#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "nullsurf/metric.hpp"

namespace nullsurf {

// Adapted null frame at a point of a lightlike hypersurface: e1 spans the
// radical of the induced metric, the screen columns e_a are spacelike with
// positive-definite gram matrix, en is the null transversal normalized by
// g(e1, en) = -1. Columns of `screen` are e_2 .. e_{n-1}.
struct IsotropicFrame {
    Vec point;
    Vec e1;
    Mat screen;
    Vec en;

    int ambient_dim() const { return static_cast<int>(point.size()); }
    int screen_dim() const { return static_cast<int>(screen.cols()); }

    // Frame vectors as columns (e1, e_a, en); invertible for a valid frame.
    Mat basis_matrix() const {
        Mat b(ambient_dim(), ambient_dim());
        b.col(0) = e1;
        b.middleCols(1, screen_dim()) = screen;
        b.col(ambient_dim() - 1) = en;
        return b;
    }

    Mat screen_gram(const MetricField& metric) const {
        Mat g = metric.eval(point);
        return screen.transpose() * g * screen;
    }

    // Largest violation of the defining scalar-product conditions
    // g(e1,e1) = g(en,en) = 0, g(e1,en) = -1, g(e1,e_a) = g(en,e_a) = 0.
    double validity_residual(const MetricField& metric) const {
        Mat g = metric.eval(point);
        double worst = std::abs(e1.dot(g * e1));
        worst = std::max(worst, std::abs(en.dot(g * en)));
        worst = std::max(worst, std::abs(e1.dot(g * en) + 1.0));
        for (int a = 0; a < screen_dim(); ++a) {
            worst = std::max(worst, std::abs(e1.dot(g * screen.col(a))));
            worst = std::max(worst, std::abs(en.dot(g * screen.col(a))));
        }
        return worst;
    }

    bool screen_positive_definite(const MetricField& metric) const {
        Eigen::SelfAdjointEigenSolver<Mat> es(screen_gram(metric));
        return es.eigenvalues()[0] > 0.0;
    }
};

// Admissible frame transformation: e1 -> c e1, e_a -> A_ab (e_b + t_b e1),
// en compensated so the gram matrix keeps its normal form.
struct GaugeTransform {
    double c = 1.0;
    Mat A;
    Vec t;

    static GaugeTransform identity(int screen_dim) {
        return {1.0, Mat::Identity(screen_dim, screen_dim), Vec::Zero(screen_dim)};
    }

    static GaugeTransform rescale(double c, int screen_dim) {
        return {c, Mat::Identity(screen_dim, screen_dim), Vec::Zero(screen_dim)};
    }

    static GaugeTransform shift(const Vec& t) {
        GaugeTransform g = identity(static_cast<int>(t.size()));
        g.t = t;
        return g;
    }
};

inline IsotropicFrame apply_gauge(const MetricField& metric, const IsotropicFrame& frame,
                                  const GaugeTransform& gauge) {
    const int m = frame.screen_dim();
    if (!(std::isfinite(gauge.c)) || gauge.c == 0.0)
        throw InvalidGaugeError("gauge scaling c must be nonzero and finite");
    if (gauge.A.rows() != m || gauge.A.cols() != m || gauge.t.size() != m)
        throw InvalidGaugeError("gauge block dimensions do not match the screen");
    Eigen::JacobiSVD<Mat> svd(gauge.A);
    if (svd.singularValues()[m - 1] < 1e-12 * svd.singularValues()[0])
        throw InvalidGaugeError("gauge screen matrix A is singular");

    Mat gram = frame.screen_gram(metric);
    Mat gram_inv = MetricField::invert(gram);
    Vec t_up = gram_inv * gauge.t;  // t^a = g^{ab} t_b

    IsotropicFrame out;
    out.point = frame.point;
    out.e1 = gauge.c * frame.e1;
    out.screen.resize(frame.point.size(), m);
    for (int a = 0; a < m; ++a) {
        Vec v = Vec::Zero(frame.point.size());
        for (int b = 0; b < m; ++b)
            v += gauge.A(a, b) * (frame.screen.col(b) + gauge.t[b] * frame.e1);
        out.screen.col(a) = v;
    }
    out.en = (frame.en + frame.screen * t_up + 0.5 * gauge.t.dot(t_up) * frame.e1) / gauge.c;
    return out;
}

namespace detail {

// Relative tolerance for rank decisions on induced metrics.
inline constexpr double kRadicalTol = 1e-9;

struct RadicalSplit {
    Vec radical;     // unnormalized radical vector (ambient components)
    int zero_count;  // eigenvalues of the induced metric below tolerance
};

inline RadicalSplit radical_of_tangent_plane(const Mat& g, const Mat& tangent) {
    Mat h = tangent.transpose() * g * tangent;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    int zeros = 0;
    int zero_index = -1;
    for (int i = 0; i < h.rows(); ++i) {
        if (std::abs(es.eigenvalues()[i]) < kRadicalTol * scale) {
            ++zeros;
            zero_index = i;
        }
    }
    RadicalSplit out;
    out.zero_count = zeros;
    if (zeros == 1) out.radical = tangent * es.eigenvectors().col(zero_index);
    return out;
}

// Gauge choices frozen at one point so the frame extends smoothly around it.
struct FrameDecisions {
    bool adapted = false;  // first tangent vector spans the radical, keep it as e1
    int pivot = 0;         // coordinate normalized to 1 (non-adapted case)
    int drop = 0;          // tangent column removed before screen orthonormalization
};

inline FrameDecisions decide_frame_gauge(const Mat& g, const Mat& tangent) {
    const int n = static_cast<int>(tangent.rows());
    {
        Eigen::JacobiSVD<Mat> svd(tangent);
        if (svd.singularValues()[n - 2] < 1e-12 * svd.singularValues()[0])
            throw DegenerateInputError("tangent basis does not span a hyperplane");
    }
    RadicalSplit split = radical_of_tangent_plane(g, tangent);
    if (split.zero_count == 0)
        throw NotLightlikeError("tangent plane is not lightlike (no radical direction)");
    if (split.zero_count > 1)
        throw DegenerateInputError("tangent plane radical has dimension >= 2");

    FrameDecisions d;
    Mat h = tangent.transpose() * g * tangent;
    double plane_scale = h.cwiseAbs().maxCoeff();
    if (plane_scale == 0.0) plane_scale = 1.0;
    d.adapted = h.col(0).cwiseAbs().maxCoeff() < kRadicalTol * plane_scale;

    Vec e1;
    if (d.adapted) {
        e1 = tangent.col(0);
    } else {
        Vec r = split.radical;
        double top = r.cwiseAbs().maxCoeff();
        int pivot = 0;
        while (pivot < n - 1 && std::abs(r[pivot]) <= 1e-8 * top) ++pivot;
        d.pivot = pivot;
        e1 = r / r[pivot];
    }
    Vec gamma = tangent.colPivHouseholderQr().solve(e1);
    int drop = 0;
    gamma.cwiseAbs().maxCoeff(&drop);
    d.drop = drop;
    return d;
}

// Builds the frame with the given frozen gauge decisions. Smooth in the
// inputs as long as the decisions stay valid.
inline IsotropicFrame construct_frame(const Mat& g, const Vec& point, const Mat& tangent,
                                      const FrameDecisions& d) {
    const int n = static_cast<int>(tangent.rows());
    IsotropicFrame frame;
    frame.point = point;

    if (d.adapted) {
        frame.e1 = tangent.col(0);
    } else {
        RadicalSplit split = radical_of_tangent_plane(g, tangent);
        if (split.zero_count != 1)
            throw NotLightlikeError("radical direction lost across the stencil");
        frame.e1 = split.radical / split.radical[d.pivot];
    }

    double plane_scale = (tangent.transpose() * g * tangent).cwiseAbs().maxCoeff();
    if (plane_scale == 0.0) plane_scale = 1.0;

    frame.screen.resize(n, n - 2);
    int col = 0;
    for (int k = 0; k < n - 1; ++k) {
        if (k == d.drop) continue;
        Vec v = tangent.col(k);
        for (int c = 0; c < col; ++c) v -= v.dot(g * frame.screen.col(c)) * frame.screen.col(c);
        double norm2 = v.dot(g * v);
        if (norm2 <= 1e-20 * plane_scale)
            throw DegenerateInputError("screen orthonormalization collapsed");
        frame.screen.col(col++) = v / std::sqrt(norm2);
    }

    // en: least-norm solve of the linear conditions, then the e1 shift that
    // kills g(en, en)
    Mat constraints(n - 1, n);
    constraints.row(0) = (g * frame.e1).transpose();
    for (int a = 0; a < n - 2; ++a) constraints.row(a + 1) = (g * frame.screen.col(a)).transpose();
    Vec rhs = Vec::Zero(n - 1);
    rhs[0] = -1.0;
    Vec w = constraints.completeOrthogonalDecomposition().solve(rhs);
    frame.en = w + 0.5 * w.dot(g * w) * frame.e1;
    return frame;
}

}  // namespace detail

// Constructs the adapted frame at `point` from a basis of the tangent
// hyperplane. Deterministic gauge: if the first tangent vector itself spans
// the radical it becomes e1 unchanged (adapted parameterizations); otherwise
// the radical vector is rescaled so its first nonvanishing coordinate equals
// one. The screen is Gram-Schmidt orthonormalized over the remaining tangent
// vectors after dropping the one most aligned with e1, and en is the unique
// null transversal with g(e1,en) = -1, g(en,e_a) = 0.
inline IsotropicFrame build_isotropic_frame(const MetricField& metric, const Vec& point,
                                            const Mat& tangent_basis) {
    const int n = metric.dim();
    if (tangent_basis.rows() != n || tangent_basis.cols() != n - 1)
        throw DegenerateInputError("tangent basis must be n x (n-1)");
    Mat g = metric.eval(point);
    detail::FrameDecisions d = detail::decide_frame_gauge(g, tangent_basis);
    IsotropicFrame frame = detail::construct_frame(g, point, tangent_basis, d);
    if (frame.validity_residual(metric) > 1e-10)
        throw DegenerateInputError("frame construction residual above 1e-10");
    return frame;
}

// Recovers the gauge carrying `base` to `target` (both valid frames at the
// same point with the same e1 direction and tangent plane).
inline GaugeTransform gauge_between(const MetricField& metric, const IsotropicFrame& base,
                                    const IsotropicFrame& target) {
    const int m = base.screen_dim();
    double c = target.e1.dot(base.e1) / base.e1.squaredNorm();
    if ((target.e1 - c * base.e1).norm() > 1e-8 * target.e1.norm())
        throw InvalidGaugeError("frames do not share the radical direction");
    Mat g = metric.eval(base.point);
    Mat gram_inv = MetricField::invert(base.screen_gram(metric));
    // A_ab = g(e'_a, e_c) g^{cb};  t from g(e'_a, en) = -(A t)_a
    Mat prod(m, m);
    Vec en_prod(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) prod(a, b) = target.screen.col(a).dot(g * base.screen.col(b));
        en_prod[a] = target.screen.col(a).dot(g * base.en);
    }
    GaugeTransform gauge;
    gauge.c = c;
    gauge.A = prod * gram_inv;
    gauge.t = -gauge.A.colPivHouseholderQr().solve(en_prod);
    return gauge;
}

}  // namespace nullsurf
