// nullsurf: smooth isotropic frame fields along a patch, connection forms,
// and the second fundamental form measured from them
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>

#include "nullsurf/frame.hpp"
#include "nullsurf/hypersurface.hpp"
#include "nullsurf/tensorcalc.hpp"

namespace nullsurf {

// Pointwise gauge applied on top of the deterministic frame construction;
// empty means identity. Smooth gauge fields keep the frame field smooth.
using GaugeField = std::function<GaugeTransform(const Vec&)>;

// Frame field restricted to a neighborhood of a center parameter. The gauge
// decisions (adapted e1, pivot coordinate, dropped tangent column) are frozen
// at the center, which makes the field smooth there; all derivative
// quantities are finite-differenced against this one field.
class LocalFrameField {
public:
    LocalFrameField(MetricField metric, HypersurfacePatch patch, GaugeField gauge, Vec center,
                    GaugeField reduction = nullptr)
        : metric_(std::move(metric)),
          patch_(std::move(patch)),
          gauge_(std::move(gauge)),
          reduction_(std::move(reduction)),
          u0_(std::move(center)) {
        Vec x0 = patch_.eval(u0_);
        Mat t0 = patch_.jacobian(u0_);
        decisions_ = detail::decide_frame_gauge(metric_.eval(x0), t0);
        center_frame_ = at(u0_);
        if (center_frame_.validity_residual(metric_) > 1e-10)
            throw DegenerateInputError("frame field invalid at the center point");
    }

    const MetricField& metric() const { return metric_; }
    const HypersurfacePatch& patch() const { return patch_; }
    const Vec& center() const { return u0_; }
    const IsotropicFrame& center_frame() const { return center_frame_; }

    // Smooth frame at u: frozen center decisions, then the pointwise gauge,
    // then the screen-reduction gauge (normalizing-object shifts).
    IsotropicFrame at(const Vec& u) const {
        Vec x = patch_.eval(u);
        Mat g = metric_.eval(x);
        IsotropicFrame f = detail::construct_frame(g, x, patch_.jacobian(u), decisions_);
        if (gauge_) f = apply_gauge(metric_, f, gauge_(u));
        if (reduction_) f = apply_gauge(metric_, f, reduction_(u));
        return f;
    }

    Mat tangent(const Vec& u) const { return patch_.jacobian(u); }

    // d/du^k of the frame basis matrix at u (columns e1, e_a, en).
    Mat frame_derivative(int k, const Vec& u) const {
        double h = metric_.fd_policy().first_step(u[k]);
        auto basis = [this](const Vec& v) { return at(v).basis_matrix(); };
        return central_diff(basis, u, k, h);
    }

    // nabla_{D_k x} applied to every frame vector at u; column j holds the
    // ambient components of the covariant derivative of frame vector j.
    Mat covariant_frame_derivative(int k, const Vec& u) const {
        Vec x = patch_.eval(u);
        Mat d = frame_derivative(k, u);
        Tensor3 gamma = christoffel(metric_, x);
        Mat e = at(u).basis_matrix();
        Vec dir = patch_.jacobian(u).col(k);
        const int n = metric_.dim();
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double corr = 0.0;
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) corr += gamma(i, p, q) * dir[p] * e(q, j);
                d(i, j) += corr;
            }
        return d;
    }

    // omega^i_j(D_k x): connection-form values in frame indices at u.
    Mat connection_forms(int k, const Vec& u) const {
        Mat e = at(u).basis_matrix();
        return e.partialPivLu().solve(covariant_frame_derivative(k, u));
    }

    // Values of the basis coframe (omega^1, omega^a, omega^n) on D_k x.
    Vec basis_form_values(int k, const Vec& u) const {
        Mat e = at(u).basis_matrix();
        return e.partialPivLu().solve(patch_.jacobian(u).col(k));
    }

    // Rows k = basis-form values (omega^1, omega^a) on D_k x; square since
    // omega^n vanishes on tangent directions.
    Mat coframe_matrix(const Vec& u) const {
        const int m = patch_.param_dim();
        Mat c(m, m);
        for (int k = 0; k < m; ++k) c.row(k) = basis_form_values(k, u).head(m).transpose();
        return c;
    }

    // Largest |omega^n(D_k x)|; should vanish for tangent directions.
    double coframe_residual(const Vec& u) const {
        const int m = patch_.param_dim();
        double worst = 0.0;
        for (int k = 0; k < m; ++k)
            worst = std::max(worst, std::abs(basis_form_values(k, u)[m]));
        return worst;
    }

    // Solves phi(D_k) = y_1 omega^1(D_k) + y_a omega^a(D_k) for y.
    Vec decompose_one_form(const Vec& values_on_directions, const Vec& u) const {
        return coframe_matrix(u).colPivHouseholderQr().solve(values_on_directions);
    }

    // Parameter-direction coefficients of an ambient tangent vector at u.
    Vec parameter_direction(const Vec& ambient, const Vec& u) const {
        Mat t = patch_.jacobian(u);
        Vec beta = t.completeOrthogonalDecomposition().solve(ambient);
        if ((t * beta - ambient).norm() > 1e-7 * std::max(1.0, ambient.norm()))
            throw DegenerateInputError("vector is not tangent to the patch");
        return beta;
    }

    // Covariant derivative of the e1 field along an ambient tangent vector.
    Vec cov_deriv_e1(const Vec& ambient, const Vec& u) const {
        Vec beta = parameter_direction(ambient, u);
        Vec out = Vec::Zero(metric_.dim());
        for (int k = 0; k < patch_.param_dim(); ++k)
            if (beta[k] != 0.0) out += beta[k] * covariant_frame_derivative(k, u).col(0);
        return out;
    }

private:
    MetricField metric_;
    HypersurfacePatch patch_;
    GaugeField gauge_;
    GaugeField reduction_;
    Vec u0_;
    detail::FrameDecisions decisions_;
    IsotropicFrame center_frame_;
};

// Frame field over a whole patch: hands out per-point deterministic frames
// and locally smooth fields centered wherever derivatives are needed.
class FrameField {
public:
    FrameField(MetricField metric, HypersurfacePatch patch, GaugeField gauge = nullptr,
               GaugeField reduction = nullptr)
        : metric_(std::move(metric)),
          patch_(std::move(patch)),
          gauge_(std::move(gauge)),
          reduction_(std::move(reduction)) {}

    const MetricField& metric() const { return metric_; }
    const HypersurfacePatch& patch() const { return patch_; }
    const GaugeField& gauge() const { return gauge_; }

    LocalFrameField local(const Vec& center) const {
        return LocalFrameField(metric_, patch_, gauge_, center, reduction_);
    }

    IsotropicFrame frame(const Vec& u) const { return local(u).center_frame(); }

    FrameField with_gauge(GaugeField gauge) const {
        return FrameField(metric_, patch_, gauge, reduction_);
    }

    // Extra gauge layer applied after the base gauge; used to superpose the
    // screen basis with a constructed normalization.
    FrameField with_reduction(GaugeField reduction) const {
        return FrameField(metric_, patch_, gauge_, reduction);
    }

private:
    MetricField metric_;
    HypersurfacePatch patch_;
    GaugeField gauge_;
    GaugeField reduction_;
};

// omega^i_j evaluated on a tangent vector of V (ambient components), at the
// center of the local field.
inline Mat connection_form_values(const LocalFrameField& field, const Vec& direction) {
    Vec beta = field.parameter_direction(direction, field.center());
    const int n = field.metric().dim();
    Mat omega = Mat::Zero(n, n);
    for (int k = 0; k < field.patch().param_dim(); ++k)
        if (beta[k] != 0.0) omega += beta[k] * field.connection_forms(k, field.center());
    return omega;
}

// Second fundamental tensor measured from a local frame field at parameter u:
// lambda_ab = g(e_a, nabla_{e_b} e1), assembled from the covariant derivative
// of the radical field along the patch.
inline ShapeData shape_from_field(const LocalFrameField& field, const Vec& u) {
    const MetricField& metric = field.metric();
    const int n = metric.dim();
    const int m = n - 2;

    IsotropicFrame frame = field.at(u);
    Vec x = frame.point;
    Mat g = metric.eval(x);
    Mat t = field.tangent(u);

    // covariant derivative of e1 along each patch direction
    Mat de1(n, n - 1);
    for (int k = 0; k < n - 1; ++k) de1.col(k) = field.covariant_frame_derivative(k, u).col(0);

    auto lstsq = t.completeOrthogonalDecomposition();
    Mat lambda(m, m);
    for (int b = 0; b < m; ++b) {
        Vec beta = lstsq.solve(frame.screen.col(b));
        Vec grad = de1 * beta;
        for (int a = 0; a < m; ++a) lambda(a, b) = frame.screen.col(a).dot(g * grad);
    }

    ShapeData shape;
    shape.point = x;
    shape.frame = frame;
    shape.g_ambient = g;
    shape.g_ab = frame.screen_gram(metric);
    shape.symmetry_residual = (lambda - lambda.transpose()).cwiseAbs().maxCoeff();
    shape.lambda_ab = 0.5 * (lambda + lambda.transpose());
    shape.lambda_up = MetricField::invert(shape.g_ab) * shape.lambda_ab;

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(shape.lambda_ab, shape.g_ab);
    shape.eigenvalues = es.eigenvalues();
    shape.clustered = cluster_eigenvalues(shape.eigenvalues);
    return shape;
}

// Spec-facing entry point: shape data at `at`, measured in the given frame.
// The frame must sit at the same surface point; if it differs from the
// deterministic construction by a gauge, the whole field is re-gauged so the
// measurement happens in the caller's frame.
inline ShapeData second_fundamental_form(const HypersurfacePatch& patch,
                                         const MetricField& metric, const IsotropicFrame& frame,
                                         const Vec& at) {
    if (verify_lightlike(patch, metric, at) != SurfaceCausalType::lightlike)
        throw NotLightlikeError(patch.name() + ": surface is not lightlike at the point");
    LocalFrameField base(metric, patch, nullptr, at);
    if ((base.center_frame().point - frame.point).norm() >
        1e-10 * std::max(1.0, frame.point.norm()))
        throw DegenerateInputError("frame was not built at the requested surface point");

    Mat diff = base.center_frame().basis_matrix() - frame.basis_matrix();
    if (diff.cwiseAbs().maxCoeff() < 1e-13) return shape_from_field(base, at);

    GaugeTransform gauge = gauge_between(metric, base.center_frame(), frame);
    LocalFrameField gauged(metric, patch, [gauge](const Vec&) { return gauge; }, at);
    return shape_from_field(gauged, at);
}

}  // namespace nullsurf
