// nullsurf: relative/absolute invariants of the shape operator and the
// isotropic sectional curvature
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nullsurf/framefield.hpp"
#include "nullsurf/tensorcalc.hpp"

namespace nullsurf {

// Complete invariant systems of the shape operator at one point. I_p are the
// characteristic-polynomial coefficients (sums of principal p x p minors),
// relative invariants of weight p; I_tilde_p are the power-sum traces.
struct InvariantSet {
    Vec I;
    Vec I_tilde;
    Vec eigenvalues;
    double newton_residual = 0.0;

    double elementary(int p) const { return I[p - 1]; }
    double power_sum(int p) const { return I_tilde[p - 1]; }
};

namespace detail {

// Sum of all p x p principal minors; m is small so subset enumeration is fine.
inline double principal_minor_sum(const Mat& m, int p) {
    const int n = static_cast<int>(m.rows());
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    double total = 0.0;
    while (true) {
        Mat sub(p, p);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) sub(r, c) = m(idx[r], idx[c]);
        total += sub.determinant();
        int k = p - 1;
        while (k >= 0 && idx[k] == n - p + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return total;
}

}  // namespace detail

inline InvariantSet invariant_set(const ShapeData& shape) {
    const int m = static_cast<int>(shape.lambda_up.rows());
    InvariantSet out;
    out.eigenvalues = shape.eigenvalues;
    out.I.resize(m);
    out.I_tilde.resize(m);
    for (int p = 1; p <= m; ++p) out.I[p - 1] = detail::principal_minor_sum(shape.lambda_up, p);
    Mat power = Mat::Identity(m, m);
    for (int p = 1; p <= m; ++p) {
        power = power * shape.lambda_up;
        out.I_tilde[p - 1] = power.trace();
    }
    // Newton identities p I_p = sum_{k=1..p} (-1)^{k-1} I_{p-k} I~_k
    double scale = std::max(1.0, out.I_tilde.cwiseAbs().maxCoeff());
    for (int p = 1; p <= m; ++p) {
        double rhs = 0.0;
        for (int k = 1; k <= p; ++k) {
            double elem = (p - k == 0) ? 1.0 : out.I[p - k - 1];
            rhs += ((k % 2) ? 1.0 : -1.0) * elem * out.I_tilde[k - 1];
        }
        out.newton_residual =
            std::max(out.newton_residual, std::abs(p * out.I[p - 1] - rhs) / scale);
    }
    return out;
}

inline constexpr double kInvariantDegeneracyTol = 1e-10;

// Normalized isotropic vector e1 / I for a nonvanishing weight-1 relative
// invariant; invariant under generator rescaling.
inline Vec normalized_e1(const IsotropicFrame& frame, double invariant_value) {
    if (std::abs(invariant_value) < kInvariantDegeneracyTol)
        throw NormalizationUnavailableError("weight-1 invariant too small to normalize e1");
    return frame.e1 / invariant_value;
}

// One factor of a relative-invariant ratio: base invariant raised to an
// integer power; weight = weight(base) * exponent.
struct InvariantPower {
    enum class Base { elementary, power_sum, eigenvalue };
    Base base;
    int label;  // p for I_p / I~_p, 0-based sorted index for eigenvalues
    int exponent = 1;

    int weight() const {
        int w = (base == Base::eigenvalue) ? 1 : label;
        return w * exponent;
    }
    double eval(const InvariantSet& inv) const {
        double v = 0.0;
        switch (base) {
            case Base::elementary: v = inv.elementary(label); break;
            case Base::power_sum: v = inv.power_sum(label); break;
            case Base::eigenvalue: v = inv.eigenvalues[label]; break;
        }
        double out = 1.0;
        for (int i = 0; i < exponent; ++i) out *= v;
        return out;
    }
};

// Ratio of two equal-weight relative invariants; a gauge-independent scalar.
inline double absolute_invariant(const InvariantSet& inv, const InvariantPower& numerator,
                                 const InvariantPower& denominator) {
    if (numerator.weight() != denominator.weight())
        throw DegenerateInputError("absolute invariant needs equal weights");
    double den = denominator.eval(inv);
    if (std::abs(den) < kInvariantDegeneracyTol)
        throw NormalizationUnavailableError("denominator invariant vanishes");
    return numerator.eval(inv) / den;
}

// lambda_i / lambda_j for sorted eigenvalue indices (0-based).
inline double eigenvalue_ratio(const InvariantSet& inv, int i, int j) {
    return absolute_invariant(inv, {InvariantPower::Base::eigenvalue, i},
                              {InvariantPower::Base::eigenvalue, j});
}

// Isotropic 2-plane sample for reporting.
struct SectionalSample {
    Vec point;
    Vec isotropic;      // N
    Vec companion;      // P
    double curvature;   // K_N(sigma)
};

// K_N(sigma) for the plane spanned by an isotropic N and non-isotropic P,
// contracted directly against the coordinate curvature tensor:
//   K = R_ijkl N^i P^j P^k N^l / g(P, P).
inline double isotropic_sectional_curvature_plane(const MetricField& metric, const Vec& point,
                                                  const Vec& isotropic, const Vec& companion,
                                                  const CurvatureTensor& curv) {
    const int n = metric.dim();
    Mat g = metric.eval(point);
    double nn = isotropic.dot(g * isotropic);
    double pp = companion.dot(g * companion);
    double scale = std::max(1.0, isotropic.squaredNorm());
    if (std::abs(nn) > 1e-8 * scale)
        throw DegenerateInputError("N is not isotropic");
    if (std::abs(pp) < 1e-12 * std::max(1.0, companion.squaredNorm()))
        throw DegenerateInputError("P is isotropic: sectional curvature undefined");
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
        if (isotropic[i] == 0.0) continue;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    num += curv.riemann_down(i, j, k, l) * isotropic[i] * companion[j] *
                           companion[k] * isotropic[l];
    }
    return num / pp;
}

// Spec-facing form: P given by screen components against the frame.
inline double isotropic_sectional_curvature(const MetricField& metric,
                                            const IsotropicFrame& frame, const Vec& p_screen,
                                            const CurvatureTensor& curv) {
    Vec companion = frame.screen * p_screen;
    return isotropic_sectional_curvature_plane(metric, frame.point, frame.e1, companion, curv);
}

// Residual of the transport identity for the second fundamental tensor along
// the generator (coordinate-convention form):
//   d lambda_ab(e1) - lambda_cb w^c_a(e1) - lambda_ac w^c_b(e1)
//     - lambda_ab w^1_1(e1) + (lambda g^-1 lambda)_ab - R_{1ab1} = 0,
// with R_{1ab1} = R_ijkl e1^i e_a^j e_b^k e1^l. On constant-curvature charts
// the curvature term drops and the derivative reduces to -(lambda g^-1 lambda).
inline Mat shape_transport_residual(const LocalFrameField& field, const Vec& u) {
    const MetricField& metric = field.metric();
    const int m = metric.dim() - 2;

    ShapeData center = shape_from_field(field, u);
    const IsotropicFrame& frame = center.frame;

    // d lambda_ab along the generator direction e1 = sum beta_k D_k
    Vec beta = field.parameter_direction(frame.e1, u);
    Mat dlam = Mat::Zero(m, m);
    for (int k = 0; k < field.patch().param_dim(); ++k) {
        if (beta[k] == 0.0) continue;
        double h = metric.fd_policy().field_step(u[k]);
        auto lam = [&](const Vec& v) { return Mat(shape_from_field(field, v).lambda_ab); };
        dlam += beta[k] * central_diff4(lam, u, k, h);
    }

    Mat omega = connection_form_values(field, frame.e1);
    Mat gram_inv = MetricField::invert(center.g_ab);

    CurvatureTensor curv = riemann(metric, frame.point);
    Mat r1ab1(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double s = 0.0;
            for (int i = 0; i < metric.dim(); ++i)
                for (int j = 0; j < metric.dim(); ++j)
                    for (int k = 0; k < metric.dim(); ++k)
                        for (int l = 0; l < metric.dim(); ++l)
                            s += curv.riemann_down(i, j, k, l) * frame.e1[i] *
                                 frame.screen(j, a) * frame.screen(k, b) * frame.e1[l];
            r1ab1(a, b) = s;
        }

    Mat residual = dlam;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double s = 0.0;
            for (int c = 0; c < m; ++c)
                s += center.lambda_ab(c, b) * omega(1 + c, 1 + a) +
                     center.lambda_ab(a, c) * omega(1 + c, 1 + b);
            residual(a, b) -= s + center.lambda_ab(a, b) * omega(0, 0);
        }
    residual += center.lambda_ab * gram_inv * center.lambda_ab;
    residual -= r1ab1;
    return residual;
}

}  // namespace nullsurf
