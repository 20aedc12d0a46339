// nullsurf: invariant screen distributions from relative and absolute
// invariants, induced-connection coefficients, and the 4-dimensional triple
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>

#include "nullsurf/framefield.hpp"
#include "nullsurf/invariants.hpp"

namespace nullsurf {

using ScalarField = std::function<double(const Vec&)>;

// Coefficients of d ln|I| - omega^1_1 = -K omega^1 - K_a omega^a for a
// weight-1 relative invariant field I; K itself is a weight-1 relative
// invariant.
struct InvariantFieldDerivative {
    double value = 0.0;  // I at the evaluation point
    double K = 0.0;
    Vec K_a;
};

struct NormalizationTolerances {
    double invariant_floor = 1e-10;      // |I| below this is degenerate on a stencil
    double lambda_singular_rel = 1e-8;   // sigma_min/sigma_max cutoff for Lambda
    double transversal_abs = 1e-8;       // |K| floor for level-set transversality
    double transversal_rel = 1e-6;       // |K| against |K_a| magnitudes
    double proportionality = 1e-6;       // |K_2 lam_3 - K_3 lam_2| scale cutoff
    double integrable = 1e-3;            // nu_[ab] cutoff for the integrability flag
    double screen_orthogonality = 1e-7;  // g(e~_a, e1) consistency for user screens
};

inline InvariantFieldDerivative invariant_log_derivative(const ScalarField& invariant_field,
                                                         const LocalFrameField& field,
                                                         const Vec& at,
                                                         NormalizationTolerances tol = {}) {
    const int m = field.patch().param_dim();
    InvariantFieldDerivative out;
    out.value = invariant_field(at);

    double floor = tol.invariant_floor * std::max(1.0, std::abs(out.value));
    auto log_abs = [&](const Vec& v) {
        double w = invariant_field(v);
        if (std::abs(w) < floor)
            throw NormalizationUnavailableError("invariant vanishes on the stencil");
        return std::log(std::abs(w));
    };

    Vec values(m);
    for (int k = 0; k < m; ++k) {
        double h = field.metric().fd_policy().field_step(at[k]);
        double dln = central_diff4(log_abs, at, k, h);
        values[k] = dln - field.connection_forms(k, at)(0, 0);
    }
    Vec y = field.decompose_one_form(values, at);
    out.K = -y[0];
    out.K_a = -y.tail(m - 1);
    return out;
}

enum class ScreenMethod { relative_invariant, absolute_invariant, level_set_4d, user_supplied };

inline const char* to_string(ScreenMethod m) {
    switch (m) {
        case ScreenMethod::relative_invariant: return "relative_invariant";
        case ScreenMethod::absolute_invariant: return "absolute_invariant";
        case ScreenMethod::level_set_4d: return "level_set_4d";
        case ScreenMethod::user_supplied: return "user_supplied";
    }
    return "unknown";
}

// Per-point screen subspace: normalizing object L_a, spanning vectors
// e~_a = e_a + L_a e1, the g-orthogonal projector onto the span, and the
// induced-connection coefficients once attached.
struct ScreenSample {
    Vec point;
    ScreenMethod method = ScreenMethod::user_supplied;
    Vec L;             // normalizing object (level-set coefficients K_a for J-screens)
    Mat screen_basis;  // columns e~_a
    Mat projector;
    IsotropicFrame frame;

    bool connection_attached = false;
    Vec nu_a;
    Mat nu_ab;
    double nu_antisymmetry = 0.0;
    bool integrable = false;
};

namespace detail {

inline Mat g_orthogonal_projector(const Mat& g, const Mat& span) {
    Mat gram = span.transpose() * g * span;
    return span * MetricField::invert(gram) * span.transpose() * g;
}

inline ScreenSample make_screen(const Mat& g_ambient, const IsotropicFrame& frame, const Vec& L,
                                ScreenMethod method) {
    ScreenSample s;
    s.point = frame.point;
    s.method = method;
    s.L = L;
    s.frame = frame;
    s.screen_basis = frame.screen;
    for (int a = 0; a < frame.screen_dim(); ++a) s.screen_basis.col(a) += L[a] * frame.e1;
    s.projector = g_orthogonal_projector(g_ambient, s.screen_basis);
    return s;
}

}  // namespace detail

// Screen from a weight-1 relative invariant: L_a = (Lambda^{-1} K)_a with
// Lambda_a^b = lambda_a^b - K delta_a^b. Unavailable when K sits on the
// spectrum of the shape operator.
inline ScreenSample screen_from_relative_invariant(const ShapeData& shape,
                                                   const InvariantFieldDerivative& deriv,
                                                   NormalizationTolerances tol = {}) {
    const int m = static_cast<int>(shape.lambda_up.rows());
    Mat gram_inv = MetricField::invert(shape.g_ab);
    Mat big_lambda = shape.lambda_ab * gram_inv - deriv.K * Mat::Identity(m, m);
    Eigen::JacobiSVD<Mat> svd(big_lambda, Eigen::ComputeFullU | Eigen::ComputeFullV);
    double smax = svd.singularValues()[0];
    double scale = std::max({smax, std::abs(deriv.K), shape.eigenvalues.cwiseAbs().maxCoeff()});
    if (scale <= 0.0 || svd.singularValues()[m - 1] < tol.lambda_singular_rel * scale)
        throw ScreenUnavailableError(ScreenUnavailability::k_is_eigenvalue,
                                     "K is an eigenvalue of the shape operator");
    Vec L = svd.solve(deriv.K_a);
    return detail::make_screen(shape.g_ambient, shape.frame, L,
                               ScreenMethod::relative_invariant);
}

// Screen tangent to the level sets of an absolute invariant J: decompose
// dJ = K omega^1 + K~_a omega^a, set K_a = -K~_a / K. Unavailable when the
// level submanifolds fail to be transversal to the generators (K ~ 0).
inline ScreenSample screen_from_absolute_invariant(const ScalarField& j_field,
                                                   const LocalFrameField& field, const Vec& at,
                                                   NormalizationTolerances tol = {},
                                                   ScreenMethod method = ScreenMethod::absolute_invariant) {
    const int m = field.patch().param_dim();
    double j0 = j_field(at);
    Vec values(m);
    for (int k = 0; k < m; ++k) {
        double h = field.metric().fd_policy().field_step(at[k]);
        values[k] = central_diff4(j_field, at, k, h);
    }
    Vec y = field.decompose_one_form(values, at);
    double big_k = y[0];
    Vec k_tilde = y.tail(m - 1);

    double floor = std::max(tol.transversal_abs * std::max(1.0, std::abs(j0)),
                            tol.transversal_rel * k_tilde.cwiseAbs().maxCoeff());
    if (std::abs(big_k) <= floor)
        throw ScreenUnavailableError(
            ScreenUnavailability::non_transversal,
            "level sets of the invariant are not transversal to the generators");

    Vec level_coeffs = -k_tilde / big_k;
    IsotropicFrame frame = field.at(at);
    return detail::make_screen(field.metric().eval(frame.point), frame, level_coeffs, method);
}

// Measures the induced-connection coefficients of a screen given as a
// normalizing-object field: the frame is reduced by the screen shift
// t(u) = L(u) and omega^1_a of the reduced field is decomposed as
// omega^1_a = nu_a omega^1 + nu_ab omega^b. The screen is integrable exactly
// when nu_ab is symmetric.
struct InducedConnection {
    Vec nu_a;
    Mat nu_ab;
    double antisymmetry = 0.0;
    bool integrable = false;
};

inline InducedConnection induced_connection(const FrameField& frames,
                                            const std::function<Vec(const Vec&)>& normalizing_field,
                                            const Vec& at, NormalizationTolerances tol = {}) {
    const int n = frames.metric().dim();
    const int m = n - 2;

    FrameField reduced_frames = frames.with_reduction(
        [normalizing_field](const Vec& u) { return GaugeTransform::shift(normalizing_field(u)); });

    LocalFrameField field = reduced_frames.local(at);

    // consistency: reduced screen must be tangent and g-orthogonal to e1
    const IsotropicFrame& frame = field.center_frame();
    Mat g = frames.metric().eval(frame.point);
    for (int a = 0; a < m; ++a) {
        if (std::abs(frame.e1.dot(g * frame.screen.col(a))) > tol.screen_orthogonality)
            throw InconsistentScreenError("screen vector not g-orthogonal to the radical");
        field.parameter_direction(frame.screen.col(a), at);  // throws when not tangent
    }

    Mat values(n - 1, m);  // rows: directions k; cols: screen index a
    for (int k = 0; k < n - 1; ++k) {
        Mat w = field.connection_forms(k, at);
        for (int a = 0; a < m; ++a) values(k, a) = w(0, 1 + a);
    }

    InducedConnection out;
    out.nu_a.resize(m);
    out.nu_ab.resize(m, m);
    for (int a = 0; a < m; ++a) {
        Vec y = field.decompose_one_form(values.col(a), at);
        out.nu_a[a] = y[0];
        out.nu_ab.row(a) = y.tail(m).transpose();
    }
    out.antisymmetry = (out.nu_ab - out.nu_ab.transpose()).cwiseAbs().maxCoeff();
    out.integrable =
        out.antisymmetry < tol.integrable * std::max(1.0, out.nu_ab.cwiseAbs().maxCoeff());
    return out;
}

inline void attach_induced_connection(ScreenSample& screen, const FrameField& frames,
                                      const std::function<Vec(const Vec&)>& normalizing_field,
                                      const Vec& at, NormalizationTolerances tol = {}) {
    InducedConnection conn = induced_connection(frames, normalizing_field, at, tol);
    screen.nu_a = conn.nu_a;
    screen.nu_ab = conn.nu_ab;
    screen.nu_antisymmetry = conn.antisymmetry;
    screen.integrable = conn.integrable;
    screen.connection_attached = true;
}

// Outcome slot for one of the three 4-dimensional normalizations.
struct ScreenResult {
    std::optional<ScreenSample> screen;
    std::optional<ScreenUnavailability> reason;

    bool available() const { return screen.has_value(); }
};

struct TripleNormalizations {
    ScreenResult from_lambda2;  // relative invariant lambda_2
    ScreenResult from_lambda3;  // relative invariant lambda_3
    ScreenResult from_ratio;    // absolute invariant lambda_2 / lambda_3
    double K2 = 0.0, K3 = 0.0;  // Eq.-(52) coefficients of the eigenvalue fields
    bool K_available = false;
};

// Eigenvalue fields over a local frame field; valid while eigenvalues stay
// simple (sorted labels then vary smoothly).
inline ScalarField eigenvalue_field(const LocalFrameField& field, int index) {
    return [field, index](const Vec& u) { return shape_from_field(field, u).eigenvalues[index]; };
}

inline ScalarField eigenvalue_ratio_field(const LocalFrameField& field, int i, int j) {
    return [field, i, j](const Vec& u) {
        ShapeData s = shape_from_field(field, u);
        return s.eigenvalues[i] / s.eigenvalues[j];
    };
}

// The three invariant normalizations of a generic lightlike hypersurface in
// a 4-dimensional chart: screens from the relative invariants lambda_2 and
// lambda_3 and from the absolute invariant lambda_2/lambda_3 (level-set
// construction, integrable whenever available). Violated hypotheses are
// reported per screen.
inline TripleNormalizations triple_normalizations_4d(const FrameField& frames, const Vec& at,
                                                     NormalizationTolerances tol = {},
                                                     bool with_connections = true) {
    if (frames.metric().dim() != 4)
        throw DegenerateInputError("triple normalization requires a 4-dimensional chart");

    TripleNormalizations out;
    LocalFrameField field = frames.local(at);
    ShapeData shape = shape_from_field(field, at);

    auto all_unavailable = [&](ScreenUnavailability r) {
        out.from_lambda2.reason = r;
        out.from_lambda3.reason = r;
        out.from_ratio.reason = r;
    };

    if (classify(shape).kind == ShapeClass::totally_geodesic) {
        all_unavailable(ScreenUnavailability::totally_geodesic);
        return out;
    }
    double ev_scale = std::max(1e-300, shape.eigenvalues.cwiseAbs().maxCoeff());
    if (std::abs(shape.eigenvalues[1] - shape.eigenvalues[0]) < kEigenvalueClusterTol * ev_scale) {
        all_unavailable(ScreenUnavailability::equal_eigenvalues);
        return out;
    }
    if (std::abs(shape.eigenvalues[0]) < tol.invariant_floor * ev_scale ||
        std::abs(shape.eigenvalues[1]) < tol.invariant_floor * ev_scale) {
        // degenerate invariants: nothing to differentiate logarithmically
        all_unavailable(ScreenUnavailability::non_transversal);
        return out;
    }

    InvariantFieldDerivative d2, d3;
    try {
        d2 = invariant_log_derivative(eigenvalue_field(field, 0), field, at, tol);
        d3 = invariant_log_derivative(eigenvalue_field(field, 1), field, at, tol);
    } catch (const NormalizationUnavailableError&) {
        all_unavailable(ScreenUnavailability::non_transversal);
        return out;
    }
    out.K2 = d2.K;
    out.K3 = d3.K;
    out.K_available = true;

    double lam2 = shape.eigenvalues[0], lam3 = shape.eigenvalues[1];
    double cross = std::abs(d2.K * lam3 - d3.K * lam2);
    double cross_scale =
        std::max({std::abs(d2.K * lam3), std::abs(d3.K * lam2), ev_scale * ev_scale});

    if (cross <= tol.proportionality * cross_scale) {
        out.from_lambda2.reason = ScreenUnavailability::k_proportional_to_eigenvalues;
        out.from_lambda3.reason = ScreenUnavailability::k_proportional_to_eigenvalues;
    } else {
        auto build_relative = [&](const InvariantFieldDerivative& d, int index) {
            ScreenResult r;
            try {
                r.screen = screen_from_relative_invariant(shape, d, tol);
                if (with_connections) {
                    auto l_field = [frames, index, tol](const Vec& u) {
                        LocalFrameField lf = frames.local(u);
                        ShapeData s = shape_from_field(lf, u);
                        InvariantFieldDerivative dd =
                            invariant_log_derivative(eigenvalue_field(lf, index), lf, u, tol);
                        ScreenSample sample = screen_from_relative_invariant(s, dd, tol);
                        return sample.L;
                    };
                    attach_induced_connection(*r.screen, frames, l_field, at, tol);
                }
            } catch (const ScreenUnavailableError& e) {
                r.screen.reset();
                r.reason = e.reason();
            }
            return r;
        };
        out.from_lambda2 = build_relative(d2, 0);
        out.from_lambda3 = build_relative(d3, 1);
    }

    try {
        ScreenSample ratio = screen_from_absolute_invariant(eigenvalue_ratio_field(field, 0, 1),
                                                            field, at, tol,
                                                            ScreenMethod::level_set_4d);
        if (with_connections) {
            auto l_field = [frames, tol](const Vec& u) {
                LocalFrameField lf = frames.local(u);
                ScreenSample s = screen_from_absolute_invariant(eigenvalue_ratio_field(lf, 0, 1),
                                                                lf, u, tol,
                                                                ScreenMethod::level_set_4d);
                return s.L;
            };
            attach_induced_connection(ratio, frames, l_field, at, tol);
        }
        out.from_ratio.screen = std::move(ratio);
    } catch (const ScreenUnavailableError& e) {
        out.from_ratio.reason = e.reason();
    }
    return out;
}

// Level-set tangency of a J-screen: |dJ(e~_a)| relative to |dJ| measured by
// differencing J along the pulled-back screen directions.
inline double level_set_tangency_residual(const ScalarField& j_field,
                                          const LocalFrameField& field, const Vec& at,
                                          const ScreenSample& screen) {
    const int m = field.patch().param_dim();
    Vec grad(m);
    for (int k = 0; k < m; ++k) {
        double h = field.metric().fd_policy().field_step(at[k]);
        grad[k] = central_diff4(j_field, at, k, h);
    }
    double grad_scale = grad.norm();
    if (grad_scale == 0.0) return 0.0;

    double worst = 0.0;
    for (int a = 0; a < screen.screen_basis.cols(); ++a) {
        Vec beta = field.parameter_direction(screen.screen_basis.col(a), at);
        double along = grad.dot(beta) / std::max(1.0, beta.norm());
        worst = std::max(worst, std::abs(along));
    }
    return worst / grad_scale;
}

}  // namespace nullsurf
