// nullsurf: hypersurface patches, lightlike classification, shape data
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nullsurf/frame.hpp"
#include "nullsurf/metric.hpp"

namespace nullsurf {

// Parameterized hypersurface patch u -> x. By convention u^1 is the
// isotropic direction parameter when the parameterization is adapted (its
// coordinate velocity spans the radical); the frame machinery detects and
// exploits that. An analytic parameter Jacobian may be supplied.
class HypersurfacePatch {
public:
    using Map = std::function<Vec(const Vec&)>;
    using Jacobian = std::function<Mat(const Vec&)>;

    HypersurfacePatch(int ambient_dim, Map map,
                      std::vector<std::pair<double, double>> param_bounds,
                      std::string name = "patch")
        : ambient_dim_(ambient_dim),
          map_(std::move(map)),
          bounds_(std::move(param_bounds)),
          name_(std::move(name)) {
        if (static_cast<int>(bounds_.size()) != ambient_dim_ - 1)
            throw DegenerateInputError("param_bounds size must equal ambient_dim - 1");
    }

    HypersurfacePatch with_analytic_jacobian(Jacobian j) const {
        HypersurfacePatch p = *this;
        p.jac_ = std::move(j);
        return p;
    }

    int ambient_dim() const { return ambient_dim_; }
    int param_dim() const { return ambient_dim_ - 1; }
    const std::string& name() const { return name_; }
    const std::vector<std::pair<double, double>>& param_bounds() const { return bounds_; }

    bool contains(const Vec& u, double margin = 0.0) const {
        if (u.size() != param_dim()) return false;
        for (int i = 0; i < param_dim(); ++i)
            if (u[i] < bounds_[i].first + margin || u[i] > bounds_[i].second - margin)
                return false;
        return true;
    }

    void require_inside(const Vec& u, double margin = 0.0) const {
        if (!contains(u, margin))
            throw ChartDomainError(name_ + ": parameters outside patch bounds");
    }

    Vec eval(const Vec& u) const {
        require_inside(u);
        return map_(u);
    }

    Mat jacobian(const Vec& u) const {
        if (jac_) {
            require_inside(u);
            return jac_(u);
        }
        Mat j(ambient_dim_, param_dim());
        for (int k = 0; k < param_dim(); ++k) {
            double h = fd_.first_step(u[k]);
            Vec up = u, dn = u;
            up[k] += h;
            dn[k] -= h;
            require_inside(up);
            require_inside(dn);
            j.col(k) = (map_(up) - map_(dn)) / (2.0 * h);
        }
        return j;
    }

private:
    int ambient_dim_;
    Map map_;
    std::vector<std::pair<double, double>> bounds_;
    std::string name_;
    Jacobian jac_;
    FdPolicy fd_;
};

enum class SurfaceCausalType { lightlike, spacelike_or_timelike, degenerate };

inline const char* to_string(SurfaceCausalType t) {
    switch (t) {
        case SurfaceCausalType::lightlike: return "lightlike";
        case SurfaceCausalType::spacelike_or_timelike: return "spacelike_or_timelike";
        case SurfaceCausalType::degenerate: return "degenerate";
    }
    return "unknown";
}

// Rank classification of the induced metric: rank n-2 with one-dimensional
// radical is lightlike, full rank is spacelike or timelike, anything lower
// is degenerate. Throws on immersion failure.
inline SurfaceCausalType verify_lightlike(const HypersurfacePatch& patch,
                                          const MetricField& metric, const Vec& at) {
    Mat tangent = patch.jacobian(at);
    Eigen::JacobiSVD<Mat> svd(tangent);
    if (svd.singularValues()[patch.param_dim() - 1] < 1e-10 * svd.singularValues()[0])
        throw DegenerateInputError(patch.name() + ": immersion fails (rank-deficient Jacobian)");
    Mat g = metric.eval(patch.eval(at));
    detail::RadicalSplit split = detail::radical_of_tangent_plane(g, tangent);
    if (split.zero_count == 0) return SurfaceCausalType::spacelike_or_timelike;
    if (split.zero_count == 1) return SurfaceCausalType::lightlike;
    return SurfaceCausalType::degenerate;
}

// One multiplicity-clustered eigenvalue of the shape operator.
struct ShapeEigenvalue {
    double value;
    int multiplicity;
};

// Second fundamental tensor and shape operator at one point, together with
// the frame they were measured in. Eigenvalues are those of the symmetric
// pencil (lambda_ab, g_ab), sorted ascending.
struct ShapeData {
    Vec point;
    Mat g_ambient;        // ambient g_ij at the point
    Mat g_ab;
    Mat lambda_ab;        // symmetrized measurement
    Mat lambda_up;        // g^{ac} lambda_cb
    Vec eigenvalues;
    std::vector<ShapeEigenvalue> clustered;
    IsotropicFrame frame;
    double symmetry_residual = 0.0;  // max |lambda_ab - lambda_ba| before symmetrization

    double lambda_norm() const { return lambda_ab.norm(); }
};

// Relative gap under which neighboring eigenvalues merge into one root.
inline constexpr double kEigenvalueClusterTol = 1e-6;

inline std::vector<ShapeEigenvalue> cluster_eigenvalues(const Vec& sorted) {
    std::vector<ShapeEigenvalue> out;
    double scale = std::max(1e-300, sorted.cwiseAbs().maxCoeff());
    for (int i = 0; i < sorted.size(); ++i) {
        if (!out.empty() && std::abs(sorted[i] - out.back().value) < kEigenvalueClusterTol * scale)
            ++out.back().multiplicity;
        else
            out.push_back({sorted[i], 1});
    }
    return out;
}

enum class ShapeClass { totally_geodesic, totally_umbilical, generic };

inline const char* to_string(ShapeClass c) {
    switch (c) {
        case ShapeClass::totally_geodesic: return "totally_geodesic";
        case ShapeClass::totally_umbilical: return "totally_umbilical";
        case ShapeClass::generic: return "generic";
    }
    return "unknown";
}

struct ClassifyTolerances {
    double abs_scale = 1e-7;  // scaled by max(1, |x|_inf) of the point
    double rel = 1e-5;
};

struct Classification {
    ShapeClass kind;
    double umbilical_lambda = 0.0;  // trace ratio, meaningful for umbilical
};

inline Classification classify(const ShapeData& shape, ClassifyTolerances tol = {}) {
    double point_scale = std::max(1.0, shape.point.cwiseAbs().maxCoeff());
    double norm = shape.lambda_ab.norm();
    if (norm < tol.abs_scale * point_scale) return {ShapeClass::totally_geodesic, 0.0};
    Mat gram_inv = MetricField::invert(shape.g_ab);
    double trace_ratio = (gram_inv * shape.lambda_ab).trace() / shape.g_ab.cols();
    if ((shape.lambda_ab - trace_ratio * shape.g_ab).norm() < tol.rel * norm)
        return {ShapeClass::totally_umbilical, trace_ratio};
    return {ShapeClass::generic, trace_ratio};
}

}  // namespace nullsurf
