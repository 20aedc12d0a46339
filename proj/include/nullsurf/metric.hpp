// nullsurf: metric fields over a coordinate chart
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nullsurf/errors.hpp"
#include "nullsurf/finitediff.hpp"

namespace nullsurf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Relative spread below which the smallest singular value marks g_ij as
// numerically singular.
inline constexpr double kMetricDegeneracyTol = 1e-10;

// A smooth Lorentzian metric g_ij over one coordinate chart. Components are
// a callable point -> symmetric n x n matrix; analytic first/second
// derivative maps may be supplied and take precedence over finite
// differences. Immutable after construction and safe for concurrent reads.
class MetricField {
public:
    using Components = std::function<Mat(const Vec&)>;
    // n matrices, entry m = d g / d x^m
    using FirstDerivs = std::function<std::vector<Mat>(const Vec&)>;
    // n*n matrices, entry p*n + m = d^2 g / (d x^p d x^m)
    using SecondDerivs = std::function<std::vector<Mat>(const Vec&)>;

    MetricField(int dim, Components components,
                std::vector<std::pair<double, double>> chart_bounds,
                std::string name = "metric")
        : dim_(dim),
          components_(std::move(components)),
          bounds_(std::move(chart_bounds)),
          name_(std::move(name)) {
        if (dim_ < 3) throw DegenerateInputError("metric dimension must be >= 3");
        if (static_cast<int>(bounds_.size()) != dim_)
            throw DegenerateInputError("chart_bounds size must equal dim");
    }

    MetricField with_analytic_derivatives(FirstDerivs d1, SecondDerivs d2) const {
        MetricField m = *this;
        m.d1_ = std::move(d1);
        m.d2_ = std::move(d2);
        return m;
    }

    // Same metric with analytic derivative maps stripped; exercises the
    // finite-difference path in tests.
    MetricField without_analytic_derivatives() const {
        MetricField m = *this;
        m.d1_ = nullptr;
        m.d2_ = nullptr;
        return m;
    }

    MetricField with_fd_policy(FdPolicy p) const {
        MetricField m = *this;
        m.fd_ = p;
        return m;
    }

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::vector<std::pair<double, double>>& chart_bounds() const { return bounds_; }
    const FdPolicy& fd_policy() const { return fd_; }
    bool has_analytic_derivatives() const { return static_cast<bool>(d1_); }

    bool contains(const Vec& x, double margin = 0.0) const {
        if (x.size() != dim_) return false;
        for (int i = 0; i < dim_; ++i)
            if (x[i] < bounds_[i].first + margin || x[i] > bounds_[i].second - margin)
                return false;
        return true;
    }

    void require_inside(const Vec& x, double margin = 0.0) const {
        if (!contains(x, margin))
            throw ChartDomainError(name_ + ": point outside chart bounds (margin " +
                                   std::to_string(margin) + ")");
    }

    Mat eval(const Vec& x) const {
        require_inside(x);
        Mat g = components_(x);
        // enforce exact symmetry against roundoff in user components
        return 0.5 * (g + g.transpose());
    }

    // Inverse metric with the documented degeneracy guard.
    Mat inverse(const Vec& x) const { return invert(eval(x)); }

    static Mat invert(const Mat& g) {
        Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        if (sv[sv.size() - 1] < kMetricDegeneracyTol * sv[0])
            throw DegenerateMetricError("metric tensor numerically singular");
        return svd.solve(Mat::Identity(g.rows(), g.cols()));
    }

    double scalar_product(const Vec& x, const Vec& xi, const Vec& eta) const {
        return xi.dot(eval(x) * eta);
    }

    // Signature (n-1, 1): exactly one negative eigenvalue at x.
    bool signature_ok(const Vec& x) const {
        Eigen::SelfAdjointEigenSolver<Mat> es(eval(x));
        int neg = 0;
        for (int i = 0; i < dim_; ++i)
            if (es.eigenvalues()[i] < 0.0) ++neg;
        return neg == 1;
    }

    // d g / d x^m for all m. Finite-difference fallback needs a one-step
    // interior margin.
    std::vector<Mat> first_derivatives(const Vec& x) const {
        if (d1_) {
            require_inside(x);
            return d1_(x);
        }
        std::vector<Mat> out(dim_);
        for (int m = 0; m < dim_; ++m) {
            double h = fd_.first_step(x[m]);
            require_inside(x, 0.0);
            Vec up = x, dn = x;
            up[m] += h;
            dn[m] -= h;
            require_inside(up);
            require_inside(dn);
            out[m] = (components_(up) - components_(dn)) / (2.0 * h);
            out[m] = 0.5 * (out[m] + out[m].transpose().eval());
        }
        return out;
    }

    // d^2 g / (d x^p d x^m), flattened with index p*dim + m.
    std::vector<Mat> second_derivatives(const Vec& x) const {
        if (d2_) {
            require_inside(x);
            return d2_(x);
        }
        std::vector<Mat> out(dim_ * dim_);
        Mat g0 = eval(x);
        for (int p = 0; p < dim_; ++p) {
            double hp = fd_.second_step(x[p]);
            for (int m = p; m < dim_; ++m) {
                double hm = fd_.second_step(x[m]);
                Mat d;
                if (p == m) {
                    Vec up = x, dn = x;
                    up[p] += hp;
                    dn[p] -= hp;
                    require_inside(up);
                    require_inside(dn);
                    d = (components_(up) - 2.0 * g0 + components_(dn)) / (hp * hp);
                } else {
                    Vec pp = x, pm = x, mp = x, mm = x;
                    pp[p] += hp; pp[m] += hm;
                    pm[p] += hp; pm[m] -= hm;
                    mp[p] -= hp; mp[m] += hm;
                    mm[p] -= hp; mm[m] -= hm;
                    require_inside(pp);
                    require_inside(mm);
                    d = (components_(pp) - components_(pm) - components_(mp) + components_(mm)) /
                        (4.0 * hp * hm);
                }
                d = 0.5 * (d + d.transpose().eval());
                out[p * dim_ + m] = d;
                out[m * dim_ + p] = d;
            }
        }
        return out;
    }

private:
    int dim_;
    Components components_;
    std::vector<std::pair<double, double>> bounds_;
    std::string name_;
    FirstDerivs d1_;
    SecondDerivs d2_;
    FdPolicy fd_;
};

// g_ij(x) xi^i eta^j; bilinear and symmetric in (xi, eta).
inline double scalar_product(const MetricField& metric, const Vec& x, const Vec& xi,
                             const Vec& eta) {
    return metric.scalar_product(x, xi, eta);
}

}  // namespace nullsurf
