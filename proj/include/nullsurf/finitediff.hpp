// nullsurf: central finite-difference step policies
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>

namespace nullsurf {

// Step sizes follow the usual optimal-tradeoff scalings for central
// differences: h ~ eps^(1/3) for first derivatives of machine-accurate
// functions, h ~ eps^(1/4) for second derivatives. Derived fields (one or
// two finite-difference layers deep themselves) get larger steps and a
// five-point fourth-order stencil, sized against their own noise floor.
struct FdPolicy {
    double first_step_scale = std::cbrt(std::numeric_limits<double>::epsilon());
    double second_step_scale = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    // scalar fields assembled from frame derivatives (eigenvalues, invariants)
    double field_step_scale = 2e-3;
    // fields assembled from the above (normalizing objects)
    double deep_field_step_scale = 8e-3;

    double first_step(double x) const { return first_step_scale * std::max(1.0, std::abs(x)); }
    double second_step(double x) const { return second_step_scale * std::max(1.0, std::abs(x)); }
    double field_step(double x) const { return field_step_scale * std::max(1.0, std::abs(x)); }
    double deep_field_step(double x) const {
        return deep_field_step_scale * std::max(1.0, std::abs(x));
    }
};

// Three-point central first derivative of f along axis k at u.
template <typename F>
auto central_diff(const F& f, const Eigen::VectorXd& u, int k, double h)
    -> decltype(f(u)) {
    Eigen::VectorXd up = u, dn = u;
    up[k] += h;
    dn[k] -= h;
    return (f(up) - f(dn)) / (2.0 * h);
}

// Five-point fourth-order central first derivative; used for derived fields
// where the evaluation itself carries finite-difference noise.
template <typename F>
auto central_diff4(const F& f, const Eigen::VectorXd& u, int k, double h)
    -> decltype(f(u)) {
    Eigen::VectorXd u1 = u, u2 = u, u3 = u, u4 = u;
    u1[k] += 2.0 * h;
    u2[k] += h;
    u3[k] -= h;
    u4[k] -= 2.0 * h;
    return (-f(u1) + 8.0 * f(u2) - 8.0 * f(u3) + f(u4)) / (12.0 * h);
}

}  // namespace nullsurf
