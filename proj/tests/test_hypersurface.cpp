#include <doctest.h>

#include "nullsurf/catalog.hpp"
#include "nullsurf/framefield.hpp"
#include "oracles.hpp"

using namespace nullsurf;

namespace {

HypersurfacePatch spacelike_hyperplane() {
    auto map = [](const Vec& u) {
        Vec x(4);
        x << u[0], u[1], u[2], 0.0;
        return x;
    };
    std::vector<std::pair<double, double>> bounds(3, {-1.0, 1.0});
    return HypersurfacePatch(4, map, bounds, "t0_slice");
}

}  // namespace

TEST_CASE("verify_lightlike classification") {
    MetricField mink = minkowski_metric(4);
    Vec u(3);
    u << 0.4, 1.0, 0.8;

    CHECK(verify_lightlike(light_cone_patch(4), mink, u) == SurfaceCausalType::lightlike);
    CHECK(verify_lightlike(null_hyperplane_patch(4), mink, Vec::Zero(3)) ==
          SurfaceCausalType::lightlike);
    CHECK(verify_lightlike(spacelike_hyperplane(), mink, Vec::Zero(3)) ==
          SurfaceCausalType::spacelike_or_timelike);

    // collapsed parameterization -> immersion failure
    auto degenerate_map = [](const Vec& u) {
        Vec x(4);
        x << u[0], u[0], 0.0, u[2];
        return x;
    };
    HypersurfacePatch degenerate(4, degenerate_map, {{-1, 1}, {-1, 1}, {-1, 1}}, "degenerate");
    CHECK_THROWS_AS(verify_lightlike(degenerate, mink, Vec::Zero(3)), DegenerateInputError);
}

TEST_CASE("null hyperplane is totally geodesic") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch plane = null_hyperplane_patch(4);
    Vec u(3);
    u << 0.2, -0.1, 0.3;
    FrameField field(mink, plane);
    ShapeData shape = shape_from_field(field.local(u), u);
    CHECK(shape.lambda_norm() < 1e-12);
    CHECK(classify(shape).kind == ShapeClass::totally_geodesic);
}

TEST_CASE("light cone shape: lambda_ab = (1/s) g_ab") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    FrameField field(mink, cone);
    for (double s : {0.3, 0.5, 0.9}) {
        Vec u(3);
        u << s, 1.1, 0.7;
        ShapeData shape = shape_from_field(field.local(u), u);
        CHECK(shape.symmetry_residual < 1e-8);
        CHECK((shape.g_ab - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((shape.lambda_ab - (1.0 / s) * shape.g_ab).cwiseAbs().maxCoeff() < 1e-8);

        Classification cls = classify(shape);
        CHECK(cls.kind == ShapeClass::totally_umbilical);
        CHECK(cls.umbilical_lambda == doctest::Approx(1.0 / s).epsilon(1e-6));
        CHECK(shape.clustered.size() == 1);
        CHECK(shape.clustered[0].multiplicity == 2);
    }
}

TEST_CASE("schwarzschild horizon is totally geodesic") {
    MetricField ef = eddington_finkelstein_metric(1.0);
    HypersurfacePatch horizon = schwarzschild_horizon_patch(1.0);
    FrameField field(ef, horizon);
    Vec u(3);
    u << 0.1, 1.2, 0.8;
    ShapeData shape = shape_from_field(field.local(u), u);
    CHECK(shape.lambda_norm() < 1e-5);
    CHECK(classify(shape).kind == ShapeClass::totally_geodesic);
}

TEST_CASE("ellipsoid congruence: generic with oracle eigenvalues") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch patch = ellipsoid_congruence_patch(1.0, 1.3, 1.7);
    FrameField field(mink, patch);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        Vec u(3);
        u << oracles::uniform(rng, 0.1, 0.6), oracles::uniform(rng, 0.7, 1.4),
            oracles::uniform(rng, 0.3, 1.2);
        ShapeData shape = shape_from_field(field.local(u), u);
        CHECK(shape.symmetry_residual < 1e-8);
        CHECK(classify(shape).kind == ShapeClass::generic);

        Eigen::Vector2d expected =
            oracles::ellipsoid_congruence_curvatures(1.0, 1.3, 1.7, u[0], u[1], u[2]);
        CHECK(shape.eigenvalues[0] == doctest::Approx(expected[0]).epsilon(1e-6));
        CHECK(shape.eigenvalues[1] == doctest::Approx(expected[1]).epsilon(1e-6));
        CHECK(std::abs(shape.eigenvalues[1] - shape.eigenvalues[0]) > 1e-3);
    }
}

TEST_CASE("shape weight laws under gauges") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch patch = ellipsoid_congruence_patch(1.0, 1.3, 1.7);
    Vec u(3);
    u << 0.3, 1.0, 0.7;
    FrameField base(mink, patch);
    ShapeData shape0 = shape_from_field(base.local(u), u);

    for (double c : {0.5, 3.0}) {
        FrameField scaled(mink, patch,
                          [c](const Vec&) { return GaugeTransform::rescale(c, 2); });
        ShapeData shape = shape_from_field(scaled.local(u), u);
        CHECK((shape.lambda_ab - c * shape0.lambda_ab).cwiseAbs().maxCoeff() <
              1e-6 * shape0.lambda_ab.norm() * c);
        // eigenvalue ratios are unchanged
        double r0 = shape0.eigenvalues[0] / shape0.eigenvalues[1];
        double r = shape.eigenvalues[0] / shape.eigenvalues[1];
        CHECK(r == doctest::Approx(r0).epsilon(1e-6));
    }

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        GaugeTransform g = GaugeTransform::identity(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.A(i, j) += oracles::uniform(rng, -0.4, 0.4);
        FrameField mixed(mink, patch, [g](const Vec&) { return g; });
        ShapeData shape = shape_from_field(mixed.local(u), u);
        // screen-basis change: pencil eigenvalues untouched
        CHECK(shape.eigenvalues[0] == doctest::Approx(shape0.eigenvalues[0]).epsilon(1e-8));
        CHECK(shape.eigenvalues[1] == doctest::Approx(shape0.eigenvalues[1]).epsilon(1e-8));
    }
}

TEST_CASE("second_fundamental_form honors a caller-supplied gauged frame") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    Vec u(3);
    u << 0.5, 1.0, 0.6;
    Vec x = cone.eval(u);
    IsotropicFrame frame = build_isotropic_frame(mink, x, cone.jacobian(u));

    ShapeData base = second_fundamental_form(cone, mink, frame, u);
    CHECK((base.lambda_ab - (1.0 / u[0]) * base.g_ab).cwiseAbs().maxCoeff() < 1e-8);

    IsotropicFrame gauged = apply_gauge(mink, frame, GaugeTransform::rescale(2.0, 2));
    ShapeData doubled = second_fundamental_form(cone, mink, gauged, u);
    CHECK((doubled.lambda_ab - 2.0 * base.lambda_ab).cwiseAbs().maxCoeff() < 1e-8);

    // non-lightlike surface is rejected
    CHECK_THROWS_AS(
        second_fundamental_form(spacelike_hyperplane(), mink, frame, Vec::Zero(3)),
        NotLightlikeError);
}

TEST_CASE("eigenvalue clustering") {
    Vec close(3);
    close << 1.0, 1.0 + 1e-9, 2.0;
    auto clusters = cluster_eigenvalues(close);
    CHECK(clusters.size() == 2);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(clusters[1].multiplicity == 1);
}
