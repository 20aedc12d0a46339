#include <doctest.h>

#include "nullsurf/catalog.hpp"
#include "nullsurf/geodesics.hpp"
#include "oracles.hpp"

using namespace nullsurf;

TEST_CASE("minkowski geodesics are straight lines") {
    MetricField mink = minkowski_metric(4);
    Vec x0 = oracles::vec4(0.1, -0.3, 0.2, 0.0);
    Vec v0 = oracles::vec4(0.6, 0.0, 0.8, 1.0);  // null
    GeodesicRecord rec = integrate_isotropic_geodesic(mink, x0, v0, 5.0, 11);
    REQUIRE(rec.x.size() == 11);
    CHECK_FALSE(rec.exited_chart);
    for (size_t i = 0; i < rec.s.size(); ++i) {
        CHECK((rec.x[i] - (x0 + rec.s[i] * v0)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((rec.v[i] - v0).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK(rec.max_null_drift() < 1e-10);
}

TEST_CASE("non-null initial velocity is rejected") {
    MetricField mink = minkowski_metric(4);
    CHECK_THROWS_AS(integrate_isotropic_geodesic(mink, Vec::Zero(4),
                                                 oracles::vec4(1, 0, 0, 0), 1.0, 5),
                    DegenerateInputError);
}

TEST_CASE("cone generators stay on the cone") {
    MetricField mink = minkowski_metric(4);
    Vec apex = Vec::Zero(4);
    Vec dir = oracles::vec4(std::cos(0.4), std::sin(0.4) * std::cos(1.0),
                            std::sin(0.4) * std::sin(1.0), 1.0);
    Vec x0 = 0.5 * dir;
    GeodesicRecord rec = integrate_isotropic_geodesic(mink, x0, dir, 4.0, 21);
    rec.attach_surface_residual([](const Vec& x) {
        return std::abs(x.head(3).norm() - std::abs(x[3]));
    });
    for (double r : rec.on_surface_residual) CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("null norm drift stays small on curved charts") {
    for (const MetricField& m : {de_sitter_metric(4, 1.0), anti_de_sitter_metric(4, -1.0)}) {
        Vec x0 = Vec::Zero(4);
        Vec dir = oracles::vec4(std::cos(0.3), std::sin(0.3) * std::cos(0.8),
                                std::sin(0.3) * std::sin(0.8), 1.0);
        Vec v0 = 0.12 * dir;
        GeodesicRecord rec = integrate_isotropic_geodesic(m, x0, v0, 5.0, 11);
        CHECK_FALSE(rec.exited_chart);
        CHECK(rec.max_null_drift() < 1e-7);
    }
    {
        MetricField ef = eddington_finkelstein_metric(1.0);
        Vec x0 = oracles::vec4(0.0, 5.0, 1.4, 0.5);
        // ingoing radial null direction: v = const is null in this chart
        Vec v0 = oracles::vec4(0.0, -0.3, 0.0, 0.0);
        GeodesicRecord rec = integrate_isotropic_geodesic(ef, x0, v0, 5.0, 11);
        CHECK_FALSE(rec.exited_chart);
        CHECK(rec.max_null_drift() < 1e-7);
    }
}

TEST_CASE("leaving the chart truncates the record") {
    MetricField mink = minkowski_metric(4);
    Vec v0 = oracles::vec4(1, 0, 0, 1);
    GeodesicRecord rec = integrate_isotropic_geodesic(mink, oracles::vec4(9.0, 0, 0, 0), v0,
                                                      10.0, 6);
    CHECK(rec.exited_chart);
    CHECK(rec.x.size() < 6);
}

TEST_CASE("focal points of the light cone: apex with multiplicity 2") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    FrameField field(mink, cone);
    for (double s : {0.3, 0.6, 0.9}) {
        Vec u(3);
        u << s, 1.1, 0.7;
        ShapeData shape = shape_from_field(field.local(u), u);
        FocalSet foci = focal_points(shape, shape.frame);
        REQUIRE(foci.foci.size() == 1);
        CHECK(foci.foci[0].multiplicity == 2);
        CHECK(foci.total_multiplicity() == 2);
        CHECK(foci.foci[0].s == doctest::Approx(-s).epsilon(1e-8));
        CHECK(foci.foci[0].development.cwiseAbs().maxCoeff() < 1e-8);  // apex at origin
        CHECK(foci.foci[0].jacobian_witness < 1e-8);

        // gauge rescalings leave the focus fixed as a point
        for (double c : {0.5, 1.0, 3.0}) {
            FrameField gauged(mink, cone,
                              [c](const Vec&) { return GaugeTransform::rescale(c, 2); });
            ShapeData gs = shape_from_field(gauged.local(u), u);
            FocalSet gf = focal_points(gs, gs.frame);
            REQUIRE(gf.foci.size() == 1);
            CHECK(gf.foci[0].development.cwiseAbs().maxCoeff() < 1e-8);
        }

        // exponential image agrees with the development in flat space
        exponential_focal_points(mink, shape.frame, foci);
        REQUIRE(foci.foci[0].exponential.has_value());
        CHECK((*foci.foci[0].exponential - foci.foci[0].development).cwiseAbs().maxCoeff() <
              1e-8);
    }
}

TEST_CASE("null hyperplane: all foci at infinity") {
    FrameField field(minkowski_metric(4), null_hyperplane_patch(4));
    Vec u(3);
    u << 0.2, 0.1, -0.3;
    ShapeData shape = shape_from_field(field.local(u), u);
    FocalSet foci = focal_points(shape, shape.frame);
    CHECK(foci.total_multiplicity() == 2);
    CHECK(foci.finite_count() == 0);
    for (const auto& f : foci.foci) CHECK(f.at_infinity);
}

TEST_CASE("ellipsoid congruence: two distinct foci behind the surface") {
    FrameField field(minkowski_metric(4), ellipsoid_congruence_patch(1.0, 1.3, 1.7));
    Vec u(3);
    u << 0.3, 1.0, 0.7;
    ShapeData shape = shape_from_field(field.local(u), u);
    FocalSet foci = focal_points(shape, shape.frame);
    REQUIRE(foci.foci.size() == 2);
    CHECK(foci.total_multiplicity() == 2);
    for (int i = 0; i < 2; ++i) {
        const FocalEntry& f = foci.foci[i];
        CHECK_FALSE(f.at_infinity);
        CHECK(f.s == doctest::Approx(-1.0 / shape.eigenvalues[i]).epsilon(1e-10));
        CHECK(f.s < 0.0);  // foci lie behind the outward-fired congruence
        CHECK(f.jacobian_witness < 1e-8);
    }

    // regular segment: det(I + s lambda) keeps its sign before the first focus
    double nearest = std::max(foci.foci[0].s, foci.foci[1].s);  // negative, closest to 0
    for (int i = 1; i <= 100; ++i) {
        double s = nearest * (i / 101.0);
        double det = (Mat::Identity(2, 2) + s * shape.lambda_up).determinant();
        CHECK(det > 0.0);
    }
}

TEST_CASE("umbilical focus of the cone is the apex") {
    MetricField mink = minkowski_metric(4);
    FrameField field(mink, light_cone_patch(4));
    Vec u(3);
    u << 0.5, 1.0, 0.9;
    ShapeData shape = shape_from_field(field.local(u), u);
    Vec focus = umbilical_focus(shape, shape.frame);
    CHECK(focus.cwiseAbs().maxCoeff() < 1e-9);

    // totally geodesic input is rejected
    FrameField plane(mink, null_hyperplane_patch(4));
    Vec up(3);
    up << 0.1, 0.0, 0.2;
    ShapeData flat_shape = shape_from_field(plane.local(up), up);
    CHECK_THROWS_AS(umbilical_focus(flat_shape, flat_shape.frame), DegenerateInputError);
}

TEST_CASE("umbilical focus is stationary on constant-curvature cones") {
    // dF = (mu / lambda^2) omega^1 e1 vanishes identically when the isotropic
    // sectional curvature does; both cones below have mu = 0.
    for (const MetricField& m : {minkowski_metric(4), de_sitter_metric(4, 1.0)}) {
        FrameField field(m, light_cone_patch(4));
        Vec u(3);
        u << 0.5, 1.1, 0.7;
        LocalFrameField local = field.local(u);
        Mat df = umbilical_focus_differential(local, u);
        ShapeData shape = shape_from_field(local, u);
        // displacement along the screen directions
        for (int a = 0; a < 2; ++a) {
            Vec beta = local.parameter_direction(shape.frame.screen.col(a), u);
            CHECK((df * beta).cwiseAbs().maxCoeff() < 1e-5);
        }
        // for these cones the focus is fixed in every direction
        CHECK(df.cwiseAbs().maxCoeff() < 1e-5);
    }
}
