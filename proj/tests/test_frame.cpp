#include <doctest.h>

#include <cstring>

#include "nullsurf/catalog.hpp"
#include "nullsurf/framefield.hpp"
#include "oracles.hpp"

using namespace nullsurf;

namespace {

GaugeTransform random_gauge(std::mt19937_64& rng, int m) {
    GaugeTransform g = GaugeTransform::identity(m);
    g.c = oracles::uniform(rng, 0.4, 2.5);
    for (int i = 0; i < m; ++i) {
        g.t[i] = oracles::uniform(rng, -1.0, 1.0);
        for (int j = 0; j < m; ++j) g.A(i, j) += oracles::uniform(rng, -0.3, 0.3);
    }
    return g;
}

Mat null_hyperplane_tangent() {
    Mat t = Mat::Zero(4, 3);
    t.col(0) << 1, 0, 0, 1;
    t.col(1) << 0, 1, 0, 0;
    t.col(2) << 0, 0, 1, 0;
    return t;
}

}  // namespace

TEST_CASE("build_isotropic_frame on the null hyperplane") {
    MetricField mink = minkowski_metric(4);
    Vec x = Vec::Zero(4);
    IsotropicFrame f = build_isotropic_frame(mink, x, null_hyperplane_tangent());

    Vec e1_expected(4), en_expected(4);
    e1_expected << 1, 0, 0, 1;
    en_expected << -0.5, 0, 0, 0.5;
    CHECK((f.e1 - e1_expected).norm() < 1e-14);
    CHECK((f.en - en_expected).norm() < 1e-12);
    CHECK((f.screen.col(0) - oracles::vec4(0, 1, 0, 0)).norm() < 1e-14);
    CHECK((f.screen.col(1) - oracles::vec4(0, 0, 1, 0)).norm() < 1e-14);
    CHECK(f.validity_residual(mink) < 1e-12);
    CHECK(f.screen_positive_definite(mink));
}

TEST_CASE("build_isotropic_frame rejects non-lightlike input") {
    MetricField mink = minkowski_metric(4);
    Mat spacelike = Mat::Zero(4, 3);
    spacelike(0, 0) = spacelike(1, 1) = spacelike(2, 2) = 1.0;
    CHECK_THROWS_AS(build_isotropic_frame(mink, Vec::Zero(4), spacelike), NotLightlikeError);
}

TEST_CASE("build_isotropic_frame is deterministic") {
    MetricField ds = de_sitter_metric(4, 1.0);
    HypersurfacePatch cone = light_cone_patch(4);
    Vec u(3);
    u << 0.5, 1.0, 0.7;
    Vec x = cone.eval(u);
    Mat t = cone.jacobian(u);
    IsotropicFrame a = build_isotropic_frame(ds, x, t);
    IsotropicFrame b = build_isotropic_frame(ds, x, t);
    CHECK(std::memcmp(a.e1.data(), b.e1.data(), sizeof(double) * 4) == 0);
    CHECK(std::memcmp(a.en.data(), b.en.data(), sizeof(double) * 4) == 0);
    CHECK(std::memcmp(a.screen.data(), b.screen.data(), sizeof(double) * 8) == 0);
}

TEST_CASE("frame validity on catalog surfaces") {
    struct Case {
        MetricField metric;
        HypersurfacePatch patch;
        Vec u;
    };
    Vec u_cone(3), u_ell(3), u_hor(3), u_plane(3);
    u_cone << 0.5, 1.1, 0.8;
    u_ell << 0.3, 1.0, 0.6;
    u_hor << 0.2, 1.3, 0.7;
    u_plane << 0.1, -0.2, 0.3;
    std::vector<Case> cases;
    cases.push_back({minkowski_metric(4), light_cone_patch(4), u_cone});
    cases.push_back({minkowski_metric(4), null_hyperplane_patch(4), u_plane});
    cases.push_back({minkowski_metric(4), ellipsoid_congruence_patch(1.0, 1.3, 1.7), u_ell});
    cases.push_back({de_sitter_metric(4, 1.0), light_cone_patch(4), u_cone});
    cases.push_back({eddington_finkelstein_metric(1.0), schwarzschild_horizon_patch(1.0), u_hor});

    std::mt19937_64 rng(23);
    for (const auto& c : cases) {
        Vec x = c.patch.eval(c.u);
        IsotropicFrame f = build_isotropic_frame(c.metric, x, c.patch.jacobian(c.u));
        CHECK(f.validity_residual(c.metric) < 1e-10);
        // adapted parameterizations keep the generator velocity as e1
        CHECK((f.e1 - c.patch.jacobian(c.u).col(0)).norm() < 1e-12);

        for (int trial = 0; trial < 100; ++trial) {
            IsotropicFrame g = apply_gauge(c.metric, f, random_gauge(rng, 2));
            CHECK(g.validity_residual(c.metric) < 1e-10);
            CHECK(g.screen_positive_definite(c.metric));
        }
    }
}

TEST_CASE("apply_gauge basics") {
    MetricField mink = minkowski_metric(4);
    IsotropicFrame f = build_isotropic_frame(mink, Vec::Zero(4), null_hyperplane_tangent());

    IsotropicFrame id = apply_gauge(mink, f, GaugeTransform::identity(2));
    CHECK((id.basis_matrix() - f.basis_matrix()).norm() == 0.0);

    IsotropicFrame doubled = apply_gauge(mink, f, GaugeTransform::rescale(2.0, 2));
    CHECK(doubled.e1.dot(mink.eval(f.point) * doubled.en) == doctest::Approx(-1.0));
    CHECK((doubled.e1 - 2.0 * f.e1).norm() == 0.0);

    GaugeTransform bad = GaugeTransform::identity(2);
    bad.c = 0.0;
    CHECK_THROWS_AS(apply_gauge(mink, f, bad), InvalidGaugeError);
    GaugeTransform singular = GaugeTransform::identity(2);
    singular.A(0, 0) = 0.0;
    singular.A(0, 1) = 0.0;
    CHECK_THROWS_AS(apply_gauge(mink, f, singular), InvalidGaugeError);
}

TEST_CASE("gauge_between recovers a random gauge") {
    MetricField mink = minkowski_metric(4);
    IsotropicFrame f = build_isotropic_frame(mink, Vec::Zero(4), null_hyperplane_tangent());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        GaugeTransform g = random_gauge(rng, 2);
        IsotropicFrame target = apply_gauge(mink, f, g);
        GaugeTransform rec = gauge_between(mink, f, target);
        IsotropicFrame redone = apply_gauge(mink, f, rec);
        CHECK((redone.basis_matrix() - target.basis_matrix()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("connection forms vanish for a parallel flat frame field") {
    FrameField field(minkowski_metric(4), null_hyperplane_patch(4));
    Vec u(3);
    u << 0.1, -0.2, 0.05;
    LocalFrameField local = field.local(u);
    for (int k = 0; k < 3; ++k)
        CHECK(local.connection_forms(k, u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("connection forms satisfy the adapted-frame relations") {
    struct Case {
        MetricField metric;
        HypersurfacePatch patch;
        Vec u;
    };
    Vec u_cone(3), u_ell(3);
    u_cone << 0.5, 1.1, 0.8;
    u_ell << 0.3, 1.0, 0.6;
    std::vector<Case> cases;
    cases.push_back({minkowski_metric(4), light_cone_patch(4), u_cone});
    cases.push_back({minkowski_metric(4), ellipsoid_congruence_patch(1.0, 1.3, 1.7), u_ell});
    cases.push_back({de_sitter_metric(4, 1.0), light_cone_patch(4), u_cone});

    for (const auto& c : cases) {
        FrameField field(c.metric, c.patch);
        LocalFrameField local = field.local(c.u);
        Mat gram = local.center_frame().screen_gram(c.metric);
        for (int k = 0; k < 3; ++k) {
            Mat w = local.connection_forms(k, c.u);
            CHECK(std::abs(w(3, 0)) < 1e-6);            // omega^n_1
            CHECK(std::abs(w(0, 3)) < 1e-6);            // omega^1_n
            CHECK(std::abs(w(0, 0) + w(3, 3)) < 1e-6);  // omega^1_1 + omega^n_n
            for (int a = 0; a < 2; ++a) {
                double lhs_n = w(3, 1 + a);
                double rhs_n = gram(a, 0) * w(1, 0) + gram(a, 1) * w(2, 0);
                CHECK(lhs_n == doctest::Approx(rhs_n).epsilon(1e-6).scale(1.0));
                double lhs_1 = w(0, 1 + a);
                double rhs_1 = gram(a, 0) * w(1, 3) + gram(a, 1) * w(2, 3);
                CHECK(lhs_1 == doctest::Approx(rhs_1).epsilon(1e-6).scale(1.0));
            }
        }
        CHECK(local.coframe_residual(c.u) < 1e-9);
    }
}

TEST_CASE("omega^1_1 picks up d(ln c) under a conformal gauge field") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    Vec u(3);
    u << 0.6, 1.0, 0.9;

    FrameField base(mink, cone);
    auto gauge = [](const Vec& v) {
        return GaugeTransform::rescale(std::exp(0.3 * v[0] + 0.1 * v[1]), 2);
    };
    FrameField gauged(mink, cone, gauge);

    LocalFrameField lb = base.local(u);
    LocalFrameField lg = gauged.local(u);
    Vec expected(3);
    expected << 0.3, 0.1, 0.0;  // d ln c on the coordinate directions
    for (int k = 0; k < 3; ++k) {
        double before = lb.connection_forms(k, u)(0, 0);
        double after = lg.connection_forms(k, u)(0, 0);
        CHECK(after - before == doctest::Approx(expected[k]).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("connection_form_values on an ambient direction") {
    MetricField mink = minkowski_metric(4);
    HypersurfacePatch cone = light_cone_patch(4);
    Vec u(3);
    u << 0.5, 1.2, 0.4;
    FrameField field(mink, cone);
    LocalFrameField local = field.local(u);
    ShapeData shape = shape_from_field(local, u);

    // omega^n_a(e_b) equals lambda_ab measured independently
    for (int b = 0; b < 2; ++b) {
        Mat w = connection_form_values(local, local.center_frame().screen.col(b));
        for (int a = 0; a < 2; ++a)
            CHECK(w(3, 1 + a) == doctest::Approx(shape.lambda_ab(a, b)).epsilon(1e-8).scale(1.0));
    }
}
