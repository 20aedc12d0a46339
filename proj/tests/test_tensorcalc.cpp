#include <doctest.h>

#include "nullsurf/catalog.hpp"
#include "nullsurf/tensorcalc.hpp"
#include "oracles.hpp"

using namespace nullsurf;

namespace {

Vec vec4(double a, double b, double c, double d) {
    Vec v(4);
    v << a, b, c, d;
    return v;
}

// Product chart (r, th, ph, t) with a unit 2-sphere block: known closed-form
// Christoffel symbol Gamma^th_{ph ph} = -sin th cos th.
MetricField sphere_block_metric() {
    auto comp = [](const Vec& x) {
        Mat g = Mat::Zero(4, 4);
        g(0, 0) = 1.0;
        g(1, 1) = 1.0;
        g(2, 2) = std::sin(x[1]) * std::sin(x[1]);
        g(3, 3) = -1.0;
        return g;
    };
    std::vector<std::pair<double, double>> bounds = {
        {-5.0, 5.0}, {0.2, M_PI - 0.2}, {-5.0, 5.0}, {-5.0, 5.0}};
    return MetricField(4, comp, bounds, "sphere_block");
}

}  // namespace

TEST_CASE("scalar product basics") {
    MetricField mink = minkowski_metric(4);
    Vec x = Vec::Zero(4);
    CHECK(scalar_product(mink, x, vec4(0, 0, 0, 1), vec4(0, 0, 0, 1)) == doctest::Approx(-1.0));
    CHECK(scalar_product(mink, x, Vec::Zero(4), vec4(1, 2, 3, 4)) == 0.0);
    // vector on the isotropic cone
    CHECK(scalar_product(mink, x, vec4(1, 0, 0, 1), vec4(1, 0, 0, 1)) == doctest::Approx(0.0));

    Vec outside = vec4(100.0, 0, 0, 0);
    CHECK_THROWS_AS(mink.eval(outside), ChartDomainError);
}

TEST_CASE("signature check") {
    MetricField mink = minkowski_metric(4);
    CHECK(mink.signature_ok(Vec::Zero(4)));
    MetricField ef = eddington_finkelstein_metric(1.0);
    CHECK(ef.signature_ok(vec4(0.0, 2.0, 1.2, 0.5)));  // horizon included

    auto euclid = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
    MetricField bad(4, euclid, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}, "euclid");
    CHECK_FALSE(bad.signature_ok(Vec::Zero(4)));
}

TEST_CASE("degenerate metric is rejected") {
    auto comp = [](const Vec&) {
        Mat g = Mat::Identity(4, 4);
        g(3, 3) = 0.0;
        return g;
    };
    MetricField m(4, comp, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}, "rank3");
    CHECK_THROWS_AS(m.inverse(Vec::Zero(4)), DegenerateMetricError);
}

TEST_CASE("christoffel: flat chart vanishes, symmetry exact") {
    MetricField mink = minkowski_metric(4);
    Tensor3 gamma = christoffel(mink, vec4(0.3, -0.2, 1.0, 0.4));
    CHECK(gamma.max_abs() == 0.0);

    std::mt19937_64 rng(7);
    for (const MetricField& m :
         {de_sitter_metric(4, 1.0).without_analytic_derivatives(),
          eddington_finkelstein_metric(1.0).without_analytic_derivatives()}) {
        for (int trial = 0; trial < 20; ++trial) {
            Vec x = oracles::random_point(rng, m, 0.1);
            if (m.name() == "eddington_finkelstein") x[1] = oracles::uniform(rng, 1.5, 6.0);
            Tensor3 g = christoffel(m, x);
            double asym = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        asym = std::max(asym, std::abs(g(i, j, k) - g(i, k, j)));
            CHECK(asym == 0.0);
            CHECK(metric_compatibility_residual(m, x) < 1e-6);
        }
    }
}

TEST_CASE("christoffel matches the conformal closed form") {
    std::mt19937_64 rng(11);
    for (double k : {1.0, -1.0}) {
        MetricField m = conformal_constant_curvature_metric(4, k, "cc");
        MetricField m_fd = m.without_analytic_derivatives();
        for (int trial = 0; trial < 10; ++trial) {
            Vec x = oracles::random_point(rng, m, 0.2);
            Tensor3 expected = oracles::conformal_christoffel(4, k, x);
            Tensor3 got = christoffel(m, x);
            Tensor3 got_fd = christoffel(m_fd, x);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int kk = 0; kk < 4; ++kk) {
                        CHECK(got(i, j, kk) == doctest::Approx(expected(i, j, kk)).epsilon(1e-10));
                        CHECK(got_fd(i, j, kk) ==
                              doctest::Approx(expected(i, j, kk)).epsilon(1e-7));
                    }
        }
    }
}

TEST_CASE("christoffel: embedded 2-sphere block") {
    MetricField m = sphere_block_metric();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Vec x = oracles::random_point(rng, m, 0.3);
        Tensor3 gamma = christoffel(m, x);
        CHECK(gamma(1, 2, 2) == doctest::Approx(-std::sin(x[1]) * std::cos(x[1])).epsilon(1e-8));
    }
}

TEST_CASE("riemann: flat chart vanishes") {
    CHECK(riemann(minkowski_metric(4), vec4(0.1, 0.2, 0.3, 0.4)).riemann_down.max_abs() == 0.0);
}

TEST_CASE("riemann matches the constant-curvature closed form") {
    std::mt19937_64 rng(13);
    for (double k : {1.0, -1.0}) {
        MetricField m = conformal_constant_curvature_metric(4, k, "cc");
        MetricField m_fd = m.without_analytic_derivatives();
        for (int trial = 0; trial < 10; ++trial) {
            Vec x = oracles::random_point(rng, m, 0.2);
            CurvatureTensor expected = constant_curvature_riemann(k, m, x);
            CurvatureTensor got = riemann(m, x);
            CurvatureTensor got_fd = riemann(m_fd, x);
            double scale = expected.riemann_down.max_abs();
            double err = 0.0, err_fd = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int kk = 0; kk < 4; ++kk)
                        for (int l = 0; l < 4; ++l) {
                            err = std::max(err, std::abs(got.riemann_down(i, j, kk, l) -
                                                         expected.riemann_down(i, j, kk, l)));
                            err_fd = std::max(err_fd, std::abs(got_fd.riemann_down(i, j, kk, l) -
                                                               expected.riemann_down(i, j, kk, l)));
                        }
            CHECK(err / scale < 1e-10);
            CHECK(err_fd / scale < 1e-5);
        }
    }
}

TEST_CASE("curvature symmetries on catalog metrics") {
    std::mt19937_64 rng(17);
    for (const MetricField& m : {minkowski_metric(4), de_sitter_metric(4, 1.0),
                                 anti_de_sitter_metric(4, -1.0), eddington_finkelstein_metric(1.0)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Vec x = oracles::random_point(rng, m, 0.1);
            if (m.name() == "eddington_finkelstein") x[1] = oracles::uniform(rng, 1.5, 6.0);
            CurvatureTensor curv = riemann(m, x);
            double scale = std::max(1.0, curv.riemann_down.max_abs());
            CHECK(curvature_symmetry_residual(curv) / scale < 1e-6);
        }
    }
}

TEST_CASE("constant_curvature_riemann closed-form properties") {
    MetricField mink = minkowski_metric(4);
    Vec x = Vec::Zero(4);

    CHECK(constant_curvature_riemann(0.0, mink, x).riemann_down.max_abs() == 0.0);

    CurvatureTensor unit = constant_curvature_riemann(1.0, mink, x);
    // orthonormal spacelike axes 1, 2 (0-based 0, 1): R_1221 = -1
    CHECK(unit.riemann_down(0, 1, 1, 0) == doctest::Approx(-1.0));
    CHECK(curvature_symmetry_residual(unit) == 0.0);
}
