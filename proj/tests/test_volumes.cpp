#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grushin/quadrature.hpp"
#include "grushin/util.hpp"
#include "grushin/volumes.hpp"

using namespace grushin;

TEST_CASE("box volume closed form") {
    GrushinParams p = validate_params(0.5, 9);
    // exponent (n+1)/2 - 2a = 4; 2*1*(1^4 - 0)/4 = 1/2
    CHECK(box_volume(p, 0.0, 1.0).value == doctest::Approx(0.5));
    CHECK(box_volume(p, 1.0, 0.0).value == 0.0);
    CHECK(box_volume(p, 0.0, 1.0).error_estimate == 0.0);

    // far-field normalization: value / (4 c s^{2+2a} r0^{(n-1)/2-2a}) -> 1
    double r0 = 80.0, s = 0.5;
    double norm = 4.0 * p.c_m * std::pow(s, 2.0 + 2.0 * p.alpha) *
                  std::pow(r0, 0.5 * (p.n - 1) - 2.0 * p.alpha);
    CHECK(box_volume(p, r0, s).value / norm ==
          doctest::Approx(1.0).epsilon(3.0 * s / r0));
}

TEST_CASE("box volume vs direct quadrature of the density") {
    GrushinParams p = validate_params(0.75, 16);
    double r0 = 1.3, s = 0.6;
    double direct = integrate(
                        [&](double r) { return measure_density(p, r); },
                        r0 - s, r0 + s, 1e-12) *
                    2.0 * std::pow(s, 1.0 + 2.0 * p.alpha);
    CHECK(box_volume(p, r0, s).value == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("ball volume: bracket away from the axis") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    VolumeResult vr = ball_volume(p, Point{10.0, 0.0}, 0.1, opts);
    double lo = M_PI * 0.01 * std::pow(9.9, 4);
    double hi = M_PI * 0.01 * std::pow(10.1, 4);
    CHECK(vr.value >= lo - vr.error_estimate);
    CHECK(vr.value <= hi + vr.error_estimate);
    CHECK(vr.method == VolumeMethod::QuadratureOverDistanceField);
}

TEST_CASE("ball volume: v-translation invariance") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    opts.refine = false;
    double a = ball_volume(p, Point{2.0, 0.0}, 0.3, opts).value;
    double b = ball_volume(p, Point{2.0, 7.0}, 0.3, opts).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("axis ball scaling: s -> 2s multiplies measure by 2^{(n+3)/2}") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    VolumeResult v1 = ball_volume(p, Point{0.0, 0.0}, 1.0, opts);
    VolumeResult v2 = ball_volume(p, Point{0.0, 0.0}, 2.0, opts);
    CHECK(v2.value / v1.value == doctest::Approx(64.0).epsilon(0.03));
}

TEST_CASE("ball dilation scaling off the axis") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    double lam = 2.0;
    VolumeResult v1 = ball_volume(p, Point{1.0, 0.0}, 0.25, opts);
    VolumeResult v2 =
        ball_volume(p, dilate(p, Point{1.0, 0.0}, lam), lam * 0.25, opts);
    double expect = std::pow(lam, 0.5 * (p.n + 3));
    double tol = 0.03 + (v1.error_estimate / v1.value +
                         v2.error_estimate / v2.value);
    CHECK(v2.value / v1.value == doctest::Approx(expect).epsilon(tol));
}

TEST_CASE("f ratio: asymptote, axis value, refinement stability") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    double f100 = f_ratio(p, 100.0, opts);
    CHECK(f100 * M_PI / (4.0 * 0.01) == doctest::Approx(1.0).epsilon(0.05));
    double f0 = f_ratio(p, 0.0, opts);
    CHECK(f0 > 0.0);
    BallQuadratureOptions fine = opts;
    fine.nr = 2 * opts.nr - 1;
    fine.nv = 2 * opts.nv - 1;
    double f0f = f_ratio(p, 0.0, fine);
    CHECK(std::abs(f0f - f0) <= 0.02 * f0);
}

TEST_CASE("G(tau): small-tau limit and reconstruction identity") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    double G001 = G_of_tau(p, 0.01, opts);
    CHECK(G001 == doctest::Approx(4.0 / M_PI / 8.0).epsilon(0.05));

    // 1/m(B_s(x)) = C^{-1} s^{-1-2a} r0^{-(n+1)/2+2a} G(s/r0)
    double r0 = 2.0, s = 0.2;
    double C = 4.0 * p.c_m / (p.n + 1 - 4.0 * p.alpha);
    VolumeResult ball = ball_volume(p, Point{r0, 0.0}, s, opts);
    double lhs = 1.0 / ball.value;
    double rhs = (1.0 / C) * std::pow(s, -2.0) * std::pow(r0, -4.0) *
                 G_of_tau(p, s / r0, opts);
    CHECK(lhs == doctest::Approx(rhs)
                     .epsilon(0.02 + 2.0 * ball.error_estimate / ball.value));
}

TEST_CASE("G stays bounded across the table") {
    GrushinParams p = validate_params(0.5, 9);
    BallQuadratureOptions opts;
    opts.refine = false;
    RatioTable t = build_ratio_table(p, 0.02, 20.0, 9, 2, opts);
    for (double g : t.G) {
        CHECK(std::isfinite(g));
        CHECK(g > 0.0);
        CHECK(g < 1.0);
    }
    // f continuity: adjacent entries change by O(grid step)
    for (std::size_t i = 1; i < t.f.size(); ++i)
        CHECK(std::abs(t.f[i] - t.f[i - 1]) <=
              0.8 * std::max(t.f[i], t.f[i - 1]));
}

TEST_CASE("snowflake hausdorff measure of the axis") {
    GrushinParams p = validate_params(0.5, 9);
    // brute-force covering oracle: uniform arcs, diameter convention
    auto covering = [](double k, double C, double L, int m) {
        double arc = L / m;
        double diam = C * std::pow(arc, 1.0 / k);
        return m * unit_ball_volume(k) * std::pow(0.5 * diam, k);
    };
    double ref = covering(2.0, 1.0, 1.0, 16);
    CHECK(covering(2.0, 1.0, 1.0, 1024) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(ref == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    CHECK(hausdorff_measure_singular(p, 2.0, 1.0, 1.0) ==
          doctest::Approx(M_PI / 4.0));
    // additivity and metric scaling
    CHECK(hausdorff_measure_singular(p, 2.0, 1.0, 2.0) ==
          doctest::Approx(M_PI / 2.0));
    CHECK(hausdorff_measure_singular(p, 2.0, 2.0, 1.0) ==
          doctest::Approx(M_PI));
    // fractional dimension uses the Gamma-extended ball constant
    double k = 1.0 + 2.0 * p.alpha;
    CHECK(hausdorff_measure_singular(p, k, 1.0, 1.0) ==
          doctest::Approx(unit_ball_volume(k) * std::pow(0.5, k)));
}

TEST_CASE("unweighted area integral diverges iff alpha >= 1/2") {
    // quadrature of r^{-2a} on [eps, 1]
    auto area = [](double alpha, double eps) {
        return integrate([&](double r) { return std::pow(r, -2.0 * alpha); },
                         eps, 1.0, 1e-10, 48);
    };
    double a1 = area(0.5, 1e-2), a2 = area(0.5, 1e-4), a3 = area(0.5, 1e-6);
    CHECK(a2 - a1 == doctest::Approx(std::log(100.0)).epsilon(1e-4));
    CHECK(a3 - a2 == doctest::Approx(std::log(100.0)).epsilon(1e-4));
    // alpha < 1/2: increasing but bounded by the limit 1/(1-2a)
    double b1 = area(0.25, 1e-4), b2 = area(0.25, 1e-8);
    CHECK(b2 > b1);
    CHECK(b2 <= 2.0 + 1e-6);
    CHECK(b2 == doctest::Approx(2.0).epsilon(1e-3));
}
