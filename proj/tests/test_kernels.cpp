#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "grushin/util.hpp"
#include "kernels.hpp"

using namespace grushin;
namespace K = grushin::kernels;

namespace {
std::vector<double> sorted_lambdas(std::size_t n, double max, Lcg& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(0.0, max);
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

TEST_CASE("backend detection is consistent") {
    K::Backend b = K::detected_backend();
    if (K::avx2_available())
        CHECK(b == K::Backend::Avx2);
    else
        CHECK(b == K::Backend::Scalar);
    CHECK(std::string(K::backend_name(K::Backend::Scalar)) == "scalar");
}

TEST_CASE("exp_weighted_sum matches a long-double reference") {
    Lcg rng(123);
    for (double t : {0.0, 1e-4, 0.03, 1.0, 40.0}) {
        auto lam = sorted_lambdas(1000, 500.0, rng);
        std::vector<double> w(lam.size());
        for (auto& x : w) x = rng.uniform(0.1, 3.0);
        long double ref = 0.0L;
        for (std::size_t i = 0; i < lam.size(); ++i)
            ref += static_cast<long double>(w[i]) *
                   std::exp(static_cast<long double>(-lam[i] * t));
        double s = K::exp_weighted_sum(lam, w, t, K::Backend::Scalar);
        CHECK(std::abs(s - static_cast<double>(ref)) <=
              1e-12 * static_cast<double>(ref));
        if (K::avx2_available()) {
            double a = K::exp_weighted_sum(lam, w, t, K::Backend::Avx2);
            CHECK(std::abs(a - s) <= 1e-13 * std::max(1.0, std::abs(s)));
        }
    }
}

TEST_CASE("exp_weighted_sum honors the underflow cutoff") {
    std::vector<double> lam = {1.0, 2.0, 1e6};
    std::vector<double> w = {1.0, 1.0, 1.0};
    double s = K::exp_weighted_sum(lam, w, 1.0, K::Backend::Scalar);
    CHECK(s == doctest::Approx(std::exp(-1.0) + std::exp(-2.0)));
}

TEST_CASE("sum_where_below: scalar and avx2 agree bitwise") {
    Lcg rng(77);
    std::vector<double> v(1537), w(1537);
    for (auto& x : v) x = rng.uniform(0.0, 1.0);
    for (auto& x : w) x = rng.uniform(0.0, 2.0);
    for (double thr : {0.0, 0.25, 0.5, 1.5}) {
        double s = K::sum_where_below(v, w, thr, K::Backend::Scalar);
        if (K::avx2_available()) {
            double a = K::sum_where_below(v, w, thr, K::Backend::Avx2);
            CHECK(a == s);
        }
        // reference
        double ref = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < thr) ref += w[i];
        CHECK(s == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("sturm counts: exact equality across backends, monotone in x") {
    Lcg rng(987);
    std::size_t n = 800;
    std::vector<double> d(n), e(n - 1), e2(n - 1);
    for (auto& x : d) x = rng.uniform(-2.0, 8.0);
    for (auto& x : e) x = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = e[i] * e[i];
    double pivmin = 1e-300;

    std::vector<double> xs;
    for (int i = 0; i <= 64; ++i) xs.push_back(-3.0 + 0.2 * i);
    std::vector<int> cs(xs.size()), ca(xs.size());
    K::sturm_counts(d, e2, xs, cs, pivmin, K::Backend::Scalar);
    if (K::avx2_available()) {
        K::sturm_counts(d, e2, xs, ca, pivmin, K::Backend::Avx2);
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(ca[i] == cs[i]);
    }
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(cs[i] >= cs[i - 1]);
    // all eigenvalues live within the Gershgorin disc union
    std::vector<double> hi = {1e6};
    std::vector<int> cnt(1);
    K::sturm_counts(d, e2, hi, cnt, pivmin, K::Backend::Scalar);
    CHECK(cnt[0] == static_cast<int>(n));
}

TEST_CASE("sturm counts recover known 1-D Laplacian eigenvalue positions") {
    // -u'' on n interior points: lambda_j = 4 sin^2(j pi / (2(n+1))) / h^2
    std::size_t n = 50;
    double h = 1.0 / (n + 1);
    std::vector<double> d(n, 2.0 / (h * h)), e2(n - 1, 1.0 / (h * h * h * h));
    double lam3 = 4.0 / (h * h) * std::pow(std::sin(3 * M_PI * h / 2.0), 2);
    std::vector<double> xs = {lam3 - 1e-6, lam3 + 1e-6};
    std::vector<int> cnt(2);
    K::sturm_counts(d, e2, xs, cnt, 1e-300);
    CHECK(cnt[0] == 2);
    CHECK(cnt[1] == 3);
}
