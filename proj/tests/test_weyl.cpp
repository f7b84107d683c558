#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grushin/synthetic.hpp"
#include "grushin/weyl.hpp"

using namespace grushin;

TEST_CASE("regular oracle values") {
    CHECK(regular_weyl_oracle(1, M_PI) == doctest::Approx(1.0));
    CHECK(regular_weyl_oracle(2, 4.0 * M_PI * M_PI) ==
          doctest::Approx(M_PI));
    CHECK(regular_weyl_oracle(2, 1.0) == doctest::Approx(1.0 / (4.0 * M_PI)));
}

TEST_CASE("flat Neumann interval reproduces the 1-D law") {
    // explicit cosine spectrum on [0, L]: lambda_m = (pi m / L)^2
    double L = 1.0;
    auto N = [&](double lam) {
        return std::floor(L * std::sqrt(std::max(0.0, lam)) / M_PI) + 1.0;
    };
    FitResult fr = weyl_fit(N, 1e6, WeylLaw::Regular, 1.0);
    CHECK(fr.plateau_ok);
    CHECK(fr.leading_coefficient ==
          doctest::Approx(L / M_PI).epsilon(0.02));
    // matches the oracle with vol = L (weighted interval: the weight
    // cancels between measure and operator)
    CHECK(regular_weyl_oracle(1, L) == doctest::Approx(L / M_PI));
}

TEST_CASE("flat torus lattice count reproduces the 2-D law") {
    // lambda_{jk} = j^2 + k^2 on the square torus of area 4 pi^2
    auto N = [&](double lam) {
        long total = 0;
        long J = static_cast<long>(std::sqrt(lam));
        for (long j = -J; j <= J; ++j) {
            double rem = lam - static_cast<double>(j) * j;
            total += 2 * static_cast<long>(std::sqrt(rem)) + 1;
        }
        return static_cast<double>(total);
    };
    FitResult fr = weyl_fit(N, 1e6, WeylLaw::Regular, 2.0);
    CHECK(fr.plateau_ok);
    double expect = regular_weyl_oracle(2, 4.0 * M_PI * M_PI);
    CHECK(fr.leading_coefficient == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("ideal divisor spectrum: log fit converges to 1/2") {
    DivisorSpectrum ideal(250000);
    auto N = [&](double l) { return static_cast<double>(ideal.counting(l)); };
    FitResult fr = weyl_fit(N, ideal.lambda_max(), WeylLaw::LogCorrected, 2.0);
    CHECK(fr.plateau_ok);
    CHECK(fr.leading_coefficient == doctest::Approx(0.5).epsilon(0.05));
    // the b*lambda term is genuinely negative here (the -log 4 shift)
    CHECK(fr.second_coefficient < 0.0);
}

TEST_CASE("cross-law exclusion on synthetic spectra") {
    // lambda log lambda data: the power-law (k = 2) fit must not plateau
    DivisorSpectrum ideal(250000);
    auto Nlog = [&](double l) {
        return static_cast<double>(ideal.counting(l));
    };
    FitResult power_on_log =
        weyl_fit(Nlog, ideal.lambda_max(), WeylLaw::Power, 2.0);
    CHECK_FALSE(power_on_log.plateau_ok);

    // pure power data with k = 2.5: power fit plateaus, log fit drifts
    PowerLawSpectrum ps(2.5);
    auto Npow = [&](double l) { return ps.counting(l); };
    FitResult power_on_power = weyl_fit(Npow, 1e6, WeylLaw::Power, 2.5);
    CHECK(power_on_power.plateau_ok);
    CHECK(power_on_power.leading_coefficient ==
          doctest::Approx(1.0).epsilon(0.02));
    FitResult log_on_power = weyl_fit(Npow, 1e6, WeylLaw::LogCorrected, 2.0);
    CHECK_FALSE(log_on_power.plateau_ok);
}

TEST_CASE("fit stability: shrinking the window top is within the residual") {
    PowerLawSpectrum ps(2.5);
    auto N = [&](double l) { return ps.counting(l); };
    WeylFitOptions o;
    FitResult a = weyl_fit(N, 1e6, WeylLaw::Power, 2.5, o);
    FitResult b = weyl_fit(N, 0.8e6, WeylLaw::Power, 2.5, o);
    CHECK(std::abs(b.leading_coefficient - a.leading_coefficient) <=
          a.residual + 1e-12);
}

TEST_CASE("localized counts: limits and monotonicity") {
    GrushinParams p = validate_params(0.5, 9);
    SpectrumOptions so;
    so.grid.nodes = 601;
    so.with_vectors = true;
    so.workers = 2;
    ModalBasis basis = assemble_modal_basis(p, Space::Xdouble, 60.0, so);
    Spectrum spec = basis.spectrum();
    double lam = 50.0;
    // empty region: every eigenpair counts
    CHECK(localized_count(basis, 1.0, 0.5, 0.5, lam) == spec.counting(lam));
    // eps near 1: vacuous condition
    CHECK(localized_count(basis, 0.0, 0.25, 0.999, lam) ==
          spec.counting(lam));
    // monotone in lambda and eps, antitone in the region
    long m1 = localized_count(basis, 0.0, 0.25, 0.5, 30.0);
    long m2 = localized_count(basis, 0.0, 0.25, 0.5, 50.0);
    CHECK(m1 <= m2);
    long e1 = localized_count(basis, 0.0, 0.25, 0.3, 50.0);
    long e2 = localized_count(basis, 0.0, 0.25, 0.7, 50.0);
    CHECK(e1 <= e2);
    long a1 = localized_count(basis, 0.0, 0.5, 0.5, 50.0);
    CHECK(a1 <= m2);
    CHECK_THROWS_AS(localized_count(basis, 0.0, 0.25, 0.0, 50.0),
                    InvalidParameter);
}
