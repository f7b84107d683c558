#pragma once

#include <functional>

#include "grushin/spectrum.hpp"
#include "grushin/util.hpp"

namespace grushin {

enum class WeylLaw { Power, LogCorrected, Regular };

const char* weyl_law_name(WeylLaw law);

struct WeylFitOptions {
    int samples = 48;
    double window_lo_frac = 0.1;  // window bottom as a fraction of the top
    double top_exclude = 0.1;     // drop this fraction of lambda_max
    double plateau_tol_power = 0.15;  // window variation of N/lambda^{k/2}
    double plateau_tol_log = 0.03;    // slope drift under window shrink
    bool throw_on_no_plateau = false;
};

struct FitResult {
    WeylLaw law = WeylLaw::Power;
    double exponent = 0.0;            // k for power, n for regular
    double leading_coefficient = 0.0; // power: lim N/l^{k/2}; log: a
    double second_coefficient = 0.0;  // log law: b of the b*lambda term
    double window_lo = 0.0, window_hi = 0.0;
    double residual = 0.0;
    double window_variation = 0.0;
    bool plateau_ok = false;
};

/// Windowed asymptotic-law fit of a counting function.
/// Power law: windowed estimate of N/lambda^{k/2} with plateau criterion.
/// Log law: least squares N = a lambda log lambda + b lambda; a must be
/// stable under shrinking the window top.
FitResult weyl_fit(const std::function<double(double)>& N, double lambda_top,
                   WeylLaw law, double exponent,
                   const WeylFitOptions& opts = {});

FitResult weyl_fit(const Spectrum& spec, WeylLaw law, double exponent,
                   const WeylFitOptions& opts = {});

/// omega_n (2 pi)^{-n} * volume.
double regular_weyl_oracle(int n, double volume);

/// m_{A,eps}(lambda): number of eigenpairs with lambda_j <= lambda keeping
/// at least (1-eps) of their mass outside A = {r_lo <= r <= r_hi}.
long localized_count(const ModalBasis& basis, double a_r_lo, double a_r_hi,
                     double eps, double lambda);

}  // namespace grushin
