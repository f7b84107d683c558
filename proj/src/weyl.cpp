#include "grushin/weyl.hpp"

#include <cmath>

namespace grushin {

const char* weyl_law_name(WeylLaw law) {
    switch (law) {
        case WeylLaw::Power: return "power";
        case WeylLaw::LogCorrected: return "log_corrected";
        case WeylLaw::Regular: return "regular";
    }
    return "?";
}

FitResult weyl_fit(const std::function<double(double)>& N, double lambda_top,
                   WeylLaw law, double exponent, const WeylFitOptions& opts) {
    if (!(lambda_top > 0.0)) throw InvalidParameter("lambda_top must be > 0");
    FitResult out;
    out.law = law;
    out.exponent = exponent;
    out.window_hi = lambda_top * (1.0 - opts.top_exclude);
    out.window_lo = out.window_hi * opts.window_lo_frac;
    std::vector<double> ls = logspace(out.window_lo, out.window_hi,
                                      opts.samples);

    if (law == WeylLaw::Power || law == WeylLaw::Regular) {
        double p = 0.5 * exponent;
        std::vector<double> y(ls.size());
        double mn = HUGE_VAL, mx = -HUGE_VAL, mean = 0.0;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            y[i] = N(ls[i]) / std::pow(ls[i], p);
            mn = std::min(mn, y[i]);
            mx = std::max(mx, y[i]);
            mean += y[i];
        }
        mean /= y.size();
        out.leading_coefficient = mean;
        out.window_variation = (mx - mn) / std::max(1e-300, std::abs(mean));
        out.residual = mx - mn;
        out.plateau_ok = out.window_variation <= opts.plateau_tol_power;
    } else {
        // N/lambda = a log lambda + b, fitted on three nested windows
        auto fit_on = [&](double hi) {
            std::vector<double> lw =
                logspace(out.window_lo, hi, opts.samples);
            std::vector<double> y(lw.size());
            for (std::size_t i = 0; i < lw.size(); ++i)
                y[i] = N(lw[i]) / lw[i];
            return fit_linear(lw, y,
                              {[](double l) { return std::log(l); },
                               [](double) { return 1.0; }});
        };
        LinearFit f0 = fit_on(out.window_hi);
        LinearFit f1 = fit_on(0.8 * out.window_hi);
        LinearFit f2 = fit_on(0.64 * out.window_hi);
        out.leading_coefficient = f0.coeffs[0];
        out.second_coefficient = f0.coeffs[1];
        out.residual = f0.residual_rms;
        double drift = std::max(std::abs(f1.coeffs[0] - f0.coeffs[0]),
                                std::abs(f2.coeffs[0] - f0.coeffs[0]));
        out.window_variation = drift / std::max(1e-300,
                                                std::abs(f0.coeffs[0]));
        out.plateau_ok = out.window_variation <= opts.plateau_tol_log;
    }
    if (!out.plateau_ok && opts.throw_on_no_plateau)
        throw NoPlateau("no plateau in the fit window");
    return out;
}

FitResult weyl_fit(const Spectrum& spec, WeylLaw law, double exponent,
                   const WeylFitOptions& opts) {
    auto N = [&](double l) {
        return static_cast<double>(spec.counting(l));
    };
    return weyl_fit(N, spec.lambda_max, law, exponent, opts);
}

double regular_weyl_oracle(int n, double volume) {
    if (n < 1) throw InvalidParameter("dimension must be >= 1");
    return unit_ball_volume(n) * std::pow(kTwoPi, -n) * volume;
}

long localized_count(const ModalBasis& basis, double a_r_lo, double a_r_hi,
                     double eps, double lambda) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw InvalidParameter("eps must be in (0,1)");
    long count = 0;
    for (std::size_t j = 0; j < basis.modes.size(); ++j) {
        const Mode& m = basis.modes[j];
        if (m.lambda > lambda) break;
        if (eigenfunction_mass_outside(basis, j, a_r_lo, a_r_hi) >=
            1.0 - eps)
            count += m.mult;
    }
    return count;
}

}  // namespace grushin
