#pragma once

#include <functional>

#include "grushin/spectrum.hpp"
#include "grushin/volumes.hpp"

namespace grushin {

struct TraceSeries {
    std::vector<double> t;  // decreasing
    std::vector<double> Z;
    std::vector<double> truncation_error;
};

/// Smallest time resolvable by a spectrum truncated at lambda_max
/// (tail factor e^{-25}).
inline double t_min_for(double lambda_max) { return 25.0 / lambda_max; }

/// Multiplicity-weighted exponential sums Z(t) = sum mult e^{-lambda t}
/// with a spectral-tail error bound per sample. Throws TailDominates for
/// t below t_min_for(lambda_max).
TraceSeries heat_trace(const Spectrum& spec, std::vector<double> t_values);

/// On-diagonal kernel and partial traces from a modal basis.
class DiagonalKernel {
  public:
    explicit DiagonalKernel(const ModalBasis& basis);

    /// H(x,x,t) at x = (r, anything); angular normalization folded in.
    double at(double r, double t) const;
    /// Trace over the whole space: sum mult e^{-lambda t}.
    double trace(double t) const;
    /// Radial mass weights mult * int_{r<=r2} phi^2 dm for box traces.
    std::vector<double> box_weights(double r2) const;
    /// sum_j w_j e^{-lambda_j t} / period * (v2-v1): the box trace
    /// int_{v1}^{v2} int_0^{r2} H(x,x,t) dm given w = box_weights(r2).
    double box_trace(const std::vector<double>& w, double v1, double v2,
                     double t) const;

    const ModalBasis& basis() const { return *basis_; }

  private:
    const ModalBasis* basis_;
    std::vector<double> lam_;                 // ascending
    std::vector<const Mode*> modes_;          // aligned with lam_
};

struct HTableOptions {
    double tau_min = 0.03;
    double tau_max = 3.0;
    int count = 17;
    double wrap_safety = 7.4;  // s <= d_wrap / safety keeps e^{-d^2/6s^2} tiny
    double s_cap = 0.42;
    int grid_nodes = 1100;     // base radial nodes (Richardson doubles)
    int workers = 2;
    BallQuadratureOptions ball;
};

/// The scale-invariant diagonal quantity h(r,s) = m(B_s(x)) H(x,x,s^2),
/// tabulated against tau = s/r by transporting each tau along its scaling
/// orbit to a representative where the modal expansion of the quotient
/// cylinder resolves it and the covering correction is negligible.
struct HFunctionTable {
    std::vector<double> tau;
    std::vector<double> h;
    std::vector<double> r_eval, s_eval;  // the representatives used
    double axis_value = 0.0;             // h(0,s), s-independent
    double bound_lower = 0.0, bound_upper = 0.0;
    double wrap_bound = 0.0;  // largest covering correction bound used
    double lambda_max = 0.0;

    double h_at(double tau_q) const;  // log-interp, constant extension
};

HFunctionTable build_h_table(const GrushinParams& params,
                             const HTableOptions& opts = {});

/// h(r,s) via the table (transported along the scaling orbit).
double h_function(const GrushinParams& params, double r, double s,
                  const HFunctionTable& table);

/// Right side of the rectangle-trace formula:
///   C' s^{-1-2a} (v2-v1) * int_{s/r2}^{s/r1} h(1,tau) G(tau) dtau/tau,
/// with C' = (n+1-4a)/4. r1 = 0 is allowed (upper limit infinity).
double trace_integral(const GrushinParams& params, double v1, double v2,
                      double r1, double r2, double s,
                      const HFunctionTable& h_table, const RatioTable& G_table);

/// L(s) = int_{s/r2}^{inf} h(1,tau) G(tau) dtau/tau.
double Ltilde(const GrushinParams& params, double s, double r2,
              const HFunctionTable& h_table, const RatioTable& G_table);

struct LogFit {
    double slope = 0.0;      // coefficient of (-log s)
    double intercept = 0.0;
    double linear = 0.0;     // coefficient of the O(s) term when fitted
    double residual_rms = 0.0;
};

/// Least squares y = slope*(-log s) + intercept (+ linear*s).
LogFit log_fit(const std::vector<double>& s, const std::vector<double>& y,
               bool with_linear_term = true);

/// Both sides of the circle covering identity at scale t:
/// wrapped Gaussians against the Fourier mode sum.
std::pair<double, double> covering_sum_circle(double t, double x, double y,
                                              int terms);

struct CoveringTail {
    double bound = 0.0;
    std::vector<double> terms;      // per |l|, both signs folded in
    std::vector<double> distances;  // numeric d(x, x + (0, l P))
};

/// Upper bound sum_{l != 0} C_LY exp(-d(x, gamma^l x)^2 / (6 s^2)) using
/// numeric distances.
CoveringTail covering_tail(const GrushinParams& params, double r0, double s,
                           int terms, double C_LY = 1.0);

enum class TauberianLaw { Power, Log };

struct KaramataOptions {
    int samples = 25;
    double plateau_tol = 0.05;
    bool throw_on_no_plateau = false;
};

struct KaramataResult {
    double heat_side = 0.0;
    double counting_side = 0.0;
    double ratio = 0.0;  // heat/counting: the empirical Gamma factor
    double heat_variation = 0.0;
    double counting_variation = 0.0;
    bool plateau_ok = false;
};

/// Tauberian limit estimates from a heat trace and a counting function:
/// power law: lim t^{beta/2} Z(t) vs lim N/lambda^{beta/2};
/// log law:   slope of tZ against -log t vs slope of N/lambda against
///            log lambda (two-term fits; raw ratios converge too slowly).
KaramataResult karamata_limits(const std::function<double(double)>& Z,
                               const std::function<double(double)>& N,
                               double beta, TauberianLaw law, double t_lo,
                               double t_hi, double lam_lo, double lam_hi,
                               const KaramataOptions& opts = {});

}  // namespace grushin
