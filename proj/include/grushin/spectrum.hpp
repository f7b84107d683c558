#pragma once

#include <string>

#include "grushin/eigensolve.hpp"
#include "grushin/radial_operator.hpp"

namespace grushin {

struct SpectrumEntry {
    double lambda = 0.0;
    int mult = 1;           // 2 for |k| >= 1 (cos/sin pair), 1 for k = 0
    int k = 0;              // Fourier index (nonnegative representative)
    int radial_index = 0;
    OuterBC bc = OuterBC::Neumann;
    double conv_estimate = 0.0;  // Richardson step size
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;  // ascending in lambda
    double lambda_max = 0.0;             // completeness bound

    void finalize();  // sort + prefix sums
    /// Multiplicity-weighted N(lambda) = #{ lambda_i <= lambda }.
    long counting(double lambda) const;
    long total_count() const;

    // flat multiplicity-expanded views for trace sums
    const std::vector<double>& lambdas() const { return lam_; }
    const std::vector<double>& mults() const { return mult_; }

  private:
    std::vector<double> lam_;    // per entry
    std::vector<double> mult_;   // per entry (as double, for kernels)
    std::vector<long> cum_;      // cumulative multiplicity
};

struct SpectrumOptions {
    RadialGridSpec grid;
    int k_max = 0;             // 0 = adaptive (smallest k with ground > lambda_max)
    int k_min = -1;            // -1 = default per space
    bool richardson = true;
    bool with_vectors = false;
    // > 0: stream eigenvectors mode by mode and keep only the radial mass
    // below this radius (box traces on large spectra without the memory).
    double box_mass_r = 0.0;
    int workers = 1;
    WarpProfile warp;          // Ytilde / Xdouble profile
    bool check_truncation = true;
};

/// One radial mode worth of eigendata.
struct Mode {
    double lambda = 0.0;
    int k = 0;
    int radial_index = 0;
    OuterBC bc = OuterBC::Neumann;
    int mult = 1;
    double conv_estimate = 0.0;
    std::vector<double> phi;  // on the shared radial grid; empty if not kept
    double box_mass = -1.0;   // streamed reduction; -1 when not computed
};

/// Spectrum plus radial eigenvectors on a shared grid; the substrate for
/// heat kernels and localized counts. Eigenvectors are normalized in the
/// discrete weighted L2: sum_i mass[i] phi[i]^2 = 1.
struct ModalBasis {
    GrushinParams params;
    Space space = Space::Ybar;
    std::vector<double> r;
    std::vector<double> mass;    // includes the c_m factor
    bool axis_dropped = false;
    std::vector<Mode> modes;     // ascending in lambda
    double lambda_max = 0.0;

    Spectrum spectrum() const;
    /// sum of mass*phi^2 over nodes with r in [r_lo, r_hi].
    double mass_in(const Mode& m, double r_lo, double r_hi) const;
    double total_measure() const;  // measure of the whole space (X doubles it)
};

/// Eigenvalues (with eigenvectors when requested) of a single separated
/// mode problem, Richardson-extrapolated from one grid refinement.
struct ModeSolve {
    std::vector<double> lambdas;
    std::vector<double> conv_estimates;
    std::vector<std::vector<double>> vectors;  // on the fine grid
    std::vector<double> box_masses;            // streamed when requested
    RadialOperator op_fine;
};
ModeSolve solve_modes(const GrushinParams& params, const ModeProblem& problem,
                      double lambda_max, bool richardson = true,
                      bool with_vectors = false,
                      const WarpProfile* warp = nullptr,
                      double box_mass_r = 0.0);

Spectrum assemble_spectrum(const GrushinParams& params, Space space,
                           double lambda_max, const SpectrumOptions& opts);

ModalBasis assemble_modal_basis(const GrushinParams& params, Space space,
                                double lambda_max, SpectrumOptions opts);

/// Fraction of the eigenfunction's squared mass outside the radially
/// symmetric region A = {r_lo <= r <= r_hi} (angular part integrates out).
double eigenfunction_mass_outside(const ModalBasis& basis, std::size_t j,
                                  double r_lo, double r_hi);

void export_spectrum_csv(const Spectrum& spec, const std::string& path);

}  // namespace grushin
