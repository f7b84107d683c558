#include "grushin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>

#include "grushin/util.hpp"
#include "../src/kernels/kernels.hpp"

namespace grushin {

void Spectrum::finalize() {
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) {
                  if (a.lambda != b.lambda) return a.lambda < b.lambda;
                  if (a.k != b.k) return a.k < b.k;
                  return a.bc < b.bc;
              });
    lam_.resize(entries.size());
    mult_.resize(entries.size());
    cum_.resize(entries.size());
    long c = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        lam_[i] = entries[i].lambda;
        mult_[i] = entries[i].mult;
        c += entries[i].mult;
        cum_[i] = c;
    }
}

long Spectrum::counting(double lambda) const {
    if (lambda < 0.0) return 0;
    auto it = std::upper_bound(lam_.begin(), lam_.end(), lambda);
    if (it == lam_.begin()) return 0;
    return cum_[it - lam_.begin() - 1];
}

long Spectrum::total_count() const { return cum_.empty() ? 0 : cum_.back(); }

namespace {

ModeProblem make_problem(Space space, int k, OuterBC bc,
                         const RadialGridSpec& grid) {
    ModeProblem p;
    p.space = space;
    p.k = k;
    p.outer_bc = bc;
    p.grid = grid;
    return p;
}

}  // namespace

ModeSolve solve_modes(const GrushinParams& params, const ModeProblem& problem,
                      double lambda_max, bool richardson, bool with_vectors,
                      const WarpProfile* warp, double box_mass_r) {
    ModeSolve out;
    ModeProblem fine = problem;
    fine.grid.nodes = richardson ? 2 * problem.grid.nodes - 1
                                 : problem.grid.nodes;
    if (richardson)
        fine.grid.grading = std::sqrt(problem.grid.grading);
    out.op_fine = build_radial_operator(params, fine, lambda_max, warp);
    SymTridiag Tf{out.op_fine.sym_d, out.op_fine.sym_e};
    std::vector<double> lf = eigenvalues_below(Tf, lambda_max);

    if (richardson) {
        RadialOperator opc =
            build_radial_operator(params, problem, lambda_max, warp);
        SymTridiag Tc{opc.sym_d, opc.sym_e};
        std::vector<double> lc = eigenvalues_below(Tc, lambda_max);
        out.lambdas.resize(lf.size());
        out.conv_estimates.resize(lf.size());
        for (std::size_t j = 0; j < lf.size(); ++j) {
            if (j < lc.size()) {
                double step = (lf[j] - lc[j]) / 3.0;  // second-order scheme
                out.lambdas[j] = lf[j] + step;
                out.conv_estimates[j] = std::abs(step);
            } else {
                out.lambdas[j] = lf[j];
                out.conv_estimates[j] = std::abs(lf[j]) * 1e-3;
            }
        }
    } else {
        out.lambdas = lf;
        out.conv_estimates.assign(lf.size(), 0.0);
    }

    if (with_vectors || box_mass_r > 0.0) {
        if (with_vectors) out.vectors.reserve(lf.size());
        if (box_mass_r > 0.0) out.box_masses.reserve(lf.size());
        for (double lam : lf) {
            std::vector<double> vhat = eigenvector(Tf, lam);
            // back to phi = vhat / sqrt(mass); already unit in weighted L2
            for (std::size_t i = 0; i < vhat.size(); ++i)
                vhat[i] /= std::sqrt(out.op_fine.mass[i]);
            if (box_mass_r > 0.0) {
                double bm = 0.0;
                for (std::size_t i = 0; i < vhat.size(); ++i)
                    if (out.op_fine.r[i] <= box_mass_r)
                        bm += out.op_fine.mass[i] * vhat[i] * vhat[i];
                out.box_masses.push_back(bm);
            }
            if (with_vectors)
                out.vectors.push_back(std::move(vhat));
        }
    }
    return out;
}

namespace {

// Smallest Fourier index whose ground eigenvalue already exceeds lambda_max
// (monotone in k); the mode sweep stops there.
int adaptive_k_max(const GrushinParams& params, Space space,
                   double lambda_max, const RadialGridSpec& grid,
                   const WarpProfile* warp) {
    for (int k = 1;; ++k) {
        ModeProblem p = make_problem(space, k, OuterBC::Neumann, grid);
        RadialOperator op = build_radial_operator(params, p, lambda_max, warp);
        SymTridiag T{op.sym_d, op.sym_e};
        std::vector<double> xs = {std::nextafter(lambda_max, HUGE_VAL)};
        std::vector<int> cnt(1);
        {
            std::vector<double> e2(op.sym_e.size());
            for (std::size_t i = 0; i < e2.size(); ++i)
                e2[i] = op.sym_e[i] * op.sym_e[i];
            double pm = 1.0;
            for (double v : e2) pm = std::max(pm, v);
            kernels::sturm_counts(op.sym_d, e2, xs, cnt,
                                  pm * std::numeric_limits<double>::min());
        }
        if (cnt[0] == 0) return k;
        if (k > 100000)
            throw EigenSolveFailure("mode cutoff scan did not terminate");
    }
}

}  // namespace

ModalBasis assemble_modal_basis(const GrushinParams& params, Space space,
                                double lambda_max, SpectrumOptions opts) {
    if (!(lambda_max > 0.0))
        throw InvalidParameter("lambda_max must be positive");
    ModalBasis basis;
    basis.params = params;
    basis.space = space;
    basis.lambda_max = lambda_max;

    const WarpProfile* warp = nullptr;
    if (space != Space::Ybar) {
        opts.warp.alpha = params.alpha;
        if (!opts.warp.check_shape())
            throw InvalidParameter(
                "warp bridge is not decreasing/convex for this alpha");
        warp = &opts.warp;
    }
    // defaults: the truncated k=0 sector of Ybar approximates continuous
    // spectrum and is excluded from the public spectrum; heat-kernel users
    // opt back in via k_min = 0 (documented truncation).
    int k_min = opts.k_min >= 0 ? opts.k_min
                                : (space == Space::Ybar ? 1 : 0);
    int k_max = opts.k_max > 0 ? opts.k_max
                               : adaptive_k_max(params, space, lambda_max,
                                                opts.grid, warp);

    std::vector<OuterBC> bcs =
        space == Space::Xdouble
            ? std::vector<OuterBC>{OuterBC::Neumann, OuterBC::Dirichlet}
            : std::vector<OuterBC>{OuterBC::Neumann};

    struct Slot {
        ModeSolve solve;
        int k;
        OuterBC bc;
    };
    std::vector<Slot> slots;
    for (int k = k_min; k <= k_max; ++k)
        for (OuterBC bc : bcs) slots.push_back({ModeSolve{}, k, bc});

    std::mutex err_mutex;
    std::string first_error;
    parallel_for(slots.size(), opts.workers, [&](std::size_t i) {
        try {
            ModeProblem p =
                make_problem(space, slots[i].k, slots[i].bc, opts.grid);
            slots[i].solve =
                solve_modes(params, p, lambda_max, opts.richardson,
                            opts.with_vectors, warp, opts.box_mass_r);
        } catch (const std::exception& ex) {
            std::lock_guard<std::mutex> g(err_mutex);
            if (first_error.empty()) first_error = ex.what();
        }
    });
    if (!first_error.empty()) throw EigenSolveFailure(first_error);

    // shared radial grid (all modes use identical node placement)
    bool grid_set = false;
    for (auto& s : slots) {
        if (!grid_set && !s.solve.op_fine.r.empty()) {
            basis.r = s.solve.op_fine.r;
            basis.mass = s.solve.op_fine.mass;
            basis.axis_dropped = s.solve.op_fine.axis_dropped;
            for (auto& m : basis.mass) m *= params.c_m;
            grid_set = true;
        }
        for (std::size_t j = 0; j < s.solve.lambdas.size(); ++j) {
            Mode m;
            m.lambda = s.solve.lambdas[j];
            m.k = s.k;
            m.radial_index = static_cast<int>(j);
            m.bc = s.bc;
            m.mult = s.k == 0 ? 1 : 2;
            m.conv_estimate = s.solve.conv_estimates[j];
            if (opts.with_vectors) {
                m.phi = std::move(s.solve.vectors[j]);
                // renormalize to unit mass under the c_m-weighted measure
                double rs = 1.0 / std::sqrt(params.c_m);
                for (auto& v : m.phi) v *= rs;
                // Dirichlet solves drop the wall node; pad the boundary
                // zero back so every mode lives on the shared grid
                if (s.bc == OuterBC::Dirichlet &&
                    m.phi.size() + 1 == basis.r.size())
                    m.phi.push_back(0.0);
            }
            if (opts.box_mass_r > 0.0)
                m.box_mass = s.solve.box_masses[j];  // already a fraction
            basis.modes.push_back(std::move(m));
        }
    }
    // the k=0 Neumann constant mode is exactly zero on compact spaces
    for (auto& m : basis.modes)
        if (m.k == 0 && m.bc == OuterBC::Neumann && m.radial_index == 0 &&
            std::abs(m.lambda) < 1e-7 * std::max(1.0, lambda_max))
            m.lambda = 0.0;

    std::sort(basis.modes.begin(), basis.modes.end(),
              [](const Mode& a, const Mode& b) {
                  if (a.lambda != b.lambda) return a.lambda < b.lambda;
                  if (a.k != b.k) return a.k < b.k;
                  return a.bc < b.bc;
              });

    // Ybar truncation sanity: the widest decaying mode (k=1 ground) must
    // have negligible mass near the artificial wall.
    if (space == Space::Ybar && opts.check_truncation && k_max >= 1) {
        ModeProblem p = make_problem(space, 1, OuterBC::Neumann, opts.grid);
        ModeSolve s = solve_modes(params, p, lambda_max, false, true, warp);
        if (!s.vectors.empty()) {
            const auto& op = s.op_fine;
            double R = op.outer_radius;
            double h = op.r.back() - op.r[op.r.size() - 2];
            double tail = 0.0, tot = 0.0;
            for (std::size_t i = 0; i < op.r.size(); ++i) {
                double w = op.mass[i] * s.vectors[0][i] * s.vectors[0][i];
                tot += w;
                if (op.r[i] > R - 10.0 * h) tail += w;
            }
            if (tail > 1e-8 * tot)
                throw TruncationTooSmall(
                    "k=1 ground mode reaches the truncation wall; "
                    "increase the truncation radius");
        }
    }
    return basis;
}

Spectrum ModalBasis::spectrum() const {
    Spectrum s;
    s.lambda_max = lambda_max;
    s.entries.reserve(modes.size());
    for (const auto& m : modes)
        s.entries.push_back({m.lambda, m.mult, m.k, m.radial_index, m.bc,
                             m.conv_estimate});
    s.finalize();
    return s;
}

double ModalBasis::mass_in(const Mode& m, double r_lo, double r_hi) const {
    if (m.phi.empty())
        throw InvalidParameter("basis was assembled without eigenvectors");
    if (m.phi.size() != r.size())
        throw EigenSolveFailure("mode vector does not match the shared grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= r_lo && r[i] <= r_hi)
            acc += mass[i] * m.phi[i] * m.phi[i];
    return acc;
}

double ModalBasis::total_measure() const {
    double m = 0.0;
    for (double v : mass) m += v;
    m *= params.period;
    if (space == Space::Xdouble) m *= 2.0;
    return m;
}

double eigenfunction_mass_outside(const ModalBasis& basis, std::size_t j,
                                  double r_lo, double r_hi) {
    if (j >= basis.modes.size()) throw InvalidParameter("mode index range");
    const Mode& m = basis.modes[j];
    double inside = basis.mass_in(m, r_lo, r_hi);
    double total = basis.mass_in(m, -HUGE_VAL, HUGE_VAL);
    return 1.0 - inside / total;
}

Spectrum assemble_spectrum(const GrushinParams& params, Space space,
                           double lambda_max, const SpectrumOptions& opts) {
    return assemble_modal_basis(params, space, lambda_max, opts).spectrum();
}

void export_spectrum_csv(const Spectrum& spec, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("cannot open " + path);
    std::fprintf(fp, "lambda,mult,k,radial_index,bc\n");
    for (const auto& e : spec.entries)
        std::fprintf(fp, "%.17g,%d,%d,%d,%s\n", e.lambda, e.mult, e.k,
                     e.radial_index, bc_name(e.bc));
    std::fclose(fp);
}

}  // namespace grushin
