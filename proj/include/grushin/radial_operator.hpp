#pragma once

#include <vector>

#include "grushin/params.hpp"
#include "grushin/warp.hpp"

namespace grushin {

enum class Space { Ybar, Ytilde, Xdouble };
enum class OuterBC { Neumann, Dirichlet };

const char* space_name(Space s);
const char* bc_name(OuterBC b);

struct RadialGridSpec {
    int nodes = 1501;
    double grading = 1.0;           // y-free: plain r grading ratio
    double truncation_radius = 0.0; // Ybar only; 0 = auto from lambda_max
};

struct ModeProblem {
    Space space = Space::Ybar;
    int k = 1;
    OuterBC outer_bc = OuterBC::Neumann;
    RadialGridSpec grid;
};

/// Finite-volume discretization of the radial operator
///   -(1/w)(w phi')' + (2 pi k / P)^2 h(r)^{-2} phi
/// on the node set, self-adjoint in the mass-weighted inner product.
/// The axis end is natural zero-flux (the weight vanishes); when the weight
/// is not integrable at 0 (n+1 <= 4a, e.g. the unweighted cylinder) the
/// axis node carries infinite mass and is dropped, which is the Dirichlet
/// condition selected by the limit-point analysis there.
struct RadialOperator {
    std::vector<double> r;     // active nodes (axis node dropped if needed)
    std::vector<double> mass;  // FV cell masses
    std::vector<double> sym_d; // symmetrized tridiagonal: diagonal
    std::vector<double> sym_e; // symmetrized tridiagonal: off-diagonal
    bool axis_dropped = false;
    double outer_radius = 0.0;
    double angular_eigenvalue = 0.0;  // (2 pi k / P)^2

    std::size_t size() const { return r.size(); }
};

/// Outer truncation radius for Ybar: twice the classical turning point of
/// the k=1 mode at lambda_max (eigenfunctions decay super-exponentially
/// beyond it), with a floor of 8.
double auto_truncation_radius(const GrushinParams& params, double lambda_max);

RadialOperator build_radial_operator(const GrushinParams& params,
                                     const ModeProblem& problem,
                                     double lambda_max,
                                     const WarpProfile* warp = nullptr);

}  // namespace grushin
