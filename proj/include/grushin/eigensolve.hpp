#pragma once

#include <vector>

#include "grushin/errors.hpp"

namespace grushin {

struct SymTridiag {
    std::vector<double> d;  // diagonal
    std::vector<double> e;  // off-diagonal, size d.size()-1
};

/// All eigenvalues in (-inf, lambda_max], ascending, found by bisection on
/// Sturm counts (batched through the kernels backend).
std::vector<double> eigenvalues_below(const SymTridiag& T, double lambda_max,
                                      double rel_tol = 1e-13);

/// Eigenvector by inverse iteration, normalized in the Euclidean norm.
/// Deterministic start vector; a couple of iterations suffice for the
/// well-separated spectra produced by the radial problems.
std::vector<double> eigenvector(const SymTridiag& T, double lambda);

}  // namespace grushin
