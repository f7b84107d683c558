#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grushin/grid.hpp"

namespace grushin {

struct DistanceFieldOptions {
    // Re-solve on a once-refined grid and report the relative change.
    bool refine_check = true;
    // Throw GridTooCoarse when the indicator exceeds this.
    double coarse_tolerance = HUGE_VAL;
    // Extra bootstrap pass for the axis-edge constant when the source sits
    // on the axis.
    bool bootstrap_axis_constant = true;
    // Probe points for the refinement comparison; defaults to a coarse
    // deterministic subsample of the grid.
    std::vector<Point> probes;
};

/// Graph-shortest-path approximation of the Grushin distance from a fixed
/// source. Edge weights are exact line integrals of the conformal metric
/// factor along straight chords in the adapted chart; axis-lying edges use
/// the snowflake weight C_est |dv|^{1/(1+2a)}.
///
/// Graph distances overestimate the continuum distance by the stencil
/// metrication error plus O(h); `resolution_indicator` reports the observed
/// relative change under one refinement.
struct DistanceField {
    GrushinParams params;
    TensorGrid grid;
    Point source;  // snapped onto a node
    std::size_t source_i = 0, source_j = 0;
    std::vector<double> values;
    double resolution_indicator = 0.0;
    double axis_constant_used = 0.0;

    double at_node(std::size_t i, std::size_t j) const {
        return values[grid.index(i, j)];
    }
    /// Bilinear interpolation in the chart; exact at nodes.
    double value_at(const Point& p) const;
    bool contains(const Point& p) const;
};

DistanceField distance_field(const GrushinParams& params, const Point& source,
                             const GridSpec& spec,
                             const DistanceFieldOptions& opts = {});

/// d((0,v),(0,0)) on a window sized to the arc scale of this v, so the
/// relative resolution (and with it the stencil error) is the same for
/// every v. Used by the snowflake-slope checks.
double axis_distance(const GrushinParams& params, double v, int nodes = 161,
                     int stencil = 32);

struct BoundaryConstantResult {
    double value = 0.0;      // extrapolated C = d((0,1),(0,0))
    double error_bar = 0.0;
    std::vector<double> level_values;
};

/// Richardson/Aitken estimate of the axis distance constant
/// C = d((0,1),(0,0)). `levels` >= 2 grid refinements are used.
BoundaryConstantResult boundary_distance_constant(const GrushinParams& params,
                                                  int levels = 3,
                                                  int base_nr = 161,
                                                  int stencil = 32);

struct TranslationCheck {
    double dist = 0.0;
    double lower = 0.0;  // C(r) l^{1/(1+2a)} with the explicit constants
    double upper = 0.0;  // 3 l^{1/(1+2a)}
    double comparison_upper = 0.0;  // optimized explicit path bound
    bool upper_violated = false;
    double resolution_indicator = 0.0;
};

/// Numeric distance d(x, x + (0,l)) against the translation bracket.
TranslationCheck translation_distance_check(const GrushinParams& params,
                                            const Point& x, int l,
                                            std::optional<GridSpec> spec = {});

/// Write (r, v, d) rows for every grid node.
void export_distance_csv(const DistanceField& f, const std::string& path);

}  // namespace grushin
