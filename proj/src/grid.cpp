#include "grushin/grid.hpp"

#include <numeric>

namespace grushin {

std::vector<std::pair<int, int>> stencil_offsets(int order) {
    std::vector<std::pair<int, int>> out;
    for (int a = -order; a <= order; ++a)
        for (int b = -order; b <= order; ++b) {
            if (a == 0 && b == 0) continue;
            if (std::gcd(std::abs(a), std::abs(b)) > 1) continue;
            out.emplace_back(a, b);
        }
    return out;
}

namespace {

std::vector<double> graded_nodes(double lo, double hi, int count,
                                 double ratio) {
    std::vector<double> nodes(count);
    double span = hi - lo;
    if (std::abs(ratio - 1.0) < 1e-12) {
        for (int i = 0; i < count; ++i)
            nodes[i] = lo + span * i / (count - 1);
        return nodes;
    }
    // spacings h0 * ratio^i summing to span
    double h0 = span * (ratio - 1.0) / (std::pow(ratio, count - 1) - 1.0);
    nodes[0] = lo;
    double h = h0;
    for (int i = 1; i < count; ++i) {
        nodes[i] = nodes[i - 1] + h;
        h *= ratio;
    }
    nodes[count - 1] = hi;
    return nodes;
}

// Replace the nearest interior node by each anchor, keeping the sequence
// strictly increasing.
void place_anchors(std::vector<double>& nodes, std::vector<double> anchors) {
    std::sort(anchors.begin(), anchors.end());
    for (double a : anchors) {
        if (a <= nodes.front() || a >= nodes.back()) continue;
        auto it = std::lower_bound(nodes.begin(), nodes.end(), a);
        std::size_t k = it - nodes.begin();
        if (k > 0 && a - nodes[k - 1] < nodes[k] - a) --k;
        if (k == 0 || k + 1 >= nodes.size()) continue;
        if (a > nodes[k - 1] && a < nodes[k + 1]) nodes[k] = a;
    }
}

}  // namespace

TensorGrid build_grid(const GrushinParams& params, const GridSpec& spec) {
    if (spec.nr < 3 || spec.nv < 3)
        throw InvalidParameter("grid needs at least 3 nodes per direction");
    if (!(spec.r_max > 0.0) || !(spec.v_max > spec.v_min))
        throw InvalidParameter("empty grid domain");
    if (spec.r_min < 0.0 || spec.r_min >= spec.r_max)
        throw InvalidParameter("need 0 <= r_min < r_max");
    TensorGrid g;
    g.chart = Chart(params.alpha);
    g.stencil_order = stencil_order_of(spec.stencil);
    g.y = graded_nodes(g.chart.y_of_r(spec.r_min), g.chart.y_of_r(spec.r_max),
                       spec.nr, spec.grading);
    g.x = graded_nodes(spec.v_min, spec.v_max, spec.nv, 1.0);

    std::vector<double> ya;
    ya.reserve(spec.anchors_r.size());
    for (double r : spec.anchors_r) ya.push_back(g.chart.y_of_r(r));
    place_anchors(g.y, ya);
    place_anchors(g.x, spec.anchors_v);
    return g;
}

double cell_measure(const GrushinParams& params, const Chart& chart,
                    double y1, double y2, double x1, double x2) {
    (void)chart;
    // dm = c_m r^{(n-1)/2-2a} dr dv = c_m ((1+2a)y)^{pe} dy dv with
    // pe = ((n-1)/2 - 4a)/(1+2a); integrable iff n+1 > 4a.
    double k = 1.0 + 2.0 * params.alpha;
    double pe = (params.measure_exponent() - 2.0 * params.alpha) / k;
    double e = pe + 1.0;  // = volume_exponent()/k > 0
    double scale = params.c_m * std::pow(k, pe) / e;
    return scale * (std::pow(y2, e) - std::pow(y1, e)) * (x2 - x1);
}

double rectangle_measure(const GrushinParams& params, double r1, double r2,
                         double v1, double v2) {
    double e = params.volume_exponent();
    double lo = std::max(0.0, r1);
    if (r2 <= lo) return 0.0;
    return params.c_m * (std::pow(r2, e) - std::pow(lo, e)) / e * (v2 - v1);
}

}  // namespace grushin
