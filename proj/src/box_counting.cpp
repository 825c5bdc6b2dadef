#include "fractal_chain/box_counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fractal_chain/errors.hpp"

namespace fractal_chain {

void PlanarGraph::validate() const {
    if (x.size() != y.size())
        throw geometry_error("PlanarGraph: x and y sizes differ");
    if (x.size() < 2)
        throw geometry_error("PlanarGraph: need at least 2 points");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw geometry_error("PlanarGraph: non-finite sample at row " +
                                 std::to_string(i));
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1]))
            throw geometry_error(
                "PlanarGraph: x must be strictly increasing (violated at row " +
                std::to_string(i) + ")");
    }
}

namespace {

// Cells hit in one grid column: contiguous y-span of the clipped polyline,
// quantized to the grid anchored at y_min.
std::int64_t span_cells(double lo, double hi, double y_min, double eps) {
    const auto i0 = static_cast<std::int64_t>(std::floor((lo - y_min) / eps));
    const auto i1 = static_cast<std::int64_t>(std::floor((hi - y_min) / eps));
    return i1 - i0 + 1;
}

std::int64_t count_boxes(const PlanarGraph& g, double eps) {
    const double x_min = g.x.front();
    const double x_max = g.x.back();
    const double y_min = *std::min_element(g.y.begin(), g.y.end());

    const auto n_cols =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                      std::ceil((x_max - x_min) / eps)));
    std::vector<double> col_lo(n_cols, std::numeric_limits<double>::infinity());
    std::vector<double> col_hi(n_cols, -std::numeric_limits<double>::infinity());

    auto col_of = [&](double x) {
        auto c = static_cast<std::int64_t>(std::floor((x - x_min) / eps));
        return std::clamp<std::int64_t>(c, 0, n_cols - 1);
    };
    auto mark = [&](std::int64_t col, double a, double b) {
        if (a > b) std::swap(a, b);
        if (a < col_lo[col]) col_lo[col] = a;
        if (b > col_hi[col]) col_hi[col] = b;
    };

    for (std::size_t i = 0; i + 1 < g.x.size(); ++i) {
        const double x0 = g.x[i], y0 = g.y[i];
        const double x1 = g.x[i + 1], y1 = g.y[i + 1];
        const std::int64_t c0 = col_of(x0);
        const std::int64_t c1 = col_of(x1);
        if (c0 == c1) {
            mark(c0, y0, y1);
            continue;
        }
        // Clip at every column boundary the segment crosses; the boundary
        // point belongs to both adjacent columns.
        double prev_y = y0;
        for (std::int64_t col = c0; col < c1; ++col) {
            const double xb = x_min + static_cast<double>(col + 1) * eps;
            const double t = (xb - x0) / (x1 - x0);
            const double yb = y0 + t * (y1 - y0);
            mark(col, prev_y, yb);
            prev_y = yb;
        }
        mark(c1, prev_y, y1);
    }

    std::int64_t total = 0;
    for (std::int64_t col = 0; col < n_cols; ++col) {
        if (col_lo[col] > col_hi[col]) continue; // untouched column
        total += span_cells(col_lo[col], col_hi[col], y_min, eps);
    }
    return total;
}

} // namespace

BoxCountResult box_counting_dimension(const PlanarGraph& g,
                                      const std::vector<double>& eps_list) {
    g.validate();
    if (!(g.x.back() > g.x.front()))
        throw geometry_error("box_counting_dimension: zero x-range");
    if (eps_list.size() < 4)
        throw protocol_error("box_counting_dimension: need at least 4 scales, got " +
                             std::to_string(eps_list.size()));
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i]))
            throw protocol_error("box_counting_dimension: scales must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw protocol_error(
                "box_counting_dimension: scales must be strictly decreasing");
    }

    BoxCountResult res;
    res.scales = eps_list;
    res.counts.reserve(eps_list.size());
    for (double eps : eps_list) res.counts.push_back(count_boxes(g, eps));

    for (std::size_t i = 1; i < res.counts.size(); ++i) {
        if (res.counts[i] < res.counts[i - 1])
            throw numeric_error(
                "box_counting_dimension: counts decreased at a finer scale "
                "(degenerate grid alignment)");
    }

    // OLS of log N against log(1/eps) over all supplied scales.
    const auto n = static_cast<double>(eps_list.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        const double lx = std::log(1.0 / eps_list[i]);
        const double ly = std::log(static_cast<double>(res.counts[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    if (!(vxx > 0.0))
        throw numeric_error("box_counting_dimension: degenerate scale list");
    res.dimension = vxy / vxx;
    res.r_squared = (vyy > 0.0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
    if (!std::isfinite(res.dimension) || !std::isfinite(res.r_squared))
        throw numeric_error("box_counting_dimension: regression failed");
    return res;
}

} // namespace fractal_chain
