#ifndef FRACTAL_CHAIN_BOX_COUNTING_HPP
#define FRACTAL_CHAIN_BOX_COUNTING_HPP

#include <cstdint>
#include <vector>

namespace fractal_chain {

// A sampled planar curve y(x) with piecewise-linear interpolation between
// consecutive samples. x must be strictly increasing, at least 2 points.
struct PlanarGraph {
    std::vector<double> x;
    std::vector<double> y;

    void validate() const; // throws geometry_error
};

struct BoxCountResult {
    std::vector<double> scales;        // box side lengths, descending
    std::vector<std::int64_t> counts;  // N(eps) per scale
    double dimension = 0.0;            // OLS slope of log N vs log(1/eps)
    double r_squared = 0.0;            // regression fit quality in [0,1]
};

// Box-counting dimension estimate of the graph.
//
// For each eps the bounding box of g is covered with an axis-aligned grid of
// side eps anchored at (x_min, y_min), and the cells intersected by the
// polyline are counted. Cells are marked per grid column from the y-span of
// the clipped segments (segments are interpolated exactly at column
// boundaries), which for a function graph is the full segment-cell
// intersection count; marking only sample points would systematically
// undercount on steep fractal graphs.
//
// eps_list must be strictly decreasing, positive, with at least 4 scales.
// The returned dimension is the raw least-squares slope; it is never clamped.
BoxCountResult box_counting_dimension(const PlanarGraph& g,
                                      const std::vector<double>& eps_list);

} // namespace fractal_chain

#endif
