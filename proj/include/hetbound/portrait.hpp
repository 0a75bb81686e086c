#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hetbound/lyapunov.hpp"
#include "hetbound/model.hpp"
#include "hetbound/trajectory.hpp"

namespace hetbound {

struct Portrait {
    LevelSetGrid levels;
    std::vector<double> dx;  ///< same layout as levels.values
    std::vector<double> dy;
    Trajectory orbit;
    double crucial_level;  ///< V(z, (a0+1) w) = E
};

/// Default window: x in [0, 1.1 X] clipped to the domain, y in (0, 1.25 (a0+1) w].
Portrait make_portrait(const SystemModel& model, std::size_t nx, std::size_t ny);

Portrait make_portrait(const SystemModel& model, Interval x_range, Interval y_range,
                       std::size_t nx, std::size_t ny);

struct Segment {
    double x0, y0, x1, y1;
};

/// Marching squares over the valid cells of the grid.
std::vector<Segment> contour_segments(const LevelSetGrid& grid, double level);

/// CSV with header x,y,dx,dy,V,valid.
void write_portrait_csv(const Portrait& portrait, std::ostream& out);

/// Static SVG: direction arrows, a few level curves of V (the crucial level
/// highlighted), the tangent line y = (a0+1)x, the diagonal and the orbit.
void write_portrait_svg(const SystemModel& model, const Portrait& portrait, std::ostream& out);

}  // namespace hetbound
