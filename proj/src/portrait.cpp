#include "hetbound/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "hetbound/bounds.hpp"
#include "hetbound/format.hpp"
#include "hetbound/kernels.hpp"

namespace hetbound {

Portrait make_portrait(const SystemModel& model, std::size_t nx, std::size_t ny) {
    const double x_bound = bound_X(model).X_numeric;
    const double x_hi = std::min(1.1 * x_bound, model.x_max() - 1e-6 * model.x_max());
    const double y_hi = 1.25 * (model.a0() + 1.0) * model.w();
    return make_portrait(model, {0.0, x_hi}, {y_hi / static_cast<double>(4 * ny), y_hi}, nx, ny);
}

Portrait make_portrait(const SystemModel& model, Interval x_range, Interval y_range,
                       std::size_t nx, std::size_t ny) {
    Portrait p;
    p.levels = level_set_grid(model, x_range, y_range, nx, ny);
    std::vector<double> xs(nx * ny);
    std::vector<double> ys(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            xs[j * nx + i] = p.levels.x_at(i);
            ys[j * nx + i] = p.levels.y_at(j);
        }
    }
    p.dx.assign(nx * ny, 0.0);
    p.dy.assign(nx * ny, 0.0);
    kernels::field(field_coeffs(model), xs, ys, p.dx, p.dy);
    for (std::size_t k = 0; k < nx * ny; ++k) {
        if (!p.levels.valid[k]) p.dx[k] = p.dy[k] = 0.0;
    }
    p.orbit = shoot_heteroclinic(model);
    p.crucial_level = lyapunov_value(model, model.z(), (model.a0() + 1.0) * model.w());
    return p;
}

std::vector<Segment> contour_segments(const LevelSetGrid& g, double level) {
    std::vector<Segment> out;
    if (g.nx < 2 || g.ny < 2) return out;
    auto lerp = [level](double xa, double ya, double va, double xb, double yb, double vb) {
        const double t = (level - va) / (vb - va);
        return std::pair{xa + t * (xb - xa), ya + t * (yb - ya)};
    };
    for (std::size_t j = 0; j + 1 < g.ny; ++j) {
        for (std::size_t i = 0; i + 1 < g.nx; ++i) {
            if (!g.is_valid(i, j) || !g.is_valid(i + 1, j) || !g.is_valid(i, j + 1) ||
                !g.is_valid(i + 1, j + 1)) {
                continue;
            }
            // Corners counter-clockwise from (i, j).
            const double xs[4] = {g.x_at(i), g.x_at(i + 1), g.x_at(i + 1), g.x_at(i)};
            const double ys[4] = {g.y_at(j), g.y_at(j), g.y_at(j + 1), g.y_at(j + 1)};
            const double vs[4] = {g.value(i, j), g.value(i + 1, j), g.value(i + 1, j + 1),
                                  g.value(i, j + 1)};
            std::vector<std::pair<double, double>> hits;
            for (int e = 0; e < 4; ++e) {
                const int f = (e + 1) % 4;
                if ((vs[e] < level) != (vs[f] < level)) {
                    hits.push_back(lerp(xs[e], ys[e], vs[e], xs[f], ys[f], vs[f]));
                }
            }
            // Saddle cells (4 hits) are paired in edge order; fine at plot resolution.
            for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
                out.push_back({hits[h].first, hits[h].second, hits[h + 1].first,
                               hits[h + 1].second});
            }
        }
    }
    return out;
}

void write_portrait_csv(const Portrait& p, std::ostream& out) {
    const auto& g = p.levels;
    out << "x,y,dx,dy,V,valid\n";
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const std::size_t k = j * g.nx + i;
            out << format_double(g.x_at(i)) << ',' << format_double(g.y_at(j)) << ','
                << format_double(p.dx[k]) << ',' << format_double(p.dy[k]) << ','
                << format_double(g.values[k]) << ',' << (g.valid[k] ? 1 : 0) << '\n';
        }
    }
}

void write_portrait_svg(const SystemModel& model, const Portrait& p, std::ostream& out) {
    constexpr double kSize = 600.0;
    constexpr double kPad = 30.0;
    const auto& g = p.levels;
    const double sx = (kSize - 2 * kPad) / (g.x_range.hi - g.x_range.lo);
    const double sy = (kSize - 2 * kPad) / (g.y_range.hi - g.y_range.lo);
    auto px = [&](double x) { return kPad + (x - g.x_range.lo) * sx; };
    auto py = [&](double y) { return kSize - kPad - (y - g.y_range.lo) * sy; };
    auto num = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Direction field, every few nodes.
    const std::size_t stride_x = std::max<std::size_t>(1, g.nx / 20);
    const std::size_t stride_y = std::max<std::size_t>(1, g.ny / 20);
    const double arrow = 0.4 * (kSize - 2 * kPad) / 20.0;
    out << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    for (std::size_t j = 0; j < g.ny; j += stride_y) {
        for (std::size_t i = 0; i < g.nx; i += stride_x) {
            const std::size_t k = j * g.nx + i;
            if (!g.valid[k]) continue;
            const double ux = p.dx[k] * sx;
            const double uy = -p.dy[k] * sy;
            const double len = std::hypot(ux, uy);
            if (len == 0.0) continue;
            const double x0 = px(g.x_at(i));
            const double y0 = py(g.y_at(j));
            out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
                << num(x0 + arrow * ux / len) << "\" y2=\"" << num(y0 + arrow * uy / len)
                << "\"/>\n";
        }
    }
    out << "</g>\n";

    auto draw_contour = [&](double level, const char* color, double width) {
        out << "<g stroke=\"" << color << "\" stroke-width=\"" << width << "\" fill=\"none\">\n";
        for (const auto& s : contour_segments(g, level)) {
            out << "<line x1=\"" << num(px(s.x0)) << "\" y1=\"" << num(py(s.y0)) << "\" x2=\""
                << num(px(s.x1)) << "\" y2=\"" << num(py(s.y1)) << "\"/>\n";
        }
        out << "</g>\n";
    };
    for (double f : {0.25, 0.5, 2.0, 4.0}) draw_contour(f * p.crucial_level, "#8ab", 1.0);
    draw_contour(p.crucial_level, "darkviolet", 2.0);

    const double slope = model.a0() + 1.0;
    const double x_line = std::min(g.x_range.hi, g.y_range.hi / slope);
    out << "<line stroke=\"blue\" x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\""
        << num(px(x_line)) << "\" y2=\"" << num(py(slope * x_line)) << "\"/>\n";
    const double d = std::min(g.x_range.hi, g.y_range.hi);
    out << "<line stroke=\"olive\" x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0))
        << "\" x2=\"" << num(px(d)) << "\" y2=\"" << num(py(d)) << "\"/>\n";

    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const auto& s : p.orbit.samples) out << num(px(s.x)) << ',' << num(py(s.y)) << ' ';
    out << "\"/>\n</svg>\n";
}

}  // namespace hetbound
