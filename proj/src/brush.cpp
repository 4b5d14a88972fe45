#include "cldpb/brush.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace cldpb {

namespace {

int round_half_up(double v) {
    return static_cast<int>(std::floor(v + 0.5));
}

}  // namespace

double StarPolygon::average_vertex_distance() const {
    double sum = 0.0;
    for (const Point2& v : vertices) sum += std::hypot(v.x - center.x, v.y - center.y);
    return sum / kDirectionCount;
}

double scale_for_size(const CldDiagram& cld, double size) {
    if (!(size > 0.0)) throw std::invalid_argument("stroke size must be > 0");
    const long sum = cld.length_sum();
    if (sum <= 0) throw std::invalid_argument("diagram has no extent to scale");
    return kDirectionCount * size / static_cast<double>(sum);
}

StarPolygon polygon_from_cld(const CldDiagram& cld, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    StarPolygon poly;
    poly.center = {static_cast<double>(cld.center.x), static_cast<double>(cld.center.y)};
    poly.alpha = alpha;
    const auto& dirs = directions();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const double reach = alpha * cld.lengths[i];
        poly.vertices[i] = {poly.center.x + reach * dirs[i].cos, poly.center.y + reach * dirs[i].sin};
    }
    return poly;
}

double min_trace_distance() {
    return kDefaultTraceDistance;
}

double exact_trace_distance() {
    return 2.0 / (std::numbers::pi / 16.0);
}

void rasterize_segment(Point2 a, Point2 b, const std::function<void(int, int)>& plot) {
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const bool x_major = std::abs(ex) >= std::abs(ey);

    const double a_major = x_major ? a.x : a.y;
    const double a_minor = x_major ? a.y : a.x;
    const double e_major = x_major ? ex : ey;
    const double e_minor = x_major ? ey : ex;

    const int start = round_half_up(a_major);
    const int stop = round_half_up(a_major + e_major);
    const int step = stop >= start ? 1 : -1;
    std::optional<int> previous;
    for (int m = start;; m += step) {
        double t = e_major != 0.0 ? (m - a_major) / e_major : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        int n = round_half_up(a_minor + t * e_minor);
        // |slope| <= 1, so only rounding noise at a .5 tie can move the
        // minor coordinate by two; keep the line 8-connected.
        if (previous) n = std::clamp(n, *previous - 1, *previous + 1);
        previous = n;
        if (x_major) {
            plot(m, n);
        } else {
            plot(n, m);
        }
        if (m == stop) break;
    }
}

std::vector<Position> fan_fill_pixels(const StarPolygon& poly, double d0, int width, int height) {
    double min_x = poly.center.x, max_x = poly.center.x;
    double min_y = poly.center.y, max_y = poly.center.y;
    for (const Point2& v : poly.vertices) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    const int x0 = std::max(0, round_half_up(min_x) - 1);
    const int y0 = std::max(0, round_half_up(min_y) - 1);
    const int x1 = std::min(width - 1, round_half_up(max_x) + 1);
    const int y1 = std::min(height - 1, round_half_up(max_y) + 1);
    if (x0 > x1 || y0 > y1) return {};

    const int box_w = x1 - x0 + 1;
    const int box_h = y1 - y0 + 1;
    std::vector<unsigned char> mask(static_cast<std::size_t>(box_w) * static_cast<std::size_t>(box_h), 0);

    const Point2 o = poly.center;
    const double d0_sq = d0 > 0.0 ? d0 * d0 : 0.0;
    bool clip_near_center = false;
    const auto plot = [&](int x, int y) {
        if (x < x0 || x > x1 || y < y0 || y > y1) return;
        if (clip_near_center) {
            const double dx = x - o.x;
            const double dy = y - o.y;
            if (dx * dx + dy * dy < d0_sq) return;
        }
        mask[static_cast<std::size_t>(y - y0) * static_cast<std::size_t>(box_w) + static_cast<std::size_t>(x - x0)] = 1;
    };
    const std::function<void(int, int)> plot_fn = plot;

    for (std::size_t a = 0; a < poly.vertices.size(); ++a) {
        const Point2 pivot = poly.vertices[a];
        const Point2 next = poly.vertices[(a + 1) % poly.vertices.size()];
        const double len = std::hypot(next.x - o.x, next.y - o.y);
        const int steps = std::max(1, static_cast<int>(std::ceil(len)));
        for (int i = 0; i <= steps; ++i) {
            const double t = static_cast<double>(i) / steps;
            const Point2 p{o.x + t * (next.x - o.x), o.y + t * (next.y - o.y)};
            clip_near_center = i >= 1 && d0_sq > 0.0;
            rasterize_segment(p, pivot, plot_fn);
        }
    }

    std::vector<Position> pixels;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (mask[static_cast<std::size_t>(y - y0) * static_cast<std::size_t>(box_w) + static_cast<std::size_t>(x - x0)]) {
                pixels.push_back({x, y});
            }
        }
    }
    return pixels;
}

void fan_fill(const StarPolygon& poly, Rgb color, double d0, RgbImage& canvas) {
    for (const Position& p : fan_fill_pixels(poly, d0, canvas.width(), canvas.height())) {
        canvas.at(p) = color;
    }
}

}  // namespace cldpb
