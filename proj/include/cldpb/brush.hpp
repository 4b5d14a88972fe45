#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cldpb/cld.hpp"
#include "cldpb/image.hpp"

namespace cldpb {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

// CLD diagram drawn as a closed polygon: vertex i sits alpha * l_i along
// direction i from the centre. Vertices are joined in index order and the
// centre lies in the polygon's kernel.
struct StarPolygon {
    Point2 center;
    std::array<Point2, kDirectionCount> vertices{};
    double alpha = 1.0;

    // Mean distance from the centre to the vertices.
    double average_vertex_distance() const;
};

// alpha = 32 * size / sum(l_i), so that the polygon's mean vertex distance
// is exactly `size`. Throws std::invalid_argument for size <= 0 or an
// all-zero diagram.
double scale_for_size(const CldDiagram& cld, double size);

StarPolygon polygon_from_cld(const CldDiagram& cld, double alpha);

// Fan segments (other than the first of each fan) are not traced closer
// than this to the centre. Adjacent directions are pi/16 apart, so two
// rays are 2 px apart at d0 = 32/pi, rounded down to 10.
inline constexpr double kDefaultTraceDistance = 10.0;

double min_trace_distance();

// Unrounded solution of 2 = d0 * (pi / 16).
double exact_trace_distance();

// 1-px digital line from a to b. The major axis (the larger true extent)
// is stepped one pixel at a time between the rounded endpoint coordinates;
// the minor coordinate is the rounded value of the true segment there.
void rasterize_segment(Point2 a, Point2 b, const std::function<void(int, int)>& plot);

// Pixels painted by the fan fill, clipped to a width x height canvas and
// returned in row-major order without duplicates.
//
// For each vertex pair (a, a+1 mod 32) the pivot segment centre -> vertex
// a+1 is divided into N = max(1, ceil(length)) one-pixel steps P_0..P_N,
// with P_0 the centre. Each P_i is joined to vertex a. For i >= 1 only the
// pixels at least d0 from the centre are kept.
std::vector<Position> fan_fill_pixels(const StarPolygon& poly, double d0, int width, int height);

void fan_fill(const StarPolygon& poly, Rgb color, double d0, RgbImage& canvas);

}  // namespace cldpb
