#pragma once

#include <cstdint>
#include <vector>

#include "cldpb/brush.hpp"
#include "cldpb/grid.hpp"
#include "cldpb/image.hpp"

namespace cldpb {

enum class RenderMode {
    cpb,    // fixed-radius discs
    cldpb,  // CLD star-polygon strokes
};

struct DefaultColor {
    enum class Kind { white, source, blend };

    Kind kind = Kind::white;
    double weight = 0.5;  // blend only: weight of the source pixel

    static DefaultColor white() { return {Kind::white, 0.0}; }
    static DefaultColor source() { return {Kind::source, 1.0}; }
    static DefaultColor blend(double weight) { return {Kind::blend, weight}; }

    friend bool operator==(const DefaultColor&, const DefaultColor&) = default;
};

struct RenderConfig {
    RenderMode mode = RenderMode::cldpb;
    double tau = 0.2;
    double size = 2.0;    // mean stroke radius in px (cldpb)
    double radius = 2.0;  // disc radius in px (cpb)
    GridSpec grid = GridSpec::for_stroke_size(2.0, 3, 0);
    FillMode fill_mode = FillMode::non_displaced;
    DefaultColor default_color = DefaultColor::white();
    double d0 = kDefaultTraceDistance;
    // Worker threads for stroke preparation; 0 picks the hardware count.
    // Never changes the output.
    int threads = 1;
    bool cache_cld = true;

    void validate() const;
};

// Output raster where each pixel is either painted or still unset.
class Canvas {
public:
    Canvas(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    void paint(Position p, Rgb color);
    bool painted(Position p) const { return painted_[index(p)] != 0; }
    Rgb color(Position p) const { return colors_[index(p)]; }
    std::size_t painted_count() const;

private:
    std::size_t index(Position p) const {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.x);
    }

    int width_;
    int height_;
    std::vector<Rgb> colors_;
    std::vector<unsigned char> painted_;
};

// Fills every unset pixel: white, the source pixel, or
// round_half_up(w * source + (1 - w) * 255) per channel.
RgbImage resolve_default(const Canvas& canvas, DefaultColor policy, const RgbImage& source);

// Pixels (u, v) with (u - cx)^2 + (v - cy)^2 <= r^2, clipped, row-major.
std::vector<Position> disc_pixels(Position center, double radius, int width, int height);

// Seeds of every step in canonical order: steps ascending, row-major
// within each step's grid.
std::vector<StrokeSeed> all_seeds(const RgbImage& img, const RenderConfig& cfg);

// Unresolved canvases, exposed for coverage analysis.
Canvas paint_cpb(const RgbImage& img, const RenderConfig& cfg);
Canvas paint_cldpb(const RgbImage& img, const RenderConfig& cfg);

RgbImage render_cpb(const RgbImage& img, const RenderConfig& cfg);
RgbImage render_cldpb(const RgbImage& img, const RenderConfig& cfg);
RgbImage render(const RgbImage& img, const RenderConfig& cfg);

}  // namespace cldpb
