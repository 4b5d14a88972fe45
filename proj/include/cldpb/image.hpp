#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cldpb {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kBlack{0, 0, 0};

// Integer pixel address. x is the column, y the row; both 0-based.
struct Position {
    int x = 0;
    int y = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

// Three-channel 8-bit raster stored row-major.
class RgbImage {
public:
    RgbImage(int width, int height, Rgb fill = kBlack);
    RgbImage(int width, int height, std::vector<Rgb> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return pixels_.size(); }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool contains(Position p) const { return contains(p.x, p.y); }

    const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
    Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
    const Rgb& at(Position p) const { return at(p.x, p.y); }
    Rgb& at(Position p) { return at(p.x, p.y); }

    std::span<const Rgb> pixels() const { return pixels_; }
    std::span<Rgb> pixels() { return pixels_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<Rgb> pixels_;
};

// Real-valued brightness raster, values in [0, 255].
class GrayField {
public:
    GrayField(int width, int height, double fill = 0.0);
    GrayField(int width, int height, std::vector<double> values);

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    double at(int x, int y) const { return values_[index(x, y)]; }
    double& at(int x, int y) { return values_[index(x, y)]; }

    std::span<const double> values() const { return values_; }

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<double> values_;
};

// Per-pixel mean of the three channels, kept real.
GrayField to_gray(const RgbImage& img);

// Mean brightness over the whole field. Exact for constant fields and
// always within [min, max] of the values.
double global_mean(const GrayField& gray);

}  // namespace cldpb
