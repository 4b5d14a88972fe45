#include "cldpb/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cldpb {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be positive, got " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

std::size_t area(int width, int height) {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(area(width, height), fill);
}

RgbImage::RgbImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != area(width, height)) {
        throw std::invalid_argument("pixel buffer size does not match image dimensions");
    }
}

GrayField::GrayField(int width, int height, double fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    values_.assign(area(width, height), fill);
}

GrayField::GrayField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dimensions(width, height);
    if (values_.size() != area(width, height)) {
        throw std::invalid_argument("value buffer size does not match field dimensions");
    }
}

GrayField to_gray(const RgbImage& img) {
    std::vector<double> values;
    values.reserve(img.pixel_count());
    for (const Rgb& p : img.pixels()) {
        const int sum = int{p.r} + int{p.g} + int{p.b};
        values.push_back(static_cast<double>(sum) / 3.0);
    }
    return GrayField(img.width(), img.height(), std::move(values));
}

double global_mean(const GrayField& gray) {
    // Running mean: m_{k+1} = m_k + (v - m_k) / (k + 1). A constant field
    // never moves the estimate, so M0 == c exactly and zero-tolerance
    // comparisons against local means of the same constant hold.
    const auto values = gray.values();
    double mean = 0.0;
    double lo = values.front();
    double hi = values.front();
    std::size_t k = 0;
    for (double v : values) {
        ++k;
        mean += (v - mean) / static_cast<double>(k);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::clamp(mean, lo, hi);
}

}  // namespace cldpb
