#pragma once

#include <array>
#include <optional>

#include "cldpb/image.hpp"

namespace cldpb {

inline constexpr int kDirectionCount = 32;

struct Direction {
    double angle = 0.0;  // i * 2pi / 32
    double cos = 1.0;
    double sin = 0.0;
};

using DirectionTable = std::array<Direction, kDirectionCount>;

// The 32 sampling directions. Index 0 points along +x, index 8 along +y
// (down the rows). Axis-aligned entries carry exact 0 / +-1 components so
// that floor(r * component) is exact.
const DirectionTable& directions();

struct CoherenceLength {
    int length = 0;
    bool defined = false;

    friend bool operator==(const CoherenceLength&, const CoherenceLength&) = default;
};

// Coherence lengths at one pixel for all 32 directions.
//
// A defined entry is the smallest l >= 1 whose directional mean lies in the
// tau band around M0. An undefined entry records the last in-bounds l that
// was scanned: the ray either left the image or reached the scan cap. A ray
// that leaves the image at its first step reports 0.
struct CldDiagram {
    Position center;
    std::array<int, kDirectionCount> lengths{};
    std::array<bool, kDirectionCount> defined{};
    double tau = 0.0;

    long length_sum() const;

    friend bool operator==(const CldDiagram&, const CldDiagram&) = default;
};

// Mean of gray(x + floor(r cos), y + floor(r sin)) for r = 0..length, i.e.
// sum / (length + 1). Empty when any sample falls outside the field.
std::optional<double> local_moment(const GrayField& gray, Position p, int dir, int length);

// Tolerance band half-width tau * max(M0, 1).
double coherence_tolerance(double m0, double tau);

CoherenceLength coherence_length(const GrayField& gray, double m0, Position p, int dir, double tau,
                                 int max_length);

CldDiagram cld_at(const GrayField& gray, double m0, Position p, double tau, int max_length);

// ceil(hypot(width, height)); no ray stays in bounds longer than this.
int default_max_length(int width, int height);

}  // namespace cldpb
