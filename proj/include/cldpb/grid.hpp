#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cldpb/image.hpp"

namespace cldpb {

enum class FillMode {
    displaced,     // colour sampled at the undisplaced grid site
    non_displaced, // colour sampled where the stroke is placed
};

struct GridSpec {
    int step_count = 3;
    int spacing_min = 2;
    int spacing_max = 8;
    // Displacement bound. When empty, each step uses ceil(s_k / 2).
    std::optional<int> delta;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;

    // Spacing bounds tied to stroke size: [max(2, floor(size)), 4 * that].
    static GridSpec for_stroke_size(double size, int step_count, std::uint64_t seed);
};

struct StrokeSeed {
    Position base;
    Position placed;
    Rgb color;

    friend bool operator==(const StrokeSeed&, const StrokeSeed&) = default;
};

// Seedable generator with portable bounded draws. The engine is
// std::mt19937_64; each render step gets its own stream seeded through
// std::seed_seq{seed_lo32, seed_hi32, step}, and integers in [lo, hi] are
// drawn by rejection from the top of the 64-bit output, so the sequence
// does not depend on the standard library's distribution implementation.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/seed_seq(lo32,hi32,step)/reject-v1";

    explicit Rng(std::uint64_t seed);
    static Rng for_step(std::uint64_t master_seed, int step);

    // Uniform integer in [lo, hi], lo <= hi.
    int uniform_int(int lo, int hi);

private:
    explicit Rng(std::seed_seq& seq) : engine_(seq) {}

    std::mt19937_64 engine_;
};

// Positions (i*s, j*s), i, j >= 1, inside a width x height image, in
// 1-based terms, returned 0-based and row-major.
std::vector<Position> regular_grid(int width, int height, int spacing);

int sample_spacing(const GridSpec& spec, Rng& rng);

// Adds an independent (dx, dy) in [-delta, delta]^2 to every position.
// Entry i corresponds to grid[i]; positions that leave the image are
// empty. Both offsets are drawn for every point, dropped or not.
std::vector<std::optional<Position>> displace_grid(const std::vector<Position>& grid, int delta, int width,
                                                   int height, Rng& rng);

std::vector<StrokeSeed> make_seeds(const RgbImage& img, const std::vector<Position>& base_grid,
                                   const std::vector<std::optional<Position>>& displaced_grid, FillMode mode);

// One full step k (1-based): draw s_k, build G_k and G'_k, make seeds.
struct StepSeeds {
    int spacing = 0;
    int delta = 0;
    std::vector<StrokeSeed> seeds;
};

StepSeeds generate_step(const RgbImage& img, const GridSpec& spec, int step, FillMode mode);

}  // namespace cldpb
