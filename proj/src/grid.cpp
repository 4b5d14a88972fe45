#include "cldpb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cldpb {

void GridSpec::validate() const {
    if (step_count < 1) throw std::invalid_argument("step count must be >= 1");
    if (spacing_min < 1) throw std::invalid_argument("spacing_min must be >= 1");
    if (spacing_max < spacing_min) throw std::invalid_argument("spacing_max must be >= spacing_min");
    if (delta && *delta < 0) throw std::invalid_argument("delta must be >= 0");
}

GridSpec GridSpec::for_stroke_size(double size, int step_count, std::uint64_t seed) {
    const double clamped = std::clamp(size, 0.0, 1e6);
    const int base = std::max(2, static_cast<int>(std::floor(clamped)));
    GridSpec spec;
    spec.step_count = step_count;
    spec.spacing_min = base;
    spec.spacing_max = 4 * base;
    spec.seed = seed;
    return spec;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::for_step(std::uint64_t master_seed, int step) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed & 0xffffffffu),
                      static_cast<std::uint32_t>(master_seed >> 32), static_cast<std::uint32_t>(step)};
    return Rng(seq);
}

int Rng::uniform_int(int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    // Largest multiple of range that fits; values at or above it are redrawn.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<int>(lo + static_cast<std::int64_t>(x % range));
}

std::vector<Position> regular_grid(int width, int height, int spacing) {
    if (spacing < 1) throw std::invalid_argument("grid spacing must be >= 1");
    std::vector<Position> grid;
    const int cols = width / spacing;
    const int rows = height / spacing;
    grid.reserve(static_cast<std::size_t>(std::max(0, cols)) * static_cast<std::size_t>(std::max(0, rows)));
    for (int j = 1; j <= rows; ++j) {
        for (int i = 1; i <= cols; ++i) {
            grid.push_back({i * spacing - 1, j * spacing - 1});
        }
    }
    return grid;
}

int sample_spacing(const GridSpec& spec, Rng& rng) {
    return rng.uniform_int(spec.spacing_min, spec.spacing_max);
}

std::vector<std::optional<Position>> displace_grid(const std::vector<Position>& grid, int delta, int width,
                                                   int height, Rng& rng) {
    std::vector<std::optional<Position>> out;
    out.reserve(grid.size());
    for (const Position& p : grid) {
        if (delta == 0) {
            out.emplace_back(p);
            continue;
        }
        const int dx = rng.uniform_int(-delta, delta);
        const int dy = rng.uniform_int(-delta, delta);
        const Position moved{p.x + dx, p.y + dy};
        if (moved.x >= 0 && moved.y >= 0 && moved.x < width && moved.y < height) {
            out.emplace_back(moved);
        } else {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

std::vector<StrokeSeed> make_seeds(const RgbImage& img, const std::vector<Position>& base_grid,
                                   const std::vector<std::optional<Position>>& displaced_grid, FillMode mode) {
    if (base_grid.size() != displaced_grid.size()) {
        throw std::invalid_argument("base and displaced grids are not in correspondence");
    }
    std::vector<StrokeSeed> seeds;
    seeds.reserve(base_grid.size());
    for (std::size_t i = 0; i < base_grid.size(); ++i) {
        if (!displaced_grid[i]) continue;
        const Position base = base_grid[i];
        const Position placed = *displaced_grid[i];
        const Rgb color = mode == FillMode::displaced ? img.at(base) : img.at(placed);
        seeds.push_back({base, placed, color});
    }
    return seeds;
}

StepSeeds generate_step(const RgbImage& img, const GridSpec& spec, int step, FillMode mode) {
    Rng rng = Rng::for_step(spec.seed, step);
    StepSeeds out;
    out.spacing = sample_spacing(spec, rng);
    out.delta = spec.delta.value_or((out.spacing + 1) / 2);
    const auto base = regular_grid(img.width(), img.height(), out.spacing);
    const auto displaced = displace_grid(base, out.delta, img.width(), img.height(), rng);
    out.seeds = make_seeds(img, base, displaced, mode);
    return out;
}

}  // namespace cldpb
