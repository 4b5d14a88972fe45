#include "cldpb/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "cldpb/cld.hpp"

namespace cldpb {

namespace {

int worker_count(int requested, std::size_t jobs) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(1, jobs)));
    return n;
}

// Runs fn(i) for i in [0, count) over `threads` workers. Each index is
// handled by exactly one worker; results must go to per-index slots.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const int workers = worker_count(threads, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(workers)) fn(i);
        });
    }
}

std::uint8_t blend_channel(std::uint8_t source, double weight) {
    const double v = weight * source + (1.0 - weight) * 255.0;
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

std::size_t pixel_index(Position p, int width) {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(p.x);
}

}  // namespace

void RenderConfig::validate() const {
    if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
    if (!(size > 0.0)) throw std::invalid_argument("size must be > 0");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
    if (!(d0 >= 0.0)) throw std::invalid_argument("d0 must be >= 0");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (default_color.kind == DefaultColor::Kind::blend &&
        !(default_color.weight >= 0.0 && default_color.weight <= 1.0)) {
        throw std::invalid_argument("blend weight must be in [0, 1]");
    }
    grid.validate();
}

Canvas::Canvas(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("canvas dimensions must be positive");
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    colors_.assign(n, kWhite);
    painted_.assign(n, 0);
}

void Canvas::paint(Position p, Rgb color) {
    const std::size_t i = index(p);
    colors_[i] = color;
    painted_[i] = 1;
}

std::size_t Canvas::painted_count() const {
    return static_cast<std::size_t>(std::count(painted_.begin(), painted_.end(), 1));
}

RgbImage resolve_default(const Canvas& canvas, DefaultColor policy, const RgbImage& source) {
    if (source.width() != canvas.width() || source.height() != canvas.height()) {
        throw std::invalid_argument("canvas and source dimensions differ");
    }
    if (policy.kind == DefaultColor::Kind::blend && !(policy.weight >= 0.0 && policy.weight <= 1.0)) {
        throw std::invalid_argument("blend weight must be in [0, 1]");
    }
    RgbImage out(canvas.width(), canvas.height());
    for (int y = 0; y < canvas.height(); ++y) {
        for (int x = 0; x < canvas.width(); ++x) {
            const Position p{x, y};
            if (canvas.painted(p)) {
                out.at(p) = canvas.color(p);
                continue;
            }
            const Rgb& s = source.at(p);
            switch (policy.kind) {
                case DefaultColor::Kind::white:
                    out.at(p) = kWhite;
                    break;
                case DefaultColor::Kind::source:
                    out.at(p) = s;
                    break;
                case DefaultColor::Kind::blend:
                    out.at(p) = Rgb{blend_channel(s.r, policy.weight), blend_channel(s.g, policy.weight),
                                    blend_channel(s.b, policy.weight)};
                    break;
            }
        }
    }
    return out;
}

std::vector<Position> disc_pixels(Position center, double radius, int width, int height) {
    std::vector<Position> pixels;
    const int reach = static_cast<int>(std::floor(radius));
    const double r_sq = radius * radius;
    const int y0 = std::max(0, center.y - reach);
    const int y1 = std::min(height - 1, center.y + reach);
    const int x0 = std::max(0, center.x - reach);
    const int x1 = std::min(width - 1, center.x + reach);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - center.x;
            const double dy = y - center.y;
            if (dx * dx + dy * dy <= r_sq) pixels.push_back({x, y});
        }
    }
    return pixels;
}

std::vector<StrokeSeed> all_seeds(const RgbImage& img, const RenderConfig& cfg) {
    std::vector<StrokeSeed> seeds;
    for (int k = 1; k <= cfg.grid.step_count; ++k) {
        StepSeeds step = generate_step(img, cfg.grid, k, cfg.fill_mode);
        seeds.insert(seeds.end(), step.seeds.begin(), step.seeds.end());
    }
    return seeds;
}

Canvas paint_cpb(const RgbImage& img, const RenderConfig& cfg) {
    cfg.validate();
    Canvas canvas(img.width(), img.height());
    for (const StrokeSeed& seed : all_seeds(img, cfg)) {
        for (const Position& p : disc_pixels(seed.placed, cfg.radius, img.width(), img.height())) {
            canvas.paint(p, seed.color);
        }
    }
    return canvas;
}

Canvas paint_cldpb(const RgbImage& img, const RenderConfig& cfg) {
    cfg.validate();
    const GrayField gray = to_gray(img);
    const double m0 = global_mean(gray);
    const int max_length = default_max_length(img.width(), img.height());
    const std::vector<StrokeSeed> seeds = all_seeds(img, cfg);

    // Diagrams depend only on the source and the pixel, so each distinct
    // placed position is analysed once when caching is on.
    std::vector<const CldDiagram*> diagram_of(seeds.size(), nullptr);
    std::vector<CldDiagram> diagrams;
    if (cfg.cache_cld) {
        std::unordered_map<std::size_t, std::size_t> slot_of_pixel;
        std::vector<Position> unique_positions;
        std::vector<std::size_t> slot_of_seed(seeds.size());
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const auto [it, inserted] =
                slot_of_pixel.try_emplace(pixel_index(seeds[i].placed, img.width()), unique_positions.size());
            if (inserted) unique_positions.push_back(seeds[i].placed);
            slot_of_seed[i] = it->second;
        }
        diagrams.resize(unique_positions.size());
        parallel_for(unique_positions.size(), cfg.threads, [&](std::size_t i) {
            diagrams[i] = cld_at(gray, m0, unique_positions[i], cfg.tau, max_length);
        });
        for (std::size_t i = 0; i < seeds.size(); ++i) diagram_of[i] = &diagrams[slot_of_seed[i]];
    } else {
        diagrams.resize(seeds.size());
        parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
            diagrams[i] = cld_at(gray, m0, seeds[i].placed, cfg.tau, max_length);
        });
        for (std::size_t i = 0; i < seeds.size(); ++i) diagram_of[i] = &diagrams[i];
    }

    std::vector<std::vector<Position>> strokes(seeds.size());
    parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
        const CldDiagram& cld = *diagram_of[i];
        // Every ray left the image at once: nothing to draw.
        if (cld.length_sum() == 0) return;
        const StarPolygon poly = polygon_from_cld(cld, scale_for_size(cld, cfg.size));
        strokes[i] = fan_fill_pixels(poly, cfg.d0, img.width(), img.height());
    });

    // Later strokes override earlier ones, so application stays sequential.
    Canvas canvas(img.width(), img.height());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        for (const Position& p : strokes[i]) canvas.paint(p, seeds[i].color);
    }
    return canvas;
}

RgbImage render_cpb(const RgbImage& img, const RenderConfig& cfg) {
    return resolve_default(paint_cpb(img, cfg), cfg.default_color, img);
}

RgbImage render_cldpb(const RgbImage& img, const RenderConfig& cfg) {
    return resolve_default(paint_cldpb(img, cfg), cfg.default_color, img);
}

RgbImage render(const RgbImage& img, const RenderConfig& cfg) {
    return cfg.mode == RenderMode::cpb ? render_cpb(img, cfg) : render_cldpb(img, cfg);
}

}  // namespace cldpb
