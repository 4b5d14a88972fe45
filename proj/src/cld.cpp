#include "cldpb/cld.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cldpb {

namespace {

DirectionTable make_directions() {
    DirectionTable table{};
    for (int i = 0; i < kDirectionCount; ++i) {
        const double angle = i * (2.0 * std::numbers::pi / kDirectionCount);
        double c = std::cos(angle);
        double s = std::sin(angle);
        // cos(3pi/2) evaluates to -1.8e-16 in double, which floor() would
        // turn into a one-column shift of the whole ray.
        if (i % (kDirectionCount / 4) == 0) {
            c = std::round(c);
            s = std::round(s);
        }
        table[static_cast<std::size_t>(i)] = Direction{angle, c, s};
    }
    return table;
}

Position sample_at(Position p, const Direction& d, int r) {
    return {p.x + static_cast<int>(std::floor(r * d.cos)), p.y + static_cast<int>(std::floor(r * d.sin))};
}

void check_direction(int dir) {
    if (dir < 0 || dir >= kDirectionCount) throw std::out_of_range("direction index out of range");
}

}  // namespace

const DirectionTable& directions() {
    static const DirectionTable table = make_directions();
    return table;
}

long CldDiagram::length_sum() const {
    long sum = 0;
    for (int l : lengths) sum += l;
    return sum;
}

std::optional<double> local_moment(const GrayField& gray, Position p, int dir, int length) {
    check_direction(dir);
    if (length < 1) throw std::invalid_argument("moment length must be >= 1");
    const Direction& d = directions()[static_cast<std::size_t>(dir)];
    double sum = 0.0;
    for (int r = 0; r <= length; ++r) {
        const Position q = sample_at(p, d, r);
        if (!gray.contains(q.x, q.y)) return std::nullopt;
        sum += gray.at(q.x, q.y);
    }
    return sum / static_cast<double>(length + 1);
}

double coherence_tolerance(double m0, double tau) {
    return tau * std::max(m0, 1.0);
}

CoherenceLength coherence_length(const GrayField& gray, double m0, Position p, int dir, double tau,
                                 int max_length) {
    check_direction(dir);
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    if (max_length < 1) throw std::invalid_argument("max_length must be >= 1");
    if (!gray.contains(p.x, p.y)) throw std::out_of_range("pixel outside field");

    const Direction& d = directions()[static_cast<std::size_t>(dir)];
    const double tolerance = coherence_tolerance(m0, tau);
    // Samples are accumulated in r order, so the sum at each length equals
    // the one local_moment() would form from scratch.
    double sum = gray.at(p.x, p.y);
    for (int length = 1; length <= max_length; ++length) {
        const Position q = sample_at(p, d, length);
        if (!gray.contains(q.x, q.y)) return {length - 1, false};
        sum += gray.at(q.x, q.y);
        const double moment = sum / static_cast<double>(length + 1);
        if (std::abs(moment - m0) <= tolerance) return {length, true};
    }
    return {max_length, false};
}

CldDiagram cld_at(const GrayField& gray, double m0, Position p, double tau, int max_length) {
    CldDiagram diagram;
    diagram.center = p;
    diagram.tau = tau;
    for (int i = 0; i < kDirectionCount; ++i) {
        const CoherenceLength cl = coherence_length(gray, m0, p, i, tau, max_length);
        diagram.lengths[static_cast<std::size_t>(i)] = cl.length;
        diagram.defined[static_cast<std::size_t>(i)] = cl.defined;
    }
    return diagram;
}

int default_max_length(int width, int height) {
    return static_cast<int>(std::ceil(std::hypot(static_cast<double>(width), static_cast<double>(height))));
}

}  // namespace cldpb
