#pragma once

// Mixed partials, corner maxima and empirical Lipschitz constants.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "expr.hpp"
#include "quad.hpp"
#include "rng.hpp"

namespace hh {

inline ExprPtr mixed_partial(const ExprPtr& f) {
    return differentiate(differentiate(f, 'x'), 'y');
}

struct CornerMax {
    double value = 0.0;                     // max over corners of |fts|^q
    std::array<double, 2> argmax_corner{};  // (x, y)
    double q = 1.0;
};

// Corners visited in the order (a,c), (a,d), (b,c), (b,d); ties keep the
// earliest corner.
inline CornerMax corner_max(const ExprPtr& fts, const Rect& r, double q = 1.0) {
    if (!(q >= 1.0)) throw std::invalid_argument("corner_max: q >= 1 required");
    const std::array<std::array<double, 2>, 4> corners{
        {{r.a, r.c}, {r.a, r.d}, {r.b, r.c}, {r.b, r.d}}};
    CornerMax best;
    best.q = q;
    best.value = -1.0;
    for (const auto& p : corners) {
        double v = std::pow(std::fabs(eval(fts, p[0], p[1])), q);
        if (v > best.value) {
            best.value = v;
            best.argmax_corner = p;
        }
    }
    return best;
}

struct LipschitzEstimate {
    double L1 = 0.0;  // x-direction
    double L2 = 0.0;  // y-direction
    int samples = 0;
};

// Empirical per-coordinate Lipschitz constants from axis-aligned pairs.
// Each difference quotient is bounded by the true sup-gradient, so the
// estimate approaches it from below.
template <typename F>
LipschitzEstimate estimate_lipschitz(F&& f, const Rect& r, int samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("estimate_lipschitz: samples >= 100 required");
    std::mt19937_64 rng(seed);
    LipschitzEstimate est;
    est.samples = samples;
    for (int i = 0; i < samples; ++i) {
        double y = uniform(rng, r.c, r.d);
        double x1 = uniform(rng, r.a, r.b);
        double x2 = uniform(rng, r.a, r.b);
        if (std::fabs(x1 - x2) > 1e-12)
            est.L1 = std::max(est.L1, std::fabs(f(x1, y) - f(x2, y)) / std::fabs(x1 - x2));
        double x = uniform(rng, r.a, r.b);
        double y1 = uniform(rng, r.c, r.d);
        double y2 = uniform(rng, r.c, r.d);
        if (std::fabs(y1 - y2) > 1e-12)
            est.L2 = std::max(est.L2, std::fabs(f(x, y1) - f(x, y2)) / std::fabs(y1 - y2));
    }
    return est;
}

}  // namespace hh
