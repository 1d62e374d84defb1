#pragma once

// Deterministic tensor-product Gauss-Legendre quadrature over rectangles.
// Panels double per refinement level; the error estimate is the absolute
// difference between the two finest levels. Integrands with an interior
// kink (the |1-2t| kernel) are handled by passing explicit split points
// so that every panel boundary respects the kink.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace hh {

struct Rect {
    double a, b;  // x-range
    double c, d;  // y-range

    Rect(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!(a < b) || !(c < d)) throw std::invalid_argument("Rect requires a < b and c < d");
    }

    double width() const { return b - a; }
    double height() const { return d - c; }
    double area() const { return (b - a) * (d - c); }
    double mid_x() const { return 0.5 * (a + b); }
    double mid_y() const { return 0.5 * (c + d); }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;       // per segment, per axis
    bool converged = true;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1,1], ascending
    std::vector<double> weights;  // positive, sum to 2
};

constexpr int kMinGaussOrder = 2;
constexpr int kMaxGaussOrder = 32;
constexpr int kPanelCap = 1 << 14;
constexpr int kDefaultGaussOrder = 8;

// Nodes are the roots of the Legendre polynomial P_n, found by Newton
// iteration from the Chebyshev-like initial guess; weights follow from
// w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
inline const GaussRule& gauss_rule(int n) {
    if (n < kMinGaussOrder || n > kMaxGaussOrder)
        throw std::invalid_argument("gauss_rule: unsupported order " + std::to_string(n));
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;  // initial guesses enumerate roots from +1 down
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace detail {

// Segment boundaries [lo, splits..., hi]; splits outside (lo,hi) are dropped.
inline std::vector<double> segment_bounds(double lo, double hi, const std::vector<double>& splits) {
    std::vector<double> bounds{lo};
    std::vector<double> s = splits;
    std::sort(s.begin(), s.end());
    for (double v : s)
        if (v > lo && v < hi) bounds.push_back(v);
    bounds.push_back(hi);
    return bounds;
}

template <typename F>
double composite_gauss1d(F&& g, const std::vector<double>& bounds, int panels_per_segment, int order) {
    const GaussRule& rule = gauss_rule(order);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        double seg_lo = bounds[s], seg_hi = bounds[s + 1];
        double h = (seg_hi - seg_lo) / panels_per_segment;
        for (int p = 0; p < panels_per_segment; ++p) {
            double plo = seg_lo + p * h;
            double mid = plo + 0.5 * h, half = 0.5 * h;
            double acc = 0.0;
            for (int i = 0; i < order; ++i) acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
            total += half * acc;
        }
    }
    return total;
}

}  // namespace detail

// Single tensor-product Gauss panel over the whole rectangle, no refinement.
// Exact for polynomials of per-variable degree <= 2n-1.
template <typename F>
double tensor_gauss2d(F&& f, const Rect& r, int order) {
    const GaussRule& rule = gauss_rule(order);
    double hx = 0.5 * r.width(), hy = 0.5 * r.height();
    double mx = r.mid_x(), my = r.mid_y();
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        double xi = mx + hx * rule.nodes[i];
        double row = 0.0;
        for (int j = 0; j < order; ++j)
            row += rule.weights[j] * f(xi, my + hy * rule.nodes[j]);
        total += rule.weights[i] * row;
    }
    return hx * hy * total;
}

template <typename F>
QuadResult integrate1d(F&& g, double lo, double hi, double tol,
                       const std::vector<double>& splits = {}, int order = kDefaultGaussOrder) {
    if (!(lo < hi)) throw std::invalid_argument("integrate1d: lo < hi required");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate1d: tol must be positive");
    auto bounds = detail::segment_bounds(lo, hi, splits);

    QuadResult res;
    double prev = detail::composite_gauss1d(g, bounds, 1, order);
    for (int panels = 2; panels <= kPanelCap; panels *= 2) {
        double cur = detail::composite_gauss1d(g, bounds, panels, order);
        res.value = cur;
        res.error_estimate = std::fabs(cur - prev);
        res.panels = panels;
        if (res.error_estimate <= tol) return res;
        prev = cur;
    }
    res.converged = false;
    return res;
}

template <typename F>
QuadResult integrate2d(F&& f, const Rect& r, double tol, const std::vector<double>& xsplits = {},
                       const std::vector<double>& ysplits = {}, int order = kDefaultGaussOrder) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate2d: tol must be positive");
    auto xb = detail::segment_bounds(r.a, r.b, xsplits);
    auto yb = detail::segment_bounds(r.c, r.d, ysplits);

    auto level_value = [&](int panels) {
        auto outer = [&](double x) {
            auto inner = [&](double y) { return f(x, y); };
            return detail::composite_gauss1d(inner, yb, panels, order);
        };
        return detail::composite_gauss1d(outer, xb, panels, order);
    };

    QuadResult res;
    double prev = level_value(1);
    for (int panels = 2; panels <= kPanelCap; panels *= 2) {
        double cur = level_value(panels);
        res.value = cur;
        res.error_estimate = std::fabs(cur - prev);
        res.panels = panels;
        if (res.error_estimate <= tol) return res;
        prev = cur;
    }
    res.converged = false;
    return res;
}

}  // namespace hh
