#pragma once

// Sampling-based convexity / quasi-convexity classifiers with counterexample
// witnesses. A deterministic grid sweep (65x65, midpoint lambda) runs before
// the seeded random trials so that failures on the builtin corpus do not
// depend on the seed. "pass" means no violation was found, not a proof.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "quad.hpp"
#include "rng.hpp"

namespace hh {

constexpr int kClassifierGrid = 65;
constexpr double kViolationTol = 1e-9;

enum class Status { Pass, Fail, Inconclusive };

struct Witness {
    std::array<double, 2> p{};  // (x, y)
    std::array<double, 2> q{};  // (z, w)
    double lambda = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct Verdict {
    Status status = Status::Pass;
    std::optional<Witness> witness;
    long trials = 0;
};

using Bivariate = std::function<double(double, double)>;

namespace detail {

inline double grid_coord(double lo, double hi, int i, int n) {
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}

// lhs > rhs + tol is a violation of "f(segment point) <= rhs".
template <typename Check>
Verdict falsify(Check&& check_one, long random_trials, const Rect& r, std::uint64_t seed,
                bool coordinate_segments) {
    Verdict v;
    const int n = kClassifierGrid;

    // grid phase: endpoints on the 65x65 grid, lambda = 1/2
    if (coordinate_segments) {
        // segments along grid rows and columns
        for (int k = 0; k < n && v.status == Status::Pass; ++k) {
            double y = grid_coord(r.c, r.d, k, n);
            for (int i = 0; i < n && v.status == Status::Pass; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double u = grid_coord(r.a, r.b, i, n), w = grid_coord(r.a, r.b, j, n);
                    ++v.trials;
                    if (auto wit = check_one({u, y}, {w, y}, 0.5)) {
                        v.status = Status::Fail;
                        v.witness = *wit;
                        break;
                    }
                }
        }
        for (int k = 0; k < n && v.status == Status::Pass; ++k) {
            double x = grid_coord(r.a, r.b, k, n);
            for (int i = 0; i < n && v.status == Status::Pass; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double u = grid_coord(r.c, r.d, i, n), w = grid_coord(r.c, r.d, j, n);
                    ++v.trials;
                    if (auto wit = check_one({x, u}, {x, w}, 0.5)) {
                        v.status = Status::Fail;
                        v.witness = *wit;
                        break;
                    }
                }
        }
    } else {
        // joint segments: grid rows, columns and the two main diagonals
        auto sweep_pairs = [&](auto&& point_at) {
            for (int i = 0; i < n && v.status == Status::Pass; ++i)
                for (int j = i + 1; j < n; ++j) {
                    ++v.trials;
                    if (auto wit = check_one(point_at(i), point_at(j), 0.5)) {
                        v.status = Status::Fail;
                        v.witness = *wit;
                        return;
                    }
                }
        };
        for (int k = 0; k < n && v.status == Status::Pass; ++k) {
            double y = grid_coord(r.c, r.d, k, n);
            sweep_pairs([&](int i) {
                return std::array<double, 2>{grid_coord(r.a, r.b, i, n), y};
            });
        }
        for (int k = 0; k < n && v.status == Status::Pass; ++k) {
            double x = grid_coord(r.a, r.b, k, n);
            sweep_pairs([&](int i) {
                return std::array<double, 2>{x, grid_coord(r.c, r.d, i, n)};
            });
        }
        if (v.status == Status::Pass)
            sweep_pairs([&](int i) {
                return std::array<double, 2>{grid_coord(r.a, r.b, i, n), grid_coord(r.c, r.d, i, n)};
            });
        if (v.status == Status::Pass)
            sweep_pairs([&](int i) {
                return std::array<double, 2>{grid_coord(r.a, r.b, i, n),
                                             grid_coord(r.c, r.d, n - 1 - i, n)};
            });
    }
    if (v.status == Status::Fail) return v;

    // random phase
    std::mt19937_64 rng(seed);
    for (long t = 0; t < random_trials; ++t) {
        std::array<double, 2> p, q;
        if (coordinate_segments) {
            if ((rng() & 1u) == 0u) {
                double y = uniform(rng, r.c, r.d);
                p = {uniform(rng, r.a, r.b), y};
                q = {uniform(rng, r.a, r.b), y};
            } else {
                double x = uniform(rng, r.a, r.b);
                p = {x, uniform(rng, r.c, r.d)};
                q = {x, uniform(rng, r.c, r.d)};
            }
        } else {
            p = {uniform(rng, r.a, r.b), uniform(rng, r.c, r.d)};
            q = {uniform(rng, r.a, r.b), uniform(rng, r.c, r.d)};
        }
        double lambda = uniform01(rng);
        ++v.trials;
        if (auto wit = check_one(p, q, lambda)) {
            v.status = Status::Fail;
            v.witness = *wit;
            return v;
        }
    }
    return v;
}

}  // namespace detail

// Definition-style joint segment condition:
//   f(l*p + (1-l)*q) <= max{f(p), f(q)}
inline Verdict check_quasiconvex_joint(const Bivariate& f, const Rect& r, long trials,
                                       std::uint64_t seed) {
    if (trials < 1000) throw std::invalid_argument("check_quasiconvex_joint: trials >= 1000");
    auto check_one = [&](std::array<double, 2> p, std::array<double, 2> q,
                         double l) -> std::optional<Witness> {
        double mx = l * p[0] + (1 - l) * q[0];
        double my = l * p[1] + (1 - l) * q[1];
        double lhs = f(mx, my);
        double rhs = std::max(f(p[0], p[1]), f(q[0], q[1]));
        if (lhs > rhs + kViolationTol) return Witness{p, q, l, lhs, rhs};
        return std::nullopt;
    };
    return detail::falsify(check_one, trials, r, seed, /*coordinate_segments=*/false);
}

// Partial-map quasi-convexity: both x -> f(x,y) and y -> f(x,y) satisfy the
// 1D condition f(l*u + (1-l)*v) <= max of the endpoint values.
inline Verdict check_quasiconvex_coords(const Bivariate& f, const Rect& r, long trials,
                                        std::uint64_t seed) {
    if (trials < 1000) throw std::invalid_argument("check_quasiconvex_coords: trials >= 1000");
    auto check_one = [&](std::array<double, 2> p, std::array<double, 2> q,
                         double l) -> std::optional<Witness> {
        double mx = l * p[0] + (1 - l) * q[0];
        double my = l * p[1] + (1 - l) * q[1];
        double lhs = f(mx, my);
        double rhs = std::max(f(p[0], p[1]), f(q[0], q[1]));
        if (lhs > rhs + kViolationTol) return Witness{p, q, l, lhs, rhs};
        return std::nullopt;
    };
    return detail::falsify(check_one, trials, r, seed, /*coordinate_segments=*/true);
}

// Partial-map convexity: f(l*u + (1-l)*v) <= l*f(u) + (1-l)*f(v) on every
// axis-aligned segment.
inline Verdict check_convex_coords(const Bivariate& f, const Rect& r, long trials,
                                   std::uint64_t seed) {
    if (trials < 1000) throw std::invalid_argument("check_convex_coords: trials >= 1000");
    auto check_one = [&](std::array<double, 2> p, std::array<double, 2> q,
                         double l) -> std::optional<Witness> {
        double mx = l * p[0] + (1 - l) * q[0];
        double my = l * p[1] + (1 - l) * q[1];
        double lhs = f(mx, my);
        double rhs = l * f(p[0], p[1]) + (1 - l) * f(q[0], q[1]);
        if (lhs > rhs + kViolationTol) return Witness{p, q, l, lhs, rhs};
        return std::nullopt;
    };
    return detail::falsify(check_one, trials, r, seed, /*coordinate_segments=*/true);
}

// Re-evaluate a witness against the condition it claims to violate.
inline bool reverify_quasiconvex_witness(const Bivariate& f, const Witness& w) {
    double mx = w.lambda * w.p[0] + (1 - w.lambda) * w.q[0];
    double my = w.lambda * w.p[1] + (1 - w.lambda) * w.q[1];
    return f(mx, my) > std::max(f(w.p[0], w.p[1]), f(w.q[0], w.q[1])) + kViolationTol;
}

inline bool reverify_convex_witness(const Bivariate& f, const Witness& w) {
    double mx = w.lambda * w.p[0] + (1 - w.lambda) * w.q[0];
    double my = w.lambda * w.p[1] + (1 - w.lambda) * w.q[1];
    double rhs = w.lambda * f(w.p[0], w.p[1]) + (1 - w.lambda) * f(w.q[0], w.q[1]);
    return f(mx, my) > rhs + kViolationTol;
}

}  // namespace hh
