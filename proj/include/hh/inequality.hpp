#pragma once

// The integral identity, the trapezoid-type gap, the four bound variants
// and the five-member midpoint/endpoint chain.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "calculus.hpp"
#include "convexity.hpp"
#include "expr.hpp"
#include "quad.hpp"

namespace hh {

constexpr double kDefaultQuadTol = 1e-9;
constexpr double kMarginTol = 1e-7;  // pass/inconclusive separation

struct GapDecomposition {
    double corner_avg = 0.0;
    double integral_mean = 0.0;
    double edge_term_A = 0.0;
    double gap = 0.0;  // corner_avg + integral_mean - edge_term_A, sign kept
    bool converged = true;
};

inline GapDecomposition trapezoid_gap(const ExprPtr& f, const Rect& r, double tol = kDefaultQuadTol) {
    GapDecomposition g;
    g.corner_avg =
        0.25 * (eval(f, r.a, r.c) + eval(f, r.a, r.d) + eval(f, r.b, r.c) + eval(f, r.b, r.d));

    QuadResult mean = integrate2d([&](double x, double y) { return eval(f, x, y); }, r, tol);
    g.integral_mean = mean.value / r.area();

    QuadResult ex =
        integrate1d([&](double x) { return eval(f, x, r.c) + eval(f, x, r.d); }, r.a, r.b, tol);
    QuadResult ey =
        integrate1d([&](double y) { return eval(f, r.a, y) + eval(f, r.b, y); }, r.c, r.d, tol);
    g.edge_term_A = 0.5 * (ex.value / r.width() + ey.value / r.height());

    g.gap = g.corner_avg + g.integral_mean - g.edge_term_A;
    g.converged = mean.converged && ex.converged && ey.converged;
    return g;
}

struct IdentityCheck {
    double lhs = 0.0;       // signed gap
    double rhs = 0.0;       // kernel-weighted integral of the mixed partial
    double residual = 0.0;  // |lhs - rhs|
    bool converged = true;
};

// Both sides of the gap identity: the trapezoid-type gap must equal
//   (b-a)(d-c)/4 * \int\int (1-2t)(1-2s) f_ts(ta+(1-t)b, sc+(1-s)d) dt ds.
inline IdentityCheck lemma1_residual(const ExprPtr& f, const Rect& r, double tol = kDefaultQuadTol) {
    IdentityCheck out;
    GapDecomposition g = trapezoid_gap(f, r, tol);
    out.lhs = g.gap;

    ExprPtr fts = mixed_partial(f);
    Rect unit(0.0, 1.0, 0.0, 1.0);
    auto integrand = [&](double t, double s) {
        double x = t * r.a + (1 - t) * r.b;
        double y = s * r.c + (1 - s) * r.d;
        return (1 - 2 * t) * (1 - 2 * s) * eval(fts, x, y);
    };
    QuadResult k = integrate2d(integrand, unit, tol, {0.5}, {0.5});
    out.rhs = 0.25 * r.area() * k.value;
    out.residual = std::fabs(out.lhs - out.rhs);
    out.converged = g.converged && k.converged;
    return out;
}

enum class BoundVariant { Abs, Holder, HolderRelaxed, PowerMean };

inline const char* variant_name(BoundVariant v) {
    switch (v) {
        case BoundVariant::Abs: return "ABS";
        case BoundVariant::Holder: return "HOLDER";
        case BoundVariant::HolderRelaxed: return "HOLDER_RELAXED";
        case BoundVariant::PowerMean: return "POWER_MEAN";
    }
    return "?";
}

struct BoundParams {
    double p = 2.0;  // Holder only, p > 1
    double q = 2.0;  // conjugate exponent, or the power-mean exponent (q >= 1)
};

namespace detail {

inline double bound_exponent_q(BoundVariant variant, const BoundParams& params) {
    switch (variant) {
        case BoundVariant::Abs: return 1.0;
        case BoundVariant::Holder: {
            if (!(params.p > 1.0)) throw std::invalid_argument("HOLDER requires p > 1");
            return params.p / (params.p - 1.0);
        }
        case BoundVariant::HolderRelaxed:
        case BoundVariant::PowerMean:
            if (!(params.q >= 1.0)) throw std::invalid_argument("q >= 1 required");
            return params.q;
    }
    return 1.0;
}

inline double bound_constant(BoundVariant variant, const Rect& r, const BoundParams& params) {
    switch (variant) {
        case BoundVariant::Abs: return r.area() / 16.0;
        case BoundVariant::Holder:
            return r.area() / (4.0 * std::pow(params.p + 1.0, 2.0 / params.p));
        case BoundVariant::HolderRelaxed: return r.area() / 4.0;
        case BoundVariant::PowerMean: return r.area() / 16.0;
    }
    return 0.0;
}

}  // namespace detail

// Right-hand side with the four-corner maximum of |f_ts|^q.
inline double bound_rhs(BoundVariant variant, const ExprPtr& f, const Rect& r,
                        const BoundParams& params = {}) {
    double q = detail::bound_exponent_q(variant, params);
    CornerMax m = corner_max(mixed_partial(f), r, q);
    return detail::bound_constant(variant, r, params) * std::pow(m.value, 1.0 / q);
}

enum class CheckStatus { Pass, Fail, Inconclusive, Skipped };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
        case CheckStatus::Skipped: return "skip";
    }
    return "?";
}

struct BoundCheck {
    BoundVariant variant = BoundVariant::Abs;
    double p = 0.0;  // 0 when not applicable
    double q = 1.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    CheckStatus status = CheckStatus::Skipped;
    // The theorem statements print the two arguments (a,b) and (c,d); the
    // four-corner maximum dominates that pair. Both are reported.
    std::optional<double> rhs_printed_pair;
    std::optional<Witness> hypothesis_witness;  // set when status == Skipped
    long hypothesis_trials = 0;
};

inline BoundCheck check_bound(BoundVariant variant, const ExprPtr& f, const Rect& r,
                              const BoundParams& params = {}, double tol = kDefaultQuadTol,
                              long hypothesis_trials = 10000, std::uint64_t seed = 42) {
    BoundCheck out;
    out.variant = variant;
    out.q = detail::bound_exponent_q(variant, params);
    if (variant == BoundVariant::Holder) out.p = params.p;

    ExprPtr fts = mixed_partial(f);
    double q = out.q;
    Bivariate hyp = [&fts, q](double x, double y) {
        return std::pow(std::fabs(eval(fts, x, y)), q);
    };
    Verdict h = check_quasiconvex_coords(hyp, r, hypothesis_trials, seed);
    out.hypothesis_trials = h.trials;
    if (h.status == Status::Fail) {
        out.status = CheckStatus::Skipped;
        out.hypothesis_witness = h.witness;
        return out;
    }

    out.lhs = std::fabs(trapezoid_gap(f, r, tol).gap);
    out.rhs = bound_rhs(variant, f, r, params);
    out.margin = out.rhs - out.lhs;
    if (std::fabs(out.margin) < kMarginTol)
        out.status = CheckStatus::Inconclusive;
    else
        out.status = out.margin >= 0 ? CheckStatus::Pass : CheckStatus::Fail;

    // informational: the RHS as printed, evaluating f_ts at (a,b) and (c,d)
    try {
        double m = std::max(std::pow(std::fabs(eval(fts, r.a, r.b)), q),
                            std::pow(std::fabs(eval(fts, r.c, r.d)), q));
        out.rhs_printed_pair =
            detail::bound_constant(variant, r, params) * std::pow(m, 1.0 / q);
    } catch (const EvalDomainError&) {
        out.rhs_printed_pair = std::nullopt;
    }
    return out;
}

struct ChainResult {
    std::array<double, 5> v{};  // midpoint, mid-line means, integral mean, edge means, corners
    bool monotone = false;
    CheckStatus status = CheckStatus::Skipped;
    std::optional<Witness> hypothesis_witness;
};

inline ChainResult check_chain(const ExprPtr& f, const Rect& r, double tol = kDefaultQuadTol,
                               long hypothesis_trials = 10000, std::uint64_t seed = 42,
                               double chain_tol = kMarginTol) {
    ChainResult out;
    Bivariate fb = [&f](double x, double y) { return eval(f, x, y); };
    Verdict h = check_convex_coords(fb, r, hypothesis_trials, seed);
    if (h.status == Status::Fail) {
        out.status = CheckStatus::Skipped;
        out.hypothesis_witness = h.witness;
        return out;
    }

    double mx = r.mid_x(), my = r.mid_y();
    out.v[0] = eval(f, mx, my);
    double mid_x_line = integrate1d([&](double x) { return eval(f, x, my); }, r.a, r.b, tol).value / r.width();
    double mid_y_line = integrate1d([&](double y) { return eval(f, mx, y); }, r.c, r.d, tol).value / r.height();
    out.v[1] = 0.5 * (mid_x_line + mid_y_line);
    out.v[2] = integrate2d(fb, r, tol).value / r.area();
    double e1 = integrate1d([&](double x) { return eval(f, x, r.c); }, r.a, r.b, tol).value / r.width();
    double e2 = integrate1d([&](double x) { return eval(f, x, r.d); }, r.a, r.b, tol).value / r.width();
    double e3 = integrate1d([&](double y) { return eval(f, r.a, y); }, r.c, r.d, tol).value / r.height();
    double e4 = integrate1d([&](double y) { return eval(f, r.b, y); }, r.c, r.d, tol).value / r.height();
    out.v[3] = 0.25 * (e1 + e2 + e3 + e4);
    out.v[4] =
        0.25 * (eval(f, r.a, r.c) + eval(f, r.b, r.c) + eval(f, r.a, r.d) + eval(f, r.b, r.d));

    out.monotone = true;
    for (int i = 0; i < 4; ++i)
        if (out.v[i] > out.v[i + 1] + chain_tol) out.monotone = false;
    out.status = out.monotone ? CheckStatus::Pass : CheckStatus::Fail;
    return out;
}

}  // namespace hh
