#pragma once

// The midpoint-contraction mappings on [0,1]^2: the integral-mean mapping H
// and the four-point corner mapping G, plus grid verification of their
// stated properties (coordinate convexity, bounds, monotonicity of H,
// Lipschitz continuity of G, and the integral inequality for G).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "convexity.hpp"
#include "inequality.hpp"
#include "quad.hpp"

namespace hh {

constexpr int kDefaultMappingGrid = 33;  // odd, so (1/2,1/2) is a node

inline double eval_H(const ExprPtr& f, const Rect& r, double t, double s,
                     double tol = kDefaultQuadTol) {
    double mx = r.mid_x(), my = r.mid_y();
    auto g = [&](double x, double y) {
        return eval(f, t * x + (1 - t) * mx, s * y + (1 - s) * my);
    };
    return integrate2d(g, r, tol).value / r.area();
}

inline double eval_G(const ExprPtr& f, const Rect& r, double t, double s) {
    double mx = r.mid_x(), my = r.mid_y();
    double xl = t * r.a + (1 - t) * mx, xr = t * r.b + (1 - t) * mx;
    double yl = s * r.c + (1 - s) * my, yr = s * r.d + (1 - s) * my;
    return 0.25 * (eval(f, xl, yl) + eval(f, xr, yl) + eval(f, xl, yr) + eval(f, xr, yr));
}

struct PropertyReport {
    std::string property;
    CheckStatus status = CheckStatus::Skipped;
    std::string details;
    int grid = 0;
};

enum class MappingKind { H, G };

namespace detail {

inline std::string grid_point_str(double t, double s) {
    return "(" + format_number(t) + "," + format_number(s) + ")";
}

}  // namespace detail

inline std::vector<PropertyReport> check_mapping_properties(MappingKind which, const ExprPtr& f,
                                                            const Rect& r,
                                                            int grid = kDefaultMappingGrid,
                                                            double tol = kDefaultQuadTol,
                                                            long hypothesis_trials = 10000,
                                                            std::uint64_t seed = 42) {
    std::vector<PropertyReport> reports;
    Bivariate fb = [&f](double x, double y) { return eval(f, x, y); };
    Verdict h = check_convex_coords(fb, r, hypothesis_trials, seed);
    if (h.status == Status::Fail) {
        for (const char* name : {"coordinate_convexity", "bounds", which == MappingKind::H
                                                                        ? "monotone_nondecreasing"
                                                                        : "lipschitz"}) {
            reports.push_back({name, CheckStatus::Skipped, "hypothesis not established", grid});
        }
        return reports;
    }

    const int n = grid;
    auto node = [&](int i) { return static_cast<double>(i) / (n - 1); };
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i][j] = which == MappingKind::H ? eval_H(f, r, node(i), node(j), tol)
                                              : eval_G(f, r, node(i), node(j));

    const double prop_tol = 1e-9;

    // midpoint convexity along grid rows and columns
    {
        PropertyReport rep{"coordinate_convexity", CheckStatus::Pass, "", n};
        for (int j = 0; j < n && rep.status == CheckStatus::Pass; ++j)
            for (int i = 0; i < n && rep.status == CheckStatus::Pass; ++i)
                for (int k = i + 2; k < n; k += 2) {
                    double mid_row = m[(i + k) / 2][j];
                    if (mid_row > 0.5 * (m[i][j] + m[k][j]) + prop_tol) {
                        rep.status = CheckStatus::Fail;
                        rep.details = "row midpoint violation at t in [" +
                                      detail::format_number(node(i)) + "," +
                                      detail::format_number(node(k)) +
                                      "], s=" + detail::format_number(node(j));
                        break;
                    }
                    double mid_col = m[j][(i + k) / 2];
                    if (mid_col > 0.5 * (m[j][i] + m[j][k]) + prop_tol) {
                        rep.status = CheckStatus::Fail;
                        rep.details = "column midpoint violation at s in [" +
                                      detail::format_number(node(i)) + "," +
                                      detail::format_number(node(k)) +
                                      "], t=" + detail::format_number(node(j));
                        break;
                    }
                }
        reports.push_back(std::move(rep));
    }

    // extrema at (0,0) and (1,1)
    {
        PropertyReport rep{"bounds", CheckStatus::Pass, "", n};
        double lo = m[0][0], hi = m[0][0];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                lo = std::min(lo, m[i][j]);
                hi = std::max(hi, m[i][j]);
            }
        double inf_target = eval(f, r.mid_x(), r.mid_y());
        double sup_target =
            which == MappingKind::H
                ? integrate2d(fb, r, tol).value / r.area()
                : 0.25 * (eval(f, r.a, r.c) + eval(f, r.a, r.d) + eval(f, r.b, r.c) +
                          eval(f, r.b, r.d));
        bool ok = std::fabs(m[0][0] - inf_target) <= prop_tol && lo >= m[0][0] - prop_tol &&
                  std::fabs(m[n - 1][n - 1] - sup_target) <=
                      (which == MappingKind::H ? 10 * tol + prop_tol : prop_tol) &&
                  hi <= m[n - 1][n - 1] + prop_tol;
        rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        rep.details = "grid min " + detail::format_number(lo) + " at target " +
                      detail::format_number(inf_target) + ", grid max " +
                      detail::format_number(hi) + " at target " + detail::format_number(sup_target);
        reports.push_back(std::move(rep));
    }

    if (which == MappingKind::H) {
        PropertyReport rep{"monotone_nondecreasing", CheckStatus::Pass, "", n};
        for (int i = 0; i + 1 < n && rep.status == CheckStatus::Pass; ++i)
            for (int j = 0; j < n; ++j) {
                if (m[i + 1][j] < m[i][j] - prop_tol) {
                    rep.status = CheckStatus::Fail;
                    rep.details = "decrease along t at " + detail::grid_point_str(node(i), node(j));
                    break;
                }
                if (m[j][i + 1] < m[j][i] - prop_tol) {
                    rep.status = CheckStatus::Fail;
                    rep.details = "decrease along s at " + detail::grid_point_str(node(j), node(i));
                    break;
                }
            }
        reports.push_back(std::move(rep));
    } else {
        // G inherits per-axis constants L1*(b-a)/2 and L2*(d-c)/2 from f
        PropertyReport rep{"lipschitz", CheckStatus::Pass, "", n};
        double lg1 = 0.0, lg2 = 0.0;
        double h = node(1) - node(0);
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j < n; ++j) {
                lg1 = std::max(lg1, std::fabs(m[i + 1][j] - m[i][j]) / h);
                lg2 = std::max(lg2, std::fabs(m[j][i + 1] - m[j][i]) / h);
            }
        LipschitzEstimate lf = estimate_lipschitz(fb, r, 2000, seed);
        double cap1 = lf.L1 * 0.5 * r.width() + 1e-6;
        double cap2 = lf.L2 * 0.5 * r.height() + 1e-6;
        bool ok = std::isfinite(lg1) && std::isfinite(lg2) && lg1 <= cap1 && lg2 <= cap2;
        rep.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        rep.details = "grid constants (" + detail::format_number(lg1) + "," +
                      detail::format_number(lg2) + ") vs caps (" + detail::format_number(cap1) +
                      "," + detail::format_number(cap2) + ")";
        reports.push_back(std::move(rep));
    }
    return reports;
}

enum class GIneqForm { Printed, Corrected };

struct GIntegralCheck {
    GIneqForm form = GIneqForm::Corrected;
    double lhs = 0.0;  // integral mean of f
    double rhs = 0.0;
    double margin = 0.0;
    CheckStatus status = CheckStatus::Skipped;
    std::optional<Witness> hypothesis_witness;
};

// Integral-mean inequality obtained by integrating G's convexity expansion.
// The corrected form carries the edge-midpoint pair on x = a, b that the
// printed statement omits.
inline GIntegralCheck check_G_integral_inequality(const ExprPtr& f, const Rect& r, GIneqForm form,
                                                  double tol = kDefaultQuadTol,
                                                  long hypothesis_trials = 10000,
                                                  std::uint64_t seed = 42) {
    GIntegralCheck out;
    out.form = form;
    Bivariate fb = [&f](double x, double y) { return eval(f, x, y); };
    Verdict h = check_convex_coords(fb, r, hypothesis_trials, seed);
    if (h.status == Status::Fail) {
        out.hypothesis_witness = h.witness;
        return out;
    }

    out.lhs = integrate2d(fb, r, tol).value / r.area();
    double mx = r.mid_x(), my = r.mid_y();
    double corner_avg =
        0.25 * (eval(f, r.a, r.c) + eval(f, r.b, r.c) + eval(f, r.a, r.d) + eval(f, r.b, r.d));
    double x_edge_mids = 0.5 * (eval(f, mx, r.c) + eval(f, mx, r.d));
    double y_edge_mids = 0.5 * (eval(f, r.a, my) + eval(f, r.b, my));
    double center = eval(f, mx, my);
    out.rhs = form == GIneqForm::Printed
                  ? 0.25 * (corner_avg + x_edge_mids + center)
                  : 0.25 * (corner_avg + x_edge_mids + y_edge_mids + center);
    out.margin = out.rhs - out.lhs;
    if (std::fabs(out.margin) < kMarginTol)
        out.status = CheckStatus::Inconclusive;
    else
        out.status = out.margin >= 0 ? CheckStatus::Pass : CheckStatus::Fail;
    return out;
}

}  // namespace hh
