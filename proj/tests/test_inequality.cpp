#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hh/inequality.hpp>

#include <cmath>

using namespace hh;

namespace {
const Rect unit(0, 1, 0, 1);
}

TEST_CASE("trapezoid gap closed forms on the unit square") {
    // x^2*y^2: corners avg 1/4, mean 1/9, A = 1/2[(0 + 1/3) + (0 + 1/3)] = 1/3
    GapDecomposition g = trapezoid_gap(parse("x^2*y^2"), unit);
    CHECK(g.converged);
    CHECK(g.corner_avg == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(g.integral_mean == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
    CHECK(g.edge_term_A == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(g.gap == doctest::Approx(1.0 / 36.0).epsilon(1e-8));
    CHECK(g.gap == g.corner_avg + g.integral_mean - g.edge_term_A);  // exact by construction

    GapDecomposition gxy = trapezoid_gap(parse("x*y"), unit);
    CHECK(std::fabs(gxy.gap) <= 1e-9);

    GapDecomposition gz = trapezoid_gap(parse("0"), unit);
    CHECK(gz.corner_avg == 0.0);
    CHECK(gz.integral_mean == 0.0);
    CHECK(gz.edge_term_A == 0.0);
    CHECK(gz.gap == 0.0);
}

TEST_CASE("identity residual vanishes on closed-form cases") {
    // x^2*y^2: both sides 1/36 (kernel side separates into 4*(1/6)^2 / 4... see below)
    IdentityCheck idc = lemma1_residual(parse("x^2*y^2"), unit, 1e-9);
    CHECK(idc.lhs == doctest::Approx(1.0 / 36.0).epsilon(1e-8));
    CHECK(idc.rhs == doctest::Approx(1.0 / 36.0).epsilon(1e-8));
    CHECK(idc.residual <= 1e-8);

    // x*y: gap 0, odd kernel against constant mixed partial integrates to 0
    IdentityCheck ixy = lemma1_residual(parse("x*y"), unit, 1e-9);
    CHECK(std::fabs(ixy.lhs) <= 1e-9);
    CHECK(std::fabs(ixy.rhs) <= 1e-9);

    IdentityCheck ic = lemma1_residual(parse("3"), unit, 1e-9);
    CHECK(ic.residual <= 1e-12);
}

TEST_CASE("identity residual on an offset rectangle") {
    Rect r(1, 3, -1, 2);
    for (const char* text : {"x*y", "x^2*y^2", "exp(x+y)"}) {
        IdentityCheck idc = lemma1_residual(parse(text), r, 1e-9);
        CHECK(idc.converged);
        CHECK(idc.residual <= 1e-8);
    }
}

TEST_CASE("bound right-hand sides, closed forms for x^2*y^2") {
    ExprPtr f = parse("x^2*y^2");
    CHECK(bound_rhs(BoundVariant::Abs, f, unit) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(bound_rhs(BoundVariant::Holder, f, unit, {.p = 2.0}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(bound_rhs(BoundVariant::PowerMean, f, unit, {.q = 2.0}) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(bound_rhs(BoundVariant::HolderRelaxed, f, unit, {.q = 2.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(bound_rhs(BoundVariant::Holder, f, unit, {.p = 1.0}));
}

TEST_CASE("ABS equals POWER_MEAN at q=1 exactly") {
    for (const char* text : {"x^2*y^2", "x*y", "exp(x+y)"}) {
        ExprPtr f = parse(text);
        CHECK(bound_rhs(BoundVariant::Abs, f, unit) ==
              bound_rhs(BoundVariant::PowerMean, f, unit, {.q = 1.0}));
    }
}

TEST_CASE("check_bound pass cases") {
    BoundCheck abs_check = check_bound(BoundVariant::Abs, parse("x^2*y^2"), unit);
    CHECK(abs_check.status == CheckStatus::Pass);
    CHECK(abs_check.lhs == doctest::Approx(1.0 / 36.0).epsilon(1e-8));
    CHECK(abs_check.rhs == doctest::Approx(0.25).epsilon(1e-12));

    BoundCheck xy_check = check_bound(BoundVariant::Abs, parse("x*y"), unit);
    CHECK(xy_check.status == CheckStatus::Pass);
    CHECK(xy_check.lhs <= 1e-9);
    CHECK(xy_check.rhs == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("hypothesis violation reports skip, not fail") {
    // f = -cos(3x)*y has f_ts = 3sin(3x); |f_ts| peaks inside [0,1], so it is
    // not coordinate-quasi-convex there
    BoundCheck c = check_bound(BoundVariant::Abs, parse("-cos(3*x)*y"), Rect(0, 1, 0, 1));
    CHECK(c.status == CheckStatus::Skipped);
    REQUIRE(c.hypothesis_witness.has_value());
}

TEST_CASE("variant ordering per the constant comparison") {
    // POWER_MEAN(q) <= HOLDER(p,q) <= HOLDER_RELAXED for conjugate pairs
    for (double p : {1.5, 2.0, 3.0}) {
        double q = p / (p - 1.0);
        for (const char* text : {"x^2*y^2", "x*y", "exp(x+y)"}) {
            ExprPtr f = parse(text);
            double pm = bound_rhs(BoundVariant::PowerMean, f, unit, {.q = q});
            double ho = bound_rhs(BoundVariant::Holder, f, unit, {.p = p, .q = q});
            double hr = bound_rhs(BoundVariant::HolderRelaxed, f, unit, {.q = q});
            CHECK(pm <= ho + 1e-15);
            CHECK(ho <= hr + 1e-15);
        }
    }
}

TEST_CASE("chain closed forms") {
    ChainResult strict = check_chain(parse("x^2*y^2"), unit);
    CHECK(strict.status == CheckStatus::Pass);
    CHECK(strict.monotone);
    const double expect[5] = {1.0 / 16, 1.0 / 12, 1.0 / 9, 1.0 / 6, 1.0 / 4};
    for (int i = 0; i < 5; ++i) CHECK(strict.v[i] == doctest::Approx(expect[i]).epsilon(1e-8));

    // bilinear case: every member equals 1/4 (the equality case)
    ChainResult eq = check_chain(parse("x*y"), unit);
    CHECK(eq.monotone);
    for (int i = 0; i < 5; ++i) CHECK(eq.v[i] == doctest::Approx(0.25).epsilon(1e-9));

    ChainResult flat = check_chain(parse("7"), unit);
    for (int i = 0; i < 5; ++i) CHECK(flat.v[i] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("chain skips when coordinate convexity fails") {
    ChainResult c = check_chain(parse("x^3+y^3"), Rect(-1, 1, -1, 1));
    CHECK(c.status == CheckStatus::Skipped);
    CHECK(c.hypothesis_witness.has_value());
}
