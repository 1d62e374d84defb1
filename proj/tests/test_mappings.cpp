#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hh/mappings.hpp>

#include <cmath>

using namespace hh;

namespace {
const Rect unit(0, 1, 0, 1);

const PropertyReport& find_report(const std::vector<PropertyReport>& reports,
                                  const std::string& name) {
    for (const auto& r : reports)
        if (r.property == name) return r;
    throw std::runtime_error("missing report " + name);
}
}  // namespace

TEST_CASE("H closed form for x^2*y^2: (3+t^2)(3+s^2)/144") {
    ExprPtr f = parse("x^2*y^2");
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double expect = (3 + t * t) * (3 + s * s) / 144.0;
            CHECK(eval_H(f, unit, t, s) == doctest::Approx(expect).epsilon(1e-8));
        }
    CHECK(eval_H(f, unit, 1, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-8));
    CHECK(eval_H(f, unit, 0, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-8));  // f(midpoint)
    CHECK(eval_H(f, unit, 1, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-8));   // integral mean
}

TEST_CASE("G closed form for x^2*y^2: (1+t^2)(1+s^2)/16") {
    ExprPtr f = parse("x^2*y^2");
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double expect = (1 + t * t) * (1 + s * s) / 16.0;
            CHECK(std::fabs(eval_G(f, unit, t, s) - expect) <= 1e-12);
        }
    CHECK(eval_G(f, unit, 1, 0) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("G endpoint identities hold exactly for arbitrary f") {
    for (const char* text : {"x^2*y^2", "exp(x+y)", "sin(x)*cos(y)", "x*y"}) {
        ExprPtr f = parse(text);
        Rect r(1, 3, -1, 2);
        double mid = eval(f, r.mid_x(), r.mid_y());
        CHECK(eval_G(f, r, 0, 0) == mid);  // four coincident evaluations
        double corner_avg = 0.25 * (eval(f, r.a, r.c) + eval(f, r.a, r.d) + eval(f, r.b, r.c) +
                                    eval(f, r.b, r.d));
        CHECK(eval_G(f, r, 1, 1) == doctest::Approx(corner_avg).epsilon(1e-15));
    }
}

TEST_CASE("integrating G over the unit square recovers the integral mean of f") {
    for (const char* text : {"x^2*y^2", "exp(x+y)", "x*y"}) {
        ExprPtr f = parse(text);
        Rect r(1, 3, -1, 2);
        auto g = [&](double t, double s) { return eval_G(f, r, t, s); };
        double lhs = integrate2d(g, unit, 1e-10).value;
        double mean = integrate2d([&](double x, double y) { return eval(f, x, y); }, r, 1e-10).value /
                      r.area();
        CHECK(std::fabs(lhs - mean) <= 1e-8);
    }
}

TEST_CASE("mapping properties of H for x^2*y^2") {
    auto reports = check_mapping_properties(MappingKind::H, parse("x^2*y^2"), unit, 17);
    CHECK(find_report(reports, "coordinate_convexity").status == CheckStatus::Pass);
    CHECK(find_report(reports, "bounds").status == CheckStatus::Pass);
    CHECK(find_report(reports, "monotone_nondecreasing").status == CheckStatus::Pass);
}

TEST_CASE("mapping properties of G") {
    auto reports = check_mapping_properties(MappingKind::G, parse("x^2*y^2"), unit, 33);
    CHECK(find_report(reports, "coordinate_convexity").status == CheckStatus::Pass);
    CHECK(find_report(reports, "bounds").status == CheckStatus::Pass);
    CHECK(find_report(reports, "lipschitz").status == CheckStatus::Pass);

    // degenerate equality case: xy has corner average equal to the midpoint value
    auto bil = check_mapping_properties(MappingKind::G, parse("x*y"), unit, 33);
    for (const auto& rep : bil) CHECK(rep.status == CheckStatus::Pass);

    auto flat = check_mapping_properties(MappingKind::G, parse("4"), unit, 9);
    for (const auto& rep : flat) CHECK(rep.status == CheckStatus::Pass);
}

TEST_CASE("mapping properties skip on non-convex input") {
    auto reports = check_mapping_properties(MappingKind::H, parse("-(x^2)"), Rect(-1, 1, -1, 1), 9);
    for (const auto& rep : reports) CHECK(rep.status == CheckStatus::Skipped);
}

TEST_CASE("G integral inequality: corrected form passes, printed form fails on x^2*y^2") {
    ExprPtr f = parse("x^2*y^2");
    GIntegralCheck corrected = check_G_integral_inequality(f, unit, GIneqForm::Corrected);
    CHECK(corrected.status == CheckStatus::Pass);
    CHECK(corrected.lhs == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
    CHECK(corrected.rhs == doctest::Approx(9.0 / 64.0).epsilon(1e-12));

    GIntegralCheck printed = check_G_integral_inequality(f, unit, GIneqForm::Printed);
    CHECK(printed.status == CheckStatus::Fail);
    CHECK(printed.rhs == doctest::Approx(7.0 / 64.0).epsilon(1e-12));
    CHECK(printed.margin == doctest::Approx(7.0 / 64.0 - 1.0 / 9.0).epsilon(1e-6));

    GIntegralCheck flat = check_G_integral_inequality(parse("5"), unit, GIneqForm::Corrected);
    CHECK(flat.lhs == doctest::Approx(5.0));
    CHECK(flat.rhs == doctest::Approx(5.0));
    CHECK(flat.status == CheckStatus::Inconclusive);  // equality sits inside the margin band
}

TEST_CASE("corrected form passes on every coordinate-convex corpus-style entry") {
    for (const char* text : {"x*y", "x^2*y^2", "exp(x+y)"}) {
        for (Rect r : {Rect(0, 1, 0, 1), Rect(1, 3, -1, 2)}) {
            GIntegralCheck c = check_G_integral_inequality(parse(text), r, GIneqForm::Corrected);
            CHECK(c.status != CheckStatus::Fail);
        }
    }
}
