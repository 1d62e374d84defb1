#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hh/convexity.hpp>

#include <cmath>

using namespace hh;

namespace {

const Rect unit(0, 1, 0, 1);
const Rect sym(-1, 1, -1, 1);

// Independent 1D oracles on a dense grid: midpoint convexity / quasi-convexity
// of every partial map.
bool oracle_coords_convex(const Bivariate& f, const Rect& r, int n = 201) {
    auto gx = [&](int i) { return r.a + (r.b - r.a) * i / double(n - 1); };
    auto gy = [&](int i) { return r.c + (r.d - r.c) * i / double(n - 1); };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; j += 2) {
                if (f(gx((i + j) / 2), gy(k)) > 0.5 * (f(gx(i), gy(k)) + f(gx(j), gy(k))) + 1e-9)
                    return false;
                if (f(gx(k), gy((i + j) / 2)) > 0.5 * (f(gx(k), gy(i)) + f(gx(k), gy(j))) + 1e-9)
                    return false;
            }
    return true;
}

bool oracle_coords_quasiconvex(const Bivariate& f, const Rect& r, int n = 201) {
    auto gx = [&](int i) { return r.a + (r.b - r.a) * i / double(n - 1); };
    auto gy = [&](int i) { return r.c + (r.d - r.c) * i / double(n - 1); };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 2; j < n; j += 2) {
                if (f(gx((i + j) / 2), gy(k)) > std::max(f(gx(i), gy(k)), f(gx(j), gy(k))) + 1e-9)
                    return false;
                if (f(gx(k), gy((i + j) / 2)) > std::max(f(gx(k), gy(i)), f(gx(k), gy(j))) + 1e-9)
                    return false;
            }
    return true;
}

}  // namespace

TEST_CASE("joint quasi-convexity verdicts") {
    Bivariate affine = [](double x, double y) { return x + y; };
    CHECK(check_quasiconvex_joint(affine, unit, 2000, 42).status == Status::Pass);

    Bivariate cap = [](double x, double) { return -x * x; };
    Verdict v = check_quasiconvex_joint(cap, sym, 2000, 42);
    CHECK(v.status == Status::Fail);
    REQUIRE(v.witness.has_value());
    CHECK(reverify_quasiconvex_witness(cap, *v.witness));

    Bivariate constant = [](double, double) { return 5.0; };
    CHECK(check_quasiconvex_joint(constant, unit, 2000, 42).status == Status::Pass);
}

TEST_CASE("coordinate quasi-convexity verdicts match the dense oracle") {
    Bivariate cubes = [](double x, double y) { return x * x * x + y * y * y; };
    CHECK(oracle_coords_quasiconvex(cubes, sym, 101));
    CHECK(check_quasiconvex_coords(cubes, sym, 10000, 42).status == Status::Pass);

    Bivariate cap = [](double x, double) { return -x * x; };
    Verdict v = check_quasiconvex_coords(cap, sym, 2000, 42);
    CHECK(v.status == Status::Fail);
    REQUIRE(v.witness.has_value());
    CHECK(reverify_quasiconvex_witness(cap, *v.witness));

    Bivariate sq = [](double x, double y) { return x * x * y * y; };
    CHECK(oracle_coords_quasiconvex(sq, unit, 101));
    CHECK(check_quasiconvex_coords(sq, unit, 2000, 42).status == Status::Pass);
}

TEST_CASE("coordinate convexity verdicts") {
    // hand check: u=-1, v=0, midpoint -1/2: (-1/2)^3 = -0.125 > (f(-1)+f(0))/2 = -0.5
    Bivariate cubes = [](double x, double y) { return x * x * x + y * y * y; };
    Verdict v = check_convex_coords(cubes, sym, 2000, 42);
    CHECK(v.status == Status::Fail);
    REQUIRE(v.witness.has_value());
    CHECK(reverify_convex_witness(cubes, *v.witness));

    Bivariate bilinear = [](double x, double y) { return x * y; };
    CHECK(check_convex_coords(bilinear, unit, 2000, 42).status == Status::Pass);

    Bivariate expsum = [](double x, double y) { return std::exp(x + y); };
    CHECK(oracle_coords_convex(expsum, unit, 101));
    CHECK(check_convex_coords(expsum, unit, 2000, 42).status == Status::Pass);
}

TEST_CASE("hierarchy: coordinate-convex implies coordinate-quasi-convex") {
    std::vector<Bivariate> fns = {
        [](double x, double y) { return x * y; },
        [](double x, double y) { return x * x * y * y; },
        [](double x, double y) { return std::exp(x + y); },
        [](double, double) { return 3.0; },
    };
    for (const auto& f : fns) {
        if (check_convex_coords(f, unit, 2000, 42).status == Status::Pass)
            CHECK(check_quasiconvex_coords(f, unit, 2000, 42).status == Status::Pass);
    }
}

TEST_CASE("verdicts are deterministic functions of (f, r, trials, seed)") {
    Bivariate f = [](double x, double y) { return std::sin(3 * x) + y * y; };
    Verdict a = check_quasiconvex_coords(f, unit, 5000, 7);
    Verdict b = check_quasiconvex_coords(f, unit, 5000, 7);
    CHECK(a.status == b.status);
    CHECK(a.trials == b.trials);
    if (a.witness) {
        REQUIRE(b.witness);
        CHECK(a.witness->p == b.witness->p);
        CHECK(a.witness->lambda == b.witness->lambda);
    }
}

TEST_CASE("fail verdicts carry a witness, pass verdicts do not") {
    Bivariate cap = [](double x, double) { return -x * x; };
    Verdict fail = check_quasiconvex_coords(cap, sym, 2000, 42);
    CHECK(fail.witness.has_value());
    Bivariate affine = [](double x, double y) { return 2 * x - y; };
    Verdict pass = check_quasiconvex_coords(affine, unit, 2000, 42);
    CHECK(!pass.witness.has_value());
    CHECK(pass.trials >= 2000);
}

TEST_CASE("trial count precondition") {
    Bivariate f = [](double x, double y) { return x + y; };
    CHECK_THROWS(check_quasiconvex_joint(f, unit, 10, 42));
    CHECK_THROWS(check_quasiconvex_coords(f, unit, 999, 42));
    CHECK_THROWS(check_convex_coords(f, unit, 0, 42));
}
