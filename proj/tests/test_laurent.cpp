#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "framelet/laurent.hpp"
#include "sample_banks.hpp"

using namespace framelet;
using Catch::Approx;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int max_len = 5) {
    std::uniform_int_distribution<int> lo(-4, 4), len(0, max_len);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    const int n = len(rng) + 1;
    std::vector<cplx> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = cplx(val(rng), val(rng));
    return LaurentPoly(lo(rng), std::move(c));
}

// small integer coefficients: every product and sum below stays exact
LaurentPoly random_int_poly(std::mt19937_64& rng, int max_len = 5) {
    std::uniform_int_distribution<int> lo(-4, 4), len(0, max_len), val(-4, 4);
    const int n = len(rng) + 1;
    std::vector<cplx> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = cplx(val(rng), val(rng));
    return LaurentPoly(lo(rng), std::move(c));
}

double coeff_distance(const LaurentPoly& p, const LaurentPoly& q) { return (p - q).infinity_norm(); }

} // namespace

TEST_CASE("construction trims exact zeros and canonicalizes the zero polynomial") {
    const LaurentPoly p(-2, {0.0, 1.0, 0.0, 2.0, 0.0});
    CHECK(p.lo() == -1);
    CHECK(p.hi() == 1);
    CHECK(p.coeff(-2) == cplx(0.0));
    CHECK(p.coeff(1) == cplx(2.0));

    const LaurentPoly z(7, {0.0, 0.0});
    CHECK(z.is_zero());
    CHECK(z.lo() == 0);
    CHECK(z == LaurentPoly{});
}

TEST_CASE("multiplication expands products") {
    // (1 - z^-1)(1 + 3z) = -z^-1 - 2 + 3z
    const LaurentPoly p = LaurentPoly(-1, {-1.0, 1.0}) * LaurentPoly(0, {1.0, 3.0});
    CHECK(p == LaurentPoly(-1, {-1.0, -2.0, 3.0}));

    CHECK((p + LaurentPoly{}) == p);

    // scaled product matches direct evaluation on the circle
    const LaurentPoly b2 = samples::bspline2_b2();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> xi(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 10; ++i) {
        const double x = xi(rng);
        const cplx direct = (std::sqrt(3.0) / 12.0) * eval_unit(LaurentPoly(-1, {-1.0, 1.0}), x) *
                            eval_unit(LaurentPoly(0, {1.0, 3.0}), x);
        CHECK(std::abs(eval_unit(b2, x) - direct) < 1e-14);
    }
}

TEST_CASE("star conjugates coefficients and negates exponents") {
    CHECK(star(LaurentPoly::monomial(cplx(0, 1), 1)) == LaurentPoly::monomial(cplx(0, -1), -1));

    const LaurentPoly sym(-1, {1.0, 2.0, 1.0});  // real symmetric
    CHECK(star(sym) == sym);

    const LaurentPoly bp = samples::bspline2_bp_n0();
    CHECK(star(star(bp)) == bp);
    const cplx v = eval_unit(star(bp), 0.7);
    CHECK(std::abs(v - std::conj(eval_unit(bp, 0.7))) < 1e-15);
}

TEST_CASE("alternate flips odd coefficients") {
    CHECK(alternate(LaurentPoly(0, {1.0, 1.0})) == LaurentPoly(0, {1.0, -1.0}));
    CHECK(alternate(LaurentPoly::monomial(1.0, 2)) == LaurentPoly::monomial(1.0, 2));
    // a(-z) for the B-spline-2 filter: (-z^-1 + 2 - z)/4
    CHECK(alternate(samples::bspline2_a()) == LaurentPoly(-1, {-0.25, 0.5, -0.25}));
    std::mt19937_64 rng(1);
    const LaurentPoly p = random_poly(rng);
    CHECK(alternate(alternate(p)) == p);
}

TEST_CASE("eval_unit evaluates the symbol at e^{-i xi}") {
    CHECK(std::abs(eval_unit(samples::bspline2_a(), 0.0) - 1.0) == 0.0);
    CHECK(std::abs(eval_unit(samples::bspline2_a(), std::numbers::pi)) < 1e-16);
    CHECK(std::abs(eval_unit(LaurentPoly::monomial(1.0, 1), std::numbers::pi / 2) - cplx(0, -1)) < 1e-15);
}

TEST_CASE("polyphase split and merge") {
    {
        const auto [e, o] = polyphase_split(LaurentPoly(0, {1.0, 1.0}));
        CHECK(e == LaurentPoly::constant(1.0));
        CHECK(o == LaurentPoly::constant(1.0));
    }
    {
        const auto [e, o] = polyphase_split(LaurentPoly(-1, {1.0, 2.0, 1.0}));
        CHECK(e == LaurentPoly::constant(2.0));
        CHECK(o == LaurentPoly(-1, {1.0, 1.0}));
    }
    const LaurentPoly b1 = samples::bspline4_b1();
    const auto [e, o] = polyphase_split(b1);
    CHECK(polyphase_merge(e, o) == b1);
}

TEST_CASE("upsample_two is the z^2 substitution") {
    CHECK(upsample_two(LaurentPoly(0, {1.0, 1.0})) == LaurentPoly(0, {1.0, 0.0, 1.0}));
    CHECK(upsample_two(LaurentPoly{}).is_zero());
    std::mt19937_64 rng(2);
    const LaurentPoly p = random_poly(rng);
    for (double xi : {0.3, 1.1, 2.9}) {
        CHECK(std::abs(eval_unit(upsample_two(p), xi) - eval_unit(p, 2 * xi)) < 1e-13);
    }
}

TEST_CASE("integrate_halfcircle closed forms") {
    CHECK(integrate_halfcircle(LaurentPoly::constant(1.0)).real() == Approx(std::numbers::pi));
    CHECK(std::abs(integrate_halfcircle(LaurentPoly::monomial(1.0, 1)) - cplx(0.0, -2.0)) < 1e-15);
    CHECK(std::abs(integrate_halfcircle(LaurentPoly(-1, {1.0, 0.0, 1.0}))) < 1e-15);
}

TEST_CASE("ring axioms hold exactly on random integer polynomials") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const LaurentPoly p = random_int_poly(rng), q = random_int_poly(rng), r = random_int_poly(rng);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("star is an involutive antihomomorphism") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const LaurentPoly pi = random_int_poly(rng), qi = random_int_poly(rng);
        CHECK(star(pi * qi) == star(pi) * star(qi));
        const LaurentPoly p = random_poly(rng);
        CHECK(star(star(p)) == p);
    }
}

TEST_CASE("half-circle integral of p star(p) is real and nonnegative") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const LaurentPoly p = random_poly(rng);
        const cplx v = integrate_halfcircle(p * star(p));
        CHECK(std::abs(v.imag()) < 1e-12);
        CHECK(v.real() > -1e-12);
    }
}

TEST_CASE("evaluation is multiplicative on the unit circle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> xi(0.0, 2.0 * std::numbers::pi);
    const LaurentPoly p = random_poly(rng), q = random_poly(rng);
    for (int i = 0; i < 100; ++i) {
        const double x = xi(rng);
        const cplx lhs = eval_unit(p * q, x);
        const cplx rhs = eval_unit(p, x) * eval_unit(q, x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}
