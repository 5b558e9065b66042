#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "framelet/spectral.hpp"
#include "sample_banks.hpp"

using namespace framelet;

namespace {

// D(w) with D(z^2) = 1 - a(z)a*(z) - a(-z)a*(-z); the factorization input
// of the shortest-support construction.
LaurentPoly detD(const LaurentPoly& a) {
    const LaurentPoly aa = a * star(a);
    const LaurentPoly dz2 = cplx(1.0) - aa - alternate(aa);
    if (dz2.is_zero()) return {};
    std::vector<cplx> c;
    for (int k = dz2.lo(); k <= dz2.hi(); k += 2) c.push_back(dz2.coeff(k));
    return LaurentPoly(dz2.lo() / 2, std::move(c));
}

} // namespace

TEST_CASE("roots of simple polynomials") {
    {
        const RootSet rs = poly_roots(LaurentPoly(0, {1.0, -1.0}));  // 1 - z
        REQUIRE(rs.roots.size() == 1);
        CHECK(std::abs(rs.roots[0] - 1.0) < 1e-12);
    }
    {
        // (1 - z)^2: double root at 1 within the cluster tolerance
        const LaurentPoly p = LaurentPoly(0, {1.0, -1.0}) * LaurentPoly(0, {1.0, -1.0});
        const RootSet rs = poly_roots(p);
        REQUIRE(rs.roots.size() == 2);
        for (const auto& r : rs.roots) CHECK(std::abs(r - 1.0) < 1e-6);
    }
    {
        // -1 + 2w - w^2 = -(w - 1)^2
        const RootSet rs = poly_roots(LaurentPoly(-1, {-1.0, 2.0, -1.0}));
        REQUIRE(rs.roots.size() == 2);
        for (const auto& r : rs.roots) CHECK(std::abs(r - 1.0) < 1e-6);
    }
    CHECK_THROWS_AS(poly_roots(LaurentPoly{}), DegenerateInput);
}

TEST_CASE("constant and zero factorizations") {
    const auto one = spectral_factorize(LaurentPoly::constant(1.0));
    REQUIRE(one.factors.size() == 1);
    CHECK(one.factors[0] == LaurentPoly::constant(1.0));

    // orthogonal low-pass: the determinant polynomial vanishes identically
    CHECK(detD(samples::haar_a()).is_zero());
    CHECK(spectral_factorize(detD(samples::haar_a())).factors.empty());
}

TEST_CASE("bspline2 determinant factors as (1 - w)/(2 sqrt 2) up to phase and shift") {
    const LaurentPoly D = detD(samples::bspline2_a());
    CHECK(D == LaurentPoly(-1, {-0.125, 0.25, -0.125}));

    const auto fac = spectral_factorize(D, {0, 1}, /*enumerate_all=*/true);
    REQUIRE(!fac.factors.empty());
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    for (const auto& d : fac.factors) {
        CHECK((d * star(d) - D).infinity_norm() <= 1e-8);
        CHECK(d.lo() == 0);
        CHECK(d.length() == 1);
        CHECK(std::abs(std::abs(d.coeff(0)) - c) < 1e-9);
        CHECK(std::abs(std::abs(d.coeff(1)) - c) < 1e-9);
    }
}

TEST_CASE("factor candidates reconstruct D within tolerance for the sample filters") {
    for (const auto& a : samples::example_lowpass_filters()) {
        const LaurentPoly D = detD(a);
        const auto fac = spectral_factorize(D, /*enumerate_all=*/true);
        REQUIRE(!fac.factors.empty());
        CHECK(fac.residual <= 1e-8);
        for (const auto& d : fac.factors) {
            CHECK((d * star(d) - D).infinity_norm() <= 1e-8);
            CHECK(d.lo() == 0);
            CHECK(d.hi() == D.hi());
        }
    }
}

TEST_CASE("real D with conjugate-closed choices yields real factors first") {
    for (const auto& a : samples::example_lowpass_filters()) {
        const auto fac = spectral_factorize(detD(a), /*enumerate_all=*/true);
        REQUIRE(!fac.factors.empty());
        CHECK(fac.factors.front().is_real(1e-12));
    }
}

TEST_CASE("unit-circle roots split with even multiplicity") {
    // interp7's determinant has a quadruple root at w = 1; each factor
    // keeps exactly two copies, certified by the reconstruction residual.
    const LaurentPoly D = detD(samples::interp7_a());
    const auto fac = spectral_factorize(D, /*enumerate_all=*/true);
    REQUIRE(fac.factors.size() == 2);  // one mirror pair {r, 1/r} to choose from
    for (const auto& d : fac.factors) {
        CHECK((d * star(d) - D).infinity_norm() <= 1e-10);
        CHECK(std::abs(eval_unit(d, 0.0)) < 1e-6);  // double zero at w = 1
    }
}

TEST_CASE("rejects inputs that are negative on the circle or misshapen windows") {
    CHECK_THROWS_AS(spectral_factorize(LaurentPoly::constant(-1.0)), NotNonnegative);
    CHECK_THROWS_AS(spectral_factorize(LaurentPoly(0, {1.0, 1.0})), NotNonnegative);  // not Hermitian
    CHECK_THROWS_AS(spectral_factorize(detD(samples::bspline2_a()), {0, 0}, true), NoFactorInWindow);
}

TEST_CASE("factors land at the requested window start") {
    const LaurentPoly D = detD(samples::bspline2_a());
    const auto fac = spectral_factorize(D, {1, 3}, true);
    for (const auto& d : fac.factors) {
        CHECK(d.lo() == 1);
        CHECK((d * star(d) - D).infinity_norm() <= 1e-8);
    }
}
