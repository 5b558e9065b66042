#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "framelet/laurent.hpp"

namespace framelet {

struct ConditionViolated : Error {
    using Error::Error;
};
struct WrongArity : Error {
    using Error::Error;
};
struct MismatchedLowpass : Error {
    using Error::Error;
};
struct BadOrder : Error {
    using Error::Error;
};

enum class Field { Real, Complex };

/// A low-pass filter a together with high-pass filters b_1..b_s.
struct FilterBank {
    LaurentPoly lowpass;
    std::vector<LaurentPoly> highpass;
    Field field = Field::Complex;

    static FilterBank make(LaurentPoly a, std::vector<LaurentPoly> bs) {
        FilterBank bank{std::move(a), std::move(bs), Field::Complex};
        bool re = bank.lowpass.is_real();
        for (const auto& b : bank.highpass) re = re && b.is_real();
        bank.field = re ? Field::Real : Field::Complex;
        return bank;
    }
};

struct TightnessReport {
    bool ok = false;
    double residual = 0.0;
};

/// Check the two Laurent identities of a tight framelet filter bank
/// coefficient-wise:  a a* + sum_l b_l b_l* = 1  and
/// a(z) a*(-z) + sum_l b_l(z) b_l*(-z) = 0.
inline TightnessReport verify_tight(const FilterBank& bank, double tol = 1e-10) {
    LaurentPoly r1 = bank.lowpass * star(bank.lowpass) - cplx(1.0);
    LaurentPoly r2 = bank.lowpass * alternate(star(bank.lowpass));
    for (const auto& b : bank.highpass) {
        r1 = r1 + b * star(b);
        r2 = r2 + b * alternate(star(b));
    }
    const double resid = std::max(r1.infinity_norm(), r2.infinity_norm());
    return {resid <= tol, resid};
}

namespace detail {

struct ModulusPair {
    double x;  // |a^(xi)|^2
    double y;  // |a^(xi+pi)|^2
    double s;  // 1 - x - y, evaluated through 1 - a a* - (a a*)(-z)
};

// The slack 1 - x - y is taken from the Laurent polynomial
// 1 - a(z)a*(z) - a(-z)a*(-z), whose coefficients already carry the
// cancellation; near-orthogonal filters would otherwise lose the tiny
// slack to round-off and sqrt(C) would amplify the noise.
inline ModulusPair modulus_pair(const LaurentPoly& a, double xi) {
    const double x = std::norm(eval_unit(a, xi));
    const double y = std::norm(eval_unit(a, xi + std::numbers::pi));
    const LaurentPoly aa = a * star(a);
    const double s = eval_unit(cplx(1.0) - aa - alternate(aa), xi).real();
    if (s < -1e-9) throw ConditionViolated("|a(xi)|^2 + |a(xi+pi)|^2 exceeds 1");
    return {x, y, s};
}

inline double radicand(const ModulusPair& m) {
    double C = 4.0 * m.s + (m.x - m.y) * (m.x - m.y);
    if (C < 0.0) {
        if (C < -1e-12) throw ConditionViolated("negative radicand in A(xi)");
        C = 0.0;
    }
    return C;
}

} // namespace detail

/// The sharp frequency-separation lower bound
/// A(xi) = [2 - x - y - sqrt(4(1-x-y) + (x-y)^2)] / 2 with x = |a^(xi)|^2,
/// y = |a^(xi+pi)|^2; evaluated through the rationalized form
/// 2xy / (2 - x - y + sqrt(C)), which has no cancellation.
inline double A_of(const LaurentPoly& a, double xi) {
    const auto m = detail::modulus_pair(a, xi);
    return 2.0 * m.x * m.y / (2.0 - m.x - m.y + std::sqrt(detail::radicand(m)));
}

/// Achieved separation B(xi) = |bp^(xi+pi)|^2 + |bn^(xi)|^2.
inline double B_of(const LaurentPoly& bp, const LaurentPoly& bn, double xi) {
    return std::norm(eval_unit(bp, xi + std::numbers::pi)) + std::norm(eval_unit(bn, xi));
}

/// The four symbol values of the pointwise-optimal pair at one xi in [0,pi].
struct OptimalPointwise {
    cplx bp_at_xi;
    cplx bp_at_xi_pi;
    cplx bn_at_xi;
    cplx bn_at_xi_pi;
};

/**
 * Pointwise construction attaining B(xi) = A(xi).  The magnitudes of
 * bp(xi+pi) and bn(xi) split A(xi) in the ratio steered by
 * (x - y)/sqrt(C); the other two values carry the phase beta of
 * a^(xi) conj(a^(xi+pi)) so that the cross equation cancels.  beta is 0
 * whenever that product vanishes.
 *
 * All magnitudes are taken through cancellation-free closed forms: with
 * S = 2 - x - y, sC = sqrt(C), wm = sC - (x-y), wp = sC + (x-y),
 *   |bp(xi+pi)|^2 = A wm / (2 sC),   |bn(xi)|^2    = A wp / (2 sC),
 *   |bp(xi)|^2    = (S+sC) wm/(4 sC), |bn(xi+pi)|^2 = (S+sC) wp/(4 sC),
 * where wm, wp are rationalized against 4(1-x-y) on the cancelling side.
 */
inline OptimalPointwise optimal_pointwise(const LaurentPoly& a, double xi) {
    const auto m = detail::modulus_pair(a, xi);
    const double x = m.x, y = m.y;
    const double C = detail::radicand(m);
    const double S = 2.0 - x - y;
    const double sC = std::sqrt(C);
    const double A = 2.0 * x * y / (S + sC);

    double bp_pi, bn_0, s1, s2;
    if (sC <= 1e-12) {  // C = 0 forces x = y = 1/2 and A = 1/2
        bp_pi = bn_0 = std::sqrt(0.5 * A);
        s1 = std::sqrt(std::max(0.0, 1.0 - x - 0.5 * A));
        s2 = std::sqrt(std::max(0.0, 1.0 - y - 0.5 * A));
    } else {
        const double d = x - y;
        const double four_s = std::max(0.0, 4.0 * m.s);
        const double wm = d >= 0.0 ? four_s / (sC + d) : sC - d;
        const double wp = d <= 0.0 ? four_s / (sC - d) : sC + d;
        bp_pi = std::sqrt(0.5 * A * wm / sC);
        bn_0 = std::sqrt(0.5 * A * wp / sC);
        s1 = std::sqrt(0.25 * (S + sC) * wm / sC);
        s2 = std::sqrt(0.25 * (S + sC) * wp / sC);
    }

    const cplx prod = eval_unit(a, xi) * std::conj(eval_unit(a, xi + std::numbers::pi));
    const double beta = std::abs(prod) <= 1e-14 ? 0.0 : std::arg(prod);
    return {-std::polar(s1, beta), bp_pi, bn_0, -std::polar(s2, -beta)};
}

struct SeparationReport {
    double d_R = 0.0;  // exact, closed-form half-circle integral
    double d_A = 0.0;  // composite Simpson quadrature of A
    double d_B = 0.0;  // exact
    struct GridPoint {
        double xi, A, B;
    };
    std::vector<GridPoint> grid;
    double max_bound_violation = 0.0;  // max over the grid of A - B
};

namespace detail {

template <typename F>
double simpson(F&& f, int n) {
    // composite Simpson over [0, pi] with n intervals (n made even)
    if (n % 2) ++n;
    const double h = std::numbers::pi / n;
    double acc = f(0.0) + f(std::numbers::pi);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace detail

/**
 * Directionality quantities of a bank treated as {a; bp, bn}:
 *   d_R = 1/2 int_0^pi [2 - |a^(xi)|^2 - |a^(xi+pi)|^2] dxi    (exact)
 *   d_A = int_0^pi A(xi) dxi                                   (quadrature)
 *   d_B = int_0^pi [|bp^(xi+pi)|^2 + |bn^(xi)|^2] dxi          (exact)
 * plus the sampled A/B curves on the quadrature grid.  d_A uses grid_n
 * Simpson intervals and one doubling pass; the doubled grid's value is
 * reported.
 */
inline SeparationReport separation_report(const FilterBank& bank, int grid_n = 2048) {
    if (bank.highpass.size() != 2)
        throw WrongArity("separation_report: bank must carry exactly two high-pass filters");
    const LaurentPoly& a = bank.lowpass;
    const LaurentPoly& bp = bank.highpass[0];
    const LaurentPoly& bn = bank.highpass[1];
    if (grid_n % 2) ++grid_n;

    SeparationReport rep;
    const LaurentPoly aa = a * star(a);
    rep.d_R = 0.5 * integrate_halfcircle(cplx(2.0) - aa - alternate(aa)).real();
    const LaurentPoly abp = alternate(bp);
    rep.d_B = integrate_halfcircle(abp * star(abp) + bn * star(bn)).real();

    auto A = [&](double xi) { return A_of(a, xi); };
    rep.d_A = detail::simpson(A, 2 * grid_n);

    rep.grid.reserve(static_cast<std::size_t>(grid_n) + 1);
    for (int i = 0; i <= grid_n; ++i) {
        const double xi = std::numbers::pi * i / grid_n;
        const double Av = A(xi), Bv = B_of(bp, bn, xi);
        rep.grid.push_back({xi, Av, Bv});
        rep.max_bound_violation = std::max(rep.max_bound_violation, Av - Bv);
    }
    return rep;
}

struct DetRelation {
    bool ok = false;
    cplx lambda{1.0, 0.0};
    int k = 0;
};

/**
 * Theorem-level consistency of two completions of the same low-pass
 * filter: bp(z) bn(-z) - bp(-z) bn(z) of one bank must equal
 * lambda z^{2k} times the other's, with |lambda| = 1.  Both determinants
 * vanish identically exactly when a is an orthogonal filter.
 */
inline DetRelation det_relation_check(const FilterBank& bank1, const FilterBank& bank2,
                                      double tol = 1e-9) {
    if (!(bank1.lowpass == bank2.lowpass))
        throw MismatchedLowpass("det_relation_check: banks disagree on the low-pass filter");
    if (bank1.highpass.size() != 2 || bank2.highpass.size() != 2)
        throw WrongArity("det_relation_check: banks must carry two high-pass filters");

    auto det = [](const FilterBank& b) {
        const LaurentPoly &p = b.highpass[0], &q = b.highpass[1];
        return p * alternate(q) - alternate(p) * q;
    };
    const LaurentPoly d1 = det(bank1).trimmed(tol);
    const LaurentPoly d2 = det(bank2).trimmed(tol);

    if (d1.is_zero() && d2.is_zero()) return {true, {1.0, 0.0}, 0};
    if (d1.is_zero() || d2.is_zero()) return {};

    const int shift = d2.lo() - d1.lo();
    if (shift % 2 || d2.hi() - d1.hi() != shift) return {};
    const cplx lam = d2.coeff(d2.lo()) / d1.coeff(d1.lo());
    if (std::abs(std::abs(lam) - 1.0) > tol) return {};
    if ((d2 - lam * d1.shifted(shift)).infinity_norm() > tol * std::max(1.0, d1.infinity_norm()))
        return {};
    return {true, lam, shift / 2};
}

/// Centered B-spline low-pass filter of order m: symbol
/// e^{i floor(m/2) xi} ((1 + e^{-i xi})/2)^m, so |a^(xi)|^2 = cos^{2m}(xi/2).
inline LaurentPoly bspline_lowpass(int m) {
    if (m < 1) throw BadOrder("bspline_lowpass: order must be >= 1");
    std::vector<cplx> c{1.0};
    for (int i = 0; i < m; ++i) {
        std::vector<cplx> next(c.size() + 1);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += 0.5 * c[j];
            next[j + 1] += 0.5 * c[j];
        }
        c = std::move(next);
    }
    return LaurentPoly(-(m / 2), std::move(c));
}

} // namespace framelet
