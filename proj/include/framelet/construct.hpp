#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "framelet/analysis.hpp"
#include "framelet/laurent.hpp"
#include "framelet/spectral.hpp"

namespace framelet {

struct PreconditionFailed : Error {
    using Error::Error;
};
struct EmptyNullspace : Error {
    using Error::Error;
};
struct BadLambda : Error {
    using Error::Error;
};
struct ZeroDivisor : Error {
    using Error::Error;
};

/**
 * Exact Euclidean division of Laurent polynomials with a prescribed
 * remainder window: L = divisor * quotient + remainder with
 * supp(remainder) inside [window.first, window.second].  Unique by degree
 * counting when the window holds exactly length(divisor) slots; top
 * coefficients are cleared with the divisor's leading term, bottom ones
 * with its lowest term.
 */
inline std::pair<LaurentPoly, LaurentPoly> divide_with_window(const LaurentPoly& L,
                                                              const LaurentPoly& divisor,
                                                              std::pair<int, int> window) {
    if (divisor.is_zero()) throw ZeroDivisor("divide_with_window: zero divisor");
    if (L.is_zero()) return {};

    // dense working buffer over the union of supp(L) and the window;
    // eliminated slots are forced to exact zero so both passes terminate
    const int lo = std::min(L.lo(), window.first);
    const int hi = std::max(L.hi(), window.second);
    std::vector<cplx> rem(static_cast<std::size_t>(hi - lo + 1));
    for (int k = L.lo(); k <= L.hi(); ++k) rem[static_cast<std::size_t>(k - lo)] = L.coeff(k);

    const int qlo = lo - divisor.lo(), qhi = hi - divisor.hi();
    std::vector<cplx> quot(qhi >= qlo ? static_cast<std::size_t>(qhi - qlo + 1) : 0);
    auto eliminate = [&](int pos, int danchor) {
        const cplx c = rem[static_cast<std::size_t>(pos - lo)] / divisor.coeff(danchor);
        const int qk = pos - danchor;
        if (qk < qlo || qk > qhi) return;  // only reachable for ill-sized windows
        quot[static_cast<std::size_t>(qk - qlo)] += c;
        for (int k = divisor.lo(); k <= divisor.hi(); ++k) {
            const int t = qk + k;
            if (t >= lo && t <= hi) rem[static_cast<std::size_t>(t - lo)] -= c * divisor.coeff(k);
        }
        rem[static_cast<std::size_t>(pos - lo)] = cplx{};
    };
    for (int pos = hi; pos > window.second; --pos)
        if (rem[static_cast<std::size_t>(pos - lo)] != cplx{}) eliminate(pos, divisor.hi());
    for (int pos = lo; pos < window.first; ++pos)
        if (rem[static_cast<std::size_t>(pos - lo)] != cplx{}) eliminate(pos, divisor.lo());

    return {LaurentPoly(qlo, std::move(quot)), LaurentPoly(lo, std::move(rem))};
}

/// Free choices of the shortest-support construction.  Unset fields are
/// swept in lexicographic (eps, s1, s2) order over all factor candidates.
struct ConstructParams {
    std::optional<int> eps;           // in {0, 1}
    std::optional<int> s1;            // in {0, 1}
    std::optional<int> s2;            // in {0, 1}
    std::optional<int> factor_index;  // index into the (factor, shift) candidate list
    std::optional<int> solution_index;  // nullspace basis vector, default 0
};

struct DerivedBank {
    FilterBank bank;
    int eps = 0, s1 = 0, s2 = 0;
    int factor_index = 0, solution_index = 0;
    double residual = 0.0;
};

namespace detail {

// Nullspace basis (singular value <= rel_tol * max), most-null first.
inline std::vector<Eigen::VectorXcd> nullspace(const Eigen::MatrixXcd& M, double rel_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index i = M.cols() - 1; i >= 0; --i) {
        if (i < sv.size() && sv(i) > rel_tol * std::max(smax, 1e-300)) break;
        basis.push_back(svd.matrixV().col(i));
    }
    return basis;
}

inline std::vector<Eigen::VectorXcd> nullspace_real(const Eigen::MatrixXd& M, double rel_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index i = M.cols() - 1; i >= 0; --i) {
        if (i < sv.size() && sv(i) > rel_tol * std::max(smax, 1e-300)) break;
        basis.push_back(svd.matrixV().col(i).cast<cplx>());
    }
    return basis;
}

struct System {
    LaurentPoly A, B;  // A(z) = 1 - a a*,  B(z) = -a(z) a*(-z)
    int n0 = 0;
};

inline System shortest_system(const LaurentPoly& a) {
    const LaurentPoly aa = a * star(a);
    System sys;
    sys.A = cplx(1.0) - aa;
    sys.B = -(a * alternate(star(a)));
    sys.n0 = sys.A.hi();
    return sys;
}

// B(-z) b1(z) - A(z) b1(-z) for a monomial b1 = z^deg.
inline LaurentPoly rhs_for_basis(const System& sys, int deg) {
    const LaurentPoly alt_term = (deg & 1) ? LaurentPoly(-sys.A) : sys.A;
    return (alternate(sys.B) - alt_term).shifted(deg);
}

} // namespace detail

/**
 * All shortest-support tight framelet filter banks {a; b1, b2} reachable
 * from the given parameter choices; empty params sweep everything and the
 * list carries one entry per validated (eps, s1, s2, factor, solution)
 * combination.
 *
 * Steps: A = 1 - a a*, B = -a(z) a*(-z), D(z^2) = 1 - a a* - a(-z) a*(-z);
 * a spectral factor d of D shifted into ceil((s1+s2-1)/2) <= m_d <= n_d <=
 * floor((s1+s2-1)/2) + n0 + eps; b1 = z^{s1} sum t_j z^j solves the linear
 * system stacking the remainder of dividing B(-z)b1(z) - A(z)b1(-z) by
 * d(z^2) z (window [2 m_d, 2 n_d - 1]) with the boundary coefficients of
 * b2*; lambda > 0 is recovered from lambda d(z^2) =
 * z^{-1}[b1(z) b2(-z) - b1(-z) b2(z)] and both filters are scaled by
 * lambda^{-1/2}.
 *
 * If D vanishes identically, a is an orthogonal filter and the bank
 * {a; z a*(-z), 0} is returned (the zero filter keeps arity two).
 */
inline std::vector<DerivedBank> derive_banks(const LaurentPoly& a, const ConstructParams& params = {},
                                             bool first_only = true) {
    if (a.is_zero()) throw PreconditionFailed("derive_banks: zero low-pass filter");
    const LaurentPoly aa = a * star(a);
    constexpr int kGrid = 4096;
    for (int i = 0; i < kGrid; ++i) {
        const double xi = 2.0 * std::numbers::pi * i / kGrid;
        const double v = eval_unit(aa, xi).real() + eval_unit(aa, xi + std::numbers::pi).real();
        if (v > 1.0 + 1e-10)
            throw PreconditionFailed("derive_banks: |a(z)|^2 + |a(-z)|^2 exceeds 1 on the unit circle");
    }

    const LaurentPoly Dz2 = cplx(1.0) - aa - alternate(aa);
    if (Dz2.infinity_norm() <= 1e-12) {
        // orthogonal low-pass: b(z) = z a*(-z), b2 = 0
        FilterBank bank = FilterBank::make(a, {alternate(star(a)).shifted(1), LaurentPoly{}});
        const double res = verify_tight(bank, 1e-9).residual;
        return {{std::move(bank), params.eps.value_or(0), params.s1.value_or(0), params.s2.value_or(0), 0, 0, res}};
    }

    // D as a polynomial in w = z^2 (odd coefficients vanish identically)
    std::vector<cplx> dc;
    for (int k = Dz2.lo(); k <= Dz2.hi(); k += 2) dc.push_back(Dz2.coeff(k));
    const LaurentPoly Dw(Dz2.lo() / 2, std::move(dc));

    const detail::System sys = detail::shortest_system(a);
    const bool a_real = a.is_real();

    auto sweep = [](std::optional<int> v) {
        return v ? std::vector<int>{*v} : std::vector<int>{0, 1};
    };

    std::vector<DerivedBank> found;
    for (int eps : sweep(params.eps)) {
        for (int s1 : sweep(params.s1)) {
            for (int s2 : sweep(params.s2)) {
                const int ssum = s1 + s2 - 1;
                const int wlo = ssum >= 0 ? (ssum + 1) / 2 : -((-ssum) / 2);
                const int whi = (ssum >= 0 ? ssum / 2 : -((-ssum + 1) / 2)) + sys.n0 + eps;
                FactorizationResult fac;
                try {
                    fac = spectral_factorize(Dw, {wlo, whi}, /*enumerate_all=*/true);
                } catch (const NoFactorInWindow&) {
                    continue;
                }
                // flatten (factor, shift) choices; factor_index selects one
                std::vector<LaurentPoly> ds;
                for (const auto& f : fac.factors)
                    for (int m = wlo; m + f.length() <= whi; ++m) ds.push_back(f.shifted(m - f.lo()));

                for (std::size_t fi = 0; fi < ds.size(); ++fi) {
                    if (params.factor_index && *params.factor_index != static_cast<int>(fi)) continue;
                    const LaurentPoly& d = ds[fi];
                    const int md = d.lo(), nd = d.hi();
                    const LaurentPoly divisor = upsample_two(d).shifted(1);
                    const int nunk = sys.n0 + eps + 1;

                    std::vector<int> rows;
                    for (int k = 2 * md; k <= 2 * nd - 1; ++k) rows.push_back(k);
                    const int n_remainder = static_cast<int>(rows.size());
                    for (int k = s1 - sys.n0 - 2 * md - 1; k <= s2 - 1; ++k) rows.push_back(k);
                    for (int k = s2 + sys.n0 + eps + 1; k <= s1 + 2 * sys.n0 - 2 * nd + eps - 1; ++k)
                        rows.push_back(k);

                    Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows.size()), nunk);
                    for (int j = 0; j < nunk; ++j) {
                        const auto [qj, rj] =
                            divide_with_window(detail::rhs_for_basis(sys, s1 + j), divisor, {2 * md, 2 * nd - 1});
                        for (std::size_t ri = 0; ri < rows.size(); ++ri)
                            M(static_cast<Eigen::Index>(ri), j) =
                                static_cast<int>(ri) < n_remainder ? rj.coeff(rows[ri]) : qj.coeff(rows[ri]);
                    }

                    const bool real_system = a_real && d.is_real(1e-14);
                    const auto basis = real_system ? detail::nullspace_real(M.real()) : detail::nullspace(M);
                    if (basis.empty()) continue;

                    for (std::size_t si = 0; si < basis.size(); ++si) {
                        if (params.solution_index && *params.solution_index != static_cast<int>(si)) continue;
                        std::vector<cplx> t(basis[si].data(), basis[si].data() + nunk);
                        const LaurentPoly b1(s1, std::move(t));
                        if (b1.is_zero()) continue;
                        const LaurentPoly lhs = alternate(sys.B) * b1 - sys.A * alternate(b1);
                        const auto [q, rem] = divide_with_window(lhs, divisor, {2 * md, 2 * nd - 1});
                        if (rem.infinity_norm() > 1e-8) continue;
                        const LaurentPoly b2 = star(q);

                        // lambda d(z^2) = z^{-1} [b1(z) b2(-z) - b1(-z) b2(z)], lambda real > 0
                        const LaurentPoly E = (b1 * alternate(b2) - alternate(b1) * b2).shifted(-1);
                        const LaurentPoly dz2 = upsample_two(d);
                        int kref = dz2.lo();
                        for (int k = dz2.lo(); k <= dz2.hi(); k += 2)
                            if (std::abs(dz2.coeff(k)) > std::abs(dz2.coeff(kref))) kref = k;
                        const cplx lam = E.coeff(kref) / dz2.coeff(kref);
                        if (!(lam.real() > 0.0) || std::abs(lam.imag()) > 1e-9 * std::max(1.0, std::abs(lam)))
                            continue;
                        if ((E - lam.real() * dz2).infinity_norm() > 1e-9 * std::max(1.0, std::abs(lam)))
                            continue;

                        const double scale = 1.0 / std::sqrt(lam.real());
                        FilterBank bank =
                            FilterBank::make(a, {(scale * b1).trimmed(), (scale * b2).trimmed()});
                        const auto rep = verify_tight(bank, 1e-9);
                        if (!rep.ok) continue;
                        found.push_back({std::move(bank), eps, s1, s2, static_cast<int>(fi),
                                         static_cast<int>(si), rep.residual});
                        if (first_only) return found;
                    }
                }
            }
        }
    }
    return found;
}

/// First validated bank of derive_banks; throws if the choices admit none.
inline FilterBank derive_shortest_bank(const LaurentPoly& a, const ConstructParams& params = {}) {
    auto banks = derive_banks(a, params, /*first_only=*/true);
    if (banks.empty()) {
        if (params.factor_index || params.solution_index || (params.eps && params.s1 && params.s2))
            throw EmptyNullspace("derive_shortest_bank: no nontrivial solution for the requested choices");
        throw BadLambda("derive_shortest_bank: no parameter choice produced a valid bank");
    }
    return std::move(banks.front().bank);
}

} // namespace framelet
