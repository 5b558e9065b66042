#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "framelet/laurent.hpp"

namespace framelet {

struct NotNonnegative : Error {
    using Error::Error;
};
struct NoFactorInWindow : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};

struct RootSet {
    std::vector<cplx> roots;  // with multiplicity
    double max_residual = 0.0;
};

/// Roots of the ordinary polynomial z^{-lo} p(z), computed from the
/// (balanced) companion matrix.  Residual reports max |p(root)| over the
/// scaled polynomial.
inline RootSet poly_roots(const LaurentPoly& p) {
    if (p.is_zero()) throw DegenerateInput("poly_roots: zero polynomial");
    const auto& c = p.coefficients();
    const std::size_t n = c.size() - 1;
    RootSet out;
    if (n == 0) return out;
    const double scale = p.infinity_norm();
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i + 1 < n; ++i) comp(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    out.roots.reserve(n);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        cplx r = es.eigenvalues()(i);
        out.roots.push_back(r);
        // residual of the monic-normalized polynomial, evaluated stably
        cplx acc = c[n];
        for (std::size_t j = n; j-- > 0;) acc = acc * r + c[j];
        double denom = scale * std::max(1.0, std::pow(std::abs(r), static_cast<double>(n)));
        out.max_residual = std::max(out.max_residual, std::abs(acc) / denom);
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return out;
}

struct FactorizationResult {
    std::vector<LaurentPoly> factors;  // candidates d with d * star(d) = D
    double residual = 0.0;             // max coefficient error over returned candidates
};

namespace detail {

struct RootCluster {
    cplx value;
    int count = 0;
};

inline std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol) {
    std::vector<RootCluster> cl;
    for (cplx r : roots) {
        bool placed = false;
        for (auto& c : cl) {
            if (std::abs(r - c.value) <= tol * std::max(1.0, std::abs(c.value))) {
                c.value = (c.value * static_cast<double>(c.count) + r) / static_cast<double>(c.count + 1);
                ++c.count;
                placed = true;
                break;
            }
        }
        if (!placed) cl.push_back({r, 1});
    }
    return cl;
}

// A mirror class {r, 1/conj(r)} of off-circle roots (mult copies of each),
// or a unit-circle root carrying half of its even multiplicity.
struct RootClass {
    cplx inner;       // |inner| < 1, or |inner| == 1 for circle roots
    cplx outer;       // 1/conj(inner); unused for circle roots
    int mult = 0;     // copies available on each side (circle: forced picks)
    bool on_circle = false;
};

// Group clustered roots into mirror classes.  Returns nothing if pairing
// fails at this tolerance (odd circle multiplicity, unmatched mirror).
inline std::optional<std::vector<RootClass>> pair_roots(std::vector<RootCluster> cl, double tol) {
    std::vector<RootClass> out;
    std::vector<bool> used(cl.size(), false);
    for (std::size_t i = 0; i < cl.size(); ++i) {
        if (used[i]) continue;
        const cplx v = cl[i].value;
        if (std::abs(std::abs(v) - 1.0) <= 100 * tol) {
            if (cl[i].count % 2 != 0) return std::nullopt;
            used[i] = true;
            out.push_back({v / std::abs(v), {}, cl[i].count / 2, true});
        } else {
            const cplx m = 1.0 / std::conj(v);
            std::size_t match = cl.size();
            for (std::size_t j = 0; j < cl.size(); ++j) {
                if (j == i || used[j]) continue;
                if (std::abs(cl[j].value - m) <= 100 * tol * std::max(1.0, std::abs(m))) {
                    match = j;
                    break;
                }
            }
            if (match == cl.size() || cl[match].count != cl[i].count) return std::nullopt;
            used[i] = used[match] = true;
            cplx inner = std::abs(v) < 1.0 ? v : cl[match].value;
            out.push_back({inner, 1.0 / std::conj(inner), cl[i].count, false});
        }
    }
    std::sort(out.begin(), out.end(), [](const RootClass& a, const RootClass& b) {
        if (a.inner.real() != b.inner.real()) return a.inner.real() < b.inner.real();
        return a.inner.imag() < b.inner.imag();
    });
    return out;
}

inline bool conjugate_closed(const std::vector<cplx>& roots) {
    std::vector<cplx> pool = roots;
    for (cplx r : roots) {
        if (std::abs(r.imag()) < 1e-12 * std::max(1.0, std::abs(r))) continue;
        auto it = std::find_if(pool.begin(), pool.end(), [&](cplx q) {
            return std::abs(q - std::conj(r)) <= 1e-9 * std::max(1.0, std::abs(r));
        });
        if (it == pool.end()) return false;
        *it = cplx(1e300, 1e300);  // consume
    }
    return true;
}

// Monic product prod (w - r), scaled and phase-fixed so d * star(d) = D
// with the lowest coefficient real positive.  A conjugate-closed root set
// describes a real polynomial: the imaginary dust left by the numeric
// product is dropped so real inputs stay exactly real downstream.
inline LaurentPoly assemble_factor(const std::vector<cplx>& chosen, const LaurentPoly& D) {
    LaurentPoly d = LaurentPoly::constant(1.0);
    for (cplx r : chosen) d = d * LaurentPoly(0, {-r, 1.0});
    const LaurentPoly dd = d * star(d);
    const cplx s = D.coeff(D.hi()) / dd.coeff(dd.hi());
    d = std::sqrt(std::abs(s)) * d;
    const cplx c0 = d.coeff(d.lo());
    if (std::abs(c0) > 0) d = (std::abs(c0) / c0) * d;
    if (D.is_real(0.0) && conjugate_closed(chosen)) {
        std::vector<cplx> c(d.coefficients());
        for (auto& v : c) v = cplx(v.real(), 0.0);
        d = LaurentPoly(d.lo(), std::move(c));
    }
    return d;
}

} // namespace detail

/**
 * Fejer-Riesz factorization of a Laurent polynomial D = star(D) that is
 * nonnegative on the unit circle: find d with d * star(d) = D.
 *
 * Candidates come from splitting the root set of w^{-lo} D(w) between d
 * and star(d): each mirror pair {r, 1/conj(r)} contributes a choice, unit
 * circle roots split their even multiplicity in half.  With enumerate_all
 * every admissible subset choice is returned (conjugate-closed choices
 * first when D is real); otherwise only the all-inside (minimum phase)
 * candidate.  Every candidate is shifted so its support starts at
 * window.first and has its lowest coefficient real positive.
 *
 * Root clustering retries at escalating tolerances; the reconstruction
 * residual of d * star(d) against D is the final arbiter.
 */
inline FactorizationResult spectral_factorize(const LaurentPoly& D,
                                              std::pair<int, int> support_window,
                                              bool enumerate_all = false,
                                              double tol = 1e-8) {
    FactorizationResult result;
    if (D.is_zero()) return result;

    if ((D - star(D)).infinity_norm() > tol * std::max(1.0, D.infinity_norm()))
        throw NotNonnegative("spectral_factorize: D != star(D)");
    constexpr int kGrid = 4096;
    for (int i = 0; i < kGrid; ++i) {
        const double xi = 2.0 * std::numbers::pi * i / kGrid;
        if (eval_unit(D, xi).real() < -tol)
            throw NotNonnegative("spectral_factorize: D negative on the unit circle");
    }

    const int K = D.hi();  // support [-K, K] for Hermitian D
    if (support_window.first + K > support_window.second)
        throw NoFactorInWindow("spectral_factorize: factor length exceeds the window");

    if (K == 0) {
        result.factors.push_back(LaurentPoly::monomial(std::sqrt(D.coeff(0).real()), support_window.first));
        return result;
    }

    const RootSet rs = poly_roots(D);
    const bool d_real = D.is_real(1e-14 * std::max(1.0, D.infinity_norm()));

    struct Candidate {
        LaurentPoly d;
        double resid;
        bool conj_closed;
        std::vector<int> choice;
    };
    std::vector<Candidate> cands;

    for (double ctol : {1e-6, 1e-5, 1e-4, 1e-3}) {
        auto classes = detail::pair_roots(detail::cluster_roots(rs.roots, ctol), ctol);
        if (!classes) continue;
        // enumerate per-class inside counts; single all-inside choice otherwise
        std::vector<int> idx(classes->size(), 0);
        std::vector<Candidate> local;
        while (true) {
            std::vector<cplx> chosen;
            for (std::size_t i = 0; i < classes->size(); ++i) {
                const auto& c = (*classes)[i];
                if (c.on_circle) {
                    for (int k = 0; k < c.mult; ++k) chosen.push_back(c.inner);
                } else {
                    const int inside = enumerate_all ? idx[i] : c.mult;
                    for (int k = 0; k < inside; ++k) chosen.push_back(c.inner);
                    for (int k = inside; k < c.mult; ++k) chosen.push_back(c.outer);
                }
            }
            LaurentPoly d = detail::assemble_factor(chosen, D);
            double resid = (d * star(d) - D).infinity_norm();
            local.push_back({d.shifted(support_window.first - d.lo()), resid,
                             detail::conjugate_closed(chosen), idx});
            if (!enumerate_all) break;
            // advance mixed-radix counter over off-circle classes
            std::size_t pos = 0;
            for (; pos < classes->size(); ++pos) {
                if ((*classes)[pos].on_circle) continue;
                if (++idx[pos] <= (*classes)[pos].mult) break;
                idx[pos] = 0;
            }
            if (pos == classes->size()) break;
        }
        const bool better = cands.empty() ||
            std::max_element(local.begin(), local.end(), [](auto& a, auto& b) { return a.resid < b.resid; })->resid <
            std::max_element(cands.begin(), cands.end(), [](auto& a, auto& b) { return a.resid < b.resid; })->resid;
        if (better) cands = std::move(local);
    }

    if (cands.empty()) throw NotNonnegative("spectral_factorize: root pairing failed");

    std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (d_real && a.conj_closed != b.conj_closed) return a.conj_closed;
        return a.choice < b.choice;
    });
    for (auto& c : cands) {
        if (c.resid > tol) continue;
        result.factors.push_back(c.d);
        result.residual = std::max(result.residual, c.resid);
    }
    if (result.factors.empty())
        throw NotNonnegative("spectral_factorize: no candidate meets the residual tolerance");
    return result;
}

/// Convenience overload: window [0, hi(D)] (every candidate fits).
inline FactorizationResult spectral_factorize(const LaurentPoly& D, bool enumerate_all = false,
                                              double tol = 1e-8) {
    return spectral_factorize(D, {0, std::max(0, D.hi())}, enumerate_all, tol);
}

} // namespace framelet
