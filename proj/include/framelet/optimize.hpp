#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "framelet/analysis.hpp"
#include "framelet/laurent.hpp"

namespace framelet {

struct ConstraintViolated : Error {
    using Error::Error;
};
struct NotTight : Error {
    using Error::Error;
};

/**
 * Degree-N paraunitary column (u1, u2) with |u1|^2 + |u2|^2 = 1 on the
 * unit circle, realized as the lattice product
 * R_N diag(1,z) R_{N-1} ... diag(1,z) R_0 (1,0)^T.  Real stages are plane
 * rotations by theta_k; complex stages add a phase phi_k to the
 * off-diagonal entries, plus one global phase.  Every parameter
 * assignment is feasible, which is what makes the column the optimization
 * variable.
 */
struct LatticeStage {
    double theta = 0.0;
    double phi = 0.0;  // ignored in real mode
};

struct LatticeColumn {
    int order = 0;  // N
    std::vector<LatticeStage> stages;  // N + 1 entries
    double global_phase = 0.0;
    bool complex_mode = false;

    static LatticeColumn real_angles(const std::vector<double>& thetas) {
        LatticeColumn lat;
        lat.order = static_cast<int>(thetas.size()) - 1;
        for (double t : thetas) lat.stages.push_back({t, 0.0});
        return lat;
    }
};

inline std::pair<LaurentPoly, LaurentPoly> realize_column(const LatticeColumn& lat) {
    LaurentPoly u1 = LaurentPoly::constant(1.0), u2;
    bool first = true;
    for (const auto& st : lat.stages) {
        if (!first) u2 = u2.shifted(1);  // diag(1, z)
        first = false;
        const double c = std::cos(st.theta), s = std::sin(st.theta);
        const cplx e = lat.complex_mode ? std::polar(1.0, st.phi) : cplx(1.0);
        LaurentPoly n1 = c * u1 - (s * e) * u2;
        LaurentPoly n2 = (s * std::conj(e)) * u1 + c * u2;
        u1 = std::move(n1);
        u2 = std::move(n2);
    }
    if (lat.global_phase != 0.0) {
        const cplx g = std::polar(1.0, lat.global_phase);
        u1 = g * u1;
        u2 = g * u2;
    }
    return {u1, u2};
}

struct RotatedPair {
    LaurentPoly bp, bn;
    int m = 0;  // even-shift exponent applied to bn
};

/**
 * Rotate {a; b1, b2} by the paraunitary column:
 *   bp(z) = b1(z) u1(z^2) + b2(z) u2(z^2)
 *   bn(z) = z^{2m} [b2(z) u1*(z^2) - b1(z) u2*(z^2)]
 * with m chosen so the support centers of bp and bn are closest (ties
 * toward smaller m).  The result is again a tight completion of a.
 */
inline RotatedPair apply_column(const FilterBank& bank, const LaurentPoly& u1, const LaurentPoly& u2) {
    if (bank.highpass.size() != 2)
        throw WrongArity("apply_column: bank must carry exactly two high-pass filters");
    const LaurentPoly c = u1 * star(u1) + u2 * star(u2) - cplx(1.0);
    if (c.infinity_norm() > 1e-10)
        throw ConstraintViolated("apply_column: |u1|^2 + |u2|^2 != 1 on the unit circle");

    const LaurentPoly& b1 = bank.highpass[0];
    const LaurentPoly& b2 = bank.highpass[1];
    RotatedPair out;
    out.bp = b1 * upsample_two(u1) + b2 * upsample_two(u2);
    LaurentPoly bn0 = b2 * upsample_two(star(u1)) - b1 * upsample_two(star(u2));

    const double cp = out.bp.is_zero() ? 0.0 : 0.5 * (out.bp.lo() + out.bp.hi());
    const double cn = bn0.is_zero() ? 0.0 : 0.5 * (bn0.lo() + bn0.hi());
    const double target = 0.5 * (cp - cn);
    const int lo = static_cast<int>(std::floor(target)), hi = lo + 1;
    out.m = (std::abs(target - lo) <= std::abs(target - hi)) ? lo : hi;
    out.bn = bn0.shifted(2 * out.m);
    return out;
}

/// The real-filter symmetrization step: bp' = (bp + i bn)/sqrt(2),
/// bn' = (bp - i bn)/sqrt(2).  For real inputs bn' is the coefficient
/// conjugate of bp'; the map is a constant unitary mixing, so tightness
/// is untouched.
inline std::pair<LaurentPoly, LaurentPoly> realify(const LaurentPoly& bp, const LaurentPoly& bn) {
    const double inv = 1.0 / std::numbers::sqrt2;
    const cplx i{0.0, 1.0};
    return {inv * (bp + i * bn), inv * (bp - i * bn)};
}

/// Exact objective d_B = int_0^pi [|bp^(xi+pi)|^2 + |bn^(xi)|^2] dxi via
/// the closed-form half-circle integral.
inline double objective_db(const LaurentPoly& bp, const LaurentPoly& bn) {
    const LaurentPoly abp = alternate(bp);
    return integrate_halfcircle(abp * star(abp) + bn * star(bn)).real();
}

struct OptimizeResult {
    LaurentPoly bp, bn;
    LatticeColumn lattice;
    double d_B = 0.0;
};

namespace detail {

template <typename F>
double golden_refine(F&& f, std::vector<double>& x, std::size_t i, double lo, double hi, int iters = 60) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    auto eval = [&](double v) {
        x[i] = v;
        return f(x);
    };
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < iters && b - a > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    const double best = fc < fd ? c : d;
    x[i] = best;
    return f(x);
}

template <typename F>
double coordinate_descent(F&& f, std::vector<double>& x, int passes) {
    double fx = f(x);
    for (int p = 0; p < passes; ++p) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            // coarse scan brackets the best basin, golden section refines it
            const double center = x[i];
            double best_v = center, best_f = fx;
            constexpr int kScan = 24;
            for (int s = 0; s < kScan; ++s) {
                x[i] = center - std::numbers::pi + (2.0 * std::numbers::pi * s) / kScan;
                const double fv = f(x);
                if (fv < best_f) {
                    best_f = fv;
                    best_v = x[i];
                }
            }
            const double half = std::numbers::pi / kScan * 1.5;
            fx = golden_refine(f, x, i, best_v - half, best_v + half);
            if (best_f < fx) {  // keep the scan winner if refinement overshot
                x[i] = best_v;
                fx = f(x);
            }
        }
    }
    return fx;
}

template <typename F>
double nelder_mead(F&& f, std::vector<double>& x, double step, int max_iter) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> pts(n + 1, x);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> ord(n + 1);
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        if (fv[ord[n]] - fv[ord[0]] < 1e-15) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[ord[i]][j] / static_cast<double>(n);
        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (centroid[j] - pts[ord[n]][j]);
            return p;
        };

        auto refl = blend(1.0);
        const double fr = f(refl);
        if (fr < fv[ord[0]]) {
            auto exp_ = blend(2.0);
            const double fe = f(exp_);
            pts[ord[n]] = fe < fr ? exp_ : refl;
            fv[ord[n]] = std::min(fe, fr);
        } else if (fr < fv[ord[n - 1]]) {
            pts[ord[n]] = refl;
            fv[ord[n]] = fr;
        } else {
            auto con = blend(fr < fv[ord[n]] ? 0.5 : -0.5);
            const double fc = f(con);
            if (fc < std::min(fr, fv[ord[n]])) {
                pts[ord[n]] = con;
                fv[ord[n]] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        pts[ord[i]][j] = 0.5 * (pts[ord[i]][j] + pts[ord[0]][j]);
                    fv[ord[i]] = f(pts[ord[i]]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    x = pts[best];
    return fv[best];
}

inline LatticeColumn column_from_angles(const std::vector<double>& v, int N, bool complex_mode) {
    LatticeColumn lat;
    lat.order = N;
    lat.complex_mode = complex_mode;
    for (int k = 0; k <= N; ++k) {
        LatticeStage st;
        st.theta = v[static_cast<std::size_t>(k)];
        if (complex_mode) st.phi = v[static_cast<std::size_t>(N + 1 + k)];
        lat.stages.push_back(st);
    }
    return lat;
}

} // namespace detail

/**
 * Multi-start minimization of d_B over the lattice parameters.  Each
 * start draws its angles uniformly from [0, 2 pi) off one seeded stream
 * (so doubling `starts` only appends starts), runs coordinate-wise
 * golden-section sweeps and a Nelder-Mead polish, and the best result
 * wins with ties to the lowest start index.  With real_mode the rotated
 * pair is symmetrized by realify before the objective is taken, matching
 * the construction for real-valued low-pass filters.
 */
inline OptimizeResult optimize_bank(const FilterBank& bank, int N, bool real_mode, int starts = 64,
                                    unsigned long long seed = 1) {
    if (!verify_tight(bank, 1e-9).ok) throw NotTight("optimize_bank: input bank is not tight");
    if (N < 0 || starts < 1) throw Error("optimize_bank: need N >= 0 and starts >= 1");

    const std::size_t dim = real_mode ? static_cast<std::size_t>(N + 1)
                                      : static_cast<std::size_t>(2 * (N + 1));
    auto objective = [&](const std::vector<double>& v) {
        const auto [u1, u2] = realize_column(detail::column_from_angles(v, N, !real_mode));
        RotatedPair rot = apply_column(bank, u1, u2);
        if (real_mode) std::tie(rot.bp, rot.bn) = realify(rot.bp, rot.bn);
        return objective_db(rot.bp, rot.bn);
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);

    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x(dim);
        for (auto& v : x) v = uni(rng);
        detail::coordinate_descent(objective, x, 3);
        const double fx = detail::nelder_mead(objective, x, 0.05, 200 + 100 * static_cast<int>(dim));
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }

    OptimizeResult out;
    out.lattice = detail::column_from_angles(best_x, N, !real_mode);
    const auto [u1, u2] = realize_column(out.lattice);
    RotatedPair rot = apply_column(bank, u1, u2);
    if (real_mode) std::tie(rot.bp, rot.bn) = realify(rot.bp, rot.bn);
    out.bp = rot.bp.trimmed();
    out.bn = rot.bn.trimmed();
    out.d_B = best_f;
    return out;
}

} // namespace framelet
