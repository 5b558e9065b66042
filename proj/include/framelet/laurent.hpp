#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace framelet {

using cplx = std::complex<double>;

/// Base class of all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * A finitely supported complex sequence u viewed as the Laurent polynomial
 * u(z) = sum_k u(k) z^k.  The coefficient of z^(lo()+i) is stored at
 * position i; on the unit circle z = e^{-i xi} this is the Fourier symbol
 * of the filter u.
 *
 * Invariants: the empty coefficient list is the zero polynomial (lo is 0
 * then), and a nonempty list has exactly nonzero first and last entries.
 * Exact zeros are trimmed on construction; use trimmed() to strip
 * round-off noise after floating-point work.
 */
class LaurentPoly {
public:
    LaurentPoly() = default;

    LaurentPoly(int lo, std::vector<cplx> coeffs) {
        std::size_t first = 0, last = coeffs.size();
        while (first < last && coeffs[first] == cplx{}) ++first;
        while (last > first && coeffs[last - 1] == cplx{}) --last;
        if (first < last) {
            lo_ = lo + static_cast<int>(first);
            coef_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(first),
                         coeffs.begin() + static_cast<std::ptrdiff_t>(last));
        }
    }

    static LaurentPoly constant(cplx c) { return LaurentPoly(0, {c}); }
    static LaurentPoly monomial(cplx c, int k) { return LaurentPoly(k, {c}); }

    bool is_zero() const { return coef_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(coef_.size()) - 1; }
    /// Filter length hi-lo (0 for the zero polynomial and for monomials).
    int length() const { return is_zero() ? 0 : hi() - lo(); }
    std::size_t size() const { return coef_.size(); }
    const std::vector<cplx>& coefficients() const { return coef_; }

    cplx coeff(int k) const {
        if (is_zero() || k < lo_ || k > hi()) return {};
        return coef_[static_cast<std::size_t>(k - lo_)];
    }

    bool operator==(const LaurentPoly& o) const { return lo_ == o.lo_ && coef_ == o.coef_; }

    LaurentPoly operator-() const {
        std::vector<cplx> c(coef_);
        for (auto& v : c) v = -v;
        return LaurentPoly(lo_, std::move(c));
    }

    friend LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero()) return q;
        if (q.is_zero()) return p;
        int lo = std::min(p.lo_, q.lo_);
        int hi = std::max(p.hi(), q.hi());
        std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < p.coef_.size(); ++i) c[static_cast<std::size_t>(p.lo_ - lo) + i] += p.coef_[i];
        for (std::size_t i = 0; i < q.coef_.size(); ++i) c[static_cast<std::size_t>(q.lo_ - lo) + i] += q.coef_[i];
        return LaurentPoly(lo, std::move(c));
    }

    friend LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) { return p + (-q); }

    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<cplx> c(p.coef_.size() + q.coef_.size() - 1);
        for (std::size_t i = 0; i < p.coef_.size(); ++i)
            for (std::size_t j = 0; j < q.coef_.size(); ++j)
                c[i + j] += p.coef_[i] * q.coef_[j];
        return LaurentPoly(p.lo_ + q.lo_, std::move(c));
    }

    friend LaurentPoly operator*(cplx s, const LaurentPoly& p) {
        std::vector<cplx> c(p.coef_);
        for (auto& v : c) v *= s;
        return LaurentPoly(p.lo_, std::move(c));
    }
    friend LaurentPoly operator*(const LaurentPoly& p, cplx s) { return s * p; }

    friend LaurentPoly operator+(const LaurentPoly& p, cplx s) { return p + constant(s); }
    friend LaurentPoly operator+(cplx s, const LaurentPoly& p) { return p + constant(s); }
    friend LaurentPoly operator-(const LaurentPoly& p, cplx s) { return p - constant(s); }
    friend LaurentPoly operator-(cplx s, const LaurentPoly& p) { return constant(s) - p; }

    /// Multiply by z^k.
    LaurentPoly shifted(int k) const {
        if (is_zero()) return {};
        return LaurentPoly(lo_ + k, coef_);
    }

    /// Coefficient-wise complex conjugation (u(k) -> conj(u(k))).
    LaurentPoly conjugated() const {
        std::vector<cplx> c(coef_);
        for (auto& v : c) v = std::conj(v);
        return LaurentPoly(lo_, std::move(c));
    }

    double infinity_norm() const {
        double m = 0.0;
        for (const auto& v : coef_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_real(double tol = 0.0) const {
        for (const auto& v : coef_)
            if (std::abs(v.imag()) > tol) return false;
        return true;
    }

    /// Strip coefficients of magnitude <= tol at both ends and zero interior
    /// ones; used after floating-point passes (factorization, optimization).
    LaurentPoly trimmed(double tol = 1e-12) const {
        std::vector<cplx> c(coef_);
        for (auto& v : c)
            if (std::abs(v) <= tol) v = cplx{};
        return LaurentPoly(lo_, std::move(c));
    }

private:
    int lo_ = 0;
    std::vector<cplx> coef_;
};

/// Adjoint u*(z) = sum conj(u(k)) z^{-k}; on the unit circle the complex
/// conjugate of the symbol.
inline LaurentPoly star(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    std::vector<cplx> c(p.size());
    const auto& src = p.coefficients();
    for (std::size_t i = 0; i < src.size(); ++i) c[i] = std::conj(src[src.size() - 1 - i]);
    return LaurentPoly(-p.hi(), std::move(c));
}

/// The substitution z -> -z: coefficient at k picks up the sign (-1)^k.
inline LaurentPoly alternate(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    std::vector<cplx> c(p.coefficients());
    for (std::size_t i = 0; i < c.size(); ++i)
        if ((p.lo() + static_cast<int>(i)) & 1) c[i] = -c[i];
    return LaurentPoly(p.lo(), std::move(c));
}

/// Symbol value u(e^{-i xi}); 2*pi periodic in xi.
inline cplx eval_unit(const LaurentPoly& p, double xi) {
    if (p.is_zero()) return {};
    const cplx z = std::polar(1.0, -xi);
    const auto& c = p.coefficients();
    cplx acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
    return acc * std::polar(1.0, -xi * p.lo());
}

/// Coset split u(k) -> (u(2k), u(1+2k)) with u(z) = u0(z^2) + z u1(z^2).
inline std::pair<LaurentPoly, LaurentPoly> polyphase_split(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    // even coset spans ceil(lo/2)..floor(hi/2), odd coset the complement
    auto fdiv2 = [](int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); };
    int e_lo = fdiv2(p.lo() + 1), o_lo = fdiv2(p.lo());
    std::vector<cplx> ev, od;
    for (int k = e_lo; 2 * k <= p.hi(); ++k) ev.push_back(p.coeff(2 * k));
    for (int k = o_lo; 2 * k + 1 <= p.hi(); ++k) od.push_back(p.coeff(2 * k + 1));
    return {LaurentPoly(e_lo, std::move(ev)), LaurentPoly(o_lo, std::move(od))};
}

/// The substitution z -> z^2 (coefficient of z^k moves to z^{2k}).
inline LaurentPoly upsample_two(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    std::vector<cplx> c(2 * p.size() - 1);
    const auto& src = p.coefficients();
    for (std::size_t i = 0; i < src.size(); ++i) c[2 * i] = src[i];
    return LaurentPoly(2 * p.lo(), std::move(c));
}

inline LaurentPoly polyphase_merge(const LaurentPoly& even, const LaurentPoly& odd) {
    return upsample_two(even) + upsample_two(odd).shifted(1);
}

/// Exact value of the half-circle integral int_0^pi p(e^{-i xi}) d(xi):
/// the constant term contributes pi, odd powers k contribute 2/(ik), even
/// nonzero powers vanish.  Real (up to round-off) whenever p = star(p).
inline cplx integrate_halfcircle(const LaurentPoly& p) {
    cplx acc{};
    for (int k = p.lo(); k <= p.hi() && !p.is_zero(); ++k) {
        if (k == 0)
            acc += p.coeff(0) * std::numbers::pi;
        else if (k & 1)
            acc += p.coeff(k) * (2.0 / (cplx(0.0, 1.0) * static_cast<double>(k)));
    }
    return acc;
}

} // namespace framelet
