#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "framelet/laurent.hpp"

namespace framelet {

struct BadLowpass : Error {
    using Error::Error;
};
struct LevelMismatch : Error {
    using Error::Error;
};
struct IoFailure : Error {
    using Error::Error;
};

/// Samples of a function on the dyadic grid origin + j 2^{-level}.
struct CascadeGrid {
    int level = 0;
    double origin = 0.0;
    std::vector<cplx> values;
    std::vector<double> sup_diffs;  // successive-iteration sup differences
    bool converged = true;

    double spacing() const { return std::ldexp(1.0, -level); }
    double point(std::size_t j) const { return origin + static_cast<double>(j) * spacing(); }
};

/// Real-valued 2D samples with a generator label.
struct Grid2D {
    int rows = 0, cols = 0;
    std::vector<double> values;  // row major
    std::string label;

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

/**
 * Cascade evaluation of the refinable function phi with mask a
 * (phi^(xi) = prod a^(2^{-j} xi)): iterate p <- 2 a(z) p(z^2) from the
 * delta sequence, so after M iterations coefficient j approximates
 * phi(j 2^{-M}).  Runs max(K, until sup-difference < 1e-8) but at most
 * `iters` iterations, then restricts to the level-K grid over fsupp(a).
 * Non-convergence is reported through the `converged` flag, never thrown.
 */
inline CascadeGrid cascade_phi(const LaurentPoly& a, int K = 8, int iters = 24) {
    if (std::abs(eval_unit(a, 0.0) - 1.0) > 1e-10)
        throw BadLowpass("cascade_phi: a^(0) != 1");
    if (K < 1) throw BadLowpass("cascade_phi: level must be >= 1");
    if (iters < K) iters = K;

    const LaurentPoly mask = 2.0 * a;
    LaurentPoly p = LaurentPoly::constant(1.0);
    CascadeGrid grid;
    grid.level = K;
    grid.origin = a.lo();

    int done = 0;
    for (int it = 1; it <= iters; ++it) {
        const LaurentPoly next = mask * upsample_two(p);
        double diff = 0.0;
        for (int j = p.lo() - 1; j <= p.hi() + 1; ++j)
            diff = std::max(diff, std::abs(next.coeff(2 * j) - p.coeff(j)));
        grid.sup_diffs.push_back(diff);
        p = next;
        done = it;
        if (it >= K && diff < 1e-8) break;
    }

    const auto& d = grid.sup_diffs;
    const std::size_t n = d.size();
    grid.converged = d.back() <= 1e-8 ||
                     (n >= 3 && d[n - 1] < d[n - 2] && d[n - 2] < d[n - 3]);

    const long span = static_cast<long>(a.hi()) - a.lo();
    grid.values.resize(static_cast<std::size_t>(span << K) + 1);
    const int up = done - K;
    for (std::size_t j = 0; j < grid.values.size(); ++j) {
        const long idx = ((static_cast<long>(a.lo()) << K) + static_cast<long>(j)) << up;
        grid.values[j] = p.coeff(static_cast<int>(idx));
    }
    return grid;
}

/// psi(x) = 2 sum_k b(k) phi(2x - k), sampled on the same-spacing grid
/// covering [ (lo(b)+lo(phi))/2, (hi(b)+hi(phi))/2 ].
inline CascadeGrid wavelet_from_phi(const CascadeGrid& phi, const LaurentPoly& b) {
    CascadeGrid psi;
    psi.level = phi.level;
    psi.converged = phi.converged;
    if (b.is_zero() || phi.values.empty()) return psi;

    const long nphi = static_cast<long>(phi.values.size());
    psi.origin = 0.5 * (b.lo() + phi.origin);
    const long count = ((static_cast<long>(b.length()) << phi.level) + (nphi - 1)) / 2 + 1;
    psi.values.assign(static_cast<std::size_t>(count), cplx{});
    for (long j = 0; j < count; ++j) {
        cplx acc{};
        for (int k = b.lo(); k <= b.hi(); ++k) {
            const long i = 2 * j - (static_cast<long>(k) - b.lo() << phi.level);
            if (i >= 0 && i < nphi) acc += b.coeff(k) * phi.values[static_cast<std::size_t>(i)];
        }
        psi.values[static_cast<std::size_t>(j)] = 2.0 * acc;
    }
    return psi;
}

namespace detail {

// zero-extend a grid onto the union dyadic lattice [lo, hi]
inline std::vector<cplx> resample(const CascadeGrid& g, double lo, long n) {
    std::vector<cplx> out(static_cast<std::size_t>(n), cplx{});
    const long off = std::lround((g.origin - lo) * std::ldexp(1.0, g.level));
    for (std::size_t j = 0; j < g.values.size(); ++j) {
        const long idx = off + static_cast<long>(j);
        if (idx >= 0 && idx < n) out[static_cast<std::size_t>(idx)] = g.values[j];
    }
    return out;
}

inline Grid2D outer(const std::vector<double>& u, const std::vector<double>& v, double scale,
                    std::string label) {
    Grid2D g;
    g.rows = static_cast<int>(u.size());
    g.cols = static_cast<int>(v.size());
    g.label = std::move(label);
    g.values.resize(u.size() * v.size());
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) g.values[r * v.size() + c] = scale * u[r] * v[c];
    return g;
}

inline Grid2D lincomb(const Grid2D& x, double sx, const Grid2D& y, double sy, std::string label) {
    Grid2D g = x;
    g.label = std::move(label);
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = sx * x.values[i] + sy * y.values[i];
    return g;
}

} // namespace detail

/**
 * The 2D real-valued generator set built from phi and the complex psi^p:
 * with r = Re psi^p and i = Im psi^p, returns (in order)
 *   phi (x) phi                                    -- low-pass, scale 1
 *   sqrt2 phi (x) r,  sqrt2 phi (x) i              -- horizontal, 0 deg
 *   sqrt2 r (x) phi,  sqrt2 i (x) phi              -- vertical, 90 deg
 *   sqrt2 (r(x)r - i(x)i),  sqrt2 (r(x)r + i(x)i)  -- along +45 deg
 *   sqrt2 (r(x)i - i(x)r),  sqrt2 (r(x)i + i(x)r)  -- along -45 deg
 * Both grids must share a level; they are zero-extended onto the union
 * support before the outer products are formed.
 */
inline std::vector<Grid2D> tensor_generators(const CascadeGrid& phi, const CascadeGrid& psi_p) {
    if (phi.level != psi_p.level)
        throw LevelMismatch("tensor_generators: grids are at different levels");
    const double h = phi.spacing();
    const double lo = std::min(phi.origin, psi_p.origin);
    const double hi = std::max(phi.origin + (phi.values.empty() ? 0 : phi.values.size() - 1) * h,
                               psi_p.origin + (psi_p.values.empty() ? 0 : psi_p.values.size() - 1) * h);
    const long n = std::lround((hi - lo) / h) + 1;

    const std::vector<cplx> pc = detail::resample(phi, lo, n);
    const std::vector<cplx> sc = detail::resample(psi_p, lo, n);
    std::vector<double> p(pc.size()), r(sc.size()), im(sc.size());
    for (std::size_t j = 0; j < pc.size(); ++j) p[j] = pc[j].real();
    for (std::size_t j = 0; j < sc.size(); ++j) {
        r[j] = sc[j].real();
        im[j] = sc[j].imag();
    }

    const double s2 = std::numbers::sqrt2;
    std::vector<Grid2D> out;
    out.push_back(detail::outer(p, p, 1.0, "phi_phi"));  // sqrt2 * (sqrt2/2) = 1
    out.push_back(detail::outer(p, r, s2, "h0_phi_psir"));
    out.push_back(detail::outer(p, im, s2, "h0_phi_psii"));
    out.push_back(detail::outer(r, p, s2, "v90_psir_phi"));
    out.push_back(detail::outer(im, p, s2, "v90_psii_phi"));
    const Grid2D rr = detail::outer(r, r, 1.0, "rr"), ii = detail::outer(im, im, 1.0, "ii");
    const Grid2D ri = detail::outer(r, im, 1.0, "ri"), ir = detail::outer(im, r, 1.0, "ir");
    out.push_back(detail::lincomb(rr, s2, ii, -s2, "p45_rr_minus_ii"));
    out.push_back(detail::lincomb(rr, s2, ii, s2, "p45_rr_plus_ii"));
    out.push_back(detail::lincomb(ri, s2, ir, -s2, "m45_ri_minus_ir"));
    out.push_back(detail::lincomb(ri, s2, ir, s2, "m45_ri_plus_ir"));
    return out;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename Body>
void write_file(const std::string& path, bool binary, Body&& body) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw IoFailure("cannot open for writing: " + path);
    body(os);
    os.flush();
    if (!os) throw IoFailure("write failed: " + path);
}

inline void write_pgm(const std::string& path, int rows, int cols, const std::vector<double>& v) {
    double mn = v.empty() ? 0.0 : v[0], mx = mn;
    for (double x : v) {
        mn = std::min(mn, x);
        mx = std::max(mx, x);
    }
    write_file(path, /*binary=*/true, [&](std::ofstream& os) {
        os << "P5\n# norm min=" << fmt17(mn) << " max=" << fmt17(mx) << "\n"
           << cols << " " << rows << "\n255\n";
        const double span = mx - mn;
        for (double x : v) {
            // degenerate range maps everything to 0
            const int g = span > 0 ? static_cast<int>(std::lround((x - mn) / span * 255.0)) : 0;
            os.put(static_cast<char>(g));
        }
    });
}

} // namespace detail

inline void export_csv(const CascadeGrid& g, const std::string& path) {
    detail::write_file(path, false, [&](std::ofstream& os) {
        for (std::size_t j = 0; j < g.values.size(); ++j)
            os << detail::fmt17(g.point(j)) << ',' << detail::fmt17(g.values[j].real()) << ','
               << detail::fmt17(g.values[j].imag()) << '\n';
    });
}

inline void export_csv(const Grid2D& g, const std::string& path) {
    detail::write_file(path, false, [&](std::ofstream& os) {
        for (int r = 0; r < g.rows; ++r) {
            for (int c = 0; c < g.cols; ++c) os << (c ? "," : "") << detail::fmt17(g.at(r, c));
            os << '\n';
        }
    });
}

inline void export_pgm(const CascadeGrid& g, const std::string& path) {
    std::vector<double> v(g.values.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = g.values[j].real();
    detail::write_pgm(path, 1, static_cast<int>(v.size()), v);
}

inline void export_pgm(const Grid2D& g, const std::string& path) {
    detail::write_pgm(path, g.rows, g.cols, g.values);
}

/// Re-parse a 1D csv written by export_csv; exact round trip at 17
/// significant digits.
inline CascadeGrid import_cascade_csv(const std::string& path, int level) {
    std::ifstream is(path);
    if (!is) throw IoFailure("cannot open for reading: " + path);
    CascadeGrid g;
    g.level = level;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x = 0, re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            throw IoFailure("malformed csv row: " + line);
        if (first) g.origin = x;
        first = false;
        g.values.emplace_back(re, im);
    }
    return g;
}

inline Grid2D import_grid_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoFailure("cannot open for reading: " + path);
    Grid2D g;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ss, cell, ',')) {
            g.values.push_back(std::strtod(cell.c_str(), nullptr));
            ++cols;
        }
        if (g.cols == 0) g.cols = cols;
        ++g.rows;
    }
    return g;
}

} // namespace framelet
