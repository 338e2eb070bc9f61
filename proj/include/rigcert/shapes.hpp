#pragma once

// Tetrahedron shape handling for the two-tetrahedron triangulation of the
// figure-eight knot complement: edge (gluing) equations, complex lengths of
// the peripheral curves, the generalized Dehn filling equation, and Krawczyk
// certification of shape boxes.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rigcert/cbox.hpp"
#include "rigcert/errors.hpp"
#include "rigcert/interval.hpp"
#include "rigcert/linalg.hpp"

namespace rigcert {

struct DehnSlope {
    int p = 0;
    int q = 0;

    bool coprime() const { return std::gcd(p, q) == 1; }
    friend bool operator==(const DehnSlope&, const DehnSlope&) = default;
};

// Slopes whose filling carries no hyperbolic structure, closed under
// reflection across both axes.
inline bool is_exceptional(DehnSlope s) {
    const int p = std::abs(s.p), q = std::abs(s.q);
    static constexpr std::array<std::pair<int, int>, 6> kExceptional = {
        {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}}};
    for (auto [ep, eq] : kExceptional)
        if (p == ep && q == eq) return true;
    return false;
}

struct ShapeCertificate {
    DehnSlope slope;
    CBox z1, z2;
    bool verified = false;
};

inline CBox two_pi_i() { return CBox(RInterval::exact(0.0), two_pi_interval()); }

inline CBox one_box() { return CBox::exact(1.0, 0.0); }

// First edge equation, as a residual:
//   2 Log z1 + Log(1/(1-z1)) + Log z2 + 2 Log(1 - 1/z2) - 2*pi*i.
// Both shapes keep positive imaginary part, so each log argument sits in the
// open upper half plane and Log(1/(1-z1)) = -Log(1-z1) on the principal
// branch.
inline CBox gluing_residual(const CBox& z1, const CBox& z2) {
    CBox t1 = 2.0 * log(z1);
    CBox t2 = -log(one_box() - z1);
    CBox t3 = log(z2);
    CBox t4 = 2.0 * log(one_box() - one_box() / z2);
    return t1 + t2 + t3 + t4 - two_pi_i();
}

// Second edge equation; implied by the first together with the Dehn
// equation, so it is checked after certification rather than solved:
//   Log(1/(1-z1)) + 2 Log(1 - 1/z1) + Log z2 + 2 Log(1/(1-z2)) - 2*pi*i.
inline CBox gluing_residual_second(const CBox& z1, const CBox& z2) {
    CBox t1 = -log(one_box() - z1);
    CBox t2 = 2.0 * log(one_box() - one_box() / z1);
    CBox t3 = log(z2);
    CBox t4 = -2.0 * log(one_box() - z2);
    return t1 + t2 + t3 + t4 - two_pi_i();
}

struct ComplexLengths {
    CBox u; // meridian
    CBox v; // longitude
};

// u = Log(z1 (1-z2)),  v = 2 Log(-(1-z2)^2 / z2), branched so that both
// vanish at the complete structure z1 = z2 = (1 + i*sqrt(3))/2.
inline ComplexLengths complex_lengths(const CBox& z1, const CBox& z2) {
    CBox w = z1 * (one_box() - z2);
    CBox s = one_box() - z2;
    CBox arg = -(s * s) / z2;
    return {log(w), 2.0 * log(arg)};
}

// p*u + q*v - 2*pi*i.
inline CBox dehn_residual(DehnSlope slope, const CBox& z1, const CBox& z2) {
    ComplexLengths len = complex_lengths(z1, z2);
    return static_cast<double>(slope.p) * len.u + static_cast<double>(slope.q) * len.v -
           two_pi_i();
}

// ---------------------------------------------------------------------------
// Krawczyk certification.
//
// The certified system is F : R^4 -> R^4, F = (Re G, Im G, Re D, Im D) in the
// variables (Re z1, Im z1, Re z2, Im z2), where G is the first edge residual
// and D the Dehn residual.  The complex derivatives of G and D are rational:
//   dG/dz1 = 2/z1 + 1/(1-z1)
//   dG/dz2 = (z2+1) / (z2 (z2-1))
//   dD/dz1 = p/z1
//   dD/dz2 = p/(z2-1) + 2q (z2+1) / (z2 (z2-1))
// F is holomorphic in each variable, so the real 4x4 Jacobian consists of
// 2x2 Cauchy-Riemann blocks [[Re d, -Im d], [Im d, Re d]].

namespace detail {

// Residual at the box midpoint, evaluated in extended precision.  The
// Krawczyk test needs this value far tighter than the box radius.  With the
// 64-bit significand every term of the short expression chain carries at
// most a few 1e-19-size units of error even after the 1/|w| amplification
// inside the logarithms; an allowance of 1e-17 per unit of the coefficient
// scale overshoots that by well over an order of magnitude while staying
// far below the 1e-15 default box radius.  The Dehn component grows with
// p + q, which the Krawczyk preconditioner scales right back down.
inline RInterval enclose_ld(long double x, double scale) {
    const long double e =
        1e-17L * static_cast<long double>(scale) * (1.0L + std::fabs(static_cast<double>(x)));
    return RInterval(next_down(static_cast<double>(x - e)),
                     next_up(static_cast<double>(x + e)));
}

inline std::array<RInterval, 4> eval_point_tight(DehnSlope slope, std::complex<double> z1,
                                                 std::complex<double> z2) {
    using cld = std::complex<long double>;
    const long double pi_l = 3.141592653589793238462643383279502884L;
    const cld two_pi_i(0.0L, 2.0L * pi_l);
    cld w1(z1.real(), z1.imag()), w2(z2.real(), z2.imag());
    cld g = 2.0L * std::log(w1) - std::log(1.0L - w1) + std::log(w2) +
            2.0L * std::log(1.0L - 1.0L / w2) - two_pi_i;
    cld u = std::log(w1 * (1.0L - w2));
    cld v = 2.0L * std::log(-((1.0L - w2) * (1.0L - w2)) / w2);
    cld d = static_cast<long double>(slope.p) * u + static_cast<long double>(slope.q) * v -
            two_pi_i;
    const double g_scale = 8.0;
    const double d_scale = 4.0 + std::abs(slope.p) + std::abs(slope.q);
    return {enclose_ld(g.real(), g_scale), enclose_ld(g.imag(), g_scale),
            enclose_ld(d.real(), d_scale), enclose_ld(d.imag(), d_scale)};
}

struct ShapeSystem {
    DehnSlope slope;

    std::array<RInterval, 4> eval(const CBox& z1, const CBox& z2) const {
        CBox g = gluing_residual(z1, z2);
        CBox d = dehn_residual(slope, z1, z2);
        return {g.re, g.im, d.re, d.im};
    }

    IMatrix jacobian(const CBox& z1, const CBox& z2) const {
        CBox one = one_box();
        CBox g1 = 2.0 * (one / z1) + one / (one - z1);
        CBox z2m1 = z2 - one;
        CBox g2 = (z2 + one) / (z2 * z2m1);
        double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);
        CBox d1 = p * (one / z1);
        CBox d2 = p * (one / z2m1) + (2.0 * q) * ((z2 + one) / (z2 * z2m1));
        IMatrix j(4, 4);
        auto put_block = [&j](int row, int col, const CBox& d) {
            j(row, col) = d.re;
            j(row, col + 1) = -d.im;
            j(row + 1, col) = d.im;
            j(row + 1, col + 1) = d.re;
        };
        put_block(0, 0, g1);
        put_block(0, 2, g2);
        put_block(2, 0, d1);
        put_block(2, 2, d2);
        return j;
    }
};

} // namespace detail

// Pads the approximate shapes into eps-boxes and runs the Krawczyk operator
//   K(X) = m - R F(m) + (I - R F'(X)) (X - m)
// with m the box midpoint and R the floating-point inverse of the midpoint
// Jacobian.  K(X) strictly inside X proves a unique solution of (G, D) = 0
// in X.  On containment failure the certificate comes back unverified.
inline ShapeCertificate certify_shapes(DehnSlope slope, std::complex<double> z1_approx,
                                       std::complex<double> z2_approx, double eps) {
    if (eps <= 0.0) throw DomainViolation("certify_shapes requires eps > 0");
    if (z1_approx.imag() <= 0.0 || z2_approx.imag() <= 0.0)
        throw DomainViolation("shape approximations must have positive imaginary part");

    ShapeCertificate cert;
    cert.slope = slope;
    cert.z1 = CBox::pad(z1_approx, eps);
    cert.z2 = CBox::pad(z2_approx, eps);
    if (cert.z1.im.lo <= 0.0 || cert.z2.im.lo <= 0.0) return cert;

    detail::ShapeSystem sys{slope};
    const std::array<RInterval, 4> box = {cert.z1.re, cert.z1.im, cert.z2.re, cert.z2.im};
    std::array<double, 4> m{};
    for (int i = 0; i < 4; ++i) m[static_cast<size_t>(i)] = box[static_cast<size_t>(i)].mid();

    std::array<RInterval, 4> fm = detail::eval_point_tight(slope, {m[0], m[1]}, {m[2], m[3]});
    IMatrix j = sys.jacobian(CBox(box[0], box[1]), CBox(box[2], box[3]));

    auto r = detail::inverse(detail::midpoint(j), 4);
    if (!r) return cert;

    // K - m = -R F(m) + (I - R J)(X - m), tested against X - m: every term
    // lives at the scale of the box radius, so the accumulation costs no
    // width at the scale of the coordinates themselves.
    IMatrix c = IMatrix::identity(4) - detail::mul_point_interval(*r, j);
    std::array<RInterval, 4> delta{};
    for (int i = 0; i < 4; ++i)
        delta[static_cast<size_t>(i)] =
            box[static_cast<size_t>(i)] - RInterval::exact(m[static_cast<size_t>(i)]);
    bool inside = true;
    for (int i = 0; i < 4; ++i) {
        RInterval k;
        for (int t = 0; t < 4; ++t)
            k -= RInterval::exact((*r)[static_cast<size_t>(i) * 4 + static_cast<size_t>(t)]) *
                 fm[static_cast<size_t>(t)];
        for (int t = 0; t < 4; ++t) k += c(i, t) * delta[static_cast<size_t>(t)];
        if (!delta[static_cast<size_t>(i)].interior_contains(k)) {
            inside = false;
            break;
        }
    }
    if (!inside) return cert;

    // Post-hoc consistency: both edge residuals and the Dehn residual must
    // enclose zero on the certified boxes.  These evaluations also prove the
    // box clear of every logarithm branch cut (they throw otherwise); the
    // rational Jacobian above cannot see cuts, so without this step the
    // Krawczyk zero could belong to an analytic continuation rather than the
    // principal branch.
    CBox g = gluing_residual(cert.z1, cert.z2);
    CBox g2 = gluing_residual_second(cert.z1, cert.z2);
    CBox d = dehn_residual(slope, cert.z1, cert.z2);
    if (!g.contains_zero() || !g2.contains_zero() || !d.contains_zero()) return cert;

    cert.verified = true;
    return cert;
}

// ---------------------------------------------------------------------------
// Floating-point shape oracle: continuation from the complete structure.
//
// At t = 0 the pair (omega, omega) solves (G, p*u + q*v - t*2*pi*i); the
// solution path is followed to t = 1 with Newton steps on the 2x2 complex
// system.  Output is a non-certified approximation and is always re-run
// through certify_shapes by callers.

namespace detail {

using cplx = std::complex<double>;

inline cplx glue_f(cplx z1, cplx z2) {
    return 2.0 * std::log(z1) - std::log(1.0 - z1) + std::log(z2) +
           2.0 * std::log(1.0 - 1.0 / z2);
}

inline std::pair<cplx, cplx> lengths_f(cplx z1, cplx z2) {
    cplx u = std::log(z1 * (1.0 - z2));
    cplx v = 2.0 * std::log(-((1.0 - z2) * (1.0 - z2)) / z2);
    return {u, v};
}

} // namespace detail

inline std::optional<std::pair<std::complex<double>, std::complex<double>>> shape_oracle(
    DehnSlope slope) {
    using detail::cplx;
    const cplx two_pi_i_pt(0.0, 2.0 * std::numbers::pi);
    const double p = static_cast<double>(slope.p), q = static_cast<double>(slope.q);

    auto residual = [&](cplx z1, cplx z2, double t) -> std::pair<cplx, cplx> {
        auto [u, v] = detail::lengths_f(z1, z2);
        return {detail::glue_f(z1, z2) - two_pi_i_pt, p * u + q * v - t * two_pi_i_pt};
    };
    auto newton_to = [&](cplx& z1, cplx& z2, double t) -> bool {
        for (int it = 0; it < 60; ++it) {
            auto [g, d] = residual(z1, z2, t);
            if (std::abs(g) < 1e-14 && std::abs(d) < 1e-13) return true;
            cplx g1 = 2.0 / z1 + 1.0 / (1.0 - z1);
            cplx g2 = (z2 + 1.0) / (z2 * (z2 - 1.0));
            cplx d1 = p / z1;
            cplx d2 = p / (z2 - 1.0) + 2.0 * q * (z2 + 1.0) / (z2 * (z2 - 1.0));
            cplx det = g1 * d2 - g2 * d1;
            if (std::abs(det) < 1e-14) return false;
            cplx dz1 = (g * d2 - g2 * d) / det;
            cplx dz2 = (g1 * d - g * d1) / det;
            z1 -= dz1;
            z2 -= dz2;
            if (z1.imag() <= 0.0 || z2.imag() <= 0.0) return false;
        }
        auto [g, d] = residual(z1, z2, t);
        return std::abs(g) < 1e-11 && std::abs(d) < 1e-11;
    };

    const cplx omega(0.5, 0.5 * std::sqrt(3.0));
    cplx z1 = omega, z2 = omega;
    double t = 0.0, step = 1.0 / 32.0;
    while (t < 1.0) {
        double target = std::min(1.0, t + step);
        cplx s1 = z1, s2 = z2;
        if (newton_to(s1, s2, target)) {
            z1 = s1;
            z2 = s2;
            t = target;
            step = std::min(step * 2.0, 1.0 / 8.0);
        } else {
            step *= 0.5;
            if (step < 1e-6) return std::nullopt;
        }
    }
    // Final polish at t = 1.
    if (!newton_to(z1, z2, 1.0)) return std::nullopt;
    auto [g, d] = residual(z1, z2, 1.0);
    if (std::abs(g) > 1e-12 || std::abs(d) > 1e-12) return std::nullopt;
    return std::make_pair(z1, z2);
}

// ---------------------------------------------------------------------------
// Shape file input: one record per line,
//   p q z1x z1y z2x z2y
// whitespace-separated decimal literals; '#' starts a comment line.

struct ShapeFileRecord {
    DehnSlope slope;
    std::complex<double> z1, z2;
};

inline std::vector<ShapeFileRecord> load_shapes(std::istream& in) {
    std::vector<ShapeFileRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        size_t first = sv.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || sv[first] == '#') continue;
        std::istringstream ss(line);
        ShapeFileRecord rec;
        double z1x, z1y, z2x, z2y;
        if (!(ss >> rec.slope.p >> rec.slope.q >> z1x >> z1y >> z2x >> z2y))
            throw ParseError("shape file line " + std::to_string(lineno) + ": malformed record");
        std::string extra;
        if (ss >> extra)
            throw ParseError("shape file line " + std::to_string(lineno) + ": trailing fields");
        rec.z1 = {z1x, z1y};
        rec.z2 = {z2x, z2y};
        out.push_back(rec);
    }
    return out;
}

inline std::vector<ShapeFileRecord> load_shapes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open shape file: " + path);
    return load_shapes(in);
}

} // namespace rigcert
