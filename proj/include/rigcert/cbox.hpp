#pragma once

// Complex rectangles: a box re + i*im with interval components.
// Rectangular boxes rather than disks, so the components stay independent
// real intervals.

#include <complex>
#include <ostream>

#include "rigcert/errors.hpp"
#include "rigcert/interval.hpp"

namespace rigcert {

struct CBox {
    RInterval re;
    RInterval im;

    CBox() = default;
    CBox(RInterval r, RInterval i) : re(r), im(i) {}

    static CBox exact(double r, double i) {
        return CBox(RInterval::exact(r), RInterval::exact(i));
    }
    static CBox exact(std::complex<double> z) { return exact(z.real(), z.imag()); }
    static CBox pad(std::complex<double> z, double eps) {
        return CBox(outward_pad(z.real(), eps), outward_pad(z.imag(), eps));
    }

    std::complex<double> mid() const { return {re.mid(), im.mid()}; }
    bool finite() const { return re.finite() && im.finite(); }
    bool contains(std::complex<double> z) const {
        return re.contains(z.real()) && im.contains(z.imag());
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

inline CBox operator-(const CBox& a) { return {-a.re, -a.im}; }

inline CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
inline CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }

inline CBox operator*(const CBox& a, const CBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline CBox operator*(const RInterval& s, const CBox& a) { return {s * a.re, s * a.im}; }
inline CBox operator*(double s, const CBox& a) { return RInterval::exact(s) * a; }

// |b|^2 as an interval; the divisor test below runs on this quantity.
inline RInterval norm2(const CBox& b) { return sqr(b.re) + sqr(b.im); }

inline CBox operator/(const CBox& a, const CBox& b) {
    RInterval n2 = norm2(b);
    if (n2.contains_zero())
        throw DivisionByZeroInterval("division by a complex box containing zero");
    // a * conj(b) / |b|^2
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
}

inline CBox& operator+=(CBox& a, const CBox& b) { return a = a + b; }
inline CBox& operator-=(CBox& a, const CBox& b) { return a = a - b; }

// Principal-branch logarithm.  The box must not meet the closed
// nonpositive real axis.
inline CBox log(const CBox& z) {
    if (z.im.lo <= 0.0 && 0.0 <= z.im.hi && z.re.lo <= 0.0)
        throw BranchCutViolation("log box meets the nonpositive real axis");
    RInterval n2 = norm2(z);
    if (n2.lo <= 0.0)
        throw DomainViolation("log of a complex box reaching zero");
    return {RInterval::exact(0.5) * log(n2), atan2(z.im, z.re)};
}

inline std::ostream& operator<<(std::ostream& os, const CBox& z) {
    return os << z.re << " + i*" << z.im;
}

} // namespace rigcert
