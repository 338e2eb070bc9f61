#pragma once

// Outward-rounded real interval arithmetic.
//
// Every operation returns an interval containing the exact real result for
// all points of its operand intervals.  Directed rounding is emulated
// portably: endpoints are computed in round-to-nearest and pushed outward
// by one representable float exactly when the rounding error term (exact,
// via 2Sum or one fma) shows the rounding went inward.  libm calls are
// padded by a few floats on top of their documented worst-case error.  The
// width cost per operation stays orders of magnitude below the
// certification margins this library operates with.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include "rigcert/errors.hpp"

namespace rigcert {

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// libm transcendentals on glibc are documented below 2 ulp worst case;
// three steps leave a guard band on top of that.
inline constexpr int kLibmPad = 3;

inline double next_up(double x) {
    return x == kInf ? x : std::nextafter(x, kInf);
}

inline double next_down(double x) {
    return x == -kInf ? x : std::nextafter(x, -kInf);
}

inline double step_up(double x, int n) {
    for (int i = 0; i < n; ++i) x = next_up(x);
    return x;
}

inline double step_down(double x, int n) {
    for (int i = 0; i < n; ++i) x = next_down(x);
    return x;
}

// NaN from inf arithmetic widens to the corresponding infinity.
inline double sanitize_lo(double x) { return std::isnan(x) ? -kInf : x; }
inline double sanitize_hi(double x) { return std::isnan(x) ? kInf : x; }

} // namespace detail

struct RInterval {
    double lo = 0.0;
    double hi = 0.0;

    RInterval() = default;
    RInterval(double l, double h) : lo(l), hi(h) {
        if (std::isnan(l) || std::isnan(h))
            throw DomainViolation("interval endpoint is NaN");
        if (l > h) throw DomainViolation("interval endpoints out of order");
    }

    static RInterval exact(double x) { return RInterval(x, x); }
    static RInterval entire() { return RInterval(-detail::kInf, detail::kInf); }

    double width() const { return hi - lo; }
    double mid() const {
        double m = 0.5 * (lo + hi);
        if (std::isfinite(m)) return m;
        return 0.5 * lo + 0.5 * hi;
    }
    double rad() const { return 0.5 * (hi - lo); }
    // Largest absolute value over the interval.
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }

    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const RInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    // Strict containment of o in the interior; o must be finite.
    bool interior_contains(const RInterval& o) const {
        return std::isfinite(o.lo) && std::isfinite(o.hi) && lo < o.lo && o.hi < hi;
    }
    bool is_degenerate() const { return lo == hi; }
};

inline std::optional<RInterval> intersect(const RInterval& a, const RInterval& b) {
    double l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
    if (l > h) return std::nullopt;
    return RInterval(l, h);
}

inline bool overlaps(const RInterval& a, const RInterval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

inline RInterval hull(const RInterval& a, const RInterval& b) {
    return RInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

namespace detail {

inline RInterval outward(double lo, double hi, int steps = 1) {
    lo = sanitize_lo(lo);
    hi = sanitize_hi(hi);
    return RInterval(step_down(lo, steps), step_up(hi, steps));
}

// Directed endpoint arithmetic through exact error terms: the rounding
// error of a sum (Knuth 2Sum) and of a product or quotient (one fma) is
// computed exactly, so an endpoint only moves to the neighbouring float
// when rounding actually went the wrong way.  Non-finite intermediates fall
// back to a plain one-step widening toward the relevant infinity.

inline double sum_err(double a, double b, double s) {
    double bp = s - a;
    double ap = s - bp;
    return (a - ap) + (b - bp);
}

// A non-finite rounded value collapses to a sound bound: NaN widens to the
// relevant infinity; an overflow in the wrong direction pulls back to the
// largest finite float, which is always a valid bound for a finite true
// value.
inline double fallback_down(double v) {
    if (std::isnan(v)) return -kInf;
    return v == kInf ? std::numeric_limits<double>::max() : v;
}

inline double fallback_up(double v) {
    if (std::isnan(v)) return kInf;
    return v == -kInf ? std::numeric_limits<double>::lowest() : v;
}

inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return fallback_down(s);
    double e = sum_err(a, b, s);
    return e < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return fallback_up(s);
    double e = sum_err(a, b, s);
    return e > 0.0 ? next_up(s) : s;
}

// The fma error term is exact away from the subnormal range; below this
// threshold fall back to an unconditional one-step widening.
inline constexpr double kFmaExactFloor = 1e-290;

inline double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0; // corner convention: 0 * inf -> 0
    double p = a * b;
    if (!std::isfinite(p)) return fallback_down(p);
    if (std::fabs(p) < kFmaExactFloor) return next_down(p);
    double e = std::fma(a, b, -p);
    return e < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return fallback_up(p);
    if (std::fabs(p) < kFmaExactFloor) return next_up(p);
    double e = std::fma(a, b, -p);
    return e > 0.0 ? next_up(p) : p;
}

// true(a/b) vs q: the exact remainder q*b - a carries the direction.
inline double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) return fallback_down(q);
    if (std::fabs(q) < kFmaExactFloor) return next_down(q);
    double r = std::fma(q, b, -a);
    if (!std::isfinite(r)) return next_down(q);
    bool q_too_big = (b > 0.0) ? (r > 0.0) : (r < 0.0);
    return q_too_big ? next_down(q) : q;
}

inline double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) return fallback_up(q);
    if (std::fabs(q) < kFmaExactFloor) return next_up(q);
    double r = std::fma(q, b, -a);
    if (!std::isfinite(r)) return next_up(q);
    bool q_too_small = (b > 0.0) ? (r < 0.0) : (r > 0.0);
    return q_too_small ? next_up(q) : q;
}

inline bool is_zero(const RInterval& a) { return a.lo == 0.0 && a.hi == 0.0; }
inline bool is_point(const RInterval& a, double v) { return a.lo == v && a.hi == v; }

} // namespace detail

inline RInterval operator-(const RInterval& a) { return RInterval(-a.hi, -a.lo); }

inline RInterval operator+(const RInterval& a, const RInterval& b) {
    if (detail::is_zero(a)) return b;
    if (detail::is_zero(b)) return a;
    return RInterval(detail::sanitize_lo(detail::add_down(a.lo, b.lo)),
                     detail::sanitize_hi(detail::add_up(a.hi, b.hi)));
}

inline RInterval operator-(const RInterval& a, const RInterval& b) {
    if (detail::is_zero(b)) return a;
    if (detail::is_zero(a)) return -b;
    return RInterval(detail::sanitize_lo(detail::add_down(a.lo, -b.hi)),
                     detail::sanitize_hi(detail::add_up(a.hi, -b.lo)));
}

inline RInterval operator*(const RInterval& a, const RInterval& b) {
    if ((detail::is_zero(a) && b.finite()) || (detail::is_zero(b) && a.finite()))
        return RInterval::exact(0.0);
    if (detail::is_point(b, 1.0)) return a;
    if (detail::is_point(a, 1.0)) return b;
    if (detail::is_point(b, -1.0)) return -a;
    if (detail::is_point(a, -1.0)) return -b;
    double lo = std::min(std::min(detail::mul_down(a.lo, b.lo), detail::mul_down(a.lo, b.hi)),
                         std::min(detail::mul_down(a.hi, b.lo), detail::mul_down(a.hi, b.hi)));
    double hi = std::max(std::max(detail::mul_up(a.lo, b.lo), detail::mul_up(a.lo, b.hi)),
                         std::max(detail::mul_up(a.hi, b.lo), detail::mul_up(a.hi, b.hi)));
    return RInterval(detail::sanitize_lo(lo), detail::sanitize_hi(hi));
}

inline RInterval operator/(const RInterval& a, const RInterval& b) {
    if (b.contains_zero())
        throw DivisionByZeroInterval("division by an interval containing zero");
    if (detail::is_zero(a)) return a;
    double lo = std::min(std::min(detail::div_down(a.lo, b.lo), detail::div_down(a.lo, b.hi)),
                         std::min(detail::div_down(a.hi, b.lo), detail::div_down(a.hi, b.hi)));
    double hi = std::max(std::max(detail::div_up(a.lo, b.lo), detail::div_up(a.lo, b.hi)),
                         std::max(detail::div_up(a.hi, b.lo), detail::div_up(a.hi, b.hi)));
    return RInterval(detail::sanitize_lo(lo), detail::sanitize_hi(hi));
}

inline RInterval& operator+=(RInterval& a, const RInterval& b) { return a = a + b; }
inline RInterval& operator-=(RInterval& a, const RInterval& b) { return a = a - b; }
inline RInterval& operator*=(RInterval& a, const RInterval& b) { return a = a * b; }

// Tighter than a*a for intervals straddling zero.
inline RInterval sqr(const RInterval& a) {
    const double m = a.mag();
    double hi = detail::sanitize_hi(detail::mul_up(m, m));
    if (a.contains_zero()) return RInterval(0.0, hi);
    const double mn = std::min(std::fabs(a.lo), std::fabs(a.hi));
    return RInterval(std::max(0.0, detail::mul_down(mn, mn)), hi);
}

// [x - eps, x + eps] widened one float on each side.
inline RInterval outward_pad(double x, double eps) {
    if (eps < 0.0) throw DomainViolation("outward_pad requires eps >= 0");
    return detail::outward(x - eps, x + eps);
}

inline RInterval sqrt(const RInterval& a) {
    if (a.lo < 0.0) throw DomainViolation("sqrt of an interval reaching below zero");
    // std::sqrt is correctly rounded; the exact remainder picks the side
    double rl = std::sqrt(a.lo), rh = std::sqrt(a.hi);
    double el = std::fma(rl, rl, -a.lo), eh = std::fma(rh, rh, -a.hi);
    double lo = (std::isfinite(el) && el <= 0.0 && a.lo > detail::kFmaExactFloor)
                    ? rl
                    : detail::next_down(rl);
    double hi = (std::isfinite(eh) && eh >= 0.0 && a.hi > detail::kFmaExactFloor)
                    ? rh
                    : detail::next_up(rh);
    return RInterval(std::max(0.0, lo), detail::sanitize_hi(hi));
}

inline RInterval exp(const RInterval& a) {
    RInterval r = detail::outward(std::exp(a.lo), std::exp(a.hi), detail::kLibmPad);
    return RInterval(std::max(0.0, r.lo), r.hi);
}

inline RInterval log(const RInterval& a) {
    if (a.lo <= 0.0) throw DomainViolation("log of an interval reaching zero");
    return detail::outward(std::log(a.lo), std::log(a.hi), detail::kLibmPad);
}

inline RInterval cosh(const RInterval& a) {
    if (!a.finite()) return RInterval(1.0, detail::kInf);
    const double cl = std::cosh(a.lo), ch = std::cosh(a.hi);
    RInterval r = detail::outward(std::min(cl, ch), std::max(cl, ch), detail::kLibmPad);
    if (a.contains_zero()) r.lo = 1.0; // interior minimum, attained exactly
    return RInterval(std::max(1.0, r.lo), r.hi);
}

inline RInterval pi_interval() {
    // std::numbers::pi is the nearest double below pi.
    return RInterval(std::numbers::pi, detail::next_up(std::numbers::pi));
}

inline RInterval two_pi_interval() {
    RInterval p = pi_interval();
    return RInterval(2.0 * p.lo, 2.0 * p.hi); // doubling is exact
}

inline RInterval cos(const RInterval& a) {
    if (!a.finite() || a.mag() > 1e15 || a.width() >= 4.0 * std::numbers::pi)
        return RInterval(-1.0, 1.0);
    // Interior extrema sit at integer multiples of pi: even multiples give
    // the maximum 1, odd multiples the minimum -1.  The candidate test uses
    // an enclosure of k*pi, so a near-miss only widens the result.
    bool hit_max = false, hit_min = false;
    const double k0 = std::floor(a.lo / std::numbers::pi) - 1.0;
    const double k1 = std::ceil(a.hi / std::numbers::pi) + 1.0;
    for (double k = k0; k <= k1; k += 1.0) {
        RInterval kpi = RInterval::exact(k) * pi_interval();
        if (!overlaps(kpi, a)) continue;
        if (std::fmod(std::fabs(k), 2.0) == 0.0) hit_max = true;
        else hit_min = true;
    }
    const double ca = std::cos(a.lo), cb = std::cos(a.hi);
    RInterval r = detail::outward(std::min(ca, cb), std::max(ca, cb), detail::kLibmPad);
    if (hit_max) r.hi = 1.0;
    if (hit_min) r.lo = -1.0;
    return RInterval(std::max(-1.0, r.lo), std::min(1.0, r.hi));
}

// Principal-branch argument enclosure of the box {x + iy}.  The box must
// stay clear of the closed nonpositive real axis (which also excludes the
// origin); the principal argument is then continuous on the box and, being
// monotone along straight segments, attains its extremes at corners.
inline RInterval atan2(const RInterval& y, const RInterval& x) {
    if (y.lo <= 0.0 && 0.0 <= y.hi && x.lo <= 0.0)
        throw DomainViolation("atan2 box meets the nonpositive real axis");
    const double c1 = std::atan2(y.lo, x.lo), c2 = std::atan2(y.lo, x.hi);
    const double c3 = std::atan2(y.hi, x.lo), c4 = std::atan2(y.hi, x.hi);
    return detail::outward(std::min(std::min(c1, c2), std::min(c3, c4)),
                           std::max(std::max(c1, c2), std::max(c3, c4)),
                           detail::kLibmPad);
}

inline std::ostream& operator<<(std::ostream& os, const RInterval& a) {
    return os << "[" << a.lo << ", " << a.hi << "]";
}

} // namespace rigcert
