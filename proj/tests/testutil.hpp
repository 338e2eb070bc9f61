#pragma once

// Shared fixtures and independent floating-point oracles for the test
// suites.  The oracle code below works in plain doubles with its own linear
// algebra so it shares nothing with the interval implementation it checks.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "rigcert/cbox.hpp"
#include "rigcert/interval.hpp"
#include "rigcert/linalg.hpp"

namespace testutil {

// --------------------------------------------------------------------------
// Published (2,3) surgery fixtures.

inline constexpr double kZ1x23 = 0.567343784636165;
inline constexpr double kZ1y23 = 0.442016550101567;
inline constexpr double kZ2x23 = 0.322271789512312;
inline constexpr double kZ2y23 = 0.449431980686431;

struct Bounds {
    double lo, hi;
};

inline const std::array<Bounds, 9>& au23_bounds() {
    static const std::array<Bounds, 9> kB = {{
        {-0.35148464890333, -0.35148464890329},
        {-0.35148464890333, -0.35148464890329},
        {-0.64851535109671, -0.64851535109667},
        {0.00000000000000, 0.00000000000000},
        {0.83367747699777, 0.83367747699779},
        {-0.83367747699779, -0.83367747699777},
        {0.08916928929421, 0.08916928929423},
        {-0.08916928929423, -0.08916928929421},
        {1.00000000000000, 1.00000000000000},
    }};
    return kB;
}

inline const std::array<Bounds, 9>& zul23_bounds() {
    static const std::array<Bounds, 9> kB = {{
        {3.85413503155950, 3.85413549646991},
        {3.85413501053848, 3.85413551749158},
        {7.11116655098591, 7.11116658200069},
        {-0.00000024435903, 0.00000024435797},
        {-9.14152522655167, -9.14152510260290},
        {9.14152481827732, 9.14152551087727},
        {-0.97776823755712, -0.97776810468840},
        {0.97776780689252, 0.97776853535285},
        {-10.96530191882957, -10.96530174218687},
    }};
    return kB;
}

inline constexpr Bounds kSlope23{-0.09119676025684, -0.09119675985908};

// Certified boxes for the (2,3) shapes at the default padding.
inline rigcert::CBox z1_box23(double eps = 1e-15) {
    return rigcert::CBox::pad({kZ1x23, kZ1y23}, eps);
}
inline rigcert::CBox z2_box23(double eps = 1e-15) {
    return rigcert::CBox::pad({kZ2x23, kZ2y23}, eps);
}

// Tight enclosure of the complete-structure shape (1 + i sqrt(3))/2.
inline rigcert::CBox omega_box() {
    return rigcert::CBox(rigcert::RInterval::exact(0.5),
                         rigcert::sqrt(rigcert::RInterval::exact(0.75)));
}

// --------------------------------------------------------------------------
// Cocycle fixture matrices (entries integer plus integer multiples of
// sqrt(3), some halved or quartered).  coef(i,j) = a + b*sqrt(3) stored as
// the pair {a, b} scaled by 4 to stay integral.

struct FixtureMatrix {
    // entry = (a[i][j] + b[i][j] * sqrt(3)) / 4
    std::array<std::array<int, 4>, 4> a, b;
};

inline const FixtureMatrix& cocycle_on_y() {
    static const FixtureMatrix kM = {
        {{{{56, 0, -228, 324}},
          {{0, 576, 0, 0}},
          {{-228, 0, 724, -1040}},
          {{-324, 0, 1040, -1356}}}},
        {{{{0, -124, 0, 0}},
          {{-124, 0, 364, -460}},
          {{0, 364, 0, 0}},
          {{0, 460, 0, 0}}}},
    };
    return kM;
}

inline const FixtureMatrix& cocycle_on_a() {
    static const FixtureMatrix kM = {
        {{{{160, 0, -594, 614}},
          {{0, 0, 0, 0}},
          {{-594, 0, 2552, -2680}},
          {{-614, 0, 2680, -2712}}}},
        {{{{0, 80, 0, 0}},
          {{80, 0, -204, 252}},
          {{0, -204, 0, 0}},
          {{0, -252, 0, 0}}}},
    };
    return kM;
}

inline const FixtureMatrix& cocycle_on_b() {
    static const FixtureMatrix kM = {
        {{{{-352, 0, 285, -475}},
          {{0, 0, 0, 0}},
          {{285, 0, -137, 231}},
          {{475, 0, -231, 489}}}},
        {{{{0, -96, 0, 0}},
          {{-96, 0, 35, -21}},
          {{0, 35, 0, 0}},
          {{0, 21, 0, 0}}}},
    };
    return kM;
}

inline const FixtureMatrix& cocycle_on_l() {
    static const FixtureMatrix kM = {
        {{{{-160, 0, 0, 0}},
          {{0, 480, 0, 0}},
          {{0, 0, 604, 764}},
          {{0, 0, -764, -924}}}},
        {{{{0, 0, 0, 0}},
          {{0, 0, -320, -320}},
          {{0, -320, 0, 0}},
          {{0, 320, 0, 0}}}},
    };
    return kM;
}

// Interval enclosure of a fixture matrix.
inline rigcert::IMatrix fixture_interval(const FixtureMatrix& f) {
    rigcert::RInterval sqrt3 = rigcert::sqrt(rigcert::RInterval::exact(3.0));
    rigcert::IMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            auto q = rigcert::RInterval::exact(0.25);
            m(i, j) = q * (rigcert::RInterval::exact(f.a[size_t(i)][size_t(j)]) +
                           rigcert::RInterval::exact(f.b[size_t(i)][size_t(j)]) * sqrt3);
        }
    return m;
}

// Plain-double value of a fixture matrix.
inline std::array<std::array<double, 4>, 4> fixture_double(const FixtureMatrix& f) {
    const double s3 = std::sqrt(3.0);
    std::array<std::array<double, 4>, 4> m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m[size_t(i)][size_t(j)] =
                0.25 * (f.a[size_t(i)][size_t(j)] + f.b[size_t(i)][size_t(j)] * s3);
    return m;
}

// --------------------------------------------------------------------------
// Independent floating-point pipeline (the DERIVED-value oracle).

namespace oracle {

using M4 = std::array<std::array<double, 4>, 4>;
using M9 = std::array<std::array<double, 9>, 9>;
using V9 = std::array<double, 9>;

inline M4 mul(const M4& a, const M4& b) {
    M4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += a[size_t(i)][size_t(k)] * b[size_t(k)][size_t(j)];
            c[size_t(i)][size_t(j)] = s;
        }
    return c;
}

inline M9 mul(const M9& a, const M9& b) {
    M9 c{};
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            double s = 0;
            for (int k = 0; k < 9; ++k) s += a[size_t(i)][size_t(k)] * b[size_t(k)][size_t(j)];
            c[size_t(i)][size_t(j)] = s;
        }
    return c;
}

inline V9 mul(const M9& a, const V9& x) {
    V9 y{};
    for (int i = 0; i < 9; ++i) {
        double s = 0;
        for (int k = 0; k < 9; ++k) s += a[size_t(i)][size_t(k)] * x[size_t(k)];
        y[size_t(i)] = s;
    }
    return y;
}

inline M9 eye9() {
    M9 m{};
    for (int i = 0; i < 9; ++i) m[size_t(i)][size_t(i)] = 1.0;
    return m;
}

inline double det3(double a, double b, double c, double d, double e, double f, double g, double h,
                   double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

inline M4 inv(const M4& m) {
    M4 adj{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double sub[9];
            int t = 0;
            for (int r = 0; r < 4; ++r) {
                if (r == i) continue;
                for (int c = 0; c < 4; ++c) {
                    if (c == j) continue;
                    sub[t++] = m[size_t(r)][size_t(c)];
                }
            }
            double cof = det3(sub[0], sub[1], sub[2], sub[3], sub[4], sub[5], sub[6], sub[7], sub[8]);
            if ((i + j) & 1) cof = -cof;
            adj[size_t(j)][size_t(i)] = cof;
        }
    double det = 0;
    for (int j = 0; j < 4; ++j) det += m[0][size_t(j)] * adj[size_t(j)][0];
    M4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[size_t(i)][size_t(j)] = adj[size_t(i)][size_t(j)] / det;
    return r;
}

inline M4 gen_x(double a, double b, double c, double d) {
    double rw = a - a * c + b * d, iw = b - b * c - a * d, n = rw * rw + iw * iw;
    return M4{{{8 * rw, 8 * iw, -4 * rw, -4 * rw},
               {-8 * iw, 8 * rw, 4 * iw, 4 * iw},
               {4, 0, 3 + 4 * n, -5 + 4 * n},
               {-4, 0, -3 + 4 * n, 5 + 4 * n}}};
}

inline M4 gen_y(double a, double b, double c, double d) {
    double rw = a - a * c + b * d, iw = b - b * c - a * d, n = rw * rw + iw * iw;
    double n2 = c * c + d * d;
    double y13 = 4 * (a * c + b * d - a * n2), y23 = 4 * (b * c - a * d - b * n2);
    return M4{{{2 * rw, -2 * iw, y13, -y13},
               {2 * iw, 2 * rw, y23, -y23},
               {-4 * c, 4 * d, 1 - 4 * n2 + n, 1 + 4 * n2 - n},
               {-4 * c, 4 * d, 1 - 4 * n2 - n, 1 + 4 * n2 + n}}};
}

inline const std::array<M4, 9>& basis() {
    static const std::array<M4, 9> kV = [] {
        std::array<M4, 9> v{};
        auto e = [](int i, int j) {
            M4 m{};
            m[size_t(i)][size_t(j)] = 1;
            return m;
        };
        auto plus = [](M4 x, M4 y) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) x[size_t(i)][size_t(j)] += y[size_t(i)][size_t(j)];
            return x;
        };
        auto minus = [](M4 x) {
            for (auto& r : x)
                for (auto& t : r) t = -t;
            return x;
        };
        v[0] = plus(e(0, 0), minus(e(3, 3)));
        v[1] = plus(e(1, 1), minus(e(3, 3)));
        v[2] = plus(e(2, 2), minus(e(3, 3)));
        v[3] = plus(e(0, 1), e(1, 0));
        v[4] = plus(e(0, 2), e(2, 0));
        v[5] = plus(minus(e(0, 3)), e(3, 0));
        v[6] = plus(e(1, 2), e(2, 1));
        v[7] = plus(minus(e(1, 3)), e(3, 1));
        v[8] = plus(minus(e(2, 3)), e(3, 2));
        return v;
    }();
    return kV;
}

inline V9 coords(const M4& m) {
    V9 t{};
    double b1 = m[0][0] - m[3][3], b2 = m[1][1] - m[3][3], b3 = m[2][2] - m[3][3];
    t[0] = (3 * b1 - b2 - b3) / 4;
    t[1] = (-b1 + 3 * b2 - b3) / 4;
    t[2] = (-b1 - b2 + 3 * b3) / 4;
    t[3] = (m[0][1] + m[1][0]) / 2;
    t[4] = (m[0][2] + m[2][0]) / 2;
    t[5] = (m[3][0] - m[0][3]) / 2;
    t[6] = (m[1][2] + m[2][1]) / 2;
    t[7] = (m[3][1] - m[1][3]) / 2;
    t[8] = (m[3][2] - m[2][3]) / 2;
    return t;
}

inline M9 adjoint(const M4& g) {
    M4 gi = inv(g);
    M9 a{};
    for (int j = 0; j < 9; ++j) {
        V9 t = coords(mul(mul(g, basis()[size_t(j)]), gi));
        for (int i = 0; i < 9; ++i) a[size_t(i)][size_t(j)] = t[size_t(i)];
    }
    return a;
}

struct Rep {
    M9 x, xi, y, yi;
    const M9& of(char g) const {
        switch (g) {
            case 'x': return x;
            case 'X': return xi;
            case 'y': return y;
            default: return yi;
        }
    }
};

inline Rep rep_at(double z1x, double z1y, double z2x, double z2y) {
    M4 x = gen_x(z1x, z1y, z2x, z2y), y = gen_y(z1x, z1y, z2x, z2y);
    return {adjoint(x), adjoint(inv(x)), adjoint(y), adjoint(inv(y))};
}

inline M9 eval_word(const Rep& r, const char* w) {
    M9 p = eye9();
    for (const char* c = w; *c; ++c) p = mul(p, r.of(*c));
    return p;
}

inline M9 fox(const Rep& r, const char* w, char gen) {
    M9 total{};
    M9 prefix = eye9();
    char lower = gen, upper = static_cast<char>(gen - 32);
    for (const char* c = w; *c; ++c) {
        if (*c == lower) {
            for (int i = 0; i < 9; ++i)
                for (int j = 0; j < 9; ++j) total[size_t(i)][size_t(j)] += prefix[size_t(i)][size_t(j)];
        } else if (*c == upper) {
            M9 t = mul(prefix, r.of(upper));
            for (int i = 0; i < 9; ++i)
                for (int j = 0; j < 9; ++j) total[size_t(i)][size_t(j)] -= t[size_t(i)][size_t(j)];
        }
        prefix = mul(prefix, r.of(*c));
    }
    return total;
}

inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a[size_t(i)][size_t(k)]) > std::fabs(a[size_t(piv)][size_t(k)])) piv = i;
        std::swap(a[size_t(k)], a[size_t(piv)]);
        std::swap(b[size_t(k)], b[size_t(piv)]);
        for (int i = k + 1; i < n; ++i) {
            double f = a[size_t(i)][size_t(k)] / a[size_t(k)][size_t(k)];
            for (int j = k; j < n; ++j) a[size_t(i)][size_t(j)] -= f * a[size_t(k)][size_t(j)];
            b[size_t(i)] -= f * b[size_t(k)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = b[size_t(i)];
        for (int j = i + 1; j < n; ++j) s -= a[size_t(i)][size_t(j)] * x[size_t(j)];
        x[size_t(i)] = s / a[size_t(i)][size_t(i)];
    }
    return x;
}

// Midpoint estimate of the full pipeline at given shapes: fixed vector,
// normal form, boundary value, slope.
struct PipelineEstimate {
    V9 a_u, m, zul;
    double slope;
};

inline PipelineEstimate pipeline(double z1x, double z1y, double z2x, double z2y) {
    Rep r = rep_at(z1x, z1y, z2x, z2y);
    const char* relator = "xYXyxYxyXY";
    const char* longitude = "yXYxxYXy";
    M9 im_x{};
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) im_x[size_t(i)][size_t(j)] = (i == j ? 1.0 : 0.0) - r.x[size_t(i)][size_t(j)];
    std::vector<std::vector<double>> a8(8, std::vector<double>(8));
    std::vector<double> b8(8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) a8[size_t(i)][size_t(j)] = im_x[size_t(i)][size_t(j)];
        b8[size_t(i)] = -im_x[size_t(i)][8];
    }
    auto au8 = solve(a8, b8);
    PipelineEstimate est{};
    for (int i = 0; i < 8; ++i) est.a_u[size_t(i)] = au8[size_t(i)];
    est.a_u[8] = 1.0;

    M9 dwdx = fox(r, relator, 'x'), dwdy = fox(r, relator, 'y');
    V9 rhs_full = mul(dwdx, est.a_u);
    std::vector<std::vector<double>> m8(8, std::vector<double>(8));
    std::vector<double> c8(8);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) m8[size_t(i)][size_t(j)] = dwdy[size_t(i)][size_t(j)];
        c8[size_t(i)] = -rhs_full[size_t(i)] + dwdy[size_t(i)][8];
    }
    auto msol = solve(m8, c8);
    for (int i = 0; i < 8; ++i) est.m[size_t(i)] = msol[size_t(i)];
    est.m[8] = -1.0;

    M9 dldx = fox(r, longitude, 'x'), dldy = fox(r, longitude, 'y');
    V9 t1 = mul(dldx, est.a_u), t2 = mul(dldy, est.m);
    for (int i = 0; i < 9; ++i) est.zul[size_t(i)] = t1[size_t(i)] + t2[size_t(i)];
    est.slope = est.a_u[2] / est.zul[2];
    return est;
}

} // namespace oracle

// --------------------------------------------------------------------------
// Brute-force slope enumeration (oracle for sweep counts).

inline int count_coprime_non_exceptional(int max) {
    auto gcd = [](int a, int b) {
        while (b) {
            int t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    // Exceptional slopes with both entries positive; the reflected members
    // of the exceptional list never land in [1, max]^2.
    auto exceptional = [](int p, int q) {
        return (p == 1 && q == 1) || (q == 1 && (p == 2 || p == 3 || p == 4));
    };
    int count = 0;
    for (int p = 1; p <= max; ++p)
        for (int q = 1; q <= max; ++q)
            if (gcd(p, q) == 1 && !exceptional(p, q)) ++count;
    return count;
}

} // namespace testutil
