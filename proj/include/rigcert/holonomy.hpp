#pragma once

// The rational representation into PSO(3,1): generator matrices for the two
// face-pairing isometries, the nine-dimensional complement v of so(3,1)
// inside sl(4,R) with its coordinate extraction, the 9x9 adjoint action by
// conjugation, and word evaluation.

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include "rigcert/cbox.hpp"
#include "rigcert/errors.hpp"
#include "rigcert/interval.hpp"
#include "rigcert/jets.hpp"
#include "rigcert/linalg.hpp"

namespace rigcert {

// Words over the group generators: 'x', 'y' and their inverses 'X', 'Y'.
// The group is <x, y | w> with relator w = a x a^-1 y^-1, a = x y^-1 x^-1 y.
// The boundary torus is generated by the meridian x together with the
// longitude l = b^-1 a^-1 b a, b = x y^-1, which freely reduces to
// (y x^-1 y^-1 x)(x y^-1 x^-1 y).
inline constexpr std::string_view kFiberA = "xYXy";
inline constexpr std::string_view kFiberB = "xY";
inline constexpr std::string_view kRelator = "xYXyxYxyXY";
inline constexpr std::string_view kLongitude = "yXYxxYXy";

// Lorentz form diag(1, 1, 1, -1).
inline IMatrix lorentz_form() {
    IMatrix j = IMatrix::identity(4);
    j(3, 3) = RInterval::exact(-1.0);
    return j;
}

struct HolonomyPair {
    IMatrix x; // meridian-side generator, up to scale
    IMatrix y;
};

namespace detail {

// Generator entries over any scalar ring with +, -, * and constants; the
// same formulas serve the interval and the jet instantiations.  With
// w = z1 (1 - z2), N = |w|^2 and n2 = |z2|^2 the entries reduce to the
// patterns below.
template <typename S, typename Const>
void build_generator_entries(const S& a, const S& b, const S& c, const S& d, Const k,
                             S (&x)[4][4], S (&y)[4][4]) {
    S rw = a - a * c + b * d;
    S iw = b - b * c - a * d;
    S n = rw * rw + iw * iw;
    S n2 = c * c + d * d;

    x[0][0] = k(8) * rw;
    x[0][1] = k(8) * iw;
    x[0][2] = k(-4) * rw;
    x[0][3] = k(-4) * rw;
    x[1][0] = k(-8) * iw;
    x[1][1] = k(8) * rw;
    x[1][2] = k(4) * iw;
    x[1][3] = k(4) * iw;
    x[2][0] = k(4);
    x[2][1] = k(0);
    x[2][2] = k(3) + k(4) * n;
    x[2][3] = k(-5) + k(4) * n;
    x[3][0] = k(-4);
    x[3][1] = k(0);
    x[3][2] = k(-3) + k(4) * n;
    x[3][3] = k(5) + k(4) * n;

    S y13 = k(4) * (a * c + b * d - a * n2);
    S y23 = k(4) * (b * c - a * d - b * n2);
    y[0][0] = k(2) * rw;
    y[0][1] = k(-2) * iw;
    y[0][2] = y13;
    y[0][3] = -y13;
    y[1][0] = k(2) * iw;
    y[1][1] = k(2) * rw;
    y[1][2] = y23;
    y[1][3] = -y23;
    y[2][0] = k(-4) * c;
    y[2][1] = k(4) * d;
    y[2][2] = k(1) - k(4) * n2 + n;
    y[2][3] = k(1) + k(4) * n2 - n;
    y[3][0] = k(-4) * c;
    y[3][1] = k(4) * d;
    y[3][2] = k(1) - k(4) * n2 - n;
    y[3][3] = k(1) + k(4) * n2 + n;
}

} // namespace detail

// Generator matrices, rational (in fact polynomial) in the four real shape
// parts and written up to scale.
inline HolonomyPair pso31_generators(const CBox& z1, const CBox& z2) {
    RInterval x[4][4], y[4][4];
    detail::build_generator_entries(z1.re, z1.im, z2.re, z2.im,
                                    [](double v) { return RInterval::exact(v); }, x, y);
    HolonomyPair h{IMatrix(4, 4), IMatrix(4, 4)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            h.x(i, j) = x[i][j];
            h.y(i, j) = y[i][j];
        }
    return h;
}

// Residual of the Lorentz similitude identity g^T J g = lambda J with
// lambda read off the (0,0) entry; encloses zero for every true holonomy
// matrix.
inline IMatrix lorentz_similitude_residual(const IMatrix& g) {
    IMatrix gt(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gt(i, j) = g(j, i);
    IMatrix gjg = gt * (lorentz_form() * g);
    RInterval lambda = gjg(0, 0);
    return gjg - lambda * lorentz_form();
}

// Floating-point PSL(2,C) oracle matrices; non-certified, used only for
// cross-checks of traces and eigenvalue identities.
struct Psl2Pair {
    std::array<std::array<std::complex<double>, 2>, 2> x, y;
};

inline Psl2Pair psl2_generators(std::complex<double> z1, std::complex<double> z2) {
    std::complex<double> s = std::sqrt(z1 * (1.0 - z2));
    Psl2Pair g;
    g.x = {{{1.0 / s, -1.0 / s}, {0.0, s}}};
    g.y = {{{s, 0.0}, {-z2 / s, 1.0 / s}}};
    return g;
}

// ---------------------------------------------------------------------------
// Basis of v: traceless J-symmetric integer matrices v_1..v_9.

inline const std::array<std::array<std::array<int, 4>, 4>, 9>& v_basis_entries() {
    static const std::array<std::array<std::array<int, 4>, 4>, 9> kBasis = {{
        {{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}}},
        {{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}}},
        {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}},
        {{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}},
        {{{0, 0, 1, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}}},
        {{{0, 0, 0, -1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}}},
        {{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}},
        {{{0, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 0, 0}, {0, 1, 0, 0}}},
        {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}},
    }};
    return kBasis;
}

inline IMatrix v_basis_matrix(int k) {
    IMatrix m(4, 4);
    const auto& e = v_basis_entries()[static_cast<size_t>(k)];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = RInterval::exact(static_cast<double>(e[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    return m;
}

// Coordinates relative to the basis above, through the trace pairing.  The
// three diagonal basis elements overlap, so their dual functionals solve the
// exact 3x3 Gram system once: Gram = [[2,1,1],[1,2,1],[1,1,2]], whose inverse
// has entries in {3/4, -1/4}.  All dual coefficients are exact binary
// rationals, so extraction of a span member is exact up to rounding of the
// inputs.
inline IVector v_coords(const IMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("v_coords needs a 4x4 matrix");
    auto k = [](double v) { return RInterval::exact(v); };
    RInterval b1 = m(0, 0) - m(3, 3);
    RInterval b2 = m(1, 1) - m(3, 3);
    RInterval b3 = m(2, 2) - m(3, 3);
    IVector t(9);
    t[0] = k(0.75) * b1 - k(0.25) * b2 - k(0.25) * b3;
    t[1] = k(-0.25) * b1 + k(0.75) * b2 - k(0.25) * b3;
    t[2] = k(-0.25) * b1 - k(0.25) * b2 + k(0.75) * b3;
    t[3] = k(0.5) * (m(0, 1) + m(1, 0));
    t[4] = k(0.5) * (m(0, 2) + m(2, 0));
    t[5] = k(0.5) * (m(3, 0) - m(0, 3));
    t[6] = k(0.5) * (m(1, 2) + m(2, 1));
    t[7] = k(0.5) * (m(3, 1) - m(1, 3));
    t[8] = k(0.5) * (m(3, 2) - m(2, 3));
    return t;
}

inline IMatrix v_embed(const IVector& t) {
    if (t.size() != 9) throw std::invalid_argument("v_embed needs a 9-vector");
    IMatrix m(4, 4);
    for (int kidx = 0; kidx < 9; ++kidx) {
        const auto& e = v_basis_entries()[static_cast<size_t>(kidx)];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int c = e[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (c == 0) continue;
                m(i, j) += RInterval::exact(static_cast<double>(c)) * t[kidx];
            }
    }
    return m;
}

// Off-span residual m - embed(coords(m)); encloses zero exactly when m lies
// in span of the basis.
inline IMatrix v_residual(const IMatrix& m) { return m - v_embed(v_coords(m)); }

// ---------------------------------------------------------------------------
// Adjoint action on v.

namespace detail {

// Columns hold the coordinates of g v_j h for a supplied inverse pair
// (h encloses g^-1); going through the explicit pair keeps intermediate
// magnitudes at the size of the generators themselves.
inline IMatrix adjoint_from_pair(const IMatrix& g, const IMatrix& g_inv) {
    IMatrix ad(9, 9);
    for (int j = 0; j < 9; ++j) {
        IVector col = v_coords(g * v_basis_matrix(j) * g_inv);
        for (int i = 0; i < 9; ++i) ad(i, j) = col[i];
    }
    return ad;
}

} // namespace detail

// Column j holds the coordinates of g v_j g^-1.  Invariant under scaling of
// g, since the inverse carries the reciprocal scale.
inline IMatrix adjoint_rep(const IMatrix& g) {
    return detail::adjoint_from_pair(g, imat_inv4(g));
}

// Adjoint of g^-1 through the same inverse pair: g^-1 v_j (g^-1)^-1 with the
// outer factor taken as g itself, avoiding a second inversion.
inline IMatrix adjoint_rep_inverse(const IMatrix& g) {
    return detail::adjoint_from_pair(imat_inv4(g), g);
}

// Off-span residual of the conjugated basis matrices; encloses zero for
// every Lorentz similitude.
inline IMatrix adjoint_off_span_residual(const IMatrix& g) {
    IMatrix ginv = imat_inv4(g);
    IMatrix worst(4, 4);
    for (int j = 0; j < 9; ++j) {
        IMatrix r = v_residual(g * v_basis_matrix(j) * ginv);
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) worst(i, c) = hull(worst(i, c), r(i, c));
    }
    return worst;
}

// The four adjoint generator matrices; inverses are computed from the
// adjugates so every entry stays rational in the shape parts.
struct AdjointPair {
    IMatrix x, x_inv, y, y_inv;

    const IMatrix& of(char g) const {
        switch (g) {
            case 'x': return x;
            case 'X': return x_inv;
            case 'y': return y;
            case 'Y': return y_inv;
            default: throw std::invalid_argument("word letter must be one of x X y Y");
        }
    }
};

inline AdjointPair adjoint_pair(const HolonomyPair& h) {
    return {adjoint_rep(h.x), adjoint_rep_inverse(h.x), adjoint_rep(h.y),
            adjoint_rep_inverse(h.y)};
}

// Left-to-right product of generator images; the empty word gives the
// identity.  Works for any square generator set of equal size, interval
// matrices and jets alike.
template <typename Rep>
inline auto eval_word(std::string_view word, const Rep& rep) {
    using M = std::decay_t<decltype(rep.of('x'))>;
    M p = M::identity(rep.of('x').rows());
    for (char g : word) p = p * rep.of(g);
    return p;
}

// 4x4 counterpart of AdjointPair for evaluating words in the holonomy
// itself.
struct HolonomyRep {
    IMatrix x, x_inv, y, y_inv;

    const IMatrix& of(char g) const {
        switch (g) {
            case 'x': return x;
            case 'X': return x_inv;
            case 'y': return y;
            case 'Y': return y_inv;
            default: throw std::invalid_argument("word letter must be one of x X y Y");
        }
    }
};

inline HolonomyRep holonomy_rep(const HolonomyPair& h) {
    return {h.x, imat_inv4(h.x), h.y, imat_inv4(h.y)};
}

inline std::string word_inverse(std::string_view word) {
    std::string inv;
    inv.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        char g = *it;
        inv.push_back((g >= 'a') ? static_cast<char>(g - ('x' - 'X'))
                                 : static_cast<char>(g + ('x' - 'X')));
    }
    return inv;
}

// Adjoint image of a whole word, evaluated as the adjoint of the 4x4 word
// product.  A product of k adjoint matrices wraps the enclosure k times in
// dimension nine; the 4x4 product wraps far less and the adjoint
// construction runs once, which keeps these enclosures orders of magnitude
// tighter than letter-by-letter products in dimension nine.
inline IMatrix adjoint_of_word(std::string_view word, const HolonomyRep& h) {
    if (word.empty()) return IMatrix::identity(9);
    IMatrix w = eval_word(word, h);
    // two routes to the inverse enclosure; their meet is sound
    IMatrix w_inv = eval_word(word_inverse(word), h);
    RInterval det = det4(w);
    if (!det.contains_zero()) w_inv = intersect_enclosures(w_inv, imat_inv4(w));
    return detail::adjoint_from_pair(w, w_inv);
}

// ---------------------------------------------------------------------------
// Jet instantiations: the same constructions with first-order enclosures
// over the shape-parameter box.

struct GeneratorJets {
    MatrixJet x, y;
    ShapeBoxParams params;
};

inline GeneratorJets pso31_generator_jets(const CBox& z1, const CBox& z2) {
    const std::array<RInterval, 4> box = {z1.re, z1.im, z2.re, z2.im};
    std::array<double, 4> mid{};
    GeneratorJets out;
    for (int i = 0; i < 4; ++i) {
        mid[size_t(i)] = box[size_t(i)].mid();
        out.params.delta[size_t(i)] = box[size_t(i)] - RInterval::exact(mid[size_t(i)]);
    }
    ScalarJet a = ScalarJet::parameter(box[0], mid[0], 0);
    ScalarJet b = ScalarJet::parameter(box[1], mid[1], 1);
    ScalarJet c = ScalarJet::parameter(box[2], mid[2], 2);
    ScalarJet d = ScalarJet::parameter(box[3], mid[3], 3);
    ScalarJet x[4][4], y[4][4];
    detail::build_generator_entries(a, b, c, d, [](double v) { return ScalarJet::constant(v); },
                                    x, y);
    out.x = MatrixJet(4, 4);
    out.y = MatrixJet(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            out.x.box(i, j) = x[i][j].box;
            out.x.mid(i, j) = x[i][j].mid;
            out.y.box(i, j) = y[i][j].box;
            out.y.mid(i, j) = y[i][j].mid;
            for (int t = 0; t < 4; ++t) {
                out.x.d[size_t(t)](i, j) = x[i][j].d[size_t(t)];
                out.y.d[size_t(t)](i, j) = y[i][j].d[size_t(t)];
            }
        }
    return out;
}

struct JetHolonomyRep {
    MatrixJet x, x_inv, y, y_inv;

    const MatrixJet& of(char g) const {
        switch (g) {
            case 'x': return x;
            case 'X': return x_inv;
            case 'y': return y;
            case 'Y': return y_inv;
            default: throw std::invalid_argument("word letter must be one of x X y Y");
        }
    }
};

inline JetHolonomyRep jet_holonomy_rep(const GeneratorJets& g) {
    return {g.x, jet_inv4(g.x), g.y, jet_inv4(g.y)};
}

// Coordinate extraction commutes with every jet layer because it is linear
// with exact coefficients.
inline MatrixJet jet_adjoint_from_pair(const MatrixJet& g, const MatrixJet& g_inv) {
    MatrixJet ad(9, 9);
    for (int j = 0; j < 9; ++j) {
        MatrixJet conj = g * MatrixJet::constant(v_basis_matrix(j)) * g_inv;
        IVector col_box = v_coords(conj.box);
        IVector col_mid = v_coords(conj.mid);
        for (int i = 0; i < 9; ++i) {
            ad.box(i, j) = col_box[i];
            ad.mid(i, j) = col_mid[i];
        }
        for (int t = 0; t < 4; ++t) {
            IVector col_d = v_coords(conj.d[size_t(t)]);
            for (int i = 0; i < 9; ++i) ad.d[size_t(t)](i, j) = col_d[i];
        }
    }
    return ad;
}

inline MatrixJet adjoint_of_word(std::string_view word, const JetHolonomyRep& h) {
    if (word.empty()) return MatrixJet::identity(9);
    MatrixJet w = eval_word(word, h);
    MatrixJet w_inv = eval_word(word_inverse(word), h);
    return jet_adjoint_from_pair(w, w_inv);
}

} // namespace rigcert
