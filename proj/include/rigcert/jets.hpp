#pragma once

// First-order enclosures of rational functions of the four real shape
// parts over a parameter box.  A jet carries three layers: an enclosure of
// the function over the whole box, an enclosure at the box midpoint, and
// enclosures of the four partial derivatives over the box.  By the mean
// value theorem
//     f(x) in  f(mid) + sum_i d_i(box) * (x_i - mid_i)
// for every x in the box, which is usually far tighter than the direct box
// evaluation once the expression gets deep; the direct evaluation is kept
// as the box layer and met with the mean-value form on conversion.

#include <array>

#include "rigcert/interval.hpp"
#include "rigcert/linalg.hpp"

namespace rigcert {

// The box minus its midpoint, per parameter; endpoints of these deltas are
// exact because nearby doubles subtract without rounding.
struct ShapeBoxParams {
    std::array<RInterval, 4> delta;
};

struct ScalarJet {
    RInterval box, mid;
    std::array<RInterval, 4> d{};

    static ScalarJet constant(double v) {
        ScalarJet s;
        s.box = RInterval::exact(v);
        s.mid = RInterval::exact(v);
        return s;
    }

    static ScalarJet parameter(const RInterval& box, double mid_value, int index) {
        ScalarJet s;
        s.box = box;
        s.mid = RInterval::exact(mid_value);
        s.d[static_cast<size_t>(index)] = RInterval::exact(1.0);
        return s;
    }
};

inline ScalarJet operator+(const ScalarJet& a, const ScalarJet& b) {
    ScalarJet r;
    r.box = a.box + b.box;
    r.mid = a.mid + b.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = a.d[size_t(i)] + b.d[size_t(i)];
    return r;
}

inline ScalarJet operator-(const ScalarJet& a, const ScalarJet& b) {
    ScalarJet r;
    r.box = a.box - b.box;
    r.mid = a.mid - b.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = a.d[size_t(i)] - b.d[size_t(i)];
    return r;
}

inline ScalarJet operator-(const ScalarJet& a) {
    ScalarJet r;
    r.box = -a.box;
    r.mid = -a.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = -a.d[size_t(i)];
    return r;
}

inline ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
    ScalarJet r;
    r.box = a.box * b.box;
    r.mid = a.mid * b.mid;
    for (int i = 0; i < 4; ++i)
        r.d[size_t(i)] = a.d[size_t(i)] * b.box + a.box * b.d[size_t(i)];
    return r;
}

struct MatrixJet {
    IMatrix box, mid;
    std::array<IMatrix, 4> d;

    MatrixJet() = default;
    explicit MatrixJet(int rows, int cols)
        : box(rows, cols), mid(rows, cols), d{IMatrix(rows, cols), IMatrix(rows, cols),
                                              IMatrix(rows, cols), IMatrix(rows, cols)} {}

    static MatrixJet identity(int n) {
        MatrixJet j(n, n);
        j.box = IMatrix::identity(n);
        j.mid = IMatrix::identity(n);
        return j;
    }

    static MatrixJet constant(const IMatrix& m) {
        MatrixJet j(m.rows(), m.cols());
        j.box = m;
        j.mid = m;
        return j;
    }

    int rows() const { return box.rows(); }
    int cols() const { return box.cols(); }
};

inline MatrixJet operator+(const MatrixJet& a, const MatrixJet& b) {
    MatrixJet r;
    r.box = a.box + b.box;
    r.mid = a.mid + b.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = a.d[size_t(i)] + b.d[size_t(i)];
    return r;
}

inline MatrixJet operator-(const MatrixJet& a, const MatrixJet& b) {
    MatrixJet r;
    r.box = a.box - b.box;
    r.mid = a.mid - b.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = a.d[size_t(i)] - b.d[size_t(i)];
    return r;
}

inline MatrixJet operator-(const MatrixJet& a) {
    MatrixJet r;
    r.box = -a.box;
    r.mid = -a.mid;
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = -a.d[size_t(i)];
    return r;
}

inline MatrixJet operator*(const MatrixJet& a, const MatrixJet& b) {
    MatrixJet r;
    r.box = a.box * b.box;
    r.mid = a.mid * b.mid;
    for (int i = 0; i < 4; ++i)
        r.d[size_t(i)] = a.d[size_t(i)] * b.box + a.box * b.d[size_t(i)];
    return r;
}

// d(A^-1) = -A^-1 dA A^-1, with the box-layer inverse in the outer factors.
inline MatrixJet jet_inv4(const MatrixJet& a) {
    MatrixJet r;
    r.box = imat_inv4(a.box);
    r.mid = imat_inv4(a.mid);
    for (int i = 0; i < 4; ++i) r.d[size_t(i)] = -(r.box * a.d[size_t(i)] * r.box);
    return r;
}

// Mean-value enclosure met with the direct box evaluation.
inline IMatrix mean_value_enclosure(const MatrixJet& j, const ShapeBoxParams& p) {
    IMatrix mv = j.mid;
    for (int i = 0; i < 4; ++i) mv = mv + p.delta[size_t(i)] * j.d[size_t(i)];
    return intersect_enclosures(j.box, mv);
}

inline IVector mean_value_enclosure(const IVector& mid, const std::array<IVector, 4>& d,
                                    const ShapeBoxParams& p) {
    IVector mv = mid;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < mv.size(); ++k)
            mv[k] = mv[k] + p.delta[size_t(i)] * d[size_t(i)][k];
    }
    return mv;
}

} // namespace rigcert
