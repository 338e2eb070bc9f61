#pragma once

// Dense interval matrices and vectors, the preconditioned regularity test,
// and verified enclosures of linear-system solutions.

#include <cstddef>
#include <optional>
#include <vector>

#include "rigcert/errors.hpp"
#include "rigcert/interval.hpp"

namespace rigcert {

class IVector {
public:
    IVector() = default;
    explicit IVector(int len) : e_(static_cast<size_t>(len)) {}

    int size() const { return static_cast<int>(e_.size()); }
    RInterval& operator[](int i) { return e_[static_cast<size_t>(i)]; }
    const RInterval& operator[](int i) const { return e_[static_cast<size_t>(i)]; }

    bool encloses_zero() const {
        for (const auto& x : e_)
            if (!x.contains_zero()) return false;
        return true;
    }

private:
    std::vector<RInterval> e_;
};

class IMatrix {
public:
    IMatrix() = default;
    IMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

    static IMatrix identity(int n) {
        IMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = RInterval::exact(1.0);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RInterval& operator()(int i, int j) {
        return e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }
    const RInterval& operator()(int i, int j) const {
        return e_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }

    bool encloses_zero() const {
        for (const auto& x : e_)
            if (!x.contains_zero()) return false;
        return true;
    }
    bool encloses(const IMatrix& p) const {
        for (size_t k = 0; k < e_.size(); ++k)
            if (!e_[k].contains(p.e_[k])) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<RInterval> e_;
};

inline IMatrix operator+(const IMatrix& a, const IMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix dimension mismatch");
    IMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline IMatrix operator-(const IMatrix& a, const IMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix dimension mismatch");
    IMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline IMatrix operator-(const IMatrix& a) {
    IMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    return c;
}

inline IMatrix operator*(const IMatrix& a, const IMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    IMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            RInterval s;
            for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline IMatrix operator*(const RInterval& s, const IMatrix& a) {
    IMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline IVector operator*(const IMatrix& a, const IVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix dimension mismatch");
    IVector y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        RInterval s;
        for (int k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
        y[i] = s;
    }
    return y;
}

inline IVector operator+(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    IVector c(a.size());
    for (int i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline IVector operator-(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
    IVector c(a.size());
    for (int i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

inline IVector operator-(const IVector& a) {
    IVector c(a.size());
    for (int i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

inline IMatrix topleft(const IMatrix& a, int n) {
    IMatrix c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = a(i, j);
    return c;
}

// Entrywise meet of two enclosures of the same point matrix.  An empty
// entry would contradict the containment guarantee of one of the inputs.
inline IMatrix intersect_enclosures(const IMatrix& a, const IMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix dimension mismatch");
    IMatrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            auto m = intersect(a(i, j), b(i, j));
            if (!m)
                throw std::logic_error(
                    "enclosures of the same matrix do not intersect: containment bug");
            c(i, j) = *m;
        }
    return c;
}

// ---------------------------------------------------------------------------
// Floating-point midpoint helpers (never certification-bearing on their own).

namespace detail {

using FMatrix = std::vector<double>; // row-major n x n

inline FMatrix midpoint(const IMatrix& a) {
    FMatrix m(static_cast<size_t>(a.rows()) * static_cast<size_t>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m[static_cast<size_t>(i) * a.cols() + j] = a(i, j).mid();
    return m;
}

inline std::vector<double> midpoint(const IVector& v) {
    std::vector<double> m(static_cast<size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) m[static_cast<size_t>(i)] = v[i].mid();
    return m;
}

// Gauss-Jordan inverse with partial pivoting; nullopt on a zero pivot or
// non-finite input.
inline std::optional<FMatrix> inverse(FMatrix a, int n) {
    FMatrix r(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i) * n + i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::fabs(a[static_cast<size_t>(i) * n + col]) >
                std::fabs(a[static_cast<size_t>(piv) * n + col]))
                piv = i;
        double p = a[static_cast<size_t>(piv) * n + col];
        if (p == 0.0 || !std::isfinite(p)) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<size_t>(col) * n + j], a[static_cast<size_t>(piv) * n + j]);
                std::swap(r[static_cast<size_t>(col) * n + j], r[static_cast<size_t>(piv) * n + j]);
            }
        double inv_p = 1.0 / p;
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(col) * n + j] *= inv_p;
            r[static_cast<size_t>(col) * n + j] *= inv_p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            double f = a[static_cast<size_t>(i) * n + col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a[static_cast<size_t>(i) * n + j] -= f * a[static_cast<size_t>(col) * n + j];
                r[static_cast<size_t>(i) * n + j] -= f * r[static_cast<size_t>(col) * n + j];
            }
        }
    }
    for (double x : r)
        if (!std::isfinite(x)) return std::nullopt;
    return r;
}

// Interval product R * A with R a point matrix.
inline IMatrix mul_point_interval(const FMatrix& r, const IMatrix& a) {
    const int n = a.rows();
    IMatrix c(n, a.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < a.cols(); ++j) {
            RInterval s;
            for (int k = 0; k < n; ++k)
                s += RInterval::exact(r[static_cast<size_t>(i) * n + k]) * a(k, j);
            c(i, j) = s;
        }
    return c;
}

inline IVector mul_point_interval(const FMatrix& r, const IVector& v) {
    const int n = v.size();
    IVector c(n);
    for (int i = 0; i < n; ++i) {
        RInterval s;
        for (int k = 0; k < n; ++k)
            s += RInterval::exact(r[static_cast<size_t>(i) * n + k]) * v[k];
        c[i] = s;
    }
    return c;
}

} // namespace detail

// ---------------------------------------------------------------------------

// Floating-point determinant of the midpoint matrix.  Diagnostic only;
// never feeds a certification verdict.
inline double midpoint_det(const IMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("midpoint_det needs a square matrix");
    const int n = a.rows();
    detail::FMatrix m = detail::midpoint(a);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::fabs(m[static_cast<size_t>(i) * n + col]) >
                std::fabs(m[static_cast<size_t>(piv) * n + col]))
                piv = i;
        double p = m[static_cast<size_t>(piv) * n + col];
        if (p == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<size_t>(col) * n + j], m[static_cast<size_t>(piv) * n + j]);
            det = -det;
        }
        det *= p;
        for (int i = col + 1; i < n; ++i) {
            double f = m[static_cast<size_t>(i) * n + col] / p;
            for (int j = col; j < n; ++j)
                m[static_cast<size_t>(i) * n + j] -= f * m[static_cast<size_t>(col) * n + j];
        }
    }
    return det;
}

// Sufficient regularity criterion: with R the floating-point inverse of the
// midpoint matrix, ||I - R*A||_inf < 1 proves every point matrix in A
// non-singular.  A false return means "not verified", not "singular".
inline bool is_regular(const IMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("is_regular needs a square matrix");
    const int n = a.rows();
    auto r = detail::inverse(detail::midpoint(a), n);
    if (!r) return false;
    IMatrix e = IMatrix::identity(n) - detail::mul_point_interval(*r, a);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += e(i, j).mag();
        norm = std::max(norm, row);
    }
    return std::isfinite(norm) && norm < 1.0;
}

// Verified enclosure of the united solution set of A x = b: the returned
// vector contains A'^{-1} b' for every point pair A' in A, b' in b.
// Krawczyk residual iteration with epsilon-inflation: around the approximate
// solution x~, the error enclosure E is iterated as z + (I - R*A) * E until
// it maps strictly into its own interior.
inline IVector verified_solve(const IMatrix& a, const IVector& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("verified_solve dimension mismatch");
    const int n = a.rows();
    auto r = detail::inverse(detail::midpoint(a), n);
    if (!r) throw VerificationFailed("midpoint matrix could not be inverted");

    std::vector<double> bm = detail::midpoint(b);
    std::vector<double> xt(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += (*r)[static_cast<size_t>(i) * n + k] * bm[static_cast<size_t>(k)];
        xt[static_cast<size_t>(i)] = s;
    }

    // z = R*(b - A*x~),  C = I - R*A
    IVector xtv(n);
    for (int i = 0; i < n; ++i) xtv[i] = RInterval::exact(xt[static_cast<size_t>(i)]);
    IVector z = detail::mul_point_interval(*r, b - a * xtv);
    IMatrix c = IMatrix::identity(n) - detail::mul_point_interval(*r, a);

    constexpr int kMaxIter = 50;
    constexpr double kRelInflate = 1.001;
    constexpr double kAbsInflate = 1e-20;
    IVector e = z;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        IVector infl(n);
        for (int i = 0; i < n; ++i) {
            double d = (kRelInflate - 1.0) * e[i].rad() + kAbsInflate;
            infl[i] = RInterval(detail::next_down(e[i].lo - d), detail::next_up(e[i].hi + d));
        }
        IVector next = z + c * infl;
        bool inside = true;
        for (int i = 0; i < n; ++i)
            if (!infl[i].interior_contains(next[i])) {
                inside = false;
                break;
            }
        if (inside) {
            IVector out(n);
            for (int i = 0; i < n; ++i) out[i] = xtv[i] + next[i];
            return out;
        }
        e = next;
    }
    throw VerificationFailed("no contracting enclosure within the iteration budget");
}

// ---------------------------------------------------------------------------
// Closed-form 4x4 inversion.  Keeps holonomy inverses rational in the shape
// parts; the determinant enclosure must exclude zero.

namespace detail {

inline RInterval cof3(const IMatrix& m, int skip_r, int skip_c) {
    int r[3], c[3], ri = 0, ci = 0;
    for (int i = 0; i < 4; ++i)
        if (i != skip_r) r[ri++] = i;
    for (int j = 0; j < 4; ++j)
        if (j != skip_c) c[ci++] = j;
    return m(r[0], c[0]) * (m(r[1], c[1]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[1])) -
           m(r[0], c[1]) * (m(r[1], c[0]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[0])) +
           m(r[0], c[2]) * (m(r[1], c[0]) * m(r[2], c[1]) - m(r[1], c[1]) * m(r[2], c[0]));
}

} // namespace detail

inline IMatrix adjugate4(const IMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("adjugate4 needs a 4x4 matrix");
    IMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RInterval cof = detail::cof3(m, i, j);
            a(j, i) = ((i + j) & 1) ? -cof : cof;
        }
    return a;
}

inline RInterval det4(const IMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("det4 needs a 4x4 matrix");
    RInterval s;
    for (int j = 0; j < 4; ++j) {
        RInterval cof = detail::cof3(m, 0, j);
        RInterval term = m(0, j) * cof;
        s += (j & 1) ? -term : term;
    }
    return s;
}

inline IMatrix imat_inv4(const IMatrix& m) {
    RInterval d = det4(m);
    if (d.contains_zero())
        throw SingularEnclosure("4x4 determinant enclosure contains zero");
    IMatrix a = adjugate4(m);
    IMatrix inv(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv(i, j) = a(i, j) / d;
    return inv;
}

} // namespace rigcert
