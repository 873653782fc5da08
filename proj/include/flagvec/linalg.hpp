#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flagvec/rational.hpp"

namespace flagvec {

using QVector = std::vector<Q>;

/// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows, QVector(cols, Q(0))) {}

    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static QMatrix from_rows(std::vector<QVector> rows) {
        QMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        for (const QVector& r : rows)
            if (r.size() != m.cols_)
                throw std::invalid_argument("ragged rows");
        m.data_ = std::move(rows);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Q& at(size_t i, size_t j) { return data_.at(i).at(j); }
    const Q& at(size_t i, size_t j) const { return data_.at(i).at(j); }
    QVector& row(size_t i) { return data_.at(i); }
    const QVector& row(size_t i) const { return data_.at(i); }

    void append_row(QVector r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("ragged rows");
        data_.push_back(std::move(r));
        ++rows_;
    }

    QMatrix transposed() const {
        QMatrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const QMatrix&) const = default;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<QVector> data_;
};

namespace detail {

// Clears denominators row by row; the kernel extraction in nullspace()
// relies on whole rows (not columns) being rescaled.
inline void scale_rows_to_integers(QMatrix& m) {
    for (size_t i = 0; i < m.rows(); ++i) {
        mpz_class lcm = 1;
        for (size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    m.at(i, j).get_den().get_mpz_t());
        if (lcm != 1)
            for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= Q(lcm);
    }
}

// Fraction-free forward elimination (Bareiss). Entries stay integral when
// the input is integral, since every division is by a previous pivot and is
// exact. Pivots are searched left to right in the first pivot_col_limit
// columns only; returns the rank. After the call, rows with index >= rank
// are zero throughout the pivot column range.
inline size_t bareiss_forward(QMatrix& m, size_t pivot_col_limit) {
    const size_t rows = m.rows(), cols = m.cols();
    size_t r = 0;
    Q prev = 1;
    for (size_t c = 0; c < pivot_col_limit && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(m.row(p), m.row(r));
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                m.at(i, j) =
                    (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        ++r;
    }
    return r;
}

}  // namespace detail

/// Rank over Q, by fraction-free elimination on the row-integerized matrix.
inline size_t rank(const QMatrix& m) {
    QMatrix work = m;
    detail::scale_rows_to_integers(work);
    return detail::bareiss_forward(work, work.cols());
}

struct RrefResult {
    QMatrix matrix;           // fully reduced, zero rows kept at the bottom
    std::vector<int> pivots;  // pivot column per nonzero row
    size_t rank = 0;
};

/// Reduced row echelon form by rational Gauss-Jordan elimination. Pivot
/// search is deterministic (topmost nonzero entry, columns left to right),
/// so equal row spaces give byte-identical results.
inline RrefResult rref(const QMatrix& input, size_t pivot_col_limit = SIZE_MAX) {
    RrefResult res{input, {}, 0};
    QMatrix& m = res.matrix;
    const size_t rows = m.rows(), cols = m.cols();
    const size_t limit = pivot_col_limit == SIZE_MAX
                             ? cols
                             : std::min(pivot_col_limit, cols);
    size_t r = 0;
    for (size_t c = 0; c < limit && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(m.row(p), m.row(r));
        const Q inv = Q(1) / m.at(r, c);
        for (size_t j = c; j < cols; ++j) m.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const Q f = m.at(i, c);
            for (size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        res.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    res.rank = r;
    return res;
}

/// Nonzero rows of the RREF: a canonical basis of the row space.
inline QMatrix row_space_basis(const QMatrix& m) {
    RrefResult res = rref(m);
    QMatrix basis(0, m.cols());
    for (size_t i = 0; i < res.rank; ++i) basis.append_row(res.matrix.row(i));
    return basis;
}

/// Basis of the left kernel {x : x^T m = 0}, i.e. the coefficient vectors
/// of vanishing row combinations, as RREF rows. Computed fraction-free on
/// the row-integerized augmented matrix [m | I]; scaling whole augmented
/// rows keeps the identity part aligned with the original (unscaled) rows.
inline QMatrix nullspace(const QMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    QMatrix aug(rows, cols + rows);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, cols + i) = 1;
    }
    detail::scale_rows_to_integers(aug);
    const size_t r = detail::bareiss_forward(aug, cols);

    QMatrix kernel(0, rows);
    for (size_t i = r; i < rows; ++i) {
        QVector row(rows);
        for (size_t j = 0; j < rows; ++j) row[j] = aug.at(i, cols + j);
        kernel.append_row(std::move(row));
    }
    return row_space_basis(kernel);
}

struct SolveResult {
    // Present iff the system is consistent.
    std::optional<QVector> solution;
    // Otherwise a certificate y with y^T A = 0 and y^T b != 0.
    std::optional<QVector> certificate;
    bool feasible() const { return solution.has_value(); }
};

/// Solves A x = b exactly. Free variables are set to zero, so the result is
/// deterministic. Infeasible systems come back with a Farkas certificate.
inline SolveResult solve(const QMatrix& a, const QVector& b) {
    const size_t rows = a.rows(), cols = a.cols();
    if (b.size() != rows)
        throw std::invalid_argument("right-hand side length mismatch");
    QMatrix aug(rows, cols + 1 + rows);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, cols) = b[i];
        aug.at(i, cols + 1 + i) = 1;
    }
    RrefResult res = rref(aug, cols);

    for (size_t i = res.rank; i < rows; ++i) {
        if (res.matrix.at(i, cols) == 0) continue;
        QVector y(rows);
        for (size_t j = 0; j < rows; ++j)
            y[j] = res.matrix.at(i, cols + 1 + j);
        return SolveResult{std::nullopt, std::move(y)};
    }

    QVector x(cols, Q(0));
    for (size_t i = 0; i < res.rank; ++i)
        x[static_cast<size_t>(res.pivots[i])] = res.matrix.at(i, cols);
    return SolveResult{std::move(x), std::nullopt};
}

/// Dimension of the affine hull of the given points.
inline size_t affine_dim(const std::vector<QVector>& points) {
    if (points.empty())
        throw std::invalid_argument("affine hull of no points");
    const size_t dim = points.front().size();
    QMatrix diffs(0, dim);
    for (size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != dim)
            throw std::invalid_argument("mixed point dimensions");
        QVector d(dim);
        for (size_t j = 0; j < dim; ++j) d[j] = points[i][j] - points[0][j];
        diffs.append_row(std::move(d));
    }
    return rank(diffs);
}

namespace detail {

// Phase I simplex with Bland's rule: feasibility of
//   sum_k lambda_k q_k = p, sum_k lambda_k = 1, lambda >= 0
// decided exactly. Returns true iff feasible.
inline bool point_in_hull(const QVector& p, const std::vector<QVector>& points) {
    const size_t d = p.size();
    const size_t k = points.size();
    const size_t m = d + 1;

    // Constraint rows [A | I | b] with b >= 0; artificials form the basis.
    QMatrix t(m, k + m + 1);
    for (size_t i = 0; i < m; ++i) {
        const bool convexity = (i == d);
        Q rhs = convexity ? Q(1) : p[i];
        const int sign = rhs < 0 ? -1 : 1;
        for (size_t j = 0; j < k; ++j)
            t.at(i, j) = Q(sign) * (convexity ? Q(1) : points[j][i]);
        t.at(i, k + i) = 1;
        t.at(i, k + m) = Q(sign) * rhs;
    }

    // Reduced costs for minimizing the artificial sum; artificials start
    // basic with reduced cost zero.
    QVector cost(k + m, Q(0));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < m; ++i) cost[j] -= t.at(i, j);

    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = k + i;

    while (true) {
        size_t enter = SIZE_MAX;
        for (size_t j = 0; j < k + m; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == SIZE_MAX) break;

        size_t leave = SIZE_MAX;
        Q best_ratio = 0;
        for (size_t i = 0; i < m; ++i) {
            if (t.at(i, enter) <= 0) continue;
            Q ratio = t.at(i, k + m) / t.at(i, enter);
            if (leave == SIZE_MAX || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == SIZE_MAX)
            throw std::logic_error("unbounded phase-one simplex");

        const Q pivot = t.at(leave, enter);
        for (size_t j = 0; j <= k + m; ++j) t.at(leave, j) /= pivot;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t.at(i, enter) == 0) continue;
            const Q f = t.at(i, enter);
            for (size_t j = 0; j <= k + m; ++j)
                t.at(i, j) -= f * t.at(leave, j);
        }
        const Q cf = cost[enter];
        if (cf != 0)
            for (size_t j = 0; j < k + m; ++j)
                cost[j] -= cf * t.at(leave, j);
        basis[leave] = enter;
    }

    // Optimal artificial sum, read off the final tableau: the values of
    // any artificials still basic. Zero iff the system is feasible.
    Q artificial_sum = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= k) artificial_sum += t.at(i, k + m);
    return artificial_sum == 0;
}

}  // namespace detail

/// True iff p is a vertex of the convex hull of {p} u others, i.e. p is
/// not a convex combination of the other points. Exact rational Phase I
/// simplex; Bland's rule guarantees termination.
inline bool hull_vertex_test(const QVector& p, const std::vector<QVector>& others) {
    for (const QVector& q : others)
        if (q.size() != p.size())
            throw std::invalid_argument("mixed point dimensions");
    if (others.empty()) return true;
    return !detail::point_in_hull(p, others);
}

}  // namespace flagvec
