// Dense exact linear algebra: Gaussian elimination with exact pivoting over
// any of the library's scalar fields.  Kernel bases come out of the reduced
// row echelon form with lexicographic pivot order, so outputs are
// deterministic and suitable for golden tests.

#ifndef WARING_LINALG_HPP
#define WARING_LINALG_HPP

#include "waring/scalar.hpp"

#include <stdexcept>
#include <vector>

namespace waring {

template <class K>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<K> a;  // row-major

    Matrix() = default;
    Matrix(size_t r, size_t c, const K& fill) : rows(r), cols(c), a(r * c, fill) {}

    K& at(size_t i, size_t j) { return a[i * cols + j]; }
    const K& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form.  Returns the pivot column of each pivot
// row, in order; the rank is the number of pivots.
template <class K>
std::vector<size_t> rref(Matrix<K>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t sel = row;
        while (sel < m.rows && is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(sel, j), m.at(row, j));
        K inv = one_like(m.at(row, col)) / m.at(row, col);
        for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            K f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
size_t rank(Matrix<K> m) {  // by value: rref is destructive
    return rref(m).size();
}

// Null space of m (viewing columns as unknowns): one basis vector per free
// column, each with a 1 in its free position; basis is the RREF kernel basis.
template <class K>
std::vector<std::vector<K>> kernel_basis(Matrix<K> m, const K& proto) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    K zero = zero_like(proto), one = one_like(proto);
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(m.cols, zero);
        v[free] = one;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = zero - m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves A x = b exactly.  Returns false when the system is inconsistent;
// free variables (if any) are set to zero.
template <class K>
bool solve_linear(Matrix<K> a, std::vector<K> b, std::vector<K>& x,
                  const K& proto) {
    if (b.size() != a.rows) throw std::invalid_argument("solve: size mismatch");
    Matrix<K> aug(a.rows, a.cols + 1, zero_like(proto));
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return false;  // 0 = 1 row
    x.assign(a.cols, zero_like(proto));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
    return true;
}

// Inverse of a square matrix; throws on singular input.
template <class K>
Matrix<K> inverse(const Matrix<K>& m, const K& proto) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
    size_t n = m.rows;
    Matrix<K> aug(n, 2 * n, zero_like(proto));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = one_like(proto);
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    Matrix<K> inv(n, n, zero_like(proto));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

template <class K>
Matrix<K> mat_mul(const Matrix<K>& a, const Matrix<K>& b, const K& proto) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Matrix<K> r(a.rows, b.cols, zero_like(proto));
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < a.cols; ++k) {
            if (is_zero(a.at(i, k))) continue;
            for (size_t j = 0; j < b.cols; ++j)
                r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

// Rank of the span of a list of coordinate vectors (rows).
template <class K>
size_t span_rank(const std::vector<std::vector<K>>& rows) {
    if (rows.empty()) return 0;
    Matrix<K> m(rows.size(), rows[0].size(), zero_like(rows[0][0]));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return rank(std::move(m));
}

}  // namespace waring

#endif  // WARING_LINALG_HPP
