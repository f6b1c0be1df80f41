#pragma once

// Dense matrices over an exact field scalar (Rational, Gaussian or Surd)
// with exact Gaussian elimination: rank, kernel, solve, inverse.
// Multiplication skips zero entries of both operands, so products of the
// monomial matrices produced by the Clifford constructions cost O(n^2)
// scalar operations instead of O(n^3).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tighthom/scalars.hpp"

namespace tighthom {

template <typename K>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix diagonal(const std::vector<K>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const K& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!v.is_zero()) return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    friend Matrix operator*(const K& s, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        if (s.is_zero()) return m;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!a.data_[i].is_zero()) m.data_[i] = s * a.data_[i];
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const K& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    m.at(i, j) += aik * bkj;
                }
            }
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    /// Conjugate transpose (requires K to provide conj()).
    Matrix conj_transpose() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
        return m;
    }

    Matrix conj() const {
        Matrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).conj();
        return m;
    }

    K trace() const {
        if (!is_square()) throw std::invalid_argument("Matrix: trace of non-square matrix");
        K t{};
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    /// Sum over entries of the exact magnitude proxy; zero iff the matrix is.
    Rational magnitude() const {
        Rational m(0);
        for (const auto& v : data_) m += v.magnitude();
        return m;
    }

    /// Column-stacked vectorization (row index fastest): vec(M)[j*rows+i] = M[i][j].
    std::vector<K> vectorize() const {
        std::vector<K> v(rows_ * cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) v[j * rows_ + i] = at(i, j);
        return v;
    }

    static Matrix from_vector(const std::vector<K>& v, std::size_t rows, std::size_t cols) {
        if (v.size() != rows * cols) throw std::invalid_argument("Matrix: from_vector size mismatch");
        Matrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = v[j * rows + i];
        return m;
    }

    /// Writes `block` with its upper-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
        if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
            throw std::invalid_argument("Matrix: block does not fit");
        for (std::size_t i = 0; i < block.rows_; ++i)
            for (std::size_t j = 0; j < block.cols_; ++j) at(r0 + i, c0 + j) = block.at(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw std::invalid_argument("Matrix: block out of range");
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

  private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<K> data_;
};

/// Block-diagonal assembly in the given order.
template <typename K>
Matrix<K> block_diagonal(const std::vector<Matrix<K>>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix<K> m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        m.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

/// Kronecker product a (x) b.
template <typename K>
Matrix<K> kronecker(const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    if (b.at(k, l).is_zero()) continue;
                    m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
                }
        }
    return m;
}

// ===================================================================
// Exact elimination
// ===================================================================

/// Result of row reduction: the echelon form, pivot columns, and the row
/// transform T with T * original = echelon.
template <typename K>
struct Echelon {
    Matrix<K> reduced;
    Matrix<K> transform;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return pivot_cols.size(); }
};

/// Reduced row-echelon form by exact field elimination.
template <typename K>
Echelon<K> row_reduce(const Matrix<K>& a) {
    Echelon<K> e{a, Matrix<K>::identity(a.rows()), {}};
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        // Pivot search: first nonzero entry in this column at or below `row`.
        std::size_t piv = row;
        while (piv < a.rows() && e.reduced.at(piv, col).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(e.reduced.at(piv, j), e.reduced.at(row, j));
            for (std::size_t j = 0; j < a.rows(); ++j)
                std::swap(e.transform.at(piv, j), e.transform.at(row, j));
        }
        K inv = e.reduced.at(row, col).inverse();
        for (std::size_t j = col; j < a.cols(); ++j) {
            if (!e.reduced.at(row, j).is_zero()) e.reduced.at(row, j) = inv * e.reduced.at(row, j);
        }
        for (std::size_t j = 0; j < a.rows(); ++j) {
            if (!e.transform.at(row, j).is_zero())
                e.transform.at(row, j) = inv * e.transform.at(row, j);
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row) continue;
            const K factor = e.reduced.at(r, col);
            if (factor.is_zero()) continue;
            for (std::size_t j = col; j < a.cols(); ++j) {
                if (!e.reduced.at(row, j).is_zero())
                    e.reduced.at(r, j) -= factor * e.reduced.at(row, j);
            }
            for (std::size_t j = 0; j < a.rows(); ++j) {
                if (!e.transform.at(row, j).is_zero())
                    e.transform.at(r, j) -= factor * e.transform.at(row, j);
            }
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    return e;
}

template <typename K>
std::size_t rank(const Matrix<K>& a) {
    return row_reduce(a).rank();
}

/// Basis of the right kernel, one column vector per basis element.
template <typename K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& a) {
    Echelon<K> e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<K> v(a.cols());
        v[free_col] = K(1);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            v[e.pivot_cols[r]] = -e.reduced.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve a * x = b (single right-hand side); nullopt when inconsistent.
template <typename K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    Matrix<K> aug(a.rows(), a.cols() + 1);
    aug.set_block(0, 0, a);
    for (std::size_t i = 0; i < a.rows(); ++i) aug.at(i, a.cols()) = b[i];
    Echelon<K> e = row_reduce(aug);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
    std::vector<K> x(a.cols());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = e.reduced.at(r, a.cols());
    return x;
}

template <typename K>
Matrix<K> inverse(const Matrix<K>& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse: matrix not square");
    Echelon<K> e = row_reduce(a);
    if (e.rank() != a.rows()) throw std::domain_error("inverse: matrix is singular");
    return e.transform;
}

/// Columns of `vectors` (given as coordinate vectors) reduced to a basis of
/// their span; returns the reduced set (echelon-normalized, deterministic).
template <typename K>
std::vector<std::vector<K>> span_basis(const std::vector<std::vector<K>>& vectors) {
    if (vectors.empty()) return {};
    const std::size_t dim = vectors[0].size();
    Matrix<K> m(vectors.size(), dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) throw std::invalid_argument("span_basis: ragged input");
        for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = vectors[i][j];
    }
    Echelon<K> e = row_reduce(m);
    std::vector<std::vector<K>> basis;
    for (std::size_t r = 0; r < e.rank(); ++r) {
        std::vector<K> v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = e.reduced.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ===================================================================
// Cached linear expansion against a fixed spanning set
// ===================================================================

/// Solves  B * c = v  repeatedly for a fixed full-column-rank B (columns =
/// vectorized basis elements).  The row transform of one up-front reduction
/// is reused, so each expansion is a (sparse-aware) matrix-vector product.
template <typename K>
class LinearExpander {
  public:
    explicit LinearExpander(const Matrix<K>& basis_columns)
        : rows_(basis_columns.rows()), cols_(basis_columns.cols()) {
        Echelon<K> e = row_reduce(basis_columns);
        if (e.rank() != cols_)
            throw std::invalid_argument("LinearExpander: columns are linearly dependent");
        // Full column rank puts the pivots in rows 0..cols-1, so the reduced
        // matrix is [I; 0]: coefficients are the leading entries of T*v.
        transform_ = std::move(e.transform);
    }

    std::size_t dimension() const { return cols_; }

    /// Expand v in the basis; nullopt when v is outside the span.
    std::optional<std::vector<K>> expand(const std::vector<K>& v) const {
        if (v.size() != rows_) throw std::invalid_argument("LinearExpander: size mismatch");
        // t = transform * v, exploiting sparsity of v.
        std::vector<K> t(rows_);
        for (std::size_t k = 0; k < rows_; ++k) {
            if (v[k].is_zero()) continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!transform_.at(i, k).is_zero()) t[i] += transform_.at(i, k) * v[k];
            }
        }
        for (std::size_t i = cols_; i < rows_; ++i)
            if (!t[i].is_zero()) return std::nullopt;
        t.resize(cols_);
        return t;
    }

  private:
    std::size_t rows_, cols_;
    Matrix<K> transform_;
};

}  // namespace tighthom
