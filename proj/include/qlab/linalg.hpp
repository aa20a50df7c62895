#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qlab/polynomial.hpp"

namespace qlab {

/// Minimal dense matrix over an arbitrary commutative ring S; used for the
/// exact (rational / symbolic) operator computations. Row-major.
template <class S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    static DenseMatrix identity(size_t n) {
        DenseMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    S& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const S& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
        DenseMatrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a.at(i, k);
                if (is_zero_value(aik)) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    const S& bkj = b.at(k, j);
                    if (is_zero_value(bkj)) continue;
                    r.at(i, j) = r.at(i, j) + aik * bkj;
                }
            }
        return r;
    }
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
        DenseMatrix r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
        DenseMatrix r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }
    DenseMatrix scaled(const S& f) const {
        DenseMatrix r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * f;
        return r;
    }
    DenseMatrix transposed() const {
        DenseMatrix r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    bool is_zero() const {
        for (const auto& v : data_)
            if (!is_zero_value(v)) return false;
        return true;
    }
    bool operator==(const DenseMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

/// Exact determinant by fraction Gaussian elimination with pivoting.
inline Rational det_rational(DenseMatrix<Rational> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_rational: square matrix required");
    const size_t n = m.rows();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        for (size_t row = col + 1; row < n; ++row) {
            if (m.at(row, col) == 0) continue;
            Rational f = m.at(row, col) / m.at(col, col);
            for (size_t j = col; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
        }
    }
    return det;
}

/// Exact positive-semidefiniteness of a symmetric rational matrix: every
/// nonempty principal minor must be >= 0. Exponential in size; intended
/// for the small certificates re-verified after a numeric scan hit.
inline bool psd_exact_rational(const DenseMatrix<Rational>& h) {
    const size_t n = h.rows();
    if (n != h.cols()) throw std::invalid_argument("psd_exact_rational: square matrix required");
    if (n > 16) throw std::domain_error("psd_exact_rational: matrix too large for exact check");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        DenseMatrix<Rational> sub(idx.size(), idx.size());
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j) sub.at(i, j) = h.at(idx[i], idx[j]);
        if (det_rational(sub) < 0) return false;
    }
    return true;
}

}  // namespace qlab
