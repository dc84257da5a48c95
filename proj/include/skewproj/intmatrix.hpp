#pragma once

// Small dense integer matrices with overflow-checked arithmetic.

#include "skewproj/error.hpp"
#include "skewproj/exactnum.hpp"

#include <cstdlib>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace skewproj {

using IntVector = std::vector<long long>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) : rows_(init.size()) {
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorKind::Domain, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows) {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw Error(ErrorKind::Domain, "ragged matrix");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    long long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (auto v : data_)
            if (v != 0) return false;
        return true;
    }

    std::vector<IntVector> to_rows() const {
        std::vector<IntVector> out(rows_, IntVector(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Elementary column and row operations.
    void add_col_multiple(std::size_t target, std::size_t source, long long c) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, target) = detail::checked_add((*this)(i, target), detail::checked_mul(c, (*this)(i, source)));
    }
    void add_row_multiple(std::size_t target, std::size_t source, long long c) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(target, j) = detail::checked_add((*this)(target, j), detail::checked_mul(c, (*this)(source, j)));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = detail::checked_sub(0, (*this)(i, c));
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = detail::checked_sub(0, (*this)(r, j));
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::Domain, "matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                long long aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) = detail::checked_add(c(i, j), detail::checked_mul(aik, b(k, j)));
            }
        return c;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::Domain, "matrix sum dimension mismatch");
        IntMatrix c(a.rows_, a.cols_);
        for (std::size_t t = 0; t < a.data_.size(); ++t) c.data_[t] = detail::checked_add(a.data_[t], b.data_[t]);
        return c;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<long long> data_;
};

inline bool is_alternating(const IntMatrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0) return false;
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != -m(j, i)) return false;
    }
    return true;
}

/// Exact determinant (Bareiss fraction-free elimination over big integers).
inline BigInt determinant(const IntMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::Domain, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline bool is_unimodular(const IntMatrix& m) {
    if (!m.is_square()) return false;
    BigInt d = determinant(m);
    return d == 1 || d == -1;
}

/// Basis of {v in Z^cols : M v = 0}, by unimodular column reduction M V = H.
inline std::vector<IntVector> integer_kernel(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix v = IntMatrix::identity(m.cols());
    std::size_t pivot = 0;
    for (std::size_t r = 0; r < h.rows() && pivot < h.cols(); ++r) {
        while (true) {
            std::size_t best = h.cols();
            for (std::size_t c = pivot; c < h.cols(); ++c)
                if (h(r, c) != 0 && (best == h.cols() || std::llabs(h(r, c)) < std::llabs(h(r, best)))) best = c;
            if (best == h.cols()) break;
            h.swap_cols(pivot, best);
            v.swap_cols(pivot, best);
            bool clean = true;
            for (std::size_t c = pivot + 1; c < h.cols(); ++c) {
                if (h(r, c) == 0) continue;
                long long q = h(r, c) / h(r, pivot);
                h.add_col_multiple(c, pivot, -q);
                v.add_col_multiple(c, pivot, -q);
                if (h(r, c) != 0) clean = false;
            }
            if (clean) {
                ++pivot;
                break;
            }
        }
    }
    std::vector<IntVector> kernel;
    for (std::size_t c = pivot; c < v.cols(); ++c) {
        IntVector col(v.rows());
        for (std::size_t i = 0; i < v.rows(); ++i) col[i] = v(i, c);
        kernel.push_back(std::move(col));
    }
    return kernel;
}

inline std::string render_rows(const IntMatrix& m) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out << ',';
        out << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

}  // namespace skewproj
