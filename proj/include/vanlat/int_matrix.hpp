#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vanlat {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when a fixed-width integer computation would wrap.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Raised on inconsistent matrix/vector dimensions.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact scalar arithmetic. The int64 overloads trap on overflow; the BigInt
// overloads never do.
inline std::int64_t exact_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
    return r;
}
inline std::int64_t exact_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
    return r;
}
inline std::int64_t exact_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
    return r;
}
inline std::int64_t exact_neg(std::int64_t a) { return exact_sub(0, a); }
inline std::int64_t exact_abs(std::int64_t a) { return a < 0 ? exact_neg(a) : a; }

inline BigInt exact_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt exact_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt exact_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt exact_neg(const BigInt& a) { return -a; }
inline BigInt exact_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

/// Floor division with nonnegative remainder for a positive divisor.
template <class T>
T floor_div(const T& a, const T& b) {
    T q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q = exact_sub(q, T(1));
    return q;
}

/// Dense row-major matrix over an exact integer type.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeError("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, std::span<const T> values) {
        if (values.size() != rows_) throw ShapeError("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    bool is_alternating() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i) {
            if ((*this)(i, i) != 0) return false;
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != exact_neg((*this)(j, i))) return false;
        }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = exact_add(a.data_[i], b.data_[i]);
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = exact_sub(a.data_[i], b.data_[i]);
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = exact_mul(s, a.data_[i]);
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) r(i, j) = exact_add(r(i, j), exact_mul(aik, b(k, j)));
            }
        return r;
    }

    std::vector<T> apply(std::span<const T> x) const {
        if (x.size() != cols_) throw ShapeError("matrix-vector product: length mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && x[j] != 0) y[i] = exact_add(y[i], exact_mul((*this)(i, j), x[j]));
        return y;
    }

    /// Bilinear pairing x^T M y.
    T pair(std::span<const T> x, std::span<const T> y) const {
        if (x.size() != rows_ || y.size() != cols_) throw ShapeError("pairing: length mismatch");
        T acc(0);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (x[i] == 0) continue;
            T row_acc(0);
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && y[j] != 0) row_acc = exact_add(row_acc, exact_mul((*this)(i, j), y[j]));
            acc = exact_add(acc, exact_mul(x[i], row_acc));
        }
        return acc;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) = exact_add((*this)(dst, j), exact_mul(factor, (*this)(src, j)));
    }
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0) (*this)(i, dst) = exact_add((*this)(i, dst), exact_mul(factor, (*this)(i, src)));
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = exact_neg((*this)(i, j));
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = exact_neg((*this)(i, j));
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = U((*this)(i, j));
        return r;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigIntMatrix = Matrix<BigInt>;
using IntVector = std::vector<std::int64_t>;
using BigIntVector = std::vector<BigInt>;

/// Kronecker product.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = exact_mul(a(i, j), b(k, l));
    return r;
}

/// Cartan matrix of the A_m root system (tridiagonal 2, -1).
IntMatrix cartan_a(std::size_t m);

/// The 2x2 standard symplectic matrix [[0,1],[-1,0]].
IntMatrix standard_symplectic(std::size_t pairs = 1);

/// Matrix text format: "rows cols" followed by row-major integers.
void write_matrix_text(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix_text(std::istream& is);
std::string matrix_to_text(const IntMatrix& m);
IntMatrix matrix_from_text(const std::string& text);

}  // namespace vanlat
