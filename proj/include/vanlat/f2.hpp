#pragma once

#include "vanlat/int_matrix.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vanlat {

/// Vector over GF(2), packed 64 coordinates per word.
class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t dim) : dim_(dim), words_((dim + 63) / 64, 0) {}

    static F2Vector from_bits(std::size_t dim, std::uint64_t bits);
    static F2Vector from_ints(std::span<const std::int64_t> v);
    static F2Vector from_ints(std::span<const BigInt> v);
    static F2Vector unit(std::size_t dim, std::size_t i);

    std::size_t dim() const noexcept { return dim_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool is_zero() const;
    std::size_t weight() const;
    std::optional<std::size_t> lowest_set() const;

    /// Packed value for dim <= 64.
    std::uint64_t to_bits() const;

    F2Vector& operator^=(const F2Vector& o);
    friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }
    friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a ^= b; }

    /// Standard dot product sum x_i y_i.
    bool dot(const F2Vector& o) const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::string to_string() const;

    friend bool operator==(const F2Vector&, const F2Vector&) = default;
    friend auto operator<=>(const F2Vector& a, const F2Vector& b) {
        if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
        for (std::size_t w = a.words_.size(); w-- > 0;)
            if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix stored as packed rows.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vector(cols)) {}

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(std::size_t cols, std::vector<F2Vector> rows);
    static F2Matrix from_columns(std::size_t rows, std::span<const F2Vector> columns);
    /// Reduction mod 2 of an integer matrix.
    static F2Matrix reduce(const IntMatrix& m);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { rows_[i].set(j, v); }
    const F2Vector& row(std::size_t i) const { return rows_[i]; }
    F2Vector& row(std::size_t i) { return rows_[i]; }

    F2Matrix transpose() const;
    F2Vector apply(const F2Vector& x) const;
    /// Bilinear value x^T M y.
    bool pair(const F2Vector& x, const F2Vector& y) const;
    bool is_symmetric() const;
    /// Symmetric with zero diagonal.
    bool is_alternating() const;

    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<F2Vector> rows_;
};

/// Rank of the span of the given vectors.
std::size_t f2_rank(std::span<const F2Vector> vectors);
std::size_t f2_rank(const F2Matrix& m);

/// Basis of {x : A x = 0}, one vector per free column in increasing order.
std::vector<F2Vector> f2_nullspace(const F2Matrix& a);

/// Any solution of A x = b with free variables set to zero, or nullopt.
std::optional<F2Vector> f2_solve(const F2Matrix& a, const F2Vector& b);

/// Membership test in span(basis).
bool f2_in_span(std::span<const F2Vector> basis, const F2Vector& v);

/// Basis of the radical {x : <x, y> = 0 for all y} of a form.
std::vector<F2Vector> f2_radical(const F2Matrix& form);

struct SymplecticBasis {
    std::vector<std::pair<F2Vector, F2Vector>> pairs;
    std::vector<F2Vector> radical;
};

/// Symplectic basis of an alternating GF(2) form: hyperbolic pairs plus a
/// radical basis, 2 * pairs + radical == dim.
SymplecticBasis f2_symplectic_basis(const F2Matrix& form);

/// Fast bilinear evaluation for dim <= 64: row masks of the form.
class PackedForm {
public:
    PackedForm() = default;
    explicit PackedForm(const F2Matrix& form);

    std::size_t dim() const noexcept { return rows_.size(); }
    /// G x as a packed mask.
    std::uint64_t image(std::uint64_t x) const;
    bool pair(std::uint64_t x, std::uint64_t y) const { return std::popcount(image(x) & y) & 1; }
    std::uint64_t row(std::size_t i) const { return rows_[i]; }

private:
    std::vector<std::uint64_t> rows_;
};

}  // namespace vanlat
