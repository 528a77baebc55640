#pragma once

#include "vanlat/int_matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vanlat {

bool is_prime(std::int64_t p);

using FpVector = std::vector<std::uint32_t>;

/// Dense matrix over GF(p), p an odd prime (p = 2 is rejected; use F2Matrix).
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(std::uint32_t p, std::size_t n);
    static FpMatrix reduce(std::uint32_t p, const IntMatrix& m);

    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    /// Stores v reduced into [0, p).
    void set(std::size_t i, std::size_t j, std::int64_t v);
    std::span<const std::uint32_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    FpMatrix transpose() const;
    FpVector apply(const FpVector& x) const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
    std::uint32_t p_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> data_;
};

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t fp_reduce(std::int64_t v, std::uint32_t p);

/// Incremental row-echelon accumulator over GF(p). Rows are reduced as they
/// are added, so stacking many constraint blocks never materializes them all.
class FpRowEchelon {
public:
    FpRowEchelon(std::uint32_t p, std::size_t cols);

    /// Returns true when the row increased the rank.
    bool add_row(FpVector row);
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool full() const noexcept { return rows_.size() == cols_; }
    /// Basis of the common kernel of all rows added so far.
    std::vector<FpVector> nullspace() const;

private:
    std::uint32_t p_;
    std::size_t cols_;
    std::vector<FpVector> rows_;     // each normalized with leading 1
    std::vector<std::size_t> pivots_;  // pivot column of each row
};

std::vector<FpVector> fp_nullspace(const FpMatrix& a);
std::size_t fp_rank(const FpMatrix& a);

/// Basis of {x : M x = x for every generator M}.
std::vector<FpVector> fp_fixed_space(std::span<const FpMatrix> generators);

/// Determinant over GF(p) of a square matrix.
std::uint32_t fp_determinant(FpMatrix m);

/// True iff a and b are nonzero and a = c b for some scalar c.
bool fp_proportional(const FpVector& a, const FpVector& b, std::uint32_t p);

}  // namespace vanlat
