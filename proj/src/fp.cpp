#include "vanlat/fp.hpp"

#include <stdexcept>

namespace vanlat {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t fp_reduce(std::int64_t v, std::uint32_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw std::domain_error("fp_inverse: zero has no inverse");
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("FpMatrix: modulus must be an odd prime");
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::reduce(std::uint32_t p, const IntMatrix& a) {
    FpMatrix m(p, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
    return m;
}

void FpMatrix::set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = fp_reduce(v, p_); }

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

FpVector FpMatrix::apply(const FpVector& x) const {
    if (x.size() != cols_) throw ShapeError("FpMatrix::apply: length mismatch");
    FpVector y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc = (acc + std::uint64_t{(*this)(i, j)} * x[j]) % p_;
        y[i] = static_cast<std::uint32_t>(acc);
    }
    return y;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_) throw ShapeError("FpMatrix product: moduli differ");
    if (a.cols_ != b.rows_) throw ShapeError("FpMatrix product: inner dimensions differ");
    FpMatrix r(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::uint64_t aik = a(i, k);
            if (!aik) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                r.data_[i * r.cols_ + j] = static_cast<std::uint32_t>((r.data_[i * r.cols_ + j] + aik * b(k, j)) % a.p_);
        }
    return r;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("FpMatrix difference: shape mismatch");
    FpMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = (a.data_[i] + a.p_ - b.data_[i]) % a.p_;
    return r;
}

FpRowEchelon::FpRowEchelon(std::uint32_t p, std::size_t cols) : p_(p), cols_(cols) {}

bool FpRowEchelon::add_row(FpVector row) {
    if (row.size() != cols_) throw ShapeError("FpRowEchelon: row length mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::uint32_t c = row[pivots_[r]];
        if (!c) continue;
        const std::uint64_t f = p_ - c;
        for (std::size_t j = 0; j < cols_; ++j)
            if (rows_[r][j]) row[j] = static_cast<std::uint32_t>((row[j] + f * rows_[r][j]) % p_);
    }
    std::size_t lead = 0;
    while (lead < cols_ && row[lead] == 0) ++lead;
    if (lead == cols_) return false;
    const std::uint64_t inv = fp_inverse(row[lead], p_);
    for (auto& x : row) x = static_cast<std::uint32_t>(x * inv % p_);
    // Keep the stored rows fully reduced against the new pivot.
    for (auto& existing : rows_) {
        const std::uint32_t c = existing[lead];
        if (!c) continue;
        const std::uint64_t f = p_ - c;
        for (std::size_t j = 0; j < cols_; ++j)
            if (row[j]) existing[j] = static_cast<std::uint32_t>((existing[j] + f * row[j]) % p_);
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(lead);
    return true;
}

std::vector<FpVector> FpRowEchelon::nullspace() const {
    std::vector<int> pivot_row(cols_, -1);
    for (std::size_t r = 0; r < pivots_.size(); ++r) pivot_row[pivots_[r]] = static_cast<int>(r);
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (pivot_row[free] >= 0) continue;
        FpVector v(cols_, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (rows_[r][free]) v[pivots_[r]] = (p_ - rows_[r][free]) % p_;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<FpVector> fp_nullspace(const FpMatrix& a) {
    FpRowEchelon ech(a.modulus(), a.cols());
    for (std::size_t i = 0; i < a.rows() && !ech.full(); ++i) {
        auto r = a.row(i);
        ech.add_row(FpVector(r.begin(), r.end()));
    }
    return ech.nullspace();
}

std::size_t fp_rank(const FpMatrix& a) { return a.cols() - fp_nullspace(a).size(); }

std::vector<FpVector> fp_fixed_space(std::span<const FpMatrix> generators) {
    if (generators.empty()) throw std::invalid_argument("fp_fixed_space: no generators");
    const std::size_t n = generators.front().cols();
    const std::uint32_t p = generators.front().modulus();
    FpRowEchelon ech(p, n);
    for (const auto& m : generators) {
        if (m.rows() != n || m.cols() != n || m.modulus() != p)
            throw ShapeError("fp_fixed_space: generators must share size and modulus");
        const FpMatrix d = m - FpMatrix::identity(p, n);
        for (std::size_t i = 0; i < n && !ech.full(); ++i) {
            auto r = d.row(i);
            ech.add_row(FpVector(r.begin(), r.end()));
        }
        if (ech.full()) break;
    }
    return ech.nullspace();
}

std::uint32_t fp_determinant(FpMatrix m) {
    if (m.rows() != m.cols()) throw ShapeError("fp_determinant: matrix not square");
    const std::uint32_t p = m.modulus();
    const std::size_t n = m.rows();
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto t = m(c, j);
                m.set(c, j, m(piv, j));
                m.set(piv, j, t);
            }
            det = (p - det) % p;
        }
        det = det * m(c, c) % p;
        const std::uint64_t inv = fp_inverse(m(c, c), p);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (!m(i, c)) continue;
            const std::uint64_t f = (p - m(i, c)) * inv % p;
            for (std::size_t j = c; j < n; ++j)
                m.set(i, j, static_cast<std::int64_t>((m(i, j) + f * m(c, j)) % p));
        }
    }
    return static_cast<std::uint32_t>(det);
}

bool fp_proportional(const FpVector& a, const FpVector& b, std::uint32_t p) {
    if (a.size() != b.size()) return false;
    std::size_t lead = 0;
    while (lead < b.size() && b[lead] == 0) ++lead;
    if (lead == b.size() || a[lead] == 0) return false;
    const std::uint64_t c = std::uint64_t{a[lead]} * fp_inverse(b[lead], p) % p;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != c * b[i] % p) return false;
    return true;
}

}  // namespace vanlat
