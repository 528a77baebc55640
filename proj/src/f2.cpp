#include "vanlat/f2.hpp"

#include <stdexcept>

namespace vanlat {

F2Vector F2Vector::from_bits(std::size_t dim, std::uint64_t bits) {
    if (dim > 64) throw ShapeError("from_bits: dimension exceeds 64");
    F2Vector v(dim);
    if (dim) v.words_[0] = dim == 64 ? bits : bits & ((std::uint64_t{1} << dim) - 1);
    return v;
}

F2Vector F2Vector::from_ints(std::span<const std::int64_t> x) {
    F2Vector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & 1) v.set(i, true);
    return v;
}

F2Vector F2Vector::from_ints(std::span<const BigInt> x) {
    F2Vector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (boost::multiprecision::bit_test(exact_abs(x[i]), 0)) v.set(i, true);
    return v;
}

F2Vector F2Vector::unit(std::size_t dim, std::size_t i) {
    F2Vector v(dim);
    v.set(i, true);
    return v;
}

bool F2Vector::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::size_t F2Vector::weight() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::optional<std::size_t> F2Vector::lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
}

std::uint64_t F2Vector::to_bits() const {
    if (dim_ > 64) throw ShapeError("to_bits: dimension exceeds 64");
    return words_.empty() ? 0 : words_[0];
}

F2Vector& F2Vector::operator^=(const F2Vector& o) {
    if (o.dim_ != dim_) throw ShapeError("F2Vector: dimension mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
}

bool F2Vector::dot(const F2Vector& o) const {
    if (o.dim_ != dim_) throw ShapeError("F2Vector: dimension mismatch");
    unsigned parity = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) parity ^= std::popcount(words_[w] & o.words_[w]) & 1u;
    return parity;
}

std::string F2Vector::to_string() const {
    std::string s(dim_, '0');
    for (std::size_t i = 0; i < dim_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(std::size_t cols, std::vector<F2Vector> rows) {
    for (const auto& r : rows)
        if (r.dim() != cols) throw ShapeError("F2Matrix::from_rows: row length mismatch");
    F2Matrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, std::span<const F2Vector> columns) {
    F2Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].dim() != rows) throw ShapeError("F2Matrix::from_columns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            if (columns[j].get(i)) m.set(i, j, true);
    }
    return m;
}

F2Matrix F2Matrix::reduce(const IntMatrix& a) {
    F2Matrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) & 1) m.set(i, j, true);
    return m;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

F2Vector F2Matrix::apply(const F2Vector& x) const {
    if (x.dim() != cols_) throw ShapeError("F2Matrix::apply: length mismatch");
    F2Vector y(rows());
    for (std::size_t i = 0; i < rows(); ++i)
        if (rows_[i].dot(x)) y.set(i, true);
    return y;
}

bool F2Matrix::pair(const F2Vector& x, const F2Vector& y) const { return x.dot(apply(y)); }

bool F2Matrix::is_symmetric() const {
    if (rows() != cols_) return false;
    for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (get(i, j) != get(j, i)) return false;
    return true;
}

bool F2Matrix::is_alternating() const {
    if (!is_symmetric()) return false;
    for (std::size_t i = 0; i < cols_; ++i)
        if (get(i, i)) return false;
    return true;
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("F2Matrix product: inner dimensions differ");
    F2Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) r.row(i) ^= b.row(k);
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<F2Vector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && !rows[sel].get(c)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

std::size_t f2_rank(std::span<const F2Vector> vectors) {
    if (vectors.empty()) return 0;
    std::vector<F2Vector> rows(vectors.begin(), vectors.end());
    return rref(rows, vectors.front().dim()).size();
}

std::size_t f2_rank(const F2Matrix& m) {
    std::vector<F2Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rref(rows, m.cols()).size();
}

std::vector<F2Vector> f2_nullspace(const F2Matrix& a) {
    std::vector<F2Vector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    const auto pivots = rref(rows, a.cols());
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<F2Vector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        F2Vector v(a.cols());
        v.set(free, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (rows[r].get(free)) v.set(pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<F2Vector> f2_solve(const F2Matrix& a, const F2Vector& b) {
    if (b.dim() != a.rows()) throw ShapeError("f2_solve: right-hand side length mismatch");
    // Augmented rows [A | b].
    std::vector<F2Vector> rows;
    rows.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        F2Vector r(a.cols() + 1);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) r.set(j, true);
        r.set(a.cols(), b.get(i));
        rows.push_back(std::move(r));
    }
    const auto pivots = rref(rows, a.cols() + 1);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    F2Vector x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        if (rows[r].get(a.cols())) x.set(pivots[r], true);
    return x;
}

bool f2_in_span(std::span<const F2Vector> basis, const F2Vector& v) {
    if (v.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<F2Vector> rows(basis.begin(), basis.end());
    const std::size_t r0 = rref(rows, v.dim()).size();
    rows.push_back(v);
    return rref(rows, v.dim()).size() == r0;
}

std::vector<F2Vector> f2_radical(const F2Matrix& form) { return f2_nullspace(form); }

SymplecticBasis f2_symplectic_basis(const F2Matrix& form) {
    if (!form.is_alternating()) throw std::invalid_argument("f2_symplectic_basis: form is not alternating");
    const std::size_t n = form.cols();
    std::vector<F2Vector> pool;
    for (std::size_t i = 0; i < n; ++i) pool.push_back(F2Vector::unit(n, i));

    SymplecticBasis out;
    while (!pool.empty()) {
        // First vector with a partner, partner = first vector pairing to 1.
        std::optional<std::size_t> ei, fi;
        for (std::size_t a = 0; a < pool.size() && !ei; ++a) {
            const F2Vector ga = form.apply(pool[a]);
            for (std::size_t b = a + 1; b < pool.size(); ++b)
                if (ga.dot(pool[b])) {
                    ei = a;
                    fi = b;
                    break;
                }
        }
        if (!ei) {
            for (auto& v : pool) out.radical.push_back(std::move(v));
            break;
        }
        F2Vector e = pool[*ei], f = pool[*fi];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*fi));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*ei));
        const F2Vector ge = form.apply(e), gf = form.apply(f);
        for (auto& v : pool) {
            // v <- v + <v,f> e + <v,e> f, orthogonal to both e and f.
            const bool vf = gf.dot(v), ve = ge.dot(v);
            if (vf) v ^= e;
            if (ve) v ^= f;
        }
        out.pairs.emplace_back(std::move(e), std::move(f));
    }
    return out;
}

PackedForm::PackedForm(const F2Matrix& form) {
    if (form.rows() != form.cols() || form.cols() > 64) throw ShapeError("PackedForm: need square form of dim <= 64");
    rows_.reserve(form.rows());
    for (std::size_t i = 0; i < form.rows(); ++i) rows_.push_back(form.row(i).to_bits());
}

std::uint64_t PackedForm::image(std::uint64_t x) const {
    // G symmetric: G x = XOR of rows for the set bits of x.
    std::uint64_t acc = 0;
    while (x) {
        const int i = std::countr_zero(x);
        acc ^= rows_[static_cast<std::size_t>(i)];
        x &= x - 1;
    }
    return acc;
}

}  // namespace vanlat
