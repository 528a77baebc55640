#include "vanlat/f2_quadratic.hpp"

#include <omp.h>

#include <bit>

namespace vanlat {

std::string to_string(ArfValue a) {
    switch (a) {
        case ArfValue::Zero: return "0";
        case ArfValue::One: return "1";
        case ArfValue::Undefined: return "undefined";
        case ArfValue::Absent: return "absent";
    }
    return "?";
}

F2QuadraticFunction::F2QuadraticFunction(F2Matrix form, F2Vector basis_values)
    : form_(std::move(form)), values_(std::move(basis_values)) {
    if (form_.rows() != values_.dim() || form_.cols() != values_.dim())
        throw ShapeError("quadratic function: form and value vector sizes differ");
    if (!form_.is_alternating()) throw ShapeError("quadratic function: form is not alternating");
    const std::size_t n = dim();
    upper_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        F2Vector u(n);
        for (std::size_t j = i + 1; j < n; ++j)
            if (form_.get(i, j)) u.set(j, true);
        upper_.push_back(std::move(u));
    }
    if (n <= 64)
        for (const auto& u : upper_) upper_bits_.push_back(u.to_bits());
}

bool F2QuadraticFunction::operator()(const F2Vector& x) const {
    if (x.dim() != dim()) throw ShapeError("quadratic function: argument dimension mismatch");
    bool acc = x.dot(values_);
    for (std::size_t i = 0; i < dim(); ++i)
        if (x.get(i)) acc ^= upper_[i].dot(x);
    return acc;
}

bool F2QuadraticFunction::eval_bits(std::uint64_t x) const {
    if (dim() > 64) throw ShapeError("eval_bits: dimension exceeds 64");
    unsigned acc = std::popcount(x & values_.to_bits()) & 1u;
    std::uint64_t rest = x;
    while (rest) {
        const int i = std::countr_zero(rest);
        acc ^= std::popcount(upper_bits_[static_cast<std::size_t>(i)] & x) & 1u;
        rest &= rest - 1;
    }
    return acc;
}

F2QuadraticFunction q_from_basis_values(const F2Matrix& form, const F2Vector& values) {
    return F2QuadraticFunction(form, values);
}

ArfValue arf(const F2QuadraticFunction& q) {
    const auto basis = f2_symplectic_basis(q.form());
    // q is linear on the radical, so checking a basis suffices.
    for (const auto& z : basis.radical)
        if (q(z)) return ArfValue::Undefined;
    bool sum = false;
    for (const auto& [e, f] : basis.pairs) sum ^= q(e) && q(f);
    return sum ? ArfValue::One : ArfValue::Zero;
}

namespace {

void check_cap(const F2QuadraticFunction& q, std::size_t cap) {
    if (q.dim() > cap || q.dim() > 62)
        throw CapExceeded("count_zeros: dimension " + std::to_string(q.dim()) + " exceeds enumeration cap " +
                          std::to_string(cap));
}

}  // namespace

std::uint64_t count_zeros(const F2QuadraticFunction& q, std::size_t cap) {
    check_cap(q, cap);
    const std::size_t n = q.dim();
    const PackedForm form(q.form());
    const std::uint64_t values = q.basis_values().to_bits();
    /// Blocks of 2^low vectors sharing their high bits; each block is a Gray-code walk.
    const std::size_t low = std::min<std::size_t>(n, 12);
    const auto blocks = static_cast<std::int64_t>(std::uint64_t{1} << (n - low));
    const std::uint64_t span = std::uint64_t{1} << low;
    std::uint64_t zeros = 0;
#pragma omp parallel for reduction(+ : zeros) schedule(static)
    for (std::int64_t h = 0; h < blocks; ++h) {
        std::uint64_t x = static_cast<std::uint64_t>(h) << low;
        bool qx = q.eval_bits(x);
        std::uint64_t local = qx ? 0 : 1;
        for (std::uint64_t i = 1; i < span; ++i) {
            const int b = std::countr_zero(i);
            const bool cross = std::popcount(form.row(static_cast<std::size_t>(b)) & x) & 1;
            qx ^= ((values >> b) & 1u) ^ cross;
            x ^= std::uint64_t{1} << b;
            if (!qx) ++local;
        }
        zeros += local;
    }
    return zeros;
}

std::uint64_t count_zeros_serial(const F2QuadraticFunction& q, std::size_t cap) {
    check_cap(q, cap);
    // Gray-code walk: q(x + e_b) = q(x) + q(e_b) + <x, e_b>.
    const std::size_t n = q.dim();
    const PackedForm form(q.form());
    const std::uint64_t values = q.basis_values().to_bits();
    const std::uint64_t total = std::uint64_t{1} << n;
    std::uint64_t x = 0, zeros = 1;
    bool qx = false;
    for (std::uint64_t i = 1; i < total; ++i) {
        const int b = std::countr_zero(i);
        const bool cross = std::popcount(form.row(static_cast<std::size_t>(b)) & x) & 1;
        qx ^= ((values >> b) & 1u) ^ cross;
        x ^= std::uint64_t{1} << b;
        if (!qx) ++zeros;
    }
    return zeros;
}

std::optional<F2QuadraticFunction> solve_invariant_quadratic(const F2Matrix& form, std::span<const F2Vector> generators) {
    if (generators.empty()) throw std::invalid_argument("solve_invariant_quadratic: empty generator set");
    const std::size_t n = form.cols();
    // Each s gives sum_i s_i q_i = 1 + sum_{i<j} s_i s_j <b_i, b_j>.
    const F2QuadraticFunction zero_values(form, F2Vector(n));
    F2Matrix a(generators.size(), n);
    F2Vector rhs(generators.size());
    for (std::size_t r = 0; r < generators.size(); ++r) {
        if (generators[r].dim() != n) throw ShapeError("solve_invariant_quadratic: generator dimension mismatch");
        a.row(r) = generators[r];
        rhs.set(r, !zero_values(generators[r]));
    }
    auto sol = f2_solve(a, rhs);
    if (!sol) return std::nullopt;
    return F2QuadraticFunction(form, *sol);
}

ArfValue predicted_arf(int n, int l) {
    if (n < 2) throw std::invalid_argument("predicted_arf: n must be at least 2");
    if (n % 2 == 1) {
        const long long m = (n - 1) / 2;
        return ((m * (m - 1) / 2) * l) % 2 ? ArfValue::One : ArfValue::Zero;
    }
    if (l % 2 == 1) return ArfValue::Absent;
    const long long m = n / 2;
    return (m * (l / 2)) % 2 ? ArfValue::One : ArfValue::Zero;
}

ArfValue spin_parity_arf(int n, int l) {
    if (n % 2 == 0) return predicted_arf(n, l);
    if (n < 3) throw std::invalid_argument("spin_parity_arf: n must be at least 2");
    const long long m = (n - 1) / 2;
    return ((m * (m + 1) / 2) * l) % 2 ? ArfValue::One : ArfValue::Zero;
}

}  // namespace vanlat
