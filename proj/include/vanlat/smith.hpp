#pragma once

#include "vanlat/int_matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vanlat {

/// Result of a Smith reduction: left * input * right == diagonal.
template <class T>
struct SmithDecomposition {
    Matrix<T> left;
    Matrix<T> diagonal;
    Matrix<T> right;
    std::vector<T> invariants;  // nonzero diagonal entries, d_1 | d_2 | ...
};

namespace detail {

template <class T>
std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const Matrix<T>& a, std::size_t from) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    T best_abs(0);
    for (std::size_t i = from; i < a.rows(); ++i)
        for (std::size_t j = from; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            T v = exact_abs(a(i, j));
            if (!best || v < best_abs) {
                best = {i, j};
                best_abs = v;
            }
        }
    return best;
}

template <class T>
void smith_reduce(Matrix<T>& a, Matrix<T>* left, Matrix<T>* right) {
    const std::size_t limit = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < limit; ++t) {
        for (;;) {
            auto pivot = min_abs_entry(a, t);
            if (!pivot) return;
            auto [pi, pj] = *pivot;
            a.swap_rows(t, pi);
            if (left) left->swap_rows(t, pi);
            a.swap_cols(t, pj);
            if (right) right->swap_cols(t, pj);

            bool residue = false;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                T q = exact_neg(floor_div(a(i, t), a(t, t)));
                a.add_row_multiple(i, t, q);
                if (left) left->add_row_multiple(i, t, q);
                if (a(i, t) != 0) residue = true;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                T q = exact_neg(floor_div(a(t, j), a(t, t)));
                a.add_col_multiple(j, t, q);
                if (right) right->add_col_multiple(j, t, q);
                if (a(t, j) != 0) residue = true;
            }
            if (residue) continue;

            // Pivot must divide the whole remaining block.
            std::optional<std::size_t> offending;
            for (std::size_t i = t + 1; i < a.rows() && !offending; ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        offending = i;
                        break;
                    }
            if (!offending) break;
            a.add_row_multiple(t, *offending, T(1));
            if (left) left->add_row_multiple(t, *offending, T(1));
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            if (left) left->negate_row(t);
        }
    }
}

}  // namespace detail

/// Nonzero invariant factors of m in divisibility order.
template <class T>
std::vector<T> smith_invariants(const Matrix<T>& m) {
    Matrix<T> a = m;
    detail::smith_reduce<T>(a, nullptr, nullptr);
    std::vector<T> out;
    for (std::size_t t = 0; t < std::min(a.rows(), a.cols()); ++t)
        if (a(t, t) != 0) out.push_back(a(t, t));
    return out;
}

/// Full reduction with unimodular transforms.
template <class T>
SmithDecomposition<T> smith_decompose(const Matrix<T>& m) {
    SmithDecomposition<T> d{Matrix<T>::identity(m.rows()), m, Matrix<T>::identity(m.cols()), {}};
    detail::smith_reduce<T>(d.diagonal, &d.left, &d.right);
    for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t)
        if (d.diagonal(t, t) != 0) d.invariants.push_back(d.diagonal(t, t));
    return d;
}

/// Elementary divisors of an alternating form together with its corank.
struct AlternatingType {
    std::vector<std::int64_t> divisors;
    std::size_t nullity = 0;

    friend bool operator==(const AlternatingType&, const AlternatingType&) = default;
};

/// Throws std::invalid_argument for non-alternating input.
AlternatingType alternating_type(const IntMatrix& gram);

}  // namespace vanlat
