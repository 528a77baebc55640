#include "doctest.h"

#include "vanlat/exact_linalg.hpp"

#include <random>
#include <sstream>

using namespace vanlat;

namespace {

/// Fraction-free Gaussian elimination, kept separate from the Smith code.
BigInt bareiss_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    BigIntMatrix a = m.cast<BigInt>();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(s, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return n == 0 ? BigInt(1) : sign * a(n - 1, n - 1);
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        const int c = coef(rng);
        for (std::size_t col = 0; col < n; ++col) u(i, col) += c * u(j, col);
    }
    return u;
}

}  // namespace

TEST_CASE("smith invariants of a textbook matrix") {
    const IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    CHECK(smith_invariants(m) == std::vector<std::int64_t>{2, 6, 12});
}

TEST_CASE("smith decomposition recovers a hidden diagonal") {
    std::mt19937_64 rng(7);
    const std::vector<std::vector<std::int64_t>> diagonals{{1, 1, 2, 6}, {1, 3, 3, 0}, {2, 4, 8, 8}, {1, 1, 1, 5}};
    for (const auto& d : diagonals) {
        IntMatrix diag(4, 4);
        for (std::size_t i = 0; i < 4; ++i) diag(i, i) = d[i];
        const IntMatrix m = random_unimodular(4, rng, 12) * diag * random_unimodular(4, rng, 12);
        std::vector<std::int64_t> expected;
        for (auto x : d)
            if (x != 0) expected.push_back(x);
        const auto dec = smith_decompose(m);
        CHECK(dec.invariants == expected);
        CHECK(dec.left * m * dec.right == dec.diagonal);
        CHECK(abs(bareiss_det(dec.left)) == 1);
        CHECK(abs(bareiss_det(dec.right)) == 1);
    }
}

TEST_CASE("int64 and BigInt smith forms agree on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        IntMatrix m(5, 6);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 6; ++j) m(i, j) = entry(rng);
        const auto small = smith_invariants(m);
        const auto big = smith_invariants(m.cast<BigInt>());
        REQUIRE(small.size() == big.size());
        for (std::size_t i = 0; i < small.size(); ++i) CHECK(BigInt(small[i]) == big[i]);
        BigInt prod = 1;
        for (auto x : small) prod *= x;
        IntMatrix sq(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) sq(i, j) = m(i, j);
        if (small.size() == 5) CHECK(bareiss_det(sq) % prod == 0);
    }
}

TEST_CASE("checked arithmetic throws on overflow") {
    const std::int64_t big = std::int64_t{1} << 62;
    CHECK_THROWS_AS(exact_mul(big, std::int64_t{4}), OverflowError);
    CHECK_THROWS_AS(exact_add(big, big), OverflowError);
    CHECK(exact_mul(std::int64_t{-3}, std::int64_t{7}) == -21);
}

TEST_CASE("alternating type reads divisors pairwise") {
    IntMatrix g(5, 5);
    g(0, 1) = 2;
    g(1, 0) = -2;
    g(2, 3) = 1;
    g(3, 2) = -1;
    const auto t = alternating_type(g);
    CHECK(t.divisors == std::vector<std::int64_t>{1, 2});
    CHECK(t.nullity == 1);
    CHECK(alternating_type(standard_symplectic(3)).divisors == std::vector<std::int64_t>{1, 1, 1});
    CHECK_THROWS_AS(alternating_type(IntMatrix{{1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("matrix text format round trips") {
    const IntMatrix m{{0, -3, 12}, {3, 0, -1}};
    const std::string text = matrix_to_text(m);
    CHECK(matrix_from_text(text) == m);
    CHECK(matrix_to_text(matrix_from_text(text)) == text);
    CHECK_THROWS(matrix_from_text("2 2\n1 2\n3"));
}

TEST_CASE("GF(2) rank, nullspace and solve") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
        F2Matrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a.set(i, j, rng() & 1);
        const auto null = f2_nullspace(a);
        CHECK(f2_rank(a) + null.size() == cols);
        for (const auto& v : null) CHECK(a.apply(v).is_zero());
        F2Vector x(cols);
        for (std::size_t j = 0; j < cols; ++j) x.set(j, rng() & 1);
        const F2Vector b = a.apply(x);
        const auto sol = f2_solve(a, b);
        REQUIRE(sol);
        CHECK(a.apply(*sol) == b);
    }
    F2Matrix z(2, 2);
    z.set(0, 0, true);
    z.set(1, 0, true);
    F2Vector b(2);
    b.set(0, true);
    CHECK_FALSE(f2_solve(z, b));
}

TEST_CASE("GF(2) symplectic basis of a degenerate form") {
    const F2Matrix form = F2Matrix::reduce(IntMatrix{{0, 1, 1, 0}, {-1, 0, 1, 0}, {-1, -1, 0, 0}, {0, 0, 0, 0}});
    const auto basis = f2_symplectic_basis(form);
    CHECK(basis.pairs.size() == 1);
    CHECK(basis.radical.size() == 2);
    for (const auto& [e, f] : basis.pairs) CHECK(form.pair(e, f));
    for (const auto& r : basis.radical) CHECK(form.apply(r).is_zero());
    CHECK(f2_radical(form).size() == 2);
}

TEST_CASE("GF(p) arithmetic and fixed spaces") {
    CHECK(is_prime(5));
    CHECK_FALSE(is_prime(9));
    for (std::uint32_t a = 1; a < 7; ++a) CHECK(a * fp_inverse(a, 7) % 7 == 1);
    const IntMatrix m{{2, 1, 0}, {1, 3, 4}, {0, 5, 1}};
    const BigInt det = bareiss_det(m);
    for (std::uint32_t p : {3u, 5u, 7u, 11u})
        CHECK(fp_determinant(FpMatrix::reduce(p, m)) == fp_reduce(static_cast<std::int64_t>(det), p));
    // A cyclic permutation of three coordinates fixes only the diagonal.
    const FpMatrix perm = FpMatrix::reduce(5, IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    const std::vector<FpMatrix> gens{perm};
    const auto fixed = fp_fixed_space(gens);
    REQUIRE(fixed.size() == 1);
    CHECK(fp_proportional(fixed[0], FpVector{1, 1, 1}, 5));
}
