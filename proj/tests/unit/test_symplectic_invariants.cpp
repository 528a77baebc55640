#include "doctest.h"

#include "vanlat/symplectic_invariants.hpp"

#include <random>

using namespace vanlat;

namespace {

ExteriorVector vec(std::uint32_t modulus, std::size_t dim, std::size_t i) {
    const std::size_t s[] = {i};
    return ExteriorVector::basis(modulus, dim, s);
}

FpMatrix random_fp(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % p));
    return m;
}

}  // namespace

TEST_CASE("colex enumeration of subsets") {
    const auto s = k_subsets_colex(4, 2);
    const std::vector<std::vector<std::size_t>> expected{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
    CHECK(s == expected);
    for (std::size_t dim = 1; dim <= 7; ++dim)
        for (std::size_t k = 0; k <= dim; ++k) {
            const auto all = k_subsets_colex(dim, k);
            CHECK(all.size() == binomial(dim, k));
            for (std::size_t i = 0; i < all.size(); ++i) CHECK(colex_rank(all[i]) == i);
        }
    CHECK(binomial(30, 15) == 155117520u);
    CHECK(binomial(3, 5) == 0u);
}

TEST_CASE("wedge product is graded-commutative") {
    const auto e0 = vec(0, 4, 0), e1 = vec(0, 4, 1), e2 = vec(0, 4, 2);
    CHECK(wedge(e0, e1) == scale(wedge(e1, e0), -1));
    CHECK(wedge(e0, e0) == ExteriorVector::zero(0, 4, 2));
    const auto a = wedge(e0, e1);
    CHECK(wedge(a, e2) == wedge(e2, a));
    CHECK(wedge(wedge(e2, e0), e1) == wedge(e0, wedge(e1, e2)));
}

TEST_CASE("powers of the symplectic form") {
    for (std::size_t v = 1; v <= 3; ++v)
        for (std::size_t m = 0; m <= v; ++m) {
            const auto omega = two_form(0, standard_symplectic(v));
            std::int64_t fact = 1;
            for (std::size_t i = 2; i <= m; ++i) fact *= static_cast<std::int64_t>(i);
            CHECK(power(omega, m) == scale(alpha_form(0, v, m), fact));
            CHECK(divided_power(standard_symplectic(v), m, 0) == alpha_form(0, v, m));
            CHECK(omega_power_identity(v, m));
        }
    CHECK_THROWS_AS(alpha_form(3, 2, 3), std::invalid_argument);
}

TEST_CASE("induced maps on exterior powers are multiplicative") {
    std::mt19937_64 rng(4);
    for (std::uint32_t p : {3u, 5u}) {
        const FpMatrix a = random_fp(p, 5, rng), b = random_fp(p, 5, rng);
        for (std::size_t k = 0; k <= 5; ++k) {
            CHECK(exterior_action(a * b, k) == exterior_action(a, k) * exterior_action(b, k));
            CHECK(exterior_action(FpMatrix::identity(p, 5), k) == FpMatrix::identity(p, binomial(5, k)));
        }
        const auto top = exterior_action(a, 5);
        CHECK(top(0, 0) == fp_determinant(a));
    }
}

TEST_CASE("symplectic transvections preserve the standard form") {
    const std::uint32_t p = 5;
    const FpMatrix j = FpMatrix::reduce(p, standard_symplectic(2));
    const std::vector<std::uint32_t> a{1, 3, 0, 4};
    const FpMatrix t = fp_symplectic_transvection(p, a);
    CHECK(t.transpose() * j * t == j);
}

TEST_CASE("fixed spaces of the full symplectic group") {
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t v = 1; v <= 2; ++v)
            for (std::size_t k = 0; k <= 2 * v + 1; ++k) {
                CAPTURE(p);
                CAPTURE(v);
                CAPTURE(k);
                const auto basis = invariant_subspace(p, v, k);
                CHECK(basis == invariant_subspace_serial(p, v, k));
                const std::size_t expected = (k % 2 == 0 && k <= 2 * v) ? 1 : 0;
                REQUIRE(basis.size() == expected);
                if (expected) CHECK(fp_proportional(basis[0], alpha_form(p, v, k / 2).to_fp(), p));
            }
    CHECK_THROWS_AS(invariant_subspace(5, 4, 2, 1000), CapExceeded);
}

TEST_CASE("monodromy invariants of the smallest rank two system") {
    const auto sys = build(SpectralParams::make(2, 2, 2));
    for (std::uint32_t p : {3u, 5u})
        for (std::size_t k = 0; k <= 6; ++k) {
            CAPTURE(p);
            CAPTURE(k);
            const auto basis = monodromy_invariant_subspace(sys, p, k);
            REQUIRE(basis.size() == (k % 2 == 0 ? 1u : 0u));
            if (k % 2 == 0)
                CHECK(fp_proportional(basis[0], divided_power(sys.lattice_P.gram, k / 2, p).to_fp(), p));
        }
}

TEST_CASE("monodromy invariant argument checks") {
    const auto sys3 = build(SpectralParams::make(3, 2, 2));
    CHECK_THROWS_AS(monodromy_invariant_subspace(sys3, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(monodromy_invariant_subspace(sys3, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(monodromy_invariant_subspace(sys3, 5, 8), CapExceeded);
    CHECK(monodromy_invariant_subspace(sys3, 5, 2).size() == 1);
    const auto gens = dual_monodromy_generators(sys3, 5);
    CHECK(gens.size() == 18);
}
