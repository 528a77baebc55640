#include "doctest.h"

#include "vanlat/f2_quadratic.hpp"
#include "vanlat/vanishing_lattice.hpp"

#include <random>

using namespace vanlat;

namespace {

F2Matrix random_alternating(std::size_t n, std::mt19937_64& rng) {
    F2Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng() & 1) {
                g.set(i, j, true);
                g.set(j, i, true);
            }
    return g;
}

F2Vector random_vector(std::size_t n, std::mt19937_64& rng) {
    F2Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
    return v;
}

/// q(x) = sum x_i v_i + sum_{i<j} x_i x_j G_ij, straight from the definition.
bool direct_q(const F2Matrix& g, const F2Vector& v, std::uint64_t x) {
    const std::size_t n = g.cols();
    bool acc = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!((x >> i) & 1)) continue;
        acc ^= v.get(i);
        for (std::size_t j = i + 1; j < n; ++j)
            if ((x >> j) & 1) acc ^= g.get(i, j);
    }
    return acc;
}

std::uint64_t direct_zeros(const F2Matrix& g, const F2Vector& v) {
    std::uint64_t z = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << g.cols()); ++x) z += !direct_q(g, v, x);
    return z;
}

}  // namespace

TEST_CASE("evaluation matches the defining formula") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const F2Matrix g = random_alternating(n, rng);
        const F2Vector v = random_vector(n, rng);
        const F2QuadraticFunction q(g, v);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            CHECK(q.eval_bits(x) == direct_q(g, v, x));
            CHECK(q(F2Vector::from_bits(n, x)) == direct_q(g, v, x));
        }
    }
}

TEST_CASE("quadratic property q(x+y) = q(x) + q(y) + <x, y>") {
    std::mt19937_64 rng(9);
    const std::size_t n = 10;
    const F2Matrix g = random_alternating(n, rng);
    const F2QuadraticFunction q(g, random_vector(n, rng));
    for (int t = 0; t < 200; ++t) {
        const F2Vector x = random_vector(n, rng), y = random_vector(n, rng);
        CHECK(q(x + y) == (q(x) ^ q(y) ^ g.pair(x, y)));
    }
}

TEST_CASE("zero counts against brute force") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const F2Matrix g = random_alternating(n, rng);
        const F2Vector v = random_vector(n, rng);
        const F2QuadraticFunction q(g, v);
        const auto expected = direct_zeros(g, v);
        CHECK(count_zeros(q) == expected);
        CHECK(count_zeros_serial(q) == expected);
    }
}

TEST_CASE("parallel and serial zero counts agree at larger sizes") {
    std::mt19937_64 rng(33);
    for (std::size_t n : {16u, 18u, 20u}) {
        const F2QuadraticFunction q(random_alternating(n, rng), random_vector(n, rng));
        CHECK(count_zeros(q) == count_zeros_serial(q));
    }
}

TEST_CASE("zero-count law for nondegenerate forms") {
    for (std::size_t r = 1; r <= 8; ++r) {
        CAPTURE(r);
        const F2Matrix g = F2Matrix::reduce(standard_symplectic(r));
        const std::uint64_t half = std::uint64_t{1} << (2 * r - 1), shift = std::uint64_t{1} << (r - 1);
        const F2QuadraticFunction even(g, F2Vector(2 * r));
        F2Vector v(2 * r);
        v.set(0, true);
        v.set(1, true);
        const F2QuadraticFunction odd(g, v);
        CHECK(arf(even) == ArfValue::Zero);
        CHECK(arf(odd) == ArfValue::One);
        CHECK(count_zeros(even) == half + shift);
        CHECK(count_zeros(odd) == half - shift);
    }
}

TEST_CASE("Arf invariant agrees with the majority value") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 40) {
        const std::size_t n = 2 * (1 + rng() % 5);
        const F2Matrix g = random_alternating(n, rng);
        if (!f2_radical(g).empty()) continue;
        const F2Vector v = random_vector(n, rng);
        const F2QuadraticFunction q(g, v);
        const bool majority_zero = 2 * direct_zeros(g, v) > (std::uint64_t{1} << n);
        CHECK(arf(q) == (majority_zero ? ArfValue::Zero : ArfValue::One));
        ++checked;
    }
}

TEST_CASE("Arf with a radical") {
    F2Matrix g(3, 3);
    g.set(0, 1, true);
    g.set(1, 0, true);
    F2Vector v(3);
    CHECK(arf(F2QuadraticFunction(g, v)) == ArfValue::Zero);
    v.set(2, true);
    CHECK(arf(F2QuadraticFunction(g, v)) == ArfValue::Undefined);
    v.set(0, true);
    v.set(1, true);
    v.set(2, false);
    CHECK(arf(F2QuadraticFunction(g, v)) == ArfValue::One);
}

TEST_CASE("enumeration cap") {
    const F2QuadraticFunction q(F2Matrix::reduce(standard_symplectic(13)), F2Vector(26));
    CHECK_THROWS_AS(count_zeros(q), CapExceeded);
    CHECK_THROWS_AS(count_zeros_serial(q, 20), CapExceeded);
}

TEST_CASE("invariant quadratic for the monodromy generators") {
    for (auto [n, l, g, exists] : std::vector<std::tuple<int, int, int, bool>>{
             {3, 2, 2, true}, {4, 2, 2, true}, {4, 3, 2, false}, {4, 5, 2, false}, {2, 2, 2, true}, {2, 3, 2, false}, {5, 3, 2, true}}) {
        CAPTURE(n);
        CAPTURE(l);
        const auto sys = build(SpectralParams::make(n, l, g));
        const F2Matrix form = F2Matrix::reduce(sys.lattice_P.gram);
        const auto gens = reduced_generators(sys);
        const auto q = solve_invariant_quadratic(form, gens);
        CHECK(q.has_value() == exists);
        if (q)
            for (const auto& s : gens) CHECK((*q)(s));
    }
}

TEST_CASE("closed-form Arf tables") {
    CHECK(predicted_arf(3, 2) == ArfValue::Zero);
    CHECK(predicted_arf(5, 3) == ArfValue::One);
    CHECK(predicted_arf(4, 2) == ArfValue::Zero);
    CHECK(predicted_arf(4, 3) == ArfValue::Absent);
    CHECK(predicted_arf(6, 2) == ArfValue::One);
    // For odd n = 2m + 1 the spin-parity value is m(m+1)/2 * l mod 2.
    for (int n = 3; n <= 11; n += 2)
        for (int l = 1; l <= 6; ++l) {
            const long long m = (n - 1) / 2;
            CHECK(spin_parity_arf(n, l) == (((m * (m + 1) / 2) * l) % 2 ? ArfValue::One : ArfValue::Zero));
        }
    for (int l = 1; l <= 6; ++l) CHECK(spin_parity_arf(4, l) == predicted_arf(4, l));
    CHECK(to_string(ArfValue::Undefined) == "undefined");
}
