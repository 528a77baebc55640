#include "doctest.h"

#include "vanlat/spectral_lattice.hpp"

using namespace vanlat;

namespace {

const std::vector<SpectralParams>& grid() {
    static const std::vector<SpectralParams> g = [] {
        std::vector<SpectralParams> v;
        for (int n = 2; n <= 5; ++n)
            for (int l = 2; l <= 4; ++l)
                for (int genus = 2; genus <= 3; ++genus) v.push_back(SpectralParams::make(n, l, genus));
        return v;
    }();
    return g;
}

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

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SpectralParams::make(1, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(SpectralParams::make(2, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(SpectralParams::make(2, 2, 1), std::invalid_argument);
    CHECK(SpectralParams::make(3, 1, 3).hypothesis_ok() == false);
}

TEST_CASE("local pairings between the branch cycles") {
    const int n = 4;
    CHECK(pair_c(1, 0, 1, 1, n) == 1);
    CHECK(pair_c(1, 0, 2, 0, n) == 1);
    CHECK(pair_c(1, 0, 2, 1, n) == -1);
    for (int i = 1; i <= 5; ++i)
        for (int j = 1; j <= 5; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    CHECK(pair_c(i, a, j, b, n) == -pair_c(j, b, i, a, n));
                    CHECK(pair_c(i, a + 1, j, b + 1, n) == pair_c(i, a, j, b, n));
                    if (std::abs(i - j) > 1) CHECK(pair_c(i, a, j, b, n) == 0);
                }
    CHECK_THROWS_AS(pair_c(0, 0, 1, 0, n), std::out_of_range);
}

TEST_CASE("boundary polynomials cycle with period n") {
    const auto rel = boundary_relation(3, 6);
    CHECK(rel.polynomial(1) == "1");
    CHECK(rel.polynomial(2) == "1+t");
    CHECK(rel.polynomial(3) == "1+t+t^2");
    CHECK(rel.polynomial(4) == "1");
    CHECK(rel.polynomial(5) == "1+t");
    for (int n = 2; n <= 6; ++n)
        for (int l = 1; l <= 4; ++l) CHECK(boundary_pairing_defect(n, n * l) == 0);
}

TEST_CASE("ranks follow Riemann-Hurwitz and the Prym formula") {
    for (const auto& p : grid()) {
        CAPTURE(p.n);
        CAPTURE(p.l);
        CAPTURE(p.g);
        const auto sys = build(p);
        // 2 g_S - 2 = n (2g - 2) + k (n - 1) for a cyclic cover with k total branch points.
        const std::int64_t genus_s = (p.n * (2 * p.g - 2) + p.k() * (p.n - 1) + 2) / 2;
        CHECK(static_cast<std::int64_t>(sys.rank_S()) == 2 * genus_s);
        CHECK(static_cast<std::int64_t>(sys.rank_P()) == std::int64_t{p.n - 1} * (p.n * p.l + 2 * p.g - 2));
        CHECK(sys.rank_S0() == static_cast<std::size_t>((p.n - 1) * (p.k() - 2)));
        CHECK(sys.sp_generators.size() == static_cast<std::size_t>((p.n - 1) * (p.k() - 1 + 2 * p.g)));
    }
    CHECK(build(SpectralParams::make(2, 2, 2)).rank_S() == 10);
    CHECK(build(SpectralParams::make(2, 2, 2)).sp_generators.size() == 7);
    CHECK(build(SpectralParams::make(3, 2, 2)).sp_generators.size() == 18);
}

TEST_CASE("lattice maps and Gram matrices") {
    for (const auto& p : grid()) {
        if (p.n > 4) continue;
        CAPTURE(p.n);
        CAPTURE(p.l);
        CAPTURE(p.g);
        const auto sys = build(p);
        CHECK(sys.lattice_P.gram.is_alternating());
        CHECK(abs(bareiss_det(sys.lattice_S.gram)) == 1);
        IntMatrix tp = IntMatrix::identity(sys.rank_P());
        for (int i = 0; i < p.n; ++i) tp = tp * sys.t_on_P;
        CHECK(tp == IntMatrix::identity(sys.rank_P()));
        CHECK(sys.t_on_P.transpose() * sys.lattice_P.gram * sys.t_on_P == sys.lattice_P.gram);
        CHECK((sys.pushforward * sys.inclusion).is_zero());
        CHECK(sys.pushforward * sys.pullback == static_cast<std::int64_t>(p.n) * IntMatrix::identity(2 * p.g));
        // det of the Prym Gram is n^{2g}.
        BigInt expected = 1;
        for (int i = 0; i < 2 * p.g; ++i) expected *= p.n;
        CHECK(bareiss_det(sys.lattice_P.gram) == expected);
    }
}

TEST_CASE("polarization type of the Prym lattice") {
    for (const auto& p : grid()) {
        CAPTURE(p.n);
        CAPTURE(p.l);
        CAPTURE(p.g);
        const auto type = polarization_type(build(p));
        const std::size_t ones = static_cast<std::size_t>((p.n - 2) * (p.g - 1) + p.n * (p.n - 1) * p.l / 2 - 1);
        std::vector<std::int64_t> expected(ones, 1);
        expected.insert(expected.end(), static_cast<std::size_t>(p.g), p.n);
        CHECK(type.divisors == expected);
        CHECK(type.nullity == 0);
        CHECK(type == predicted_polarization_type(p));
    }
}

TEST_CASE("mod 2 radical of the Prym lattice") {
    for (const auto& p : grid()) {
        const auto sys = build(p);
        const auto report = mod2_nullspace_check(sys);
        CHECK(report.ok);
        CHECK(report.radical_dim == (p.n % 2 == 0 ? static_cast<std::size_t>(2 * p.g) : 0u));
    }
}

TEST_CASE("cycle coordinates respect the t-action") {
    const auto sys = build(SpectralParams::make(3, 2, 2));
    for (int i = 1; i < 6; ++i) {
        const IntVector c = sys.cycle(i, 0);
        CHECK(sys.t_on_P.apply(c) == sys.cycle(i, 1));
        CHECK(sys.cycle(i, 3) == c);
        IntVector sum(c.size(), 0);
        for (int e = 0; e < 3; ++e) {
            const IntVector ce = sys.cycle(i, e);
            for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += ce[t];
        }
        CHECK(std::all_of(sum.begin(), sum.end(), [](std::int64_t x) { return x == 0; }));
    }
    CHECK(sys.pair_P(sys.cycle(1, 0), sys.cycle(1, 1)) == 1);
    CHECK(sys.pair_P(sys.cycle(1, 0), sys.cycle(2, 1)) == -1);
}
