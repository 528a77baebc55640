#include "doctest.h"

#include "vanlat/orbit.hpp"
#include "vanlat/vanishing_lattice.hpp"

#include <random>
#include <set>

using namespace vanlat;

namespace {

struct System {
    SpectralLatticeSystem sys;
    F2Matrix form;
    std::vector<F2Vector> gens;
};

System make(int n, int l, int g) {
    System s{build(SpectralParams::make(n, l, g)), {}, {}};
    s.form = F2Matrix::reduce(s.sys.lattice_P.gram);
    s.gens = reduced_generators(s.sys);
    return s;
}

/// Plain set-based orbit search, independent of the bitmap kernels.
std::set<std::uint64_t> naive_orbit(const F2Matrix& form, const std::vector<F2Vector>& gens) {
    std::set<std::uint64_t> seen;
    std::vector<F2Vector> stack(gens.begin(), gens.end());
    while (!stack.empty()) {
        F2Vector x = stack.back();
        stack.pop_back();
        if (!seen.insert(x.to_bits()).second) continue;
        for (const auto& a : gens) {
            F2Vector y = x;
            if (form.pair(a, x)) y ^= a;
            if (!seen.count(y.to_bits())) stack.push_back(y);
        }
    }
    return seen;
}

Adjacency graph_of(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Adjacency g(n);
    for (auto [u, v] : edges) {
        g[u].push_back(v);
        g[v].push_back(u);
    }
    for (auto& nb : g) std::sort(nb.begin(), nb.end());
    return g;
}

}  // namespace

TEST_CASE("transvections preserve the form and invert by sign") {
    const auto s = make(3, 2, 2);
    const IntMatrix& gram = s.sys.lattice_P.gram;
    for (const auto& a : s.sys.sp_generators) {
        const IntMatrix t = transvection_matrix(gram, a);
        CHECK(t.transpose() * gram * t == gram);
        IntVector neg(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
        // x -> x - <a, x> a undoes T_a.
        IntMatrix inv = IntMatrix::identity(a.size());
        const IntVector ga = gram.transpose().apply(a);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) inv(i, j) -= a[i] * ga[j];
        CHECK(t * inv == IntMatrix::identity(a.size()));
        CHECK(t.apply(a) == a);
        const IntVector x = s.sys.cycle(2, 1);
        CHECK(transvect<std::int64_t>(gram, a, x) == t.apply(x));
    }
}

TEST_CASE("orbit kernels agree with a naive search") {
    for (auto [n, l, g] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 3, 2}, {2, 2, 3}, {3, 1, 2}}) {
        CAPTURE(n);
        CAPTURE(l);
        CAPTURE(g);
        const auto s = make(n, l, g);
        const auto naive = naive_orbit(s.form, s.gens);
        const auto par = orbit_closure_f2(s.form, s.gens);
        const auto ser = orbit_closure_f2_serial(s.form, s.gens);
        CHECK(par == ser);
        CHECK(std::vector<std::uint64_t>(naive.begin(), naive.end()) == par.delta);
    }
    CHECK(orbit_closure_f2(make(2, 2, 2).form, make(2, 2, 2).gens).size() == 48);
}

TEST_CASE("orthogonal orbit equals the q = 1 level set") {
    const auto s = make(3, 2, 2);
    const auto orbit = orbit_closure_f2(s.form, s.gens);
    const auto q = solve_invariant_quadratic(s.form, s.gens);
    REQUIRE(q);
    // Brute force over all 2^16 vectors using the definition of q.
    std::vector<std::uint64_t> expected;
    const PackedForm pf(s.form);
    for (std::uint64_t x = 1; x < (std::uint64_t{1} << 16); ++x) {
        bool val = false;
        for (std::size_t i = 0; i < 16; ++i) {
            if (!((x >> i) & 1)) continue;
            val ^= q->basis_values().get(i);
            for (std::size_t j = i + 1; j < 16; ++j)
                if ((x >> j) & 1) val ^= s.form.get(i, j);
        }
        if (val && pf.image(x)) expected.push_back(x);
    }
    CHECK(expected.size() == 32640);
    CHECK(orbit.delta == expected);
    CHECK(quadratic_level_set(*q).delta == expected);
}

TEST_CASE("axioms and A-prime comparison for rank two") {
    for (auto [l, g] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        const auto s = make(2, l, g);
        const auto delta = orbit_closure_f2(s.form, s.gens);
        const auto axioms = verify_axioms(s.form, delta, s.gens);
        CHECK(axioms.ok());
        CHECK(axioms.closure_exhaustive);
        const auto ref = a_prime_reference(l - 1, 2 * g);
        const auto ref_delta = orbit_closure_f2(ref.form, ref.basis_images);
        CHECK(delta_invariants(s.form, delta, s.gens) == delta_invariants(ref.form, ref_delta, ref.basis_images));
    }
}

TEST_CASE("closure defect is reported for a non-closed set") {
    const F2Matrix form = F2Matrix::reduce(standard_symplectic(1));
    OrbitResult partial;
    partial.dim = 2;
    partial.delta = {1, 2};
    const auto d = self_transvection_defect(form, partial);
    REQUIRE(d);
    CHECK(*d == self_transvection_defect_serial(form, partial));
    CHECK(d->first == 1);
    CHECK(d->second == 2);
}

TEST_CASE("E6 recognition") {
    const auto e6 = graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}});
    CHECK(is_e6(e6));
    CHECK_FALSE(is_e6(graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}})));
    CHECK_FALSE(is_e6(graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}})));
    CHECK_FALSE(is_e6(graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {0, 5}})));
    for (int n = 3; n <= 5; ++n)
        for (int l = 2; l <= 3; ++l) {
            const auto w = e6_witness(build(SpectralParams::make(n, l, 2)));
            REQUIRE(w);
            CHECK(w->passed);
            CHECK(is_e6(w->graph));
        }
    CHECK_FALSE(e6_witness(build(SpectralParams::make(2, 3, 2))));
}

TEST_CASE("diagram catalog") {
    CHECK(canonical_diagram(DiagramFamily::Orthogonal1, 2, 0).arf == ArfValue::One);
    CHECK(canonical_diagram(DiagramFamily::AEven, 3, 0).arf == ArfValue::Zero);
    CHECK(canonical_diagram(DiagramFamily::Orthogonal3, 1, 1).arf == ArfValue::Undefined);
    CHECK_THROWS_AS(diagram_spec(DiagramFamily::AOdd, 2, 0), std::invalid_argument);
    int built = 0;
    for (auto fam : {DiagramFamily::Orthogonal1, DiagramFamily::Orthogonal2, DiagramFamily::Orthogonal3,
                     DiagramFamily::AEven, DiagramFamily::AOdd})
        for (int r = 1; r <= 8; ++r)
            for (int p = 0; p <= 3; ++p) {
                CAPTURE(to_string(fam));
                CAPTURE(r);
                CAPTURE(p);
                try {
                    const auto c = canonical_diagram(fam, r, p);
                    ++built;
                    CHECK(c.matches());
                    CHECK(edge_count(c.spec.adjacency) + 1 == static_cast<std::size_t>(2 * r + p) -
                                                              (fam == DiagramFamily::Orthogonal3 && r == 1 ? 1 : 0));
                } catch (const std::invalid_argument&) {
                }
            }
    CHECK(built > 120);
}

TEST_CASE("integral membership conditions") {
    const auto s = make(3, 2, 2);
    const auto q = *solve_invariant_quadratic(s.form, s.gens);
    const auto oracle = Mod2DeltaOracle::orthogonal(q);
    IntVector c1 = s.sys.cycle(1, 0), two = c1, three = c1, c13 = c1;
    for (auto& x : two) x *= 2;
    for (auto& x : three) x *= 3;
    const IntVector c3 = s.sys.cycle(3, 0);
    for (std::size_t i = 0; i < c13.size(); ++i) c13[i] += c3[i];
    CHECK(delta_membership_z(s.sys, c1, oracle));
    CHECK_FALSE(delta_membership_z(s.sys, two, oracle));
    CHECK_FALSE(delta_membership_z(s.sys, three, oracle));
    CHECK_FALSE(delta_membership_z(s.sys, c13, oracle));
    // c_1 + c_3 is primitive, so only the mod 2 condition rejects it.
    CHECK_FALSE(q(F2Vector::from_ints(c13)));

    std::mt19937_64 rng(1);
    for (int w = 0; w < 50; ++w) {
        IntVector x = c1;
        for (int step = 0; step < 15; ++step) x = transvect<std::int64_t>(s.sys.lattice_P.gram, s.sys.sp_generators[rng() % 18], x);
        CHECK(delta_membership_z(s.sys, x, oracle));
    }
}

TEST_CASE("GL generators are compatible with the pushforward") {
    const auto sys = build(SpectralParams::make(4, 2, 2));
    const auto gl = gl_generators(sys);
    CHECK(gl.size() == sys.sp_generators.size());
    for (const auto& t : gl) {
        CHECK(t.transpose() * sys.lattice_S.gram * t == sys.lattice_S.gram);
        CHECK(sys.pushforward * t == sys.pushforward);
    }
}

TEST_CASE("classification examples") {
    ClassifyOptions fast;
    fast.orbit = false;
    CHECK(classify(2, 2, 2).descriptor.notation() == expected_descriptor(2, 2, 2).notation());
    CHECK(classify(3, 2, 2, fast).descriptor.family == Family::OSharp0);
    CHECK(classify(3, 2, 2, fast).descriptor.divisors == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 3, 3});
    CHECK(classify(4, 3, 2, fast).descriptor.family == Family::SpSharp);
    CHECK(classify(5, 3, 2, fast).descriptor.family == Family::OSharp1);
    CHECK(family_from_string("O#_1") == Family::OSharp1);
    CHECK_FALSE(family_from_string("E8"));
}

TEST_CASE("classifier Arf follows spin parity on the grid") {
    ClassifyOptions fast;
    fast.orbit = false;
    for (int n = 2; n <= 5; ++n)
        for (int l = 2; l <= 4; ++l)
            for (int g = 2; g <= 3; ++g) {
                CAPTURE(n);
                CAPTURE(l);
                CAPTURE(g);
                const auto c = classify(n, l, g, fast);
                CHECK(c.failures.empty());
                CHECK(c.descriptor.divisors == c.expected.divisors);
                if (n > 2) CHECK(c.descriptor.arf == spin_parity_arf(n, l));
                const bool differs = !(c.descriptor.same_type(c.expected));
                CHECK(differs == (n == 3 && l == 3));
            }
}
