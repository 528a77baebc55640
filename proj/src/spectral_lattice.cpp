#include "vanlat/spectral_lattice.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vanlat {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::string power_label(int j) { return "t^" + std::to_string(j); }

}  // namespace

SpectralParams SpectralParams::make(int n, int l, int g) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    if (g < 2) throw std::invalid_argument("g must be at least 2");
    return SpectralParams{n, l, g};
}

std::int64_t prym_rank(int n, int l, int g) { return SpectralParams::make(n, l, g).prym_rank(); }

int pair_c(int i, int a, int j, int b, int n, int max_index) {
    if (n < 2) throw std::invalid_argument("pair_c: n must be at least 2");
    if (i < 1 || j < 1 || (max_index > 0 && (i > max_index || j > max_index)))
        throw std::out_of_range("pair_c: cycle index out of range");
    const int d = mod(b - a, n);
    const int one = d == 1, last = d == n - 1, zero = d == 0;
    if (i == j) return one - last;
    if (j == i + 1) return zero - one;
    if (j == i - 1) return last - zero;
    return 0;
}

std::string BoundaryRelation::polynomial(int i) const {
    std::string s;
    const auto& c = coefficients.at(static_cast<std::size_t>(i - 1));
    for (int e = 0; e < n; ++e) {
        if (!c[static_cast<std::size_t>(e)]) continue;
        if (!s.empty()) s += "+";
        s += e == 0 ? "1" : (e == 1 ? "t" : "t^" + std::to_string(e));
    }
    return s.empty() ? "0" : s;
}

std::vector<std::vector<int>> BoundaryRelation::reduced_coefficients() const {
    auto out = coefficients;
    if (n != 2) return out;
    for (auto& c : out) {
        // t = -1 on Lambda_{S,0} when n = 2.
        c[0] -= c[1];
        c[1] = 0;
    }
    return out;
}

BoundaryRelation boundary_relation(int n, int k) {
    if (n < 2) throw std::invalid_argument("boundary_relation: n must be at least 2");
    if (k < 2) throw std::invalid_argument("boundary_relation: k must be at least 2");
    BoundaryRelation rel{n, k, {}};
    for (int i = 1; i <= k - 1; ++i) {
        std::vector<int> c(static_cast<std::size_t>(n), 0);
        for (int s = 0; s <= (i - 1) % n; ++s) c[static_cast<std::size_t>(s)] = 1;
        rel.coefficients.push_back(std::move(c));
    }
    return rel;
}

std::int64_t boundary_pairing_defect(int n, int k) {
    const auto rel = boundary_relation(n, k);
    std::int64_t worst = 0;
    for (int j = 1; j <= k - 1; ++j)
        for (int b = 0; b < n; ++b) {
            std::int64_t acc = 0;
            for (int i = 1; i <= k - 1; ++i)
                for (int s = 0; s < n; ++s)
                    if (rel.coefficients[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)])
                        acc += rel.coefficients[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)] *
                               pair_c(i, s, j, b, n);
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

namespace {

struct Layout {
    int n, k, g;
    std::size_t s0;  // rank of Lambda_{S,0}

    std::size_t s0_index(int i, int j) const { return static_cast<std::size_t>((i - 2) * (n - 1) + j); }
    std::size_t p1_index(int u, int x, int j) const {
        return s0 + static_cast<std::size_t>(((u - 1) * 2 + x) * (n - 1) + j);
    }
    std::size_t s1_index(int u, int x, int j) const { return s0 + static_cast<std::size_t>(((u - 1) * 2 + x) * n + j); }
    std::size_t rank_P() const { return s0 + static_cast<std::size_t>(2 * g * (n - 1)); }
    std::size_t rank_S() const { return s0 + static_cast<std::size_t>(2 * g * n); }
};

void add_into(IntVector& acc, const IntVector& v, std::int64_t factor) {
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (v[i]) acc[i] = exact_add(acc[i], exact_mul(factor, v[i]));
}

}  // namespace

IntVector SpectralLatticeSystem::cycle(int i, int e) const {
    const int n = params.n, k = params.k();
    if (i < 1 || i > k - 1) throw std::out_of_range("cycle: index out of range");
    const Layout lay{n, k, params.g, rank_S0()};
    IntVector v(rank_P(), 0);
    const int r = mod(e, n);
    if (i >= 2) {
        if (r <= n - 2) {
            v[lay.s0_index(i, r)] = 1;
        } else {
            for (int s = 0; s <= n - 2; ++s) v[lay.s0_index(i, s)] = -1;
        }
        return v;
    }
    // t^e c_1 = -sum_{i>=2} t^e P_i(t) c_i.
    for (int i2 = 2; i2 <= k - 1; ++i2)
        for (int s = 0; s < n; ++s)
            if (boundary.coefficients[static_cast<std::size_t>(i2 - 1)][static_cast<std::size_t>(s)])
                add_into(v, cycle(i2, e + s), -1);
    return v;
}

IntVector SpectralLatticeSystem::prym_sigma_cycle(char x, int u, int e) const {
    const int n = params.n;
    if (u < 1 || u > params.g || (x != 'a' && x != 'b')) throw std::out_of_range("prym_sigma_cycle: bad index");
    const Layout lay{n, params.k(), params.g, rank_S0()};
    const int xi = x == 'a' ? 0 : 1;
    IntVector v(rank_P(), 0);
    const int r = mod(e, n);
    if (r <= n - 2) {
        v[lay.p1_index(u, xi, r)] = 1;
    } else {
        for (int s = 0; s <= n - 2; ++s) v[lay.p1_index(u, xi, s)] = -1;
    }
    return v;
}

SpectralLatticeSystem build(const SpectralParams& params) {
    const auto checked = SpectralParams::make(params.n, params.l, params.g);
    const int n = checked.n, k = checked.k(), g = checked.g;
    const std::size_t s0 = static_cast<std::size_t>((n - 1) * (k - 2));
    const Layout lay{n, k, g, s0};
    const std::size_t rp = lay.rank_P(), rs = lay.rank_S(), p1 = rp - s0;

    SpectralLatticeSystem sys;
    sys.params = checked;
    sys.boundary = boundary_relation(n, k);

    // Lambda_{S,0}.
    sys.lattice_S0.gram = IntMatrix(s0, s0);
    for (int i = 2; i <= k - 1; ++i)
        for (int a = 0; a <= n - 2; ++a) {
            sys.lattice_S0.labels.push_back(power_label(a) + "*c_" + std::to_string(i));
            for (int j = 2; j <= k - 1; ++j)
                for (int b = 0; b <= n - 2; ++b)
                    sys.lattice_S0.gram(lay.s0_index(i, a), lay.s0_index(j, b)) = pair_c(i, a, j, b, n, k - 1);
        }

    // Lambda_{P,1}: Cartan(A_{n-1}) pairing between the a_u and b_u strands.
    const IntMatrix cartan = cartan_a(static_cast<std::size_t>(n - 1));
    sys.lattice_P1.gram = IntMatrix(p1, p1);
    for (int u = 1; u <= g; ++u)
        for (int x = 0; x < 2; ++x)
            for (int j = 0; j <= n - 2; ++j)
                sys.lattice_P1.labels.push_back("(1-t)" + power_label(j) + "*" + (x ? "b_" : "a_") + std::to_string(u));
    for (int u = 1; u <= g; ++u)
        for (int j = 0; j <= n - 2; ++j)
            for (int m = 0; m <= n - 2; ++m) {
                const std::int64_t c = cartan(static_cast<std::size_t>(j), static_cast<std::size_t>(m));
                if (!c) continue;
                sys.lattice_P1.gram(lay.p1_index(u, 0, j) - s0, lay.p1_index(u, 1, m) - s0) = c;
                sys.lattice_P1.gram(lay.p1_index(u, 1, m) - s0, lay.p1_index(u, 0, j) - s0) = -c;
            }

    // Lambda_P = Lambda_{S,0} (+) Lambda_{P,1}.
    sys.lattice_P.gram = IntMatrix(rp, rp);
    for (std::size_t i = 0; i < s0; ++i)
        for (std::size_t j = 0; j < s0; ++j) sys.lattice_P.gram(i, j) = sys.lattice_S0.gram(i, j);
    for (std::size_t i = 0; i < p1; ++i)
        for (std::size_t j = 0; j < p1; ++j) sys.lattice_P.gram(s0 + i, s0 + j) = sys.lattice_P1.gram(i, j);
    sys.lattice_P.labels = sys.lattice_S0.labels;
    sys.lattice_P.labels.insert(sys.lattice_P.labels.end(), sys.lattice_P1.labels.begin(), sys.lattice_P1.labels.end());

    // Lambda_S = Lambda_{S,0} (+) n copies of Lambda_Sigma.
    sys.lattice_S.gram = IntMatrix(rs, rs);
    for (std::size_t i = 0; i < s0; ++i)
        for (std::size_t j = 0; j < s0; ++j) sys.lattice_S.gram(i, j) = sys.lattice_S0.gram(i, j);
    sys.lattice_S.labels = sys.lattice_S0.labels;
    for (int u = 1; u <= g; ++u)
        for (int x = 0; x < 2; ++x)
            for (int j = 0; j < n; ++j)
                sys.lattice_S.labels.push_back(power_label(j) + "*" + (x ? "b_" : "a_") + std::to_string(u));
    for (int u = 1; u <= g; ++u)
        for (int j = 0; j < n; ++j) {
            sys.lattice_S.gram(lay.s1_index(u, 0, j), lay.s1_index(u, 1, j)) = 1;
            sys.lattice_S.gram(lay.s1_index(u, 1, j), lay.s1_index(u, 0, j)) = -1;
        }

    sys.gram_sigma = standard_symplectic(static_cast<std::size_t>(g));

    // Inclusion Lambda_P -> Lambda_S.
    sys.inclusion = IntMatrix(rs, rp);
    for (std::size_t i = 0; i < s0; ++i) sys.inclusion(i, i) = 1;
    for (int u = 1; u <= g; ++u)
        for (int x = 0; x < 2; ++x)
            for (int j = 0; j <= n - 2; ++j) {
                sys.inclusion(lay.s1_index(u, x, j), lay.p1_index(u, x, j)) = 1;
                sys.inclusion(lay.s1_index(u, x, j + 1), lay.p1_index(u, x, j)) = -1;
            }

    // t-actions.
    sys.t_on_P = IntMatrix(rp, rp);
    sys.t_on_S = IntMatrix(rs, rs);
    for (int i = 2; i <= k - 1; ++i)
        for (int j = 0; j <= n - 2; ++j) {
            const IntVector img = sys.cycle(i, j + 1);
            for (std::size_t r = 0; r < s0; ++r) {
                sys.t_on_P(r, lay.s0_index(i, j)) = img[r];
                sys.t_on_S(r, lay.s0_index(i, j)) = img[r];
            }
        }
    for (int u = 1; u <= g; ++u)
        for (int x = 0; x < 2; ++x) {
            const char xc = x ? 'b' : 'a';
            for (int j = 0; j <= n - 2; ++j) sys.t_on_P.set_column(lay.p1_index(u, x, j), sys.prym_sigma_cycle(xc, u, j + 1));
            for (int j = 0; j < n; ++j) sys.t_on_S(lay.s1_index(u, x, (j + 1) % n), lay.s1_index(u, x, j)) = 1;
        }

    // pi_* and pi^*.
    sys.pushforward = IntMatrix(static_cast<std::size_t>(2 * g), rs);
    sys.pullback = IntMatrix(rs, static_cast<std::size_t>(2 * g));
    for (int u = 1; u <= g; ++u)
        for (int x = 0; x < 2; ++x)
            for (int j = 0; j < n; ++j) {
                const auto sigma = static_cast<std::size_t>((u - 1) * 2 + x);
                sys.pushforward(sigma, lay.s1_index(u, x, j)) = 1;
                sys.pullback(lay.s1_index(u, x, j), sigma) = 1;
            }

    // S_P generators.
    for (int i = 1; i <= k - 1; ++i)
        for (int j = 0; j <= n - 2; ++j) {
            sys.sp_generators.push_back(sys.cycle(i, j));
            sys.sp_labels.push_back(power_label(j) + "*c_" + std::to_string(i));
        }
    for (int u = 1; u <= g; ++u)
        for (char x : {'a', 'b'})
            for (int j = 0; j <= n - 2; ++j) {
                IntVector v = sys.cycle(1, j);
                add_into(v, sys.prym_sigma_cycle(x, u, j), 1);
                sys.sp_generators.push_back(std::move(v));
                sys.sp_labels.push_back(power_label(j) + "*(c_1+(1-t)" + x + "_" + std::to_string(u) + ")");
            }
    return sys;
}

AlternatingType polarization_type(const SpectralLatticeSystem& sys) { return alternating_type(sys.lattice_P.gram); }

AlternatingType predicted_polarization_type(const SpectralParams& p) {
    AlternatingType t;
    const std::int64_t ones = std::int64_t{p.n - 2} * (p.g - 1) + std::int64_t{p.n} * (p.n - 1) * p.l / 2 - 1;
    t.divisors.assign(static_cast<std::size_t>(ones), 1);
    t.divisors.insert(t.divisors.end(), static_cast<std::size_t>(p.g), p.n);
    t.nullity = 0;
    return t;
}

std::vector<F2Vector> pullback_mod2_in_prym(const SpectralLatticeSystem& sys) {
    const F2Matrix inc = F2Matrix::reduce(sys.inclusion);
    std::vector<F2Vector> out;
    for (std::size_t c = 0; c < sys.pullback.cols(); ++c) {
        const F2Vector col = F2Vector::from_ints(sys.pullback.column(c));
        auto y = f2_solve(inc, col);
        if (!y) throw std::logic_error("pullback class does not lie in Lambda_P[2]");
        out.push_back(std::move(*y));
    }
    return out;
}

Mod2NullspaceReport mod2_nullspace_check(const SpectralLatticeSystem& sys) {
    Mod2NullspaceReport rep;
    const auto radical = f2_radical(F2Matrix::reduce(sys.lattice_P.gram));
    rep.radical_dim = radical.size();
    const auto two_g = static_cast<std::size_t>(2 * sys.params.g);
    if (sys.params.n % 2 == 0) {
        const auto pulled = pullback_mod2_in_prym(sys);
        bool inside = true;
        for (const auto& v : pulled) inside = inside && f2_in_span(radical, v);
        rep.radical_is_pullback = inside && f2_rank(pulled) == two_g && radical.size() == two_g;
        rep.ok = rep.radical_is_pullback;
    } else {
        std::vector<F2Vector> cols;
        for (std::size_t c = 0; c < sys.inclusion.cols(); ++c) cols.push_back(F2Vector::from_ints(sys.inclusion.column(c)));
        for (std::size_t c = 0; c < sys.pullback.cols(); ++c) cols.push_back(F2Vector::from_ints(sys.pullback.column(c)));
        const bool spans = f2_rank(cols) == sys.rank_S();
        const IntMatrix cross = sys.inclusion.transpose() * sys.lattice_S.gram * sys.pullback;
        bool orth = true;
        for (std::size_t i = 0; i < cross.rows(); ++i)
            for (std::size_t j = 0; j < cross.cols(); ++j) orth = orth && (cross(i, j) % 2 == 0);
        rep.orthogonal_splitting = spans && orth;
        rep.ok = rep.orthogonal_splitting && radical.empty();
    }
    return rep;
}

}  // namespace vanlat
