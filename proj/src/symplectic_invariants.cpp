#include "vanlat/symplectic_invariants.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vanlat {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::vector<std::size_t>> k_subsets_colex(std::size_t dim, std::size_t k) {
    if (k == 0) return {{}};
    std::vector<std::vector<std::size_t>> out;
    // Colex: ordered by the largest element first.
    for (std::size_t top = k - 1; top < dim; ++top)
        for (auto s : k_subsets_colex(top, k - 1)) {
            s.push_back(top);
            out.push_back(std::move(s));
        }
    return out;
}

std::uint64_t colex_rank(std::span<const std::size_t> subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i > 0 && subset[i] <= subset[i - 1]) throw std::invalid_argument("colex_rank: subset not increasing");
        r += binomial(subset[i], i + 1);
    }
    return r;
}

namespace {

std::int64_t reduce(std::int64_t x, std::uint32_t modulus) {
    if (!modulus) return x;
    return fp_reduce(x, modulus);
}

}  // namespace

ExteriorVector ExteriorVector::zero(std::uint32_t modulus, std::size_t dim, std::size_t k) {
    if (k > dim) throw std::invalid_argument("ExteriorVector: degree exceeds dimension");
    return {modulus, dim, k, std::vector<std::int64_t>(binomial(dim, k), 0)};
}

ExteriorVector ExteriorVector::basis(std::uint32_t modulus, std::size_t dim, std::span<const std::size_t> subset) {
    auto e = zero(modulus, dim, subset.size());
    if (!subset.empty() && subset.back() >= dim) throw std::out_of_range("ExteriorVector: index beyond dimension");
    e.coeffs[colex_rank(subset)] = 1;
    return e;
}

FpVector ExteriorVector::to_fp() const {
    if (modulus < 3) throw std::invalid_argument("ExteriorVector::to_fp: needs an odd prime modulus");
    FpVector v(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = fp_reduce(coeffs[i], modulus);
    return v;
}

ExteriorVector wedge(const ExteriorVector& a, const ExteriorVector& b) {
    if (a.dim != b.dim || a.modulus != b.modulus) throw ShapeError("wedge: operands live in different algebras");
    auto out = ExteriorVector::zero(a.modulus, a.dim, a.k + b.k);
    const auto sa = k_subsets_colex(a.dim, a.k), sb = k_subsets_colex(b.dim, b.k);
    std::vector<std::size_t> merged;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (!a.coeffs[i]) continue;
        for (std::size_t j = 0; j < sb.size(); ++j) {
            if (!b.coeffs[j]) continue;
            // Sorted merge; the sign counts pairs (x in I, y in J) with x > y.
            merged.clear();
            std::size_t p = 0, q = 0, inversions = 0;
            bool disjoint = true;
            while (p < sa[i].size() || q < sb[j].size()) {
                if (q == sb[j].size() || (p < sa[i].size() && sa[i][p] < sb[j][q])) {
                    merged.push_back(sa[i][p++]);
                } else if (p < sa[i].size() && sa[i][p] == sb[j][q]) {
                    disjoint = false;
                    break;
                } else {
                    inversions += sa[i].size() - p;
                    merged.push_back(sb[j][q++]);
                }
            }
            if (!disjoint) continue;
            const std::int64_t term = exact_mul(a.coeffs[i], b.coeffs[j]);
            auto& c = out.coeffs[colex_rank(merged)];
            c = reduce(inversions % 2 ? exact_sub(c, term) : exact_add(c, term), a.modulus);
        }
    }
    return out;
}

ExteriorVector scale(const ExteriorVector& a, std::int64_t c) {
    auto out = a;
    for (auto& x : out.coeffs) x = reduce(exact_mul(x, c), a.modulus);
    return out;
}

ExteriorVector alpha_form(std::uint32_t modulus, std::size_t v, std::size_t m) {
    if (m > v) throw std::invalid_argument("alpha_form: m exceeds v");
    auto out = ExteriorVector::zero(modulus, 2 * v, 2 * m);
    for (const auto& pick : k_subsets_colex(v, m)) {
        // e_i ^ f_i blocks in increasing order already form a sorted index set.
        std::vector<std::size_t> idx;
        for (auto i : pick) {
            idx.push_back(2 * i);
            idx.push_back(2 * i + 1);
        }
        out.coeffs[colex_rank(idx)] = 1;
    }
    return out;
}

ExteriorVector two_form(std::uint32_t modulus, const IntMatrix& gram) {
    if (!gram.is_alternating()) throw std::invalid_argument("two_form: Gram matrix is not alternating");
    auto out = ExteriorVector::zero(modulus, gram.rows(), 2);
    for (std::size_t b = 1; b < gram.rows(); ++b)
        for (std::size_t a = 0; a < b; ++a) {
            const std::size_t idx[2] = {a, b};
            out.coeffs[colex_rank(idx)] = reduce(gram(a, b), modulus);
        }
    return out;
}

ExteriorVector power(const ExteriorVector& omega, std::size_t m) {
    auto out = ExteriorVector::zero(omega.modulus, omega.dim, 0);
    out.coeffs[0] = 1;
    for (std::size_t i = 0; i < m; ++i) out = wedge(out, omega);
    return out;
}

ExteriorVector divided_power(const IntMatrix& gram, std::size_t m, std::uint32_t modulus) {
    auto out = power(two_form(0, gram), m);
    std::int64_t fact = 1;
    for (std::size_t i = 2; i <= m; ++i) fact = exact_mul(fact, static_cast<std::int64_t>(i));
    out.modulus = modulus;
    for (auto& c : out.coeffs) {
        if (c % fact) throw std::logic_error("divided_power: omega^m not divisible by m!");
        c = reduce(c / fact, modulus);
    }
    return out;
}

namespace {

std::uint32_t small_det(std::vector<std::uint64_t> a, std::size_t n, std::uint32_t p) {
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv * n + c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
            det = (p - det) % p;
        }
        det = det * a[c * n + c] % p;
        const std::uint64_t inv = fp_inverse(static_cast<std::uint32_t>(a[c * n + c]), p);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (!a[i * n + c]) continue;
            const std::uint64_t f = (p - a[i * n + c]) * inv % p;
            for (std::size_t j = c; j < n; ++j) a[i * n + j] = (a[i * n + j] + f * a[c * n + j]) % p;
        }
    }
    return static_cast<std::uint32_t>(det);
}

FpMatrix exterior_action_with(const FpMatrix& m, const std::vector<std::vector<std::size_t>>& subsets) {
    const std::uint32_t p = m.modulus();
    const std::size_t k = subsets.empty() ? 0 : subsets.front().size();
    FpMatrix out(p, subsets.size(), subsets.size());
    std::vector<std::uint64_t> minor(k * k);
    for (std::size_t r = 0; r < subsets.size(); ++r)
        for (std::size_t c = 0; c < subsets.size(); ++c) {
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor[i * k + j] = m(subsets[r][i], subsets[c][j]);
            out.set(r, c, small_det(minor, k, p));
        }
    return out;
}

FpVector direction(std::uint64_t code, std::size_t dim, std::uint32_t p) {
    FpVector a(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        a[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return a;
}

std::uint64_t direction_count(std::uint32_t p, std::size_t v, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < 2 * v; ++i) {
        total *= p;
        if (total > cap)
            throw CapExceeded("invariant_subspace: p^(2v) exceeds the direction cap " + std::to_string(cap));
    }
    return total;
}

void add_constraints(FpRowEchelon& ech, const FpMatrix& action) {
    const std::uint32_t p = action.modulus();
    for (std::size_t i = 0; i < action.rows() && !ech.full(); ++i) {
        FpVector row(action.row(i).begin(), action.row(i).end());
        row[i] = (row[i] + p - 1) % p;
        ech.add_row(std::move(row));
    }
}

void check_prime(std::uint32_t p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime");
}

}  // namespace

FpMatrix exterior_action(const FpMatrix& m, std::size_t k) {
    if (m.rows() != m.cols()) throw ShapeError("exterior_action: matrix not square");
    if (k > m.rows()) throw std::invalid_argument("exterior_action: degree exceeds dimension");
    return exterior_action_with(m, k_subsets_colex(m.rows(), k));
}

FpMatrix fp_symplectic_transvection(std::uint32_t p, std::span<const std::uint32_t> a) {
    if (a.size() % 2) throw ShapeError("fp_symplectic_transvection: odd dimension");
    const std::size_t n = a.size();
    // <a, x> = sum_i a_{e_i} x_{f_i} - a_{f_i} x_{e_i}
    FpVector f(n);
    for (std::size_t i = 0; i < n; i += 2) {
        f[i + 1] = a[i] % p;
        f[i] = (p - a[i + 1] % p) % p;
    }
    FpMatrix t = FpMatrix::identity(p, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t.set(i, j, static_cast<std::int64_t>((t(i, j) + std::uint64_t{a[i]} * f[j]) % p));
    return t;
}

std::vector<FpVector> invariant_subspace_serial(std::uint32_t p, std::size_t v, std::size_t k, std::uint64_t cap) {
    check_prime(p);
    const std::size_t dim = 2 * v;
    if (k > dim) return {};
    const std::uint64_t total = direction_count(p, v, cap);
    const auto subsets = k_subsets_colex(dim, k);
    FpRowEchelon ech(p, subsets.size());
    for (std::uint64_t code = 1; code < total && !ech.full(); ++code)
        add_constraints(ech, exterior_action_with(fp_symplectic_transvection(p, direction(code, dim, p)), subsets));
    return ech.nullspace();
}

std::vector<FpVector> invariant_subspace(std::uint32_t p, std::size_t v, std::size_t k, std::uint64_t cap) {
    check_prime(p);
    const std::size_t dim = 2 * v;
    if (k > dim) return {};
    const std::uint64_t total = direction_count(p, v, cap);
    const auto subsets = k_subsets_colex(dim, k);
    FpRowEchelon ech(p, subsets.size());
    // Actions are built in parallel per chunk and consumed in direction order.
    constexpr std::uint64_t chunk = 256;
    std::vector<FpMatrix> actions;
    for (std::uint64_t start = 1; start < total && !ech.full(); start += chunk) {
        const auto count = static_cast<std::int64_t>(std::min(chunk, total - start));
        actions.assign(static_cast<std::size_t>(count), FpMatrix());
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < count; ++i)
            actions[static_cast<std::size_t>(i)] = exterior_action_with(
                fp_symplectic_transvection(p, direction(start + static_cast<std::uint64_t>(i), dim, p)), subsets);
        for (const auto& a : actions) {
            if (ech.full()) break;
            add_constraints(ech, a);
        }
    }
    return ech.nullspace();
}

std::vector<FpMatrix> dual_monodromy_generators(const SpectralLatticeSystem& sys, std::uint32_t p) {
    check_prime(p);
    std::vector<FpMatrix> out;
    const IntMatrix& gram = sys.lattice_P.gram;
    for (const auto& s : sys.sp_generators) {
        // T_s^{-1} = I - s s^T G.
        const IntVector neg = [&] {
            IntVector v = s;
            for (auto& x : v) x = exact_neg(x);
            return v;
        }();
        IntMatrix inv = IntMatrix::identity(s.size());
        const IntVector f = gram.transpose().apply(s);  // (s^T G)^T
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j)
                if (neg[i] && f[j]) inv(i, j) = exact_add(inv(i, j), exact_mul(neg[i], f[j]));
        out.push_back(FpMatrix::reduce(p, inv.transpose()));
    }
    return out;
}

std::vector<FpVector> monodromy_invariant_subspace(const SpectralLatticeSystem& sys, std::uint32_t p, std::size_t k,
                                                   std::uint64_t dim_cap) {
    check_prime(p);
    if (sys.params.n % static_cast<int>(p) == 0)
        throw std::invalid_argument("monodromy_invariant_subspace: p divides n");
    const std::size_t mu = sys.rank_P();
    if (k > mu) return {};
    const std::uint64_t size = binomial(mu, k);
    if (size > dim_cap)
        throw CapExceeded("monodromy_invariant_subspace: binomial(" + std::to_string(mu) + ", " + std::to_string(k) +
                          ") exceeds " + std::to_string(dim_cap));
    const auto subsets = k_subsets_colex(mu, k);
    FpRowEchelon ech(p, subsets.size());
    for (const auto& g : dual_monodromy_generators(sys, p)) {
        if (ech.full()) break;
        add_constraints(ech, exterior_action_with(g, subsets));
    }
    return ech.nullspace();
}

bool omega_power_identity(std::size_t v, std::size_t m) {
    if (m > v) throw std::invalid_argument("omega_power_identity: m exceeds v");
    const auto omega = two_form(0, standard_symplectic(v));
    std::int64_t fact = 1;
    for (std::size_t i = 2; i <= m; ++i) fact = exact_mul(fact, static_cast<std::int64_t>(i));
    return power(omega, m) == scale(alpha_form(0, v, m), fact);
}

}  // namespace vanlat
