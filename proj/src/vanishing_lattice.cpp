#include "vanlat/vanishing_lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vanlat {

IntMatrix transvection_matrix(const IntMatrix& gram, std::span<const std::int64_t> a) {
    if (!gram.is_square() || a.size() != gram.rows()) throw ShapeError("transvection_matrix: length mismatch");
    const std::size_t n = a.size();
    // Row functional a^T G.
    IntVector f(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (gram(i, j)) f[j] = exact_add(f[j], exact_mul(a[i], gram(i, j)));
    }
    IntMatrix t = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (f[j]) t(i, j) = exact_add(t(i, j), exact_mul(a[i], f[j]));
    }
    return t;
}

AxiomReport verify_axioms(const F2Matrix& form, const OrbitResult& delta, std::span<const F2Vector> generators,
                          std::uint64_t closure_budget) {
    AxiomReport rep;
    rep.generators_in_delta = !generators.empty();
    for (const auto& s : generators) rep.generators_in_delta = rep.generators_in_delta && delta.contains(s);
    if (delta.delta.empty()) return rep;

    const std::uint64_t pairs = std::uint64_t{delta.size()} * delta.size();
    if (pairs <= closure_budget) {
        rep.closure_exhaustive = true;
        rep.closure_defect = self_transvection_defect(form, delta);
    } else {
        const PackedForm pf(form);
        for (const auto& sv : generators) {
            const std::uint64_t s = sv.to_bits();
            for (const std::uint64_t x : delta.delta)
                if (pf.pair(s, x) && !delta.contains(x ^ s)) {
                    rep.closure_defect = std::pair{s, x};
                    break;
                }
            if (rep.closure_defect) break;
        }
    }
    rep.closed = !rep.closure_defect;

    const F2Vector first = F2Vector::from_bits(delta.dim, delta.delta.front());
    const auto reach = orbit_of(form, std::span<const F2Vector>(&first, 1), generators, kMaxOrbitDim);
    rep.transitive = reach.delta == delta.delta;

    rep.spans = delta.span_rank == delta.dim;
    rep.witness_pair = delta.witness_pair;
    rep.unimodular_pair = delta.witness_pair.has_value();
    return rep;
}

Mod2DeltaOracle Mod2DeltaOracle::orthogonal(const F2QuadraticFunction& q) {
    Mod2DeltaOracle o;
    o.form_ = q.form();
    o.q_ = q;
    return o;
}

Mod2DeltaOracle Mod2DeltaOracle::symplectic(const F2Matrix& form) {
    Mod2DeltaOracle o;
    o.form_ = form;
    return o;
}

Mod2DeltaOracle Mod2DeltaOracle::enumerated(OrbitResult set) {
    Mod2DeltaOracle o;
    o.form_ = F2Matrix(set.dim, set.dim);
    o.set_ = std::move(set);
    return o;
}

bool Mod2DeltaOracle::contains(const F2Vector& v) const {
    if (v.dim() != dim() && !(set_ && v.dim() == set_->dim)) throw ShapeError("Mod2DeltaOracle: dimension mismatch");
    if (set_) return set_->contains(v);
    if (form_.apply(v).is_zero()) return false;
    return !q_ || (*q_)(v);
}

bool delta_membership_z(const SpectralLatticeSystem& sys, std::span<const std::int64_t> x, const Mod2DeltaOracle& oracle) {
    return delta_membership_z<std::int64_t>(sys.lattice_P.gram, x, oracle);
}

std::string to_string(DiagramFamily f) {
    switch (f) {
        case DiagramFamily::Orthogonal1: return "orthogonal-1";
        case DiagramFamily::Orthogonal2: return "orthogonal-2";
        case DiagramFamily::Orthogonal3: return "orthogonal-3";
        case DiagramFamily::AEven: return "A^ev";
        case DiagramFamily::AOdd: return "A^odd";
    }
    return "?";
}

Adjacency intersection_graph(const F2Matrix& form, std::span<const F2Vector> elements) {
    Adjacency g(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (i != j && form.pair(elements[i], elements[j])) g[i].push_back(j);
    return g;
}

F2Matrix form_from_graph(const Adjacency& graph) {
    F2Matrix m(graph.size(), graph.size());
    for (std::size_t i = 0; i < graph.size(); ++i)
        for (std::size_t j : graph[i]) {
            if (j == i || j >= graph.size()) throw std::invalid_argument("form_from_graph: loop or bad vertex");
            m.set(i, j, true);
        }
    if (!m.is_alternating()) throw std::invalid_argument("form_from_graph: adjacency is not symmetric");
    return m;
}

std::size_t edge_count(const Adjacency& graph) {
    std::size_t twice = 0;
    for (const auto& nb : graph) twice += nb.size();
    return twice / 2;
}

bool is_e6(const Adjacency& graph) {
    if (graph.size() != 6 || edge_count(graph) != 5) return false;
    // Connected with 5 edges on 6 vertices means a tree.
    std::vector<bool> seen(6, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto w : graph[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != 6) return false;
    std::vector<std::size_t> branch;
    for (std::size_t v = 0; v < 6; ++v) {
        if (graph[v].size() > 3) return false;
        if (graph[v].size() == 3) branch.push_back(v);
    }
    if (branch.size() != 1) return false;
    std::vector<std::size_t> arms;
    for (auto start : graph[branch[0]]) {
        std::size_t prev = branch[0], cur = start, len = 1;
        while (graph[cur].size() == 2) {
            const auto nxt = graph[cur][0] == prev ? graph[cur][1] : graph[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    return arms == std::vector<std::size_t>{1, 2, 2};
}

std::optional<E6Witness> e6_witness(const SpectralLatticeSystem& sys) {
    if (sys.params.n == 2) return std::nullopt;
    if (sys.params.k() < 6) throw std::invalid_argument("e6_witness: needs nl >= 6");
    E6Witness w;
    const IntVector c2 = sys.cycle(2, 0), tc2 = sys.cycle(2, 1);
    w.labels = {"t*c_3", "t*c_1", "c_2+t*c_2", "c_3", "c_4", "c_5"};
    w.elements = {sys.cycle(3, 1), sys.cycle(1, 1), transvect<std::int64_t>(sys.lattice_P.gram, c2, tc2),
                  sys.cycle(3, 0), sys.cycle(4, 0), sys.cycle(5, 0)};
    for (const auto& e : w.elements) w.reduced.push_back(F2Vector::from_ints(e));
    const F2Matrix form = F2Matrix::reduce(sys.lattice_P.gram);
    w.graph = intersection_graph(form, w.reduced);
    w.passed = is_e6(w.graph);
    return w;
}

namespace {

void add_edge(Adjacency& g, int a, int b) {
    // 1-based vertex labels.
    g[static_cast<std::size_t>(a - 1)].push_back(static_cast<std::size_t>(b - 1));
    g[static_cast<std::size_t>(b - 1)].push_back(static_cast<std::size_t>(a - 1));
}

void chain(Adjacency& g, int from, int to) {
    for (int v = from; v < to; ++v) add_edge(g, v, v + 1);
}

void extras(Adjacency& g, int first, int last, int hub) {
    for (int v = first; v <= last; ++v) add_edge(g, v, hub);
}

}  // namespace

DiagramSpec diagram_spec(DiagramFamily family, int r, int p) {
    if (r < 1 || p < 0) throw std::invalid_argument("diagram_spec: need r >= 1 and p >= 0");
    DiagramSpec d{family, r, p, Adjacency(static_cast<std::size_t>(2 * r + p))};
    auto& g = d.adjacency;
    const int n = 2 * r + p;
    switch (family) {
        case DiagramFamily::Orthogonal1:
            if (r < 2) throw std::invalid_argument("orthogonal-1 diagram needs r >= 2");
            chain(g, 2, 2 * r);
            add_edge(g, 1, 4);
            extras(g, 2 * r + 1, n, 2 * r - 1);
            break;
        case DiagramFamily::Orthogonal2:
            if (r < 3) throw std::invalid_argument("orthogonal-2 diagram needs r >= 3");
            if (p > 0 && r < 4) throw std::invalid_argument("orthogonal-2 diagram with extra vertices needs r >= 4");
            chain(g, 3, 2 * r);
            add_edge(g, 2, 6);
            add_edge(g, 1, 2);
            extras(g, 2 * r + 1, n, 2 * r - 1);
            break;
        case DiagramFamily::Orthogonal3:
            if (p < 1) throw std::invalid_argument("orthogonal-3 diagram needs p >= 1");
            chain(g, 2, 2 * r + 1);
            if (r >= 2) add_edge(g, 1, 5);
            extras(g, 2 * r + 2, n, 2 * r);
            break;
        case DiagramFamily::AEven:
            chain(g, 1, 2 * r);
            extras(g, 2 * r + 1, n, 2 * r - 1);
            break;
        case DiagramFamily::AOdd:
            if (p < 1) throw std::invalid_argument("A^odd diagram needs p >= 1");
            chain(g, 1, 2 * r + 1);
            extras(g, 2 * r + 2, n, 2 * r);
            break;
    }
    for (auto& nb : g) std::sort(nb.begin(), nb.end());
    return d;
}

ArfValue catalog_arf(DiagramFamily family, int r) {
    const int m = r % 4;
    switch (family) {
        case DiagramFamily::Orthogonal1: return (m == 2 || m == 3) ? ArfValue::One : ArfValue::Zero;
        case DiagramFamily::Orthogonal2: return (m == 0 || m == 1) ? ArfValue::One : ArfValue::Zero;
        case DiagramFamily::Orthogonal3: return ArfValue::Undefined;
        case DiagramFamily::AEven: return (m == 1 || m == 2) ? ArfValue::One : ArfValue::Zero;
        case DiagramFamily::AOdd:
            if (m == 1) return ArfValue::One;
            if (m == 3) return ArfValue::Zero;
            return ArfValue::Undefined;  // r = 2 or 4 (= 0) mod 4
    }
    return ArfValue::Undefined;
}

CanonicalDiagram canonical_diagram(DiagramFamily family, int r, int p) {
    CanonicalDiagram c;
    c.spec = diagram_spec(family, r, p);
    const F2Matrix form = form_from_graph(c.spec.adjacency);
    const auto basis = f2_symplectic_basis(form);
    if (basis.pairs.size() != static_cast<std::size_t>(r) || basis.radical.size() != static_cast<std::size_t>(p))
        throw std::invalid_argument("canonical_diagram: form of " + to_string(family) + " does not have rank 2r and radical p");
    F2Vector ones(form.cols());
    for (std::size_t i = 0; i < form.cols(); ++i) ones.set(i, true);
    c.q = F2QuadraticFunction(form, ones);
    c.arf = arf(c.q);
    c.expected = catalog_arf(family, r);
    return c;
}

APrimeReference a_prime_reference(int r, int p) {
    const auto spec = diagram_spec(DiagramFamily::AOdd, r, p + 1);
    const F2Matrix big = form_from_graph(spec.adjacency);
    const std::size_t dim = static_cast<std::size_t>(2 * r + p);
    const std::size_t dropped = static_cast<std::size_t>(2 * r);  // vertex 2r+1
    // Projection: e_{2r+1} = e_1 + e_3 + ... + e_{2r-1} in the quotient.
    auto project = [&](std::size_t v) {
        F2Vector img(dim);
        if (v == dropped) {
            for (std::size_t i = 0; i < dropped; i += 2) img.set(i, true);
        } else {
            img.set(v < dropped ? v : v - 1, true);
        }
        return img;
    };
    APrimeReference ref{r, p, F2Matrix(dim, dim), {}};
    for (std::size_t v = 0; v < big.cols(); ++v) ref.basis_images.push_back(project(v));
    // The induced form, read off from the surviving coordinates.
    for (std::size_t i = 0; i < big.cols(); ++i) {
        if (i == dropped) continue;
        for (std::size_t j = 0; j < big.cols(); ++j) {
            if (j == dropped) continue;
            ref.form.set(i < dropped ? i : i - 1, j < dropped ? j : j - 1, big.get(i, j));
        }
    }
    // The images must pair exactly as the original basis did.
    for (std::size_t i = 0; i < big.cols(); ++i)
        for (std::size_t j = 0; j < big.cols(); ++j)
            if (ref.form.pair(ref.basis_images[i], ref.basis_images[j]) != big.get(i, j))
                throw std::logic_error("a_prime_reference: quotient form is not induced");
    return ref;
}

namespace {

/// Basis of {v in span(v0) : v + d in Delta}.
std::vector<F2Vector> v00_basis(const std::vector<F2Vector>& v0, const std::function<bool(const F2Vector&)>& in_delta,
                                const F2Vector& d) {
    if (v0.size() > kMaxOrbitDim) throw CapExceeded("V_00: radical too large to enumerate");
    std::vector<F2Vector> members;
    const std::uint64_t total = std::uint64_t{1} << v0.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        F2Vector v(d.dim());
        for (std::size_t i = 0; i < v0.size(); ++i)
            if ((mask >> i) & 1) v ^= v0[i];
        if (in_delta(v + d)) members.push_back(std::move(v));
    }
    std::vector<F2Vector> basis;
    for (auto& v : members)
        if (!f2_in_span(basis, v)) basis.push_back(v);
    return basis;
}

}  // namespace

DeltaInvariants delta_invariants(const F2Matrix& form, const OrbitResult& delta, std::span<const F2Vector> generators) {
    DeltaInvariants inv;
    inv.size = delta.size();
    const auto v0 = f2_radical(form);
    inv.radical_dim = v0.size();
    if (!delta.delta.empty()) {
        const auto d = F2Vector::from_bits(delta.dim, delta.delta.front());
        inv.v00_dim = v00_basis(v0, [&](const F2Vector& v) { return delta.contains(v); }, d).size();
    }
    inv.has_invariant_quadratic = solve_invariant_quadratic(form, generators).has_value();
    return inv;
}

V00Result v00_and_k0(const IntMatrix& gram, const Mod2DeltaOracle& delta, const F2Vector& some_delta, int k_max) {
    if (!delta.contains(some_delta)) throw std::invalid_argument("v00_and_k0: reference vector is not in Delta");
    const F2Matrix form = F2Matrix::reduce(gram);
    V00Result res;
    res.v0 = f2_radical(form);
    res.v00 = v00_basis(res.v0, [&](const F2Vector& v) { return delta.contains(v); }, some_delta);
    if (res.v00.size() == res.v0.size()) return res;

    // U G V = D; j^{-1}(2^k V*) is spanned by V e_i scaled by 2^k / gcd(d_i, 2^k),
    // and only the unscaled columns survive mod 2.
    const auto snf = smith_decompose<BigInt>(gram.cast<BigInt>());
    auto phi_nonzero = [&](int k) {
        const BigInt pow = BigInt(1) << k;
        for (std::size_t i = 0; i < gram.cols(); ++i) {
            const BigInt d = i < snf.diagonal.rows() ? snf.diagonal(i, i) : BigInt(0);
            if (d != 0 && d % pow != 0) continue;
            const F2Vector col = F2Vector::from_ints(snf.right.column(i));
            if (!f2_in_span(res.v00, col)) return true;
        }
        return false;
    };
    int k = 0;
    while (k < k_max && phi_nonzero(k + 1)) ++k;
    if (k == k_max && phi_nonzero(k_max + 1)) throw CapExceeded("k0 exceeds k_max = " + std::to_string(k_max));
    res.k0 = k;
    return res;
}

std::string to_string(Family f) {
    switch (f) {
        case Family::SpSharp: return "Sp#";
        case Family::OSharp0: return "O#_0";
        case Family::OSharp1: return "O#_1";
        case Family::OSharp: return "O#";
        case Family::AEven: return "A^ev";
        case Family::AOdd: return "A^odd";
        case Family::APrime: return "A'";
    }
    return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
    for (auto f : {Family::SpSharp, Family::OSharp0, Family::OSharp1, Family::OSharp, Family::AEven, Family::AOdd,
                   Family::APrime})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

std::string VanishingLatticeDescriptor::notation() const {
    std::ostringstream os;
    os << to_string(family) << "(";
    std::map<std::int64_t, std::size_t> runs;
    for (auto d : divisors) ++runs[d];
    bool first = true;
    for (auto [d, count] : runs) {
        if (!first) os << ",";
        first = false;
        os << d;
        if (count > 1) os << "^" << count;
    }
    os << ";" << p;
    if (k0) os << ";" << *k0;
    os << ")";
    return os.str();
}

VanishingLatticeDescriptor expected_descriptor(int n, int l, int g) {
    const auto params = SpectralParams::make(n, l, g);
    VanishingLatticeDescriptor d;
    d.divisors = predicted_polarization_type(params).divisors;
    d.p = 0;
    d.k0 = 0;
    d.arf = predicted_arf(n, l);
    d.hypothesis_ok = params.hypothesis_ok();
    if (n == 2)
        d.family = Family::APrime;
    else if (d.arf == ArfValue::Absent)
        d.family = Family::SpSharp;
    else
        d.family = d.arf == ArfValue::One ? Family::OSharp1 : Family::OSharp0;
    return d;
}

std::vector<F2Vector> reduced_generators(const SpectralLatticeSystem& sys) {
    std::vector<F2Vector> out;
    for (const auto& s : sys.sp_generators) out.push_back(F2Vector::from_ints(s));
    return out;
}

std::vector<IntMatrix> gl_generators(const SpectralLatticeSystem& sys) {
    std::vector<IntMatrix> out;
    for (const auto& s : sys.sp_generators) out.push_back(transvection_matrix(sys.lattice_S.gram, sys.inclusion.apply(s)));
    return out;
}

Classification classify(int n, int l, int g, const ClassifyOptions& options) {
    const auto params = SpectralParams::make(n, l, g);
    const auto sys = build(params);
    Classification c;
    c.expected = expected_descriptor(n, l, g);
    c.mu = sys.rank_P();
    auto& d = c.descriptor;
    d.hypothesis_ok = params.hypothesis_ok();

    const auto type = polarization_type(sys);
    d.divisors = type.divisors;
    d.p = type.nullity;
    if (type != predicted_polarization_type(params)) c.failures.push_back("polarization type differs from prediction");
    if (static_cast<std::int64_t>(c.mu) != params.prym_rank()) c.failures.push_back("rank of Lambda_P differs from mu");
    if (!mod2_nullspace_check(sys).ok) c.failures.push_back("mod-2 null space check failed");

    const F2Matrix form = F2Matrix::reduce(sys.lattice_P.gram);
    const auto gens = reduced_generators(sys);
    c.invariant_q = solve_invariant_quadratic(form, gens);
    d.arf = c.invariant_q ? arf(*c.invariant_q) : ArfValue::Absent;
    if (n == 2) {
        d.family = Family::APrime;
    } else if (!c.invariant_q) {
        d.family = Family::SpSharp;
    } else {
        d.family = d.arf == ArfValue::Zero ? Family::OSharp0 : d.arf == ArfValue::One ? Family::OSharp1 : Family::OSharp;
    }
    if (n >= 3 && params.k() >= 6) {
        c.e6 = e6_witness(sys);
        if (!c.e6->passed) c.failures.push_back("E6 sextuple does not realize the E6 diagram");
    }

    const bool run_orbit = (options.orbit || n == 2) && c.mu <= std::min(options.orbit_cap, kMaxOrbitDim);
    if (n == 2 && !run_orbit) throw CapExceeded("A' classification needs the orbit, mu = " + std::to_string(c.mu));
    std::optional<OrbitResult> orbit;
    if (run_orbit) {
        orbit = orbit_closure_f2(form, gens, options.orbit_cap);
        auto& oc = c.orbit;
        oc.ran = true;
        oc.delta_size = orbit->size();
        oc.axioms = verify_axioms(form, *orbit, gens);
        if (!oc.axioms.ok()) c.failures.push_back("vanishing lattice axioms fail for the orbit");
        if (n == 2) {
            oc.computed = delta_invariants(form, *orbit, gens);
            if (l >= 2) {
                const auto ref = a_prime_reference(l - 1, 2 * g);
                const auto ref_orbit = orbit_closure_f2(ref.form, ref.basis_images, options.orbit_cap);
                oc.reference = delta_invariants(ref.form, ref_orbit, ref.basis_images);
                oc.matches_prediction = oc.computed == oc.reference;
            }
        } else if (c.invariant_q) {
            oc.matches_prediction = orbit->delta == quadratic_level_set(*c.invariant_q, options.orbit_cap).delta;
        } else {
            oc.matches_prediction = orbit->delta == nonradical_set(form, options.orbit_cap).delta;
        }
        if (!oc.matches_prediction) c.failures.push_back("orbit does not match the predicted Delta-bar");
    }

    const Mod2DeltaOracle oracle = n == 2 ? Mod2DeltaOracle::enumerated(*orbit)
                                   : c.invariant_q ? Mod2DeltaOracle::orthogonal(*c.invariant_q)
                                                   : Mod2DeltaOracle::symplectic(form);
    d.k0 = v00_and_k0(sys.lattice_P.gram, oracle, gens.front(), options.k_max).k0;
    return c;
}

}  // namespace vanlat
