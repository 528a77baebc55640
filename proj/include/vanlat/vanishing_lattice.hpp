#pragma once

#include "vanlat/f2_quadratic.hpp"
#include "vanlat/orbit.hpp"
#include "vanlat/smith.hpp"
#include "vanlat/spectral_lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vanlat {

/// Matrix of x -> x + <a, x> a for <a, x> = a^T G x.
IntMatrix transvection_matrix(const IntMatrix& gram, std::span<const std::int64_t> a);

/// x + <a, x> a without forming the matrix.
template <class T>
std::vector<T> transvect(const Matrix<T>& gram, std::span<const T> a, std::span<const T> x) {
    if (a.size() != gram.rows() || x.size() != gram.rows()) throw ShapeError("transvect: length mismatch");
    const T c = gram.pair(a, x);
    std::vector<T> y(x.begin(), x.end());
    if (c == 0) return y;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (a[i] != 0) y[i] = exact_add(y[i], exact_mul(c, a[i]));
    return y;
}

struct AxiomReport {
    bool generators_in_delta = false;
    /// T_d(x) in delta for all d, x in delta (only for generators d when the
    /// set is too large for the exhaustive check).
    bool closed = false;
    bool closure_exhaustive = false;
    /// Delta is one orbit: reachable from its smallest element.
    bool transitive = false;
    bool spans = false;
    bool unimodular_pair = false;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> closure_defect;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness_pair;

    bool orbit_axiom() const { return generators_in_delta && closed && transitive; }
    bool ok() const { return orbit_axiom() && spans && unimodular_pair; }
};

inline constexpr std::uint64_t kDefaultClosureBudget = std::uint64_t{1} << 31;

AxiomReport verify_axioms(const F2Matrix& form, const OrbitResult& delta, std::span<const F2Vector> generators,
                          std::uint64_t closure_budget = kDefaultClosureBudget);

/// Mod-2 description of Delta used for membership queries.
class Mod2DeltaOracle {
public:
    /// {v outside the radical : q(v) = 1}.
    static Mod2DeltaOracle orthogonal(const F2QuadraticFunction& q);
    /// Every vector outside the radical.
    static Mod2DeltaOracle symplectic(const F2Matrix& form);
    static Mod2DeltaOracle enumerated(OrbitResult set);

    bool contains(const F2Vector& v) const;
    std::size_t dim() const noexcept { return form_.cols(); }
    const F2Matrix& form() const noexcept { return form_; }

private:
    F2Matrix form_;
    std::optional<F2QuadraticFunction> q_;
    std::optional<OrbitResult> set_;
};

/// gcd of <x, e_i> over the basis is 1 and x mod 2 lies in Delta-bar.
template <class T>
bool delta_membership_z(const Matrix<T>& gram, std::span<const T> x, const Mod2DeltaOracle& oracle) {
    const std::vector<T> gx = gram.apply(x);
    T g(0);
    for (const auto& v : gx) {
        T a = exact_abs(v), b = g;
        while (b != 0) {
            T r = a % b;
            a = b;
            b = r;
        }
        g = a;
    }
    if (g != 1) return false;
    return oracle.contains(F2Vector::from_ints(x));
}

bool delta_membership_z(const SpectralLatticeSystem& sys, std::span<const std::int64_t> x, const Mod2DeltaOracle& oracle);

using Adjacency = std::vector<std::vector<std::size_t>>;

enum class DiagramFamily { Orthogonal1, Orthogonal2, Orthogonal3, AEven, AOdd };

std::string to_string(DiagramFamily f);

struct DiagramSpec {
    DiagramFamily family = DiagramFamily::AEven;
    int r = 0;
    int p = 0;
    /// Sorted neighbour lists on vertices 0 .. 2r+p-1 (vertex i is label i+1).
    Adjacency adjacency;
};

/// Edge between u and v iff <u, v> = 1.
Adjacency intersection_graph(const F2Matrix& form, std::span<const F2Vector> elements);

/// GF(2) form whose Gram matrix is the adjacency matrix.
F2Matrix form_from_graph(const Adjacency& graph);

std::size_t edge_count(const Adjacency& graph);

/// The E6 Dynkin diagram up to relabelling: a tree with one branch vertex of
/// degree 3 whose arms have lengths 1, 2, 2.
bool is_e6(const Adjacency& graph);

struct E6Witness {
    std::vector<std::string> labels;
    std::vector<IntVector> elements;  // Lambda_P coordinates
    std::vector<F2Vector> reduced;
    Adjacency graph;
    bool passed = false;
};

/// Sextuple t c_3, t c_1, c_2 + t c_2, c_3, c_4, c_5; nullopt for n = 2.
/// Throws std::invalid_argument when nl < 6.
std::optional<E6Witness> e6_witness(const SpectralLatticeSystem& sys);

struct CanonicalDiagram {
    DiagramSpec spec;
    F2QuadraticFunction q;  // all-ones on the vertices
    ArfValue arf = ArfValue::Undefined;
    ArfValue expected = ArfValue::Undefined;

    bool matches() const { return arf == expected; }
};

/// Throws std::invalid_argument for combinations outside the catalog.
DiagramSpec diagram_spec(DiagramFamily family, int r, int p);
/// Arf invariant of q_B stated for the family.
ArfValue catalog_arf(DiagramFamily family, int r);
CanonicalDiagram canonical_diagram(DiagramFamily family, int r, int p);

/// The quotient of A^odd(2r, p+1) by e_1 + e_3 + ... + e_{2r+1}, as a form on
/// 2r + p coordinates together with the images of the diagram basis.
struct APrimeReference {
    int r = 0;
    int p = 0;
    F2Matrix form;
    std::vector<F2Vector> basis_images;
};

APrimeReference a_prime_reference(int r, int p);

/// Invariants compared between a Delta-bar and a reference.
struct DeltaInvariants {
    std::size_t size = 0;
    std::size_t radical_dim = 0;
    std::size_t v00_dim = 0;
    bool has_invariant_quadratic = false;

    friend bool operator==(const DeltaInvariants&, const DeltaInvariants&) = default;
};

DeltaInvariants delta_invariants(const F2Matrix& form, const OrbitResult& delta, std::span<const F2Vector> generators);

inline constexpr int kDefaultKMax = 8;

struct V00Result {
    std::vector<F2Vector> v0;   // radical basis
    std::vector<F2Vector> v00;  // basis of V_00
    int k0 = 0;
};

/// V_00 = {v in V_0 : v + d in Delta} for any d in Delta, and
/// k0 = max {k : phi(j^{-1}(2^k V*)) != 0} (0 when V_00 = V_0).
/// Throws CapExceeded when phi stays nonzero past k_max or the radical is too big to enumerate.
V00Result v00_and_k0(const IntMatrix& gram, const Mod2DeltaOracle& delta, const F2Vector& some_delta,
                     int k_max = kDefaultKMax);

enum class Family { SpSharp, OSharp0, OSharp1, OSharp, AEven, AOdd, APrime };

std::string to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct VanishingLatticeDescriptor {
    Family family = Family::SpSharp;
    std::vector<std::int64_t> divisors;
    std::size_t p = 0;
    std::optional<int> k0;
    ArfValue arf = ArfValue::Absent;
    bool hypothesis_ok = true;

    /// Like "O#_0(1^6,3^2;0)".
    std::string notation() const;
    /// family, divisors, p, k0 and arf agree.
    bool same_type(const VanishingLatticeDescriptor& o) const {
        return family == o.family && divisors == o.divisors && p == o.p && k0 == o.k0 && arf == o.arf;
    }
};

VanishingLatticeDescriptor expected_descriptor(int n, int l, int g);

struct ClassifyOptions {
    bool orbit = true;  // BFS verification when mu <= orbit_cap
    std::size_t orbit_cap = kDefaultOrbitCap;
    int k_max = kDefaultKMax;
};

struct OrbitCheck {
    bool ran = false;
    std::size_t delta_size = 0;
    AxiomReport axioms;
    /// Exact set comparison (orthogonal and symplectic cases) or invariant
    /// comparison against the A' reference (n = 2).
    bool matches_prediction = false;
    std::optional<DeltaInvariants> computed;
    std::optional<DeltaInvariants> reference;
};

struct Classification {
    VanishingLatticeDescriptor descriptor;
    VanishingLatticeDescriptor expected;
    std::size_t mu = 0;
    std::optional<F2QuadraticFunction> invariant_q;
    std::optional<E6Witness> e6;
    OrbitCheck orbit;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty() && descriptor.same_type(expected); }
};

/// Builds the system and runs the decision procedure; failures lists any
/// internal check that did not hold.
Classification classify(int n, int l, int g, const ClassifyOptions& options = {});

/// Transvections on Lambda_S for every element of S_P.
std::vector<IntMatrix> gl_generators(const SpectralLatticeSystem& sys);

/// S_P reduced mod 2.
std::vector<F2Vector> reduced_generators(const SpectralLatticeSystem& sys);

}  // namespace vanlat
