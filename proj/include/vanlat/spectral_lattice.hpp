#pragma once

#include "vanlat/exact_linalg.hpp"

#include <string>
#include <vector>

namespace vanlat {

/// Parameters (n, l, g) of a cyclic spectral curve: rank n, twist degree l,
/// base genus g. k = n l branch points.
struct SpectralParams {
    int n = 2;
    int l = 1;
    int g = 2;

    /// Throws std::invalid_argument unless n >= 2, l >= 1, g >= 2.
    static SpectralParams make(int n, int l, int g);

    int k() const noexcept { return n * l; }
    /// deg L > 2g - 2, or deg L = 2g - 2 (canonical twist).
    bool hypothesis_ok() const noexcept { return l >= 2 * g - 2; }
    bool canonical() const noexcept { return l == 2 * g - 2; }
    /// Rank of the Prym lattice, (n-1)(nl + 2g - 2).
    std::int64_t prym_rank() const noexcept { return std::int64_t{n - 1} * (std::int64_t{n} * l + 2 * g - 2); }

    friend bool operator==(const SpectralParams&, const SpectralParams&) = default;
};

/// Free lattice with an alternating Gram matrix and labelled basis.
struct PolarizedLattice {
    IntMatrix gram;
    std::vector<std::string> labels;

    std::size_t rank() const noexcept { return labels.size(); }
};

/// <t^a c_i, t^b c_j> for the cycles c_1..c_{k-1} over the branch cut.
/// Throws std::out_of_range for i, j < 1 (or beyond max_index when given).
int pair_c(int i, int a, int j, int b, int n, int max_index = 0);

/// The boundary relation d = sum_i P_i(t) c_i, i = 1..k-1, with
/// P_i = 1 + t + ... + t^{(i-1) mod n}.
struct BoundaryRelation {
    int n = 0;
    int k = 0;
    /// coefficients[i-1][s] = coefficient of t^s in P_i, s = 0..n-1.
    std::vector<std::vector<int>> coefficients;

    /// Polynomial P_i rendered like "1+t+t^2".
    std::string polynomial(int i) const;
    /// Coefficient vectors with t c_i = -c_i applied when n = 2 (the module
    /// relation 1 + t = 0); identical to coefficients otherwise.
    std::vector<std::vector<int>> reduced_coefficients() const;
};

BoundaryRelation boundary_relation(int n, int k);

/// All lattices, maps and generators attached to (n, l, g).
///
/// Coordinates: Lambda_{S,0} has basis t^j c_i (2 <= i <= k-1, 0 <= j <= n-2),
/// ordered by (i, j). Lambda_{P,1} has basis (1-t) t^j x_u for x in {a, b},
/// ordered by (u, a before b, j). Lambda_P = Lambda_{S,0} + Lambda_{P,1} and
/// Lambda_S = Lambda_{S,0} + {t^j x_u : 0 <= j <= n-1} in the same pattern.
/// Lambda_Sigma has basis a_1, b_1, ..., a_g, b_g.
struct SpectralLatticeSystem {
    SpectralParams params;
    PolarizedLattice lattice_S0;
    PolarizedLattice lattice_P1;
    PolarizedLattice lattice_P;
    PolarizedLattice lattice_S;
    IntMatrix gram_sigma;
    IntMatrix t_on_P;
    IntMatrix t_on_S;
    IntMatrix inclusion;    // Lambda_P -> Lambda_S
    IntMatrix pushforward;  // Lambda_S -> Lambda_Sigma
    IntMatrix pullback;     // Lambda_Sigma -> Lambda_S
    std::vector<IntVector> sp_generators;  // Lambda_P coordinates
    std::vector<std::string> sp_labels;
    BoundaryRelation boundary;

    std::size_t rank_S0() const noexcept { return lattice_S0.rank(); }
    std::size_t rank_P() const noexcept { return lattice_P.rank(); }
    std::size_t rank_S() const noexcept { return lattice_S.rank(); }

    /// Lambda_P coordinates of t^e c_i for any 1 <= i <= k-1 and integer e.
    IntVector cycle(int i, int e) const;
    /// Lambda_P coordinates of (1-t) t^e x_u, x = 'a' or 'b', 1 <= u <= g.
    IntVector prym_sigma_cycle(char x, int u, int e) const;
    /// Pairing on Lambda_P.
    std::int64_t pair_P(const IntVector& x, const IntVector& y) const { return lattice_P.gram.pair(x, y); }
};

SpectralLatticeSystem build(const SpectralParams& params);

/// alternating_type of the Lambda_P Gram matrix.
AlternatingType polarization_type(const SpectralLatticeSystem& sys);

/// 1 repeated (n-2)(g-1) + n(n-1)l/2 - 1 times followed by n repeated g times.
AlternatingType predicted_polarization_type(const SpectralParams& params);

std::int64_t prym_rank(int n, int l, int g);

struct Mod2NullspaceReport {
    std::size_t radical_dim = 0;
    /// n even: radical equals the mod-2 image of the pullback.
    bool radical_is_pullback = false;
    /// n odd: Lambda_S[2] = Lambda_P[2] + pullback image, orthogonally.
    bool orthogonal_splitting = false;
    bool ok = false;
};

Mod2NullspaceReport mod2_nullspace_check(const SpectralLatticeSystem& sys);

/// Lambda_P coordinates (mod 2) of the pullback of each Lambda_Sigma basis
/// vector; only meaningful for even n, where these lie in Lambda_P[2].
std::vector<F2Vector> pullback_mod2_in_prym(const SpectralLatticeSystem& sys);

/// The boundary relation expanded over H_1 coordinates t^j c_i (1 <= i <= k-1,
/// 0 <= j <= n-1, index (i-1)*n + j) and paired with every t^b c_j via pair_c.
/// Returns the largest absolute pairing (0 when the relation is in the radical).
std::int64_t boundary_pairing_defect(int n, int k);

}  // namespace vanlat
