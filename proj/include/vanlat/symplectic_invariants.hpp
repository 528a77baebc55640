#pragma once

#include "vanlat/f2_quadratic.hpp"
#include "vanlat/fp.hpp"
#include "vanlat/spectral_lattice.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vanlat {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// k-subsets of {0, ..., dim-1} in colexicographic order.
std::vector<std::vector<std::size_t>> k_subsets_colex(std::size_t dim, std::size_t k);
/// Position of a strictly increasing subset in colex order.
std::uint64_t colex_rank(std::span<const std::size_t> subset);

/// Element of the k-th exterior power of a dim-dimensional space, coefficients
/// indexed by k-subsets in colex order. modulus 0 means integer coefficients.
struct ExteriorVector {
    std::uint32_t modulus = 0;
    std::size_t dim = 0;
    std::size_t k = 0;
    std::vector<std::int64_t> coeffs;

    static ExteriorVector zero(std::uint32_t modulus, std::size_t dim, std::size_t k);
    static ExteriorVector basis(std::uint32_t modulus, std::size_t dim, std::span<const std::size_t> subset);

    /// Coefficients as a GF(p) vector (modulus must be an odd prime).
    FpVector to_fp() const;
    friend bool operator==(const ExteriorVector&, const ExteriorVector&) = default;
};

ExteriorVector wedge(const ExteriorVector& a, const ExteriorVector& b);
ExteriorVector scale(const ExteriorVector& a, std::int64_t c);

/// alpha_{2m} = sum over i_1 < ... < i_m of (e_{i_1} ^ f_{i_1}) ^ ... ^ (e_{i_m} ^ f_{i_m}),
/// with e_i, f_i the coordinates 2i, 2i+1. Throws std::invalid_argument for m > v.
ExteriorVector alpha_form(std::uint32_t modulus, std::size_t v, std::size_t m);

/// sum_{a<b} G_ab e_a ^ e_b for an alternating Gram matrix G.
ExteriorVector two_form(std::uint32_t modulus, const IntMatrix& gram);
/// omega^m by repeated wedge (omega^0 = 1).
ExteriorVector power(const ExteriorVector& omega, std::size_t m);
/// omega^m / m! computed over the integers, then reduced by modulus.
ExteriorVector divided_power(const IntMatrix& gram, std::size_t m, std::uint32_t modulus);

/// Matrix of the induced map on the k-th exterior power: entry (I, J) is det M[I, J].
FpMatrix exterior_action(const FpMatrix& m, std::size_t k);

inline constexpr std::uint64_t kDefaultDirectionCap = 100000;
inline constexpr std::uint64_t kDefaultExteriorDimCap = 4000;

/// Symplectic transvection x -> x + <a, x> a on GF(p)^{2v} with the standard form.
FpMatrix fp_symplectic_transvection(std::uint32_t p, std::span<const std::uint32_t> a);

/// Common fixed space in the k-th exterior power of GF(p)^{2v} of all
/// transvections T_a, a != 0. Throws CapExceeded when p^{2v} > cap.
std::vector<FpVector> invariant_subspace(std::uint32_t p, std::size_t v, std::size_t k,
                                         std::uint64_t direction_cap = kDefaultDirectionCap);
/// Single-threaded reference.
std::vector<FpVector> invariant_subspace_serial(std::uint32_t p, std::size_t v, std::size_t k,
                                                std::uint64_t direction_cap = kDefaultDirectionCap);

/// Matrices of the monodromy generators T_s, s in S_P, acting on
/// V = Lambda_P^* (x) GF(p) by (T_s^{-1})^T.
std::vector<FpMatrix> dual_monodromy_generators(const SpectralLatticeSystem& sys, std::uint32_t p);

/// Fixed space of the k-th exterior power of V under the generators above.
/// Throws std::invalid_argument if p is not an odd prime or divides n, and
/// CapExceeded when binomial(mu, k) exceeds dim_cap.
std::vector<FpVector> monodromy_invariant_subspace(const SpectralLatticeSystem& sys, std::uint32_t p, std::size_t k,
                                                   std::uint64_t dim_cap = kDefaultExteriorDimCap);

/// omega^m == m! alpha_{2m} over the integers, omega = sum e_i ^ f_i.
bool omega_power_identity(std::size_t v, std::size_t m);

}  // namespace vanlat
