#pragma once

#include "vanlat/f2.hpp"
#include "vanlat/f2_quadratic.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace vanlat {

inline constexpr std::size_t kDefaultOrbitCap = 24;
/// Hard ceiling on the orbit bitmap (2^32 bits).
inline constexpr std::size_t kMaxOrbitDim = 32;

/// An enumerated subset of GF(2)^dim, stored as sorted packed bit patterns.
struct OrbitResult {
    std::size_t dim = 0;
    std::vector<std::uint64_t> delta;
    std::size_t span_rank = 0;
    /// Smallest d1 (numerically) with a partner, then its smallest partner d2, <d1, d2> = 1.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness_pair;

    std::size_t size() const noexcept { return delta.size(); }
    bool contains(std::uint64_t x) const;
    bool contains(const F2Vector& x) const { return contains(x.to_bits()); }
    std::vector<F2Vector> vectors() const;

    friend bool operator==(const OrbitResult&, const OrbitResult&) = default;
};

/// Closure of S under T_s for s in the set; computed as the orbit of S under
/// the group generated by {T_s : s in S}. Throws CapExceeded above cap.
OrbitResult orbit_closure_f2(const F2Matrix& form, std::span<const F2Vector> generators,
                             std::size_t cap = kDefaultOrbitCap);
OrbitResult orbit_closure_f2_serial(const F2Matrix& form, std::span<const F2Vector> generators,
                                    std::size_t cap = kDefaultOrbitCap);

/// Orbit of the seed set under the group generated by {T_s : s in generators}.
OrbitResult orbit_of(const F2Matrix& form, std::span<const F2Vector> seeds, std::span<const F2Vector> generators,
                     std::size_t cap = kDefaultOrbitCap);

/// Whether T_d(x) stays in the set for every d and x in it. The serial version
/// is the reference; both return the first failing (d, x) in numeric order.
std::optional<std::pair<std::uint64_t, std::uint64_t>> self_transvection_defect(const F2Matrix& form,
                                                                               const OrbitResult& set);
std::optional<std::pair<std::uint64_t, std::uint64_t>> self_transvection_defect_serial(const F2Matrix& form,
                                                                                      const OrbitResult& set);

/// Rank of packed vectors of dimension <= 64.
std::size_t packed_rank(std::span<const std::uint64_t> vectors);

/// {v not in the radical : q(v) = 1}, by enumeration.
OrbitResult quadratic_level_set(const F2QuadraticFunction& q, std::size_t cap = kDefaultOrbitCap);
/// Every vector outside the radical, by enumeration.
OrbitResult nonradical_set(const F2Matrix& form, std::size_t cap = kDefaultOrbitCap);

}  // namespace vanlat
