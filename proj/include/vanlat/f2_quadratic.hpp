#pragma once

#include "vanlat/f2.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace vanlat {

/// Raised when an enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ArfValue { Zero, One, Undefined, Absent };

std::string to_string(ArfValue a);

/// Quadratic function q on GF(2)^dim refining an alternating form:
/// q(x + y) = q(x) + q(y) + <x, y>, determined by its values on the basis.
class F2QuadraticFunction {
public:
    F2QuadraticFunction() = default;
    /// Throws ShapeError if the form is not alternating or sizes disagree.
    F2QuadraticFunction(F2Matrix form, F2Vector basis_values);

    std::size_t dim() const noexcept { return values_.dim(); }
    const F2Matrix& form() const noexcept { return form_; }
    const F2Vector& basis_values() const noexcept { return values_; }

    /// sum x_i q(b_i) + sum_{i<j} x_i x_j <b_i, b_j>
    bool operator()(const F2Vector& x) const;
    /// Same, for dim <= 64 with packed coordinates.
    bool eval_bits(std::uint64_t x) const;

private:
    F2Matrix form_;
    F2Vector values_;
    std::vector<F2Vector> upper_;            // strictly upper-triangular part of the form
    std::vector<std::uint64_t> upper_bits_;  // same, packed, when dim <= 64
};

F2QuadraticFunction q_from_basis_values(const F2Matrix& form, const F2Vector& values);

/// Arf invariant over a symplectic basis of V / V_0; Undefined when q does
/// not vanish on the radical V_0.
ArfValue arf(const F2QuadraticFunction& q);

inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Exhaustive count of {x : q(x) = 0}. Throws CapExceeded above the cap.
std::uint64_t count_zeros(const F2QuadraticFunction& q, std::size_t cap = kDefaultEnumerationCap);
/// Single-threaded reference for count_zeros.
std::uint64_t count_zeros_serial(const F2QuadraticFunction& q, std::size_t cap = kDefaultEnumerationCap);

/// A quadratic function with q(s) = 1 for every s in generators, or nullopt
/// when the affine system in the basis values is infeasible.
std::optional<F2QuadraticFunction> solve_invariant_quadratic(const F2Matrix& form, std::span<const F2Vector> generators);

/// Closed-form Arf invariant of the monodromy-invariant quadratic function:
/// n = 2m+1: m(m-1)/2 * l mod 2; n = 2m, l even: m l/2 mod 2; n even, l odd: Absent.
ArfValue predicted_arf(int n, int l);

/// Parity of the spin structure pulled back to the cyclic cover:
/// sum_{j=1..m} j l = (m(m+1)/2) l mod 2 for n = 2m+1, and as predicted_arf for even n.
ArfValue spin_parity_arf(int n, int l);

}  // namespace vanlat
