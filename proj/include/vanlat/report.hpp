#pragma once

#include "vanlat/spectral_lattice.hpp"
#include "vanlat/vanishing_lattice.hpp"

#include "json.hpp"

namespace vanlat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const IntMatrix& m);
Json to_json(ArfValue a);
/// Descriptor fields plus mu and delta_size (null when no orbit was enumerated).
Json to_json(const VanishingLatticeDescriptor& d, std::size_t mu, std::optional<std::size_t> delta_size);
Json to_json(const SpectralLatticeSystem& sys);
Json to_json(const AxiomReport& a);

}  // namespace vanlat
