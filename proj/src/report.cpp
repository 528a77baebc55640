#include "vanlat/report.hpp"

namespace vanlat {

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(ArfValue a) {
    switch (a) {
        case ArfValue::Zero: return 0;
        case ArfValue::One: return 1;
        case ArfValue::Undefined: return "UNDEFINED";
        case ArfValue::Absent: return "ABSENT";
    }
    return nullptr;
}

Json to_json(const VanishingLatticeDescriptor& d, std::size_t mu, std::optional<std::size_t> delta_size) {
    Json j;
    j["family"] = to_string(d.family);
    j["divisors"] = d.divisors;
    j["p"] = d.p;
    j["k0"] = d.k0 ? Json(*d.k0) : Json(nullptr);
    j["arf"] = to_json(d.arf);
    j["hypothesis_ok"] = d.hypothesis_ok;
    j["mu"] = mu;
    j["delta_size"] = delta_size ? Json(*delta_size) : Json(nullptr);
    return j;
}

namespace {

Json lattice_json(const PolarizedLattice& l) {
    Json j;
    j["rank"] = l.rank();
    j["basis_labels"] = l.labels;
    j["gram"] = to_json(l.gram);
    return j;
}

}  // namespace

Json to_json(const SpectralLatticeSystem& sys) {
    Json j;
    j["params"] = {{"n", sys.params.n}, {"l", sys.params.l}, {"g", sys.params.g}, {"k", sys.params.k()}};
    j["hypothesis_ok"] = sys.params.hypothesis_ok();
    j["lattices"] = {{"S0", lattice_json(sys.lattice_S0)},
                     {"P1", lattice_json(sys.lattice_P1)},
                     {"P", lattice_json(sys.lattice_P)},
                     {"S", lattice_json(sys.lattice_S)}};
    j["gram_sigma"] = to_json(sys.gram_sigma);
    j["t_on_P"] = to_json(sys.t_on_P);
    j["t_on_S"] = to_json(sys.t_on_S);
    j["inclusion"] = to_json(sys.inclusion);
    j["pushforward"] = to_json(sys.pushforward);
    j["pullback"] = to_json(sys.pullback);
    Json gens = Json::array();
    for (std::size_t i = 0; i < sys.sp_generators.size(); ++i)
        gens.push_back({{"label", sys.sp_labels[i]}, {"coordinates", sys.sp_generators[i]}});
    j["sp_generators"] = std::move(gens);
    Json boundary = Json::array();
    for (int i = 1; i < sys.boundary.k; ++i)
        boundary.push_back({{"i", i},
                            {"polynomial", sys.boundary.polynomial(i)},
                            {"coefficients", sys.boundary.coefficients[static_cast<std::size_t>(i - 1)]}});
    j["boundary"] = std::move(boundary);
    return j;
}

Json to_json(const AxiomReport& a) {
    Json j;
    j["generators_in_delta"] = a.generators_in_delta;
    j["closed"] = a.closed;
    j["closure_exhaustive"] = a.closure_exhaustive;
    j["transitive"] = a.transitive;
    j["spans"] = a.spans;
    j["unimodular_pair"] = a.unimodular_pair;
    if (a.witness_pair) j["witness_pair"] = {a.witness_pair->first, a.witness_pair->second};
    if (a.closure_defect) j["closure_defect"] = {a.closure_defect->first, a.closure_defect->second};
    return j;
}

}  // namespace vanlat
