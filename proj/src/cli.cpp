#include "vanlat/cli.hpp"

#include "vanlat/report.hpp"
#include "vanlat/symplectic_invariants.hpp"
#include "vanlat/vanishing_lattice.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace vanlat {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json header(const RunConfig& cfg) {
    Json j;
    j["tool"] = "vanlat";
    j["version"] = kToolVersion;
    j["command"] = cfg.command;
    Json params;
    if (cfg.n) params["n"] = cfg.n;
    if (cfg.l) params["l"] = cfg.l;
    if (cfg.g) params["g"] = cfg.g;
    if (cfg.p) params["p"] = *cfg.p;
    if (cfg.k) params["k"] = *cfg.k;
    if (cfg.sp) params["sp"] = *cfg.sp;
    params["orbit"] = cfg.orbit;
    j["params"] = params.is_null() ? Json::object() : params;
    j["caps"] = {{"orbit_cap", cfg.orbit_cap}, {"dim_cap", cfg.dim_cap}, {"k_max", cfg.k_max}};
    j["seed"] = cfg.seed;
    return j;
}

void require_system_params(const RunConfig& cfg) {
    // Throws std::invalid_argument with the offending parameter.
    (void)SpectralParams::make(cfg.n, cfg.l, cfg.g);
}

void check_orbit_cap(const RunConfig& cfg) {
    if (!cfg.orbit) return;
    const auto mu = static_cast<std::size_t>(SpectralParams::make(cfg.n, cfg.l, cfg.g).prym_rank());
    if (mu > cfg.orbit_cap || mu > kMaxOrbitDim)
        throw CapExceeded("orbit enumeration needs mu = " + std::to_string(mu) + " <= orbit cap " +
                          std::to_string(cfg.orbit_cap));
}

ClassifyOptions options_of(const RunConfig& cfg) {
    ClassifyOptions o;
    o.orbit = cfg.orbit;
    o.orbit_cap = cfg.orbit_cap;
    o.k_max = cfg.k_max;
    return o;
}

Json classification_json(const Classification& c) {
    Json j;
    const auto delta = c.orbit.ran ? std::optional<std::size_t>(c.orbit.delta_size) : std::nullopt;
    j["descriptor"] = to_json(c.descriptor, c.mu, delta);
    j["notation"] = c.descriptor.notation();
    j["expected"] = to_json(c.expected, c.mu, std::nullopt);
    j["expected_notation"] = c.expected.notation();
    j["match"] = c.descriptor.same_type(c.expected);
    if (c.e6) j["e6_certificate"] = {{"elements", c.e6->labels}, {"is_e6", c.e6->passed}};
    if (c.orbit.ran) {
        j["orbit"] = {{"delta_size", c.orbit.delta_size},
                      {"axioms", to_json(c.orbit.axioms)},
                      {"matches_prediction", c.orbit.matches_prediction}};
        if (c.orbit.computed)
            j["orbit"]["invariants"] = {{"size", c.orbit.computed->size},
                                        {"radical_dim", c.orbit.computed->radical_dim},
                                        {"v00_dim", c.orbit.computed->v00_dim},
                                        {"has_invariant_quadratic", c.orbit.computed->has_invariant_quadratic}};
        if (c.orbit.reference)
            j["orbit"]["a_prime_reference"] = {{"size", c.orbit.reference->size},
                                               {"radical_dim", c.orbit.reference->radical_dim},
                                               {"v00_dim", c.orbit.reference->v00_dim},
                                               {"has_invariant_quadratic", c.orbit.reference->has_invariant_quadratic}};
    }
    j["failures"] = c.failures;
    return j;
}

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

bool all_entries(const IntMatrix& m, std::int64_t v) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != v) return false;
    return true;
}

IntMatrix matrix_power(const IntMatrix& m, int e) {
    IntMatrix r = IntMatrix::identity(m.rows());
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
}

/// Random words in the S_P transvections and their inverses, applied to c_1.
bool random_membership(const SpectralLatticeSystem& sys, const Mod2DeltaOracle& oracle, std::uint64_t seed, int words,
                       std::string& detail) {
    std::mt19937_64 rng(seed);
    const BigIntMatrix gram = sys.lattice_P.gram.cast<BigInt>();
    std::vector<BigIntVector> gens;
    for (const auto& s : sys.sp_generators) gens.emplace_back(s.begin(), s.end());
    const IntVector c1 = sys.cycle(1, 0);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> length(0, 20);
    for (int w = 0; w < words; ++w) {
        BigIntVector x(c1.begin(), c1.end());
        const int len = length(rng);
        for (int i = 0; i < len; ++i) {
            const auto& a = gens[pick(rng)];
            if (rng() & 1) {
                x = transvect<BigInt>(gram, a, x);
            } else {
                const BigInt c = gram.pair(a, x);
                for (std::size_t t = 0; t < x.size(); ++t) x[t] -= c * a[t];
            }
        }
        if (!delta_membership_z<BigInt>(gram, x, oracle)) {
            detail = "word " + std::to_string(w) + " left Delta";
            return false;
        }
    }
    detail = std::to_string(words) + " words";
    return true;
}

std::vector<Check> verify_suite(const RunConfig& cfg, Json& extra) {
    const auto params = SpectralParams::make(cfg.n, cfg.l, cfg.g);
    const auto sys = build(params);
    std::vector<Check> checks;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };

    add("gram_alternating", sys.lattice_P.gram.is_alternating() && sys.lattice_S.gram.is_alternating());
    add("rank_formula", static_cast<std::int64_t>(sys.rank_P()) == params.prym_rank(),
        "mu = " + std::to_string(sys.rank_P()));
    add("rank_S_minus_rank_P", sys.rank_S() - sys.rank_P() == static_cast<std::size_t>(2 * params.g));
    const IntMatrix tn_p = matrix_power(sys.t_on_P, params.n), tn_s = matrix_power(sys.t_on_S, params.n);
    add("t_order_n", tn_p == IntMatrix::identity(sys.rank_P()) && tn_s == IntMatrix::identity(sys.rank_S()));
    add("t_preserves_gram", sys.t_on_P.transpose() * sys.lattice_P.gram * sys.t_on_P == sys.lattice_P.gram &&
                                sys.t_on_S.transpose() * sys.lattice_S.gram * sys.t_on_S == sys.lattice_S.gram);
    add("inclusion_isometric", sys.inclusion.transpose() * sys.lattice_S.gram * sys.inclusion == sys.lattice_P.gram);
    add("boundary_pairs_to_zero", boundary_pairing_defect(params.n, params.k()) == 0);
    add("pushforward_kills_prym", all_entries(sys.pushforward * sys.inclusion, 0));
    const IntMatrix pp = sys.pushforward * sys.pullback;
    add("push_pull_is_n", pp == static_cast<std::int64_t>(params.n) * IntMatrix::identity(pp.rows()));
    const auto type = polarization_type(sys);
    add("polarization_type", type == predicted_polarization_type(params));
    add("mod2_null_space", mod2_nullspace_check(sys).ok);

    const F2Matrix form = F2Matrix::reduce(sys.lattice_P.gram);
    const auto gens = reduced_generators(sys);
    const auto q = solve_invariant_quadratic(form, gens);
    const ArfValue computed = q ? arf(*q) : ArfValue::Absent;
    add("arf_matches_closed_form", computed == predicted_arf(params.n, params.l),
        "computed " + to_string(computed) + ", closed form " + to_string(predicted_arf(params.n, params.l)));
    add("arf_matches_spin_parity", computed == spin_parity_arf(params.n, params.l));

    if (params.n >= 3 && params.k() >= 6) add("e6_certificate", e6_witness(sys)->passed);

    bool gl_ok = true;
    for (const auto& t : gl_generators(sys))
        gl_ok = gl_ok && t.transpose() * sys.lattice_S.gram * t == sys.lattice_S.gram &&
                sys.pushforward * t == sys.pushforward;
    add("gl_generators_compatible", gl_ok, std::to_string(sys.sp_generators.size()) + " transvections");

    bool catalog_ok = true;
    for (auto fam : {DiagramFamily::Orthogonal1, DiagramFamily::Orthogonal2, DiagramFamily::Orthogonal3,
                     DiagramFamily::AEven, DiagramFamily::AOdd})
        for (int r = 1; r <= 8; ++r)
            for (int p = 0; p <= 3; ++p) {
                try {
                    catalog_ok = catalog_ok && canonical_diagram(fam, r, p).matches();
                } catch (const std::invalid_argument&) {
                    // Combination outside the catalog.
                }
            }
    add("diagram_catalog", catalog_ok);

    const auto c = classify(cfg.n, cfg.l, cfg.g, options_of(cfg));
    add("classification", c.ok(), c.descriptor.notation() + " vs expected " + c.expected.notation());
    if (c.orbit.ran) {
        add("orbit_axioms", c.orbit.axioms.ok());
        add("orbit_matches_prediction", c.orbit.matches_prediction, "delta_size " + std::to_string(c.orbit.delta_size));
    }
    extra["classification"] = classification_json(c);

    std::optional<Mod2DeltaOracle> oracle;
    if (params.n > 2)
        oracle = q ? Mod2DeltaOracle::orthogonal(*q) : Mod2DeltaOracle::symplectic(form);
    else if (sys.rank_P() <= std::min(cfg.orbit_cap, kMaxOrbitDim))
        oracle = Mod2DeltaOracle::enumerated(orbit_closure_f2(form, gens, cfg.orbit_cap));
    if (oracle) {
        std::string detail;
        const bool words = random_membership(sys, *oracle, cfg.seed, 100, detail);
        IntVector two_c1 = sys.cycle(1, 0), three_c1 = sys.cycle(1, 0);
        for (auto& x : two_c1) x *= 2;
        for (auto& x : three_c1) x *= 3;
        bool counter = delta_membership_z(sys, sys.cycle(1, 0), *oracle) &&
                       !delta_membership_z(sys, two_c1, *oracle) && !delta_membership_z(sys, three_c1, *oracle);
        if (q && params.k() >= 4) {
            IntVector c13 = sys.cycle(1, 0);
            const IntVector c3 = sys.cycle(3, 0);
            for (std::size_t i = 0; i < c13.size(); ++i) c13[i] += c3[i];
            counter = counter && !delta_membership_z(sys, c13, *oracle);
        }
        add("integral_membership", words && counter, detail);
    }
    return checks;
}

int finish_json(const RunConfig& cfg, std::ostream& out, Json j, int code) {
    j["exit_code"] = code;
    if (cfg.json) out << j.dump(2) << '\n';
    return code;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    require_system_params(cfg);
    check_orbit_cap(cfg);
    const auto c = classify(cfg.n, cfg.l, cfg.g, options_of(cfg));
    const int code = c.ok() ? kExitOk : kExitMismatch;
    Json j = header(cfg);
    j.update(classification_json(c));
    if (!cfg.json) {
        out << "family      " << to_string(c.descriptor.family) << '\n'
            << "descriptor  " << c.descriptor.notation() << '\n'
            << "expected    " << c.expected.notation() << '\n'
            << "arf         " << to_string(c.descriptor.arf) << '\n'
            << "mu          " << c.mu << '\n';
        if (c.orbit.ran) out << "delta_size  " << c.orbit.delta_size << '\n';
        if (!c.descriptor.hypothesis_ok) out << "note        outside the l >= 2g-2 hypothesis\n";
        for (const auto& f : c.failures) out << "failure     " << f << '\n';
        out << (code == kExitOk ? "match" : "MISMATCH") << '\n';
    }
    return finish_json(cfg, out, std::move(j), code);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    require_system_params(cfg);
    check_orbit_cap(cfg);
    Json extra;
    const auto checks = verify_suite(cfg, extra);
    bool all = true;
    Json list = Json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!cfg.json) out << (c.passed ? "pass  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    }
    const int code = all ? kExitOk : kExitMismatch;
    Json j = header(cfg);
    j["checks"] = std::move(list);
    const auto& desc = extra["classification"]["descriptor"];
    j["delta_size"] = desc["delta_size"];
    j["classification"] = extra["classification"];
    return finish_json(cfg, out, std::move(j), code);
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.p) throw std::invalid_argument("invariants needs --p");
    const std::uint32_t p = *cfg.p;
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("--p must be an odd prime");
    Json j = header(cfg);
    Json rows = Json::array();
    std::vector<std::size_t> dims;
    bool pattern_ok = true;
    auto record = [&](std::size_t k, const std::vector<FpVector>& basis, const std::optional<FpVector>& target,
                      const std::string& name) {
        std::string generator = "none";
        if (basis.size() == 1 && target) generator = fp_proportional(basis[0], *target, p) ? name + "-proportional" : "other";
        const std::size_t expected = k % 2 == 0 ? 1 : 0;
        pattern_ok = pattern_ok && basis.size() == expected && (expected == 0 || generator != "other");
        dims.push_back(basis.size());
        rows.push_back({{"p", p}, {"k", k}, {"dim_fixed", basis.size()}, {"generator", generator}});
        if (!cfg.json) out << "k=" << k << "  dim_fixed=" << basis.size() << "  generator=" << generator << '\n';
    };
    if (cfg.sp) {
        const std::size_t v = *cfg.sp;
        if (v == 0) throw std::invalid_argument("--sp must be positive");
        const std::size_t lo = cfg.k ? *cfg.k : 0, hi = cfg.k ? *cfg.k : 2 * v;
        for (std::size_t k = lo; k <= hi; ++k) {
            const auto basis = invariant_subspace(p, v, k);
            std::optional<FpVector> target;
            if (k % 2 == 0 && k <= 2 * v) target = alpha_form(p, v, k / 2).to_fp();
            record(k, basis, target, "alpha_" + std::to_string(k));
        }
        if (cfg.k && *cfg.k > 2 * v) pattern_ok = dims.back() == 0;
    } else {
        require_system_params(cfg);
        const auto sys = build(SpectralParams::make(cfg.n, cfg.l, cfg.g));
        if (sys.params.n % static_cast<int>(p) == 0) throw std::invalid_argument("p divides n");
        const std::size_t mu = sys.rank_P();
        const std::size_t lo = cfg.k ? *cfg.k : 0, hi = cfg.k ? *cfg.k : mu;
        for (std::size_t k = lo; k <= hi; ++k) {
            const auto basis = monodromy_invariant_subspace(sys, p, k, cfg.dim_cap);
            std::optional<FpVector> target;
            if (k % 2 == 0 && k <= mu) target = divided_power(sys.lattice_P.gram, k / 2, p).to_fp();
            record(k, basis, target, "omega^" + std::to_string(k / 2));
        }
    }
    j["dims"] = dims;
    j["results"] = std::move(rows);
    if (!cfg.json) {
        out << "dims [";
        for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
        out << "]\n";
    }
    return finish_json(cfg, out, std::move(j), pattern_ok ? kExitOk : kExitMismatch);
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
    require_system_params(cfg);
    if (cfg.out_dir.empty()) throw std::invalid_argument("export needs --out <dir>");
    const auto sys = build(SpectralParams::make(cfg.n, cfg.l, cfg.g));
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
    Json j = header(cfg);
    j["system"] = to_json(sys);
    write_file(dir / "system.json", j.dump(2) + "\n");
    const std::pair<const char*, const IntMatrix*> mats[] = {
        {"gram_S0.txt", &sys.lattice_S0.gram}, {"gram_P1.txt", &sys.lattice_P1.gram}, {"gram_P.txt", &sys.lattice_P.gram},
        {"gram_S.txt", &sys.lattice_S.gram},   {"t_P.txt", &sys.t_on_P},               {"t_S.txt", &sys.t_on_S}};
    Json files = Json::array({"system.json"});
    for (const auto& [name, m] : mats) {
        write_file(dir / name, matrix_to_text(*m));
        files.push_back(name);
    }
    if (!cfg.json) {
        out << "wrote " << files.size() << " files to " << dir.string() << '\n';
    } else {
        Json summary = header(cfg);
        summary["files"] = files;
        summary["rank_P"] = sys.rank_P();
        summary["sp_generators"] = sys.sp_generators.size();
        return finish_json(cfg, out, std::move(summary), kExitOk);
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vanishing lattices of cyclic spectral curves"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "rank n");
        sub->add_option("--l", cfg.l, "twist degree l");
        sub->add_option("--g", cfg.g, "base genus g");
        sub->add_option("--p", cfg.p, "odd prime");
        sub->add_option("--k", cfg.k, "exterior degree");
        sub->add_option("--sp", cfg.sp, "pure Sp(2v) mode with v pairs");
        sub->add_flag("--orbit", cfg.orbit, "enumerate the orbit");
        sub->add_option("--orbit-cap", cfg.orbit_cap, "largest mu for orbit enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--dim-cap", cfg.dim_cap, "largest exterior power dimension")->check(CLI::PositiveNumber);
        sub->add_option("--k-max", cfg.k_max, "cap for the k0 search")->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.json, "JSON output");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    };
    for (const char* name : {"classify", "verify", "invariants", "export"}) common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "invariants") return cmd_invariants(cfg, out);
        return cmd_export(cfg, out);
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const OverflowError& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace vanlat
