#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace vanlat {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitMismatch = 2, kExitCap = 3, kExitIo = 4 };

struct RunConfig {
    std::string command;
    int n = 0, l = 0, g = 0;
    std::optional<unsigned> p;
    std::optional<unsigned> k;
    std::optional<unsigned> sp;  // pure Sp(2v) mode for invariants
    bool orbit = false;
    std::size_t orbit_cap = 24;
    std::uint64_t dim_cap = 4000;
    int k_max = 8;
    bool json = false;
    std::string out_dir;
    std::uint64_t seed = 0;
};

/// Parses arguments and runs one command; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_invariants(const RunConfig& cfg, std::ostream& out);
int cmd_export(const RunConfig& cfg, std::ostream& out);

}  // namespace vanlat
