#include "vanlat/orbit.hpp"
#include "vanlat/symplectic_invariants.hpp"
#include "vanlat/vanishing_lattice.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace vanlat;

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class R>
void compare(const char* name, const std::function<R()>& serial, const std::function<R()>& parallel) {
    R a{}, b{};
    const double ts = seconds([&] { a = serial(); });
    const double tp = seconds([&] { b = parallel(); });
    std::printf("%-28s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, ts, tp, tp > 0 ? ts / tp : 0.0,
                a == b ? "agree" : "DISAGREE");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    const auto sys = build(SpectralParams::make(3, 2, 2));
    const F2Matrix form = F2Matrix::reduce(sys.lattice_P.gram);
    const auto gens = reduced_generators(sys);
    compare<OrbitResult>(
        "orbit BFS (3,2,2)", [&] { return orbit_closure_f2_serial(form, gens); },
        [&] { return orbit_closure_f2(form, gens); });

    const auto small = build(SpectralParams::make(2, 4, 3));
    const F2Matrix small_form = F2Matrix::reduce(small.lattice_P.gram);
    const auto small_delta = orbit_closure_f2(small_form, reduced_generators(small));
    using Defect = std::optional<std::pair<std::uint64_t, std::uint64_t>>;
    compare<Defect>(
        "closure check (2,4,3)", [&] { return self_transvection_defect_serial(small_form, small_delta); },
        [&] { return self_transvection_defect(small_form, small_delta); });

    const auto q = *solve_invariant_quadratic(form, gens);
    const auto big = build(SpectralParams::make(3, 3, 2));
    const F2Matrix big_form = F2Matrix::reduce(big.lattice_P.gram);
    const auto big_q = *solve_invariant_quadratic(big_form, reduced_generators(big));
    compare<std::uint64_t>(
        "count_zeros mu=16", [&] { return count_zeros_serial(q); }, [&] { return count_zeros(q); });
    compare<std::uint64_t>(
        "count_zeros mu=22", [&] { return count_zeros_serial(big_q); }, [&] { return count_zeros(big_q); });

    compare<std::vector<FpVector>>(
        "invariant_subspace p=5 v=2", [] { return invariant_subspace_serial(5, 2, 2); },
        [] { return invariant_subspace(5, 2, 2); });
    compare<std::vector<FpVector>>(
        "invariant_subspace p=3 v=3", [] { return invariant_subspace_serial(3, 3, 3); },
        [] { return invariant_subspace(3, 3, 3); });
    return 0;
}
