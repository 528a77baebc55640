#include "vanlat/orbit.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <string>

namespace vanlat {

namespace {

void check_dim(std::size_t dim, std::size_t cap) {
    if (dim > cap || dim > kMaxOrbitDim)
        throw CapExceeded("orbit enumeration: dimension " + std::to_string(dim) + " exceeds orbit cap " +
                          std::to_string(std::min(cap, kMaxOrbitDim)));
}

std::vector<std::uint64_t> pack_all(std::span<const F2Vector> vs, std::size_t dim) {
    std::vector<std::uint64_t> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
        if (v.dim() != dim) throw ShapeError("orbit: vector dimension differs from form");
        out.push_back(v.to_bits());
    }
    return out;
}

/// Bitmap over all of GF(2)^dim.
class Bitmap {
public:
    explicit Bitmap(std::size_t dim) : words_(((std::uint64_t{1} << dim) + 63) / 64, 0) {}
    bool test(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    void set(std::uint64_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
    /// Returns true if x was newly inserted.
    bool atomic_insert(std::uint64_t x) {
        const std::uint64_t mask = std::uint64_t{1} << (x & 63);
        return !(__atomic_fetch_or(&words_[x >> 6], mask, __ATOMIC_RELAXED) & mask);
    }

private:
    std::vector<std::uint64_t> words_;
};

void finish(OrbitResult& r, const PackedForm& form) {
    std::sort(r.delta.begin(), r.delta.end());
    r.span_rank = packed_rank(r.delta);
    for (const std::uint64_t d1 : r.delta) {
        const std::uint64_t img = form.image(d1);
        for (const std::uint64_t d2 : r.delta)
            if (std::popcount(img & d2) & 1) {
                r.witness_pair = std::pair{d1, d2};
                return;
            }
    }
}

struct Gen {
    std::uint64_t vec;
    std::uint64_t image;  // G s, so <s, x> = parity(image & x)
};

std::vector<Gen> prepare(const PackedForm& form, const std::vector<std::uint64_t>& gens) {
    std::vector<Gen> out;
    for (auto s : gens) out.push_back({s, form.image(s)});
    return out;
}

OrbitResult bfs_parallel(const F2Matrix& form, std::span<const F2Vector> seeds, std::span<const F2Vector> generators,
                         std::size_t cap) {
    const std::size_t dim = form.cols();
    check_dim(dim, cap);
    const PackedForm pf(form);
    const auto gens = prepare(pf, pack_all(generators, dim));
    Bitmap seen(dim);
    OrbitResult r;
    r.dim = dim;
    std::vector<std::uint64_t> frontier;
    for (auto x : pack_all(seeds, dim))
        if (seen.atomic_insert(x)) frontier.push_back(x);
    while (!frontier.empty()) {
        r.delta.insert(r.delta.end(), frontier.begin(), frontier.end());
        std::vector<std::uint64_t> next;
#pragma omp parallel
        {
            std::vector<std::uint64_t> local;
#pragma omp for schedule(dynamic, 256) nowait
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                const std::uint64_t x = frontier[i];
                for (const auto& s : gens) {
                    if (!(std::popcount(s.image & x) & 1)) continue;
                    const std::uint64_t y = x ^ s.vec;
                    if (seen.atomic_insert(y)) local.push_back(y);
                }
            }
#pragma omp critical(orbit_merge)
            next.insert(next.end(), local.begin(), local.end());
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    finish(r, pf);
    return r;
}

}  // namespace

bool OrbitResult::contains(std::uint64_t x) const { return std::binary_search(delta.begin(), delta.end(), x); }

std::vector<F2Vector> OrbitResult::vectors() const {
    std::vector<F2Vector> out;
    out.reserve(delta.size());
    for (auto x : delta) out.push_back(F2Vector::from_bits(dim, x));
    return out;
}

std::size_t packed_rank(std::span<const std::uint64_t> vectors) {
    std::uint64_t basis[64] = {};
    std::size_t rank = 0;
    for (std::uint64_t v : vectors) {
        while (v) {
            const int top = 63 - std::countl_zero(v);
            if (!basis[top]) {
                basis[top] = v;
                ++rank;
                break;
            }
            v ^= basis[top];
        }
        if (rank == 64) break;
    }
    return rank;
}

OrbitResult orbit_closure_f2(const F2Matrix& form, std::span<const F2Vector> generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("orbit_closure_f2: empty generator set");
    return bfs_parallel(form, generators, generators, cap);
}

OrbitResult orbit_of(const F2Matrix& form, std::span<const F2Vector> seeds, std::span<const F2Vector> generators,
                     std::size_t cap) {
    return bfs_parallel(form, seeds, generators, cap);
}

OrbitResult orbit_closure_f2_serial(const F2Matrix& form, std::span<const F2Vector> generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("orbit_closure_f2: empty generator set");
    const std::size_t dim = form.cols();
    check_dim(dim, cap);
    const PackedForm pf(form);
    const auto gens = pack_all(generators, dim);
    Bitmap seen(dim);
    std::deque<std::uint64_t> queue;
    OrbitResult r;
    r.dim = dim;
    for (auto s : gens)
        if (!seen.test(s)) {
            seen.set(s);
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const std::uint64_t x = queue.front();
        queue.pop_front();
        r.delta.push_back(x);
        for (auto s : gens) {
            if (!pf.pair(s, x)) continue;
            const std::uint64_t y = x ^ s;
            if (seen.test(y)) continue;
            seen.set(y);
            queue.push_back(y);
        }
    }
    finish(r, pf);
    return r;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> self_transvection_defect_serial(const F2Matrix& form,
                                                                                      const OrbitResult& set) {
    const PackedForm pf(form);
    for (const std::uint64_t d : set.delta) {
        const std::uint64_t img = pf.image(d);
        for (const std::uint64_t x : set.delta)
            if ((std::popcount(img & x) & 1) && !set.contains(x ^ d)) return std::pair{d, x};
    }
    return std::nullopt;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> self_transvection_defect(const F2Matrix& form,
                                                                               const OrbitResult& set) {
    check_dim(set.dim, kMaxOrbitDim);
    const PackedForm pf(form);
    Bitmap member(set.dim);
    for (auto x : set.delta) member.set(x);
    const auto n = static_cast<std::int64_t>(set.delta.size());
    std::int64_t first_bad = n;  // index of the first failing d
#pragma omp parallel for schedule(dynamic, 64) reduction(min : first_bad)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t d = set.delta[static_cast<std::size_t>(i)];
        const std::uint64_t img = pf.image(d);
        for (const std::uint64_t x : set.delta)
            if ((std::popcount(img & x) & 1) && !member.test(x ^ d)) {
                first_bad = std::min(first_bad, i);
                break;
            }
    }
    if (first_bad == n) return std::nullopt;
    const std::uint64_t d = set.delta[static_cast<std::size_t>(first_bad)];
    const std::uint64_t img = pf.image(d);
    for (const std::uint64_t x : set.delta)
        if ((std::popcount(img & x) & 1) && !member.test(x ^ d)) return std::pair{d, x};
    return std::nullopt;
}

OrbitResult quadratic_level_set(const F2QuadraticFunction& q, std::size_t cap) {
    const std::size_t dim = q.dim();
    check_dim(dim, cap);
    const PackedForm pf(q.form());
    OrbitResult r;
    r.dim = dim;
    const std::uint64_t total = std::uint64_t{1} << dim;
    for (std::uint64_t x = 1; x < total; ++x)
        if (pf.image(x) && q.eval_bits(x)) r.delta.push_back(x);
    finish(r, pf);
    return r;
}

OrbitResult nonradical_set(const F2Matrix& form, std::size_t cap) {
    const std::size_t dim = form.cols();
    check_dim(dim, cap);
    const PackedForm pf(form);
    OrbitResult r;
    r.dim = dim;
    const std::uint64_t total = std::uint64_t{1} << dim;
    for (std::uint64_t x = 1; x < total; ++x)
        if (pf.image(x)) r.delta.push_back(x);
    finish(r, pf);
    return r;
}

}  // namespace vanlat
