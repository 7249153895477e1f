// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

// Times the serial and OpenMP kernels on a few large allocations.

#include <chrono>
#include <cstdio>
#include <functional>

#include "icalloc/ic_design.hpp"
#include "icalloc/kernels.hpp"

using namespace icalloc;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main() {
    std::printf("threads: %d\n", kernels::max_threads());
    std::printf("%-16s %-8s %12s %12s %8s\n", "instance", "kernel", "serial_ms", "parallel_ms", "speedup");
    struct Case {
        std::uint32_t n, d;
        std::uint64_t N;
    };
    for (const Case c : {Case{120, 2, 45}, Case{80, 3, 50}, Case{60, 4, 30}}) {
        const Allocation a = construct(c.n, c.d, c.N);
        char name[32];
        std::snprintf(name, sizeof name, "(%u,%u,%llu)", c.n, c.d, static_cast<unsigned long long>(c.N));

        bool same = true;
        const double vs = best_of(5, [&] { same = same && kernels::verify_partition_serial(a).ok; });
        const double vp = best_of(5, [&] { same = same && kernels::verify_partition_parallel(a).ok; });
        std::printf("%-16s %-8s %12.3f %12.3f %8.2f\n", name, "verify", vs * 1e3, vp * 1e3, vs / vp);

        WorkerLoads ls, lp;
        const double ms = best_of(5, [&] { ls = kernels::measure_loads_serial(a); });
        const double mp = best_of(5, [&] { lp = kernels::measure_loads_parallel(a); });
        std::printf("%-16s %-8s %12.3f %12.3f %8.2f\n", name, "loads", ms * 1e3, mp * 1e3, ms / mp);

        if (!same || ls.files != lp.files || ls.tasks != lp.tasks) {
            std::printf("mismatch between serial and parallel results\n");
            return 1;
        }
    }
    return 0;
}
