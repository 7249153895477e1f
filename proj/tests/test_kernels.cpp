// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include <doctest.h>

#include <random>

#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/kernels.hpp"
#include "icalloc/steiner.hpp"

using namespace icalloc;

namespace {

bool same_verdict(const Verdict& a, const Verdict& b) {
    if (a.ok != b.ok) return false;
    if (a.failure.has_value() != b.failure.has_value()) return false;
    if (!a.failure) return true;
    return a.failure->kind == b.failure->kind && a.failure->tuple == b.failure->tuple &&
           a.failure->workers == b.failure->workers && a.failure->message == b.failure->message;
}

}  // namespace

TEST_CASE("load kernels agree") {
    for (std::uint32_t n : {20u, 37u, 60u}) {
        for (std::uint32_t d : {2u, 3u}) {
            for (std::uint64_t N : {1ull, 4ull, 10ull, 27ull}) {
                Allocation a;
                try {
                    a = construct(n, d, N);
                } catch (const InfeasibleError&) {
                    continue;
                }
                const auto s = kernels::measure_loads_serial(a);
                const auto p = kernels::measure_loads_parallel(a);
                CHECK(s.files == p.files);
                CHECK(s.tasks == p.tasks);
            }
        }
    }
}

TEST_CASE("verify kernels agree on valid and mutated allocations") {
    std::mt19937_64 rng(2026);
    const std::vector<Allocation> bases{construct(30, 2, 7), construct(24, 3, 5),
                                        steiner_to_allocation(fano_plane())};
    for (const auto& base : bases) {
        CHECK(same_verdict(kernels::verify_partition_serial(base),
                           kernels::verify_partition_parallel(base)));
        for (int trial = 0; trial < 30; ++trial) {
            Allocation a = base;
            const std::size_t w = rng() % a.groups.size();
            if (a.groups[w].empty()) continue;
            const std::size_t i = rng() % a.groups[w].size();
            switch (trial % 3) {
                case 0:
                    a.groups[w].erase(a.groups[w].begin() + static_cast<std::ptrdiff_t>(i));
                    break;
                case 1:
                    a.groups[rng() % a.groups.size()].push_back(a.groups[w][i]);
                    break;
                default:
                    a.file_sets[w].push_back(static_cast<FileIndex>(a.n + 1));
                    break;
            }
            const Verdict s = kernels::verify_partition_serial(a);
            CHECK_FALSE(s.ok);
            CHECK(same_verdict(s, kernels::verify_partition_parallel(a)));
        }
    }
}

TEST_CASE("thread count is positive") { CHECK(kernels::max_threads() >= 1); }
