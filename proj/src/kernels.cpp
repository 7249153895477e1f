// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace icalloc::kernels {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Distinct in-range files of one group; `mark` is scratch of size n + 1.
std::uint64_t count_files(const TupleGroup& group, std::uint32_t n, std::vector<std::uint32_t>& mark,
                          std::uint32_t stamp) {
    std::uint64_t count = 0;
    for (const auto& t : group) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const FileIndex x = t[i];
            if (x >= 1 && x <= n && mark[x] != stamp) {
                mark[x] = stamp;
                ++count;
            }
        }
    }
    return count;
}

std::int64_t first_invalid(const TupleGroup& group, std::uint32_t n, std::uint32_t d) {
    for (std::size_t i = 0; i < group.size(); ++i) {
        if (!group[i].valid_for(n, d)) return static_cast<std::int64_t>(i);
    }
    return -1;
}

std::uint32_t occurrences(const TupleGroup& group, const DTuple& t) {
    return static_cast<std::uint32_t>(std::count(group.begin(), group.end(), t));
}

std::string worker_label(std::uint64_t w) { return "worker " + std::to_string(w); }

std::optional<Verdict> check_shape(const Allocation& a) {
    if (a.file_sets.size() != a.groups.size()) {
        return Verdict::fail({FailureKind::ShapeMismatch, std::nullopt, {},
                              "file_sets has " + std::to_string(a.file_sets.size()) +
                                  " entries for " + std::to_string(a.groups.size()) + " groups"});
    }
    if (a.d < 1 || a.d > a.n || a.d > kMaxDegree || a.groups.empty()) {
        return Verdict::fail({FailureKind::ShapeMismatch, std::nullopt, {},
                              "allocation parameters out of range (n=" + std::to_string(a.n) +
                                  ", d=" + std::to_string(a.d) + ", N=" +
                                  std::to_string(a.groups.size()) + ")"});
    }
    return std::nullopt;
}

Verdict invalid_tuple(const Allocation& a, std::size_t worker, std::size_t index) {
    const DTuple& t = a.groups[worker][index];
    return Verdict::fail({FailureKind::InvalidTuple, t, {worker + 1},
                          "invalid tuple " + to_string(t) + " at " + worker_label(worker + 1) +
                              " position " + std::to_string(index)});
}

Verdict duplicate_tuple(const DTuple& t, const std::vector<std::uint32_t>& occ) {
    PartitionFailure f{FailureKind::DuplicateTuple, t, {}, ""};
    for (std::size_t b = 0; b < occ.size(); ++b) {
        for (std::uint32_t k = 0; k < occ[b]; ++k) f.workers.push_back(b + 1);
    }
    f.message = "tuple " + to_string(t) + " held more than once:";
    for (auto w : f.workers) f.message += " " + std::to_string(w);
    return Verdict::fail(std::move(f));
}

Verdict missing_tuple(const DTuple& t) {
    return Verdict::fail({FailureKind::MissingTuple, t, {},
                          "tuple " + to_string(t) + " is assigned to no worker"});
}

Verdict file_set_mismatch(const Allocation& a, std::size_t b) {
    return Verdict::fail({FailureKind::FileSetMismatch, std::nullopt, {b + 1},
                          "cached file set of " + worker_label(b + 1) + " has " +
                              std::to_string(a.file_sets[b].size()) +
                              " files but its tuples need a different set"});
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

WorkerLoads measure_loads_serial(const Allocation& alloc) {
    WorkerLoads loads;
    loads.files.resize(alloc.groups.size());
    loads.tasks.resize(alloc.groups.size());
    std::vector<std::uint32_t> mark(static_cast<std::size_t>(alloc.n) + 1, 0);
    for (std::size_t b = 0; b < alloc.groups.size(); ++b) {
        loads.files[b] = count_files(alloc.groups[b], alloc.n, mark, static_cast<std::uint32_t>(b + 1));
        loads.tasks[b] = alloc.groups[b].size();
    }
    return loads;
}

WorkerLoads measure_loads_parallel(const Allocation& alloc) {
    const auto groups = static_cast<std::int64_t>(alloc.groups.size());
    WorkerLoads loads;
    loads.files.resize(alloc.groups.size());
    loads.tasks.resize(alloc.groups.size());
#pragma omp parallel
    {
        std::vector<std::uint32_t> mark(static_cast<std::size_t>(alloc.n) + 1, 0);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t b = 0; b < groups; ++b) {
            loads.files[b] =
                count_files(alloc.groups[b], alloc.n, mark, static_cast<std::uint32_t>(b + 1));
            loads.tasks[b] = alloc.groups[b].size();
        }
    }
    return loads;
}

Verdict verify_partition_serial(const Allocation& a) {
    if (auto bad = check_shape(a)) return *bad;

    for (std::size_t b = 0; b < a.groups.size(); ++b) {
        const auto i = first_invalid(a.groups[b], a.n, a.d);
        if (i >= 0) return invalid_tuple(a, b, static_cast<std::size_t>(i));
    }

    const TupleRanker ranker(a.n, a.d);
    std::vector<std::uint32_t> count(ranker.count(), 0);
    for (const auto& g : a.groups) {
        for (const auto& t : g) ++count[ranker.rank(t)];
    }

    for (std::uint64_t r = 0; r < count.size(); ++r) {
        if (count[r] >= 2) {
            const DTuple t = ranker.unrank(r);
            std::vector<std::uint32_t> occ(a.groups.size());
            for (std::size_t b = 0; b < a.groups.size(); ++b) occ[b] = occurrences(a.groups[b], t);
            return duplicate_tuple(t, occ);
        }
    }
    for (std::uint64_t r = 0; r < count.size(); ++r) {
        if (count[r] == 0) return missing_tuple(ranker.unrank(r));
    }

    for (std::size_t b = 0; b < a.groups.size(); ++b) {
        if (required_files(a.groups[b], a.n) != a.file_sets[b]) return file_set_mismatch(a, b);
    }
    return Verdict::pass();
}

Verdict verify_partition_parallel(const Allocation& a) {
    if (auto bad = check_shape(a)) return *bad;
    const auto groups = static_cast<std::int64_t>(a.groups.size());

    std::vector<std::int64_t> bad_at(a.groups.size(), -1);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < groups; ++b) bad_at[b] = first_invalid(a.groups[b], a.n, a.d);
    for (std::size_t b = 0; b < bad_at.size(); ++b) {
        if (bad_at[b] >= 0) return invalid_tuple(a, b, static_cast<std::size_t>(bad_at[b]));
    }

    const TupleRanker ranker(a.n, a.d);
    const auto total = static_cast<std::int64_t>(ranker.count());
    std::vector<std::uint32_t> count(ranker.count(), 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < groups; ++b) {
        for (const auto& t : a.groups[b]) {
            const std::uint64_t r = ranker.rank(t);
#pragma omp atomic
            ++count[r];
        }
    }

    std::uint64_t dup = kNone;
    std::uint64_t miss = kNone;
#pragma omp parallel for reduction(min : dup, miss)
    for (std::int64_t r = 0; r < total; ++r) {
        const auto u = static_cast<std::uint64_t>(r);
        if (count[r] >= 2 && u < dup) dup = u;
        if (count[r] == 0 && u < miss) miss = u;
    }

    if (dup != kNone) {
        const DTuple t = ranker.unrank(dup);
        std::vector<std::uint32_t> occ(a.groups.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t b = 0; b < groups; ++b) occ[b] = occurrences(a.groups[b], t);
        return duplicate_tuple(t, occ);
    }
    if (miss != kNone) return missing_tuple(ranker.unrank(miss));

    std::vector<unsigned char> mismatch(a.groups.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t b = 0; b < groups; ++b) {
        mismatch[b] = required_files(a.groups[b], a.n) != a.file_sets[b] ? 1 : 0;
    }
    for (std::size_t b = 0; b < mismatch.size(); ++b) {
        if (mismatch[b]) return file_set_mismatch(a, b);
    }
    return Verdict::pass();
}

}  // namespace icalloc::kernels
