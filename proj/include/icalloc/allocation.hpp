// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icalloc/combinatorics.hpp"

namespace icalloc {

using TupleGroup = std::vector<DTuple>;
using FileSet = std::vector<FileIndex>;  // sorted, duplicate-free

/// Assignment of every d-subset of [n] to one of N workers.
///
/// groups[b] is the task list of worker b + 1; file_sets[b] caches the files
/// that worker must receive (the union of its tuples). Nothing here enforces
/// the partition property; use verify_partition.
struct Allocation {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::vector<TupleGroup> groups;
    std::vector<FileSet> file_sets;

    std::size_t workers() const noexcept { return groups.size(); }
    std::uint64_t total_tuples() const noexcept;

    /// Builds an allocation and fills file_sets from the tuples.
    static Allocation from_groups(std::uint32_t n, std::uint32_t d, std::vector<TupleGroup> groups);

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Union of the elements of every tuple in the group, sorted.
FileSet required_files(std::span<const DTuple> group, std::uint32_t n);

}  // namespace icalloc
