// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/allocation.hpp"

namespace icalloc {

std::uint64_t Allocation::total_tuples() const noexcept {
    std::uint64_t total = 0;
    for (const auto& g : groups) total += g.size();
    return total;
}

Allocation Allocation::from_groups(std::uint32_t n, std::uint32_t d,
                                   std::vector<TupleGroup> groups) {
    Allocation a;
    a.n = n;
    a.d = d;
    a.groups = std::move(groups);
    a.file_sets.reserve(a.groups.size());
    for (const auto& g : a.groups) a.file_sets.push_back(required_files(g, n));
    return a;
}

FileSet required_files(std::span<const DTuple> group, std::uint32_t n) {
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (const auto& t : group) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] <= n) seen[t[i]] = true;
        }
    }
    FileSet out;
    for (FileIndex f = 1; f <= n; ++f) {
        if (seen[f]) out.push_back(f);
    }
    return out;
}

}  // namespace icalloc
