// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icalloc/allocation.hpp"
#include "icalloc/combinatorics.hpp"

namespace icalloc {

enum class CaseKind { Divisible, General };

std::string to_string(CaseKind k);

/// Largest worker count covered by the order-optimality guarantee:
/// (0.9 * sqrt(n / d))^d.
double regime_limit(std::uint32_t n, std::uint32_t d);

/// True iff N <= regime_limit(n, d), with a 1e-9 relative slack on the limit.
bool in_regime(std::uint32_t n, std::uint32_t d, std::uint64_t N);

/// Construction parameters derived from (n, d, N).
///
/// f is the family count, the largest r with C(r, d) <= N; the design first
/// builds N' = C(f, d) base groups. With f | n every family has s = n / f
/// files. Otherwise each family has s0 = floor(n / (f + d)) + 1 files and the
/// last g = n - f * s0 files form the excluded set, which belongs to no family.
struct ICParams {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t N = 0;
    std::uint32_t f = 0;
    std::uint64_t n_prime = 0;
    CaseKind kind = CaseKind::Divisible;
    std::uint32_t s = 0;   // Divisible only
    std::uint32_t s0 = 0;  // General only
    std::uint32_t g = 0;   // 0 when Divisible
    bool in_regime = true;

    std::uint32_t family_size() const noexcept { return kind == CaseKind::Divisible ? s : s0; }
    /// Files n - g + 1 .. n.
    std::vector<FileIndex> excluded() const;
    bool is_excluded(FileIndex file) const noexcept { return file > n - g; }

    friend bool operator==(const ICParams&, const ICParams&) = default;
};

/// Throws InputError unless n >= d >= 1 and N >= 1, InfeasibleError when the
/// general case yields g < 0.
ICParams derive_params(std::uint32_t n, std::uint32_t d, std::uint64_t N);

using FamilySet = std::vector<std::uint32_t>;  // sorted 1-based family indices

/// f contiguous families of equal size covering files 1 .. n - g.
class FamilyLayout {
public:
    FamilyLayout(std::uint32_t f, std::uint32_t family_size, std::uint32_t covered);

    std::uint32_t families() const noexcept { return f_; }
    std::uint32_t family_size() const noexcept { return size_; }
    /// Number of files that belong to some family (n - g).
    std::uint32_t covered() const noexcept { return covered_; }

    /// Family holding the file, or 0 for an excluded file.
    std::uint32_t family_of(FileIndex file) const noexcept {
        return file >= 1 && file <= covered_ ? (file - 1) / size_ + 1 : 0;
    }
    /// Files of family i (1-based).
    std::vector<FileIndex> members(std::uint32_t i) const;

private:
    std::uint32_t f_;
    std::uint32_t size_;
    std::uint32_t covered_;
};

FamilyLayout build_families(const ICParams& params);

/// Families a tuple intersects; excluded elements contribute nothing.
FamilySet support_family(const DTuple& t, const FamilyLayout& layout);

enum class TupleKind {
    Full,        // meets d distinct families
    Complement,  // only family files, fewer than d families
    Excluded,    // holds at least one excluded file
};

struct TupleClass {
    TupleKind kind;
    FamilySet support;
    std::uint32_t excluded_count;  // files of the tuple in the excluded set
};

TupleClass classify_tuple(const DTuple& t, const FamilyLayout& layout);

/// Base group labels sigma over [f], |sigma| = d, that contain the given
/// support set, in lexicographic order. An empty support is contained in all.
std::vector<DTuple> eligible_groups(const FamilySet& support, std::uint32_t f, std::uint32_t d);

/// N' groups, groups[i] labelled by labels[i]; labels in lexicographic order.
struct BasePartition {
    std::vector<DTuple> labels;
    std::vector<TupleGroup> groups;
};

/// Assigns every tuple of A_{n,d} to one of the N' base groups.
///
/// Full-support tuples go to the group labelled by their support. The other
/// tuples are bucketed by (kind, support); within a bucket, tuples in
/// lexicographic order are dealt round-robin over the eligible groups (labels
/// containing the support) in lexicographic label order. Complement and
/// excluded tuples use separate buckets.
BasePartition construct_base_partition(const ICParams& params, const FamilyLayout& layout);

/// Split sizes for spreading N' base groups over N workers.
struct ExtensionPlan {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    std::uint64_t r = 0;
    std::vector<std::uint64_t> parts;  // parts[b - 1] = s_b
};

ExtensionPlan plan_extension(std::uint64_t N, std::uint64_t n_prime);

/// Sizes of `parts` contiguous slices of `count` items, larger slices first.
std::vector<std::uint64_t> slice_sizes(std::uint64_t count, std::uint64_t parts);

/// Splits base group b (1-based) into s_b contiguous slices of its
/// lexicographically sorted tuples and stores slice b' in worker b + b' * N'.
Allocation extend_to_N(BasePartition base, const ICParams& params);

struct Construction {
    ICParams params;
    Allocation allocation;
};

/// derive_params -> build_families -> construct_base_partition -> extend_to_N.
Construction construct_ic(std::uint32_t n, std::uint32_t d, std::uint64_t N);

Allocation construct(std::uint32_t n, std::uint32_t d, std::uint64_t N);

}  // namespace icalloc
