// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icalloc/allocation.hpp"

namespace icalloc {

/// Candidate S(t, k, v): blocks of k points over [v].
struct SteinerSystem {
    std::uint32_t t = 0;
    std::uint32_t k = 0;
    std::uint32_t v = 0;
    std::vector<FileSet> blocks;

    friend bool operator==(const SteinerSystem&, const SteinerSystem&) = default;
};

struct SteinerVerdict {
    bool valid = false;
    /// Lexicographically first t-subset not covered exactly once.
    std::optional<DTuple> counterexample;
    std::uint64_t counterexample_coverage = 0;
    std::vector<DTuple> uncovered;    // coverage 0
    std::vector<DTuple> overcovered;  // coverage >= 2
};

/// Throws InputError on a malformed block (wrong size, element outside [1, v],
/// repeated element) or on bad parameters.
SteinerVerdict check_steiner(const SteinerSystem& candidate);

struct DivisibilityResult {
    bool pass = true;
    std::optional<std::uint32_t> violated_at;  // first failing i
};

/// C(v - i, t - i) divisible by C(k - i, t - i) for every 0 <= i < t.
/// Throws InputError unless 1 <= t <= k <= v.
DivisibilityResult divisibility_conditions(std::uint32_t t, std::uint32_t k, std::uint32_t v);

/// Worker b receives every t-subset of block b. Throws InputError when the
/// system does not validate.
Allocation steiner_to_allocation(const SteinerSystem& sys);

/// Block file: header "t k v", then one block of k integers per line;
/// lines starting with '#' and blank lines are ignored. Blocks are not
/// validated beyond their length and numeric syntax.
SteinerSystem parse_steiner(std::istream& in);
SteinerSystem parse_steiner(std::string_view text);
SteinerSystem load_steiner_file(const std::filesystem::path& path);

std::string format_steiner(const SteinerSystem& sys);

/// Text of the Fano plane S(2, 3, 7) in block-file format.
std::string_view fano_plane_text();
SteinerSystem fano_plane();

}  // namespace icalloc
