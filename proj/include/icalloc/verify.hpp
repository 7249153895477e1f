// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icalloc/allocation.hpp"

namespace icalloc {

enum class FailureKind {
    ShapeMismatch,    // file_sets and groups disagree in length
    InvalidTuple,     // wrong size, out of range or unsorted
    DuplicateTuple,   // held more than once
    MissingTuple,     // held by nobody
    FileSetMismatch,  // cached file set differs from the union of the tuples
};

std::string to_string(FailureKind k);

struct PartitionFailure {
    FailureKind kind;
    std::optional<DTuple> tuple;
    std::vector<std::uint64_t> workers;  // 1-based; repeated when held twice by one worker
    std::string message;

    friend bool operator==(const PartitionFailure&, const PartitionFailure&) = default;
};

struct Verdict {
    bool ok = true;
    std::optional<PartitionFailure> failure;

    static Verdict pass() { return {}; }
    static Verdict fail(PartitionFailure f) { return {false, std::move(f)}; }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Checks that the groups partition A_{n,d} and that every cached file set
/// equals the union of its group's tuples. Everything is recomputed from the
/// tuples. Checks run in the order of FailureKind; within a kind the
/// lexicographically smallest tuple (or lowest worker) is reported.
Verdict verify_partition(const Allocation& alloc);

/// Budgeted exact search for the optimal communication cost.
struct OracleResult {
    bool complete = false;
    /// Optimal value when complete; otherwise the best proven lower bound.
    std::uint32_t pi_star = 0;
    /// Smallest cover size found so far (n is always achievable).
    std::uint32_t upper_bound = 0;
    /// Up to N file sets whose d-subsets cover A_{n,d}; empty when incomplete.
    std::vector<FileSet> witness;
    std::uint64_t nodes = 0;
};

/// Largest C(n, d) the oracle accepts.
inline constexpr std::uint64_t kOracleMaxTuples = 1u << 16;

/// Exact min over allocations of max_b |alpha(Phi_b)|.
///
/// A partition with every |alpha| <= k exists iff N file sets of size <= k
/// cover every d-subset, so the search runs over covers: iterative deepening
/// on k, branching on which k-set covers the first uncovered d-subset. budget
/// bounds the number of expanded nodes over the whole run.
OracleResult brute_force_pi_star(std::uint32_t n, std::uint32_t d, std::uint64_t N,
                                 std::uint64_t budget);

/// Assigns every tuple to the first covering set; N groups, unused ones empty.
Allocation witness_to_allocation(const std::vector<FileSet>& witness, std::uint32_t n,
                                 std::uint32_t d, std::uint64_t N);

/// Instances the comparison record runs the oracle on.
inline constexpr std::uint32_t kCompareOracleMaxFiles = 12;

enum class OracleStatus { Complete, BudgetExhausted, Infeasible };

std::string to_string(OracleStatus s);

struct CompareRecord {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t N = 0;
    std::optional<std::uint64_t> pi_ic;
    std::string ic_error;  // set when the construction is infeasible
    std::optional<std::uint32_t> pi_star;
    OracleStatus oracle_status = OracleStatus::Infeasible;
    std::uint64_t oracle_nodes = 0;
    std::uint32_t lb_packing = 0;
    double lb_real = 0.0;
    std::optional<double> ratio;  // pi_ic / lb_real
};

CompareRecord compare(std::uint32_t n, std::uint32_t d, std::uint64_t N,
                      std::uint64_t oracle_budget);

}  // namespace icalloc
