// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icalloc/allocation.hpp"

namespace icalloc {

/// Relative slack applied on the bound side of every real-valued comparison.
inline constexpr double kBoundSlack = 1e-9;

/// 4e, the constant of the order-optimality guarantee.
inline constexpr double kFourE = 4.0 * 2.71828182845904523536;

/// Nonnegative fraction kept in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t num, std::uint64_t den);

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;  // "num/den"

    /// Parses "num/den" (or a bare integer); throws InputError.
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational&, const Rational&) = default;
};

bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);

/// Per-worker loads of an allocation.
struct WorkerLoads {
    std::vector<std::uint64_t> files;  // |alpha(Phi_b)|
    std::vector<std::uint64_t> tasks;  // |Phi_b|
};

/// Loads recomputed from the tuples (the cached file sets are not trusted).
WorkerLoads measure_loads(const Allocation& alloc);

/// pi: largest number of files any worker must receive.
std::uint64_t communication_cost(const Allocation& alloc);

/// delta: largest task count over ceil(C(n, d) / N).
Rational computation_cost(const Allocation& alloc);

/// n / N^(1/d).
double lower_bound_real(std::uint32_t n, std::uint32_t d, std::uint64_t N);

/// Smallest pi with N * C(pi, d) >= C(n, d).
std::uint32_t lower_bound_packing(std::uint32_t n, std::uint32_t d, std::uint64_t N);

/// 4e * n / N^(1/d).
double theorem1_bound(std::uint32_t n, std::uint32_t d, std::uint64_t N);

struct CostReport {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> per_worker_files;
    std::vector<std::uint64_t> per_worker_tasks;
    std::uint64_t pi = 0;
    Rational delta;
    double lb_real = 0.0;
    std::uint32_t lb_packing = 0;
    double ratio_real = 0.0;
    double theorem1_bound = 0.0;
    bool in_regime = false;
    std::optional<double> makespan_estimate;
};

CostReport cost_report(const Allocation& alloc);

/// Builds the report from loads that were measured elsewhere.
CostReport cost_report(std::uint32_t n, std::uint32_t d, const WorkerLoads& loads);

struct Theorem1Verdict {
    bool pass = false;
    bool in_regime = false;
    double bound = 0.0;
    std::uint64_t pi = 0;
};

/// Passes iff pi <= 4e * n / N^(1/d). in_regime is reported, never enforced.
Theorem1Verdict theorem1_check(const CostReport& report);

/// max_b (|alpha(Phi_b)| * file_size / link_rate + |Phi_b| * task_time).
///
/// file_size and task_time may be zero; link_rate must be positive. Throws
/// InputError on a negative or non-finite scalar.
double makespan_estimate(const Allocation& alloc, double file_size, double link_rate,
                         double task_time);

}  // namespace icalloc
