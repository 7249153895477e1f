// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icalloc/costs.hpp"

namespace icalloc {

/// A value list for one sweep axis.
///
/// Text form: comma-separated items, each a number or "start:stop[:step]"
/// (inclusive). For the N axis the item "R" stands for floor of the regime
/// limit (0.9 * sqrt(n / d))^d of each (n, d).
struct AxisSpec {
    std::vector<std::uint64_t> values;
    bool regime_max = false;

    static AxisSpec parse(const std::string& text, bool allow_regime_token);
};

struct SweepSpec {
    AxisSpec n;
    AxisSpec d;
    AxisSpec N;
    bool in_regime_only = false;
    bool include_oracle = false;
    std::uint64_t oracle_budget = 2'000'000;
};

struct GridPoint {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t N = 0;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// Sorted, duplicate-free grid; points with d > n or N = 0 are dropped.
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

struct SweepRow {
    GridPoint point;
    std::string error;  // nonempty when the point could not be built
    std::uint32_t f = 0;
    std::uint64_t n_prime = 0;
    std::string case_name;
    std::uint32_t g = 0;
    std::uint64_t pi = 0;
    Rational delta;
    double lb_real = 0.0;
    std::uint32_t lb_packing = 0;
    double ratio_real = 0.0;
    bool theorem1_pass = false;
    bool in_regime = false;
    bool verify_ok = false;
    std::optional<std::uint32_t> pi_star;
};

/// Builds and checks one grid point; never throws for construction errors.
SweepRow sweep_point(const GridPoint& p, const SweepSpec& spec);

/// Rows in grid order. Points are processed in parallel when OpenMP is on.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kSweepHeader =
    "n,d,N,f,Nprime,case,g,pi,delta_num,delta_den,lb_real,lb_packing,ratio_real,"
    "theorem1_pass,in_regime,verify_ok";

/// Header plus one row per point; a trailing pi_star column when the oracle
/// was requested. Failed points carry "error:<kind>" in the case column.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_oracle);

std::string format_real(double v);

}  // namespace icalloc
