// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/kernels.hpp"
#include "icalloc/verify.hpp"

namespace icalloc {

namespace {

std::uint64_t parse_count(const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw InputError("expected a nonnegative integer, got '" + tok + "'");
    }
    try {
        return std::stoull(tok);
    } catch (const std::out_of_range&) {
        throw InputError("integer out of range: " + tok);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

AxisSpec AxisSpec::parse(const std::string& text, bool allow_regime_token) {
    AxisSpec axis;
    if (trim(text).empty()) return axis;
    for (const auto& raw : split(text, ',')) {
        const std::string item = trim(raw);
        if (allow_regime_token && (item == "R" || item == "r")) {
            axis.regime_max = true;
            continue;
        }
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            axis.values.push_back(parse_count(item));
        } else if (parts.size() == 2 || parts.size() == 3) {
            const auto start = parse_count(trim(parts[0]));
            const auto stop = parse_count(trim(parts[1]));
            const auto step = parts.size() == 3 ? parse_count(trim(parts[2])) : 1;
            if (step == 0) throw InputError("range step must be positive in '" + item + "'");
            for (std::uint64_t v = start; v <= stop; v += step) axis.values.push_back(v);
        } else {
            throw InputError("malformed range '" + item + "'");
        }
    }
    return axis;
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
    std::vector<GridPoint> grid;
    for (auto n : spec.n.values) {
        for (auto d : spec.d.values) {
            if (d < 1 || d > n || n > kMaxFileIndex || d > kMaxDegree) continue;
            std::vector<std::uint64_t> workers = spec.N.values;
            if (spec.N.regime_max) {
                const double lim = regime_limit(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d));
                workers.push_back(static_cast<std::uint64_t>(std::floor(lim * (1.0 + kBoundSlack))));
            }
            for (auto N : workers) {
                if (N < 1) continue;
                GridPoint p{static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d), N};
                if (spec.in_regime_only && !in_regime(p.n, p.d, p.N)) continue;
                grid.push_back(p);
            }
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

SweepRow sweep_point(const GridPoint& p, const SweepSpec& spec) {
    SweepRow row;
    row.point = p;
    row.in_regime = in_regime(p.n, p.d, p.N);
    try {
        const Construction c = construct_ic(p.n, p.d, p.N);
        row.f = c.params.f;
        row.n_prime = c.params.n_prime;
        row.case_name = to_string(c.params.kind);
        row.g = c.params.g;
        // already inside the parallel grid loop
        row.verify_ok = kernels::verify_partition_serial(c.allocation).ok;
        const CostReport report = cost_report(p.n, p.d, kernels::measure_loads_serial(c.allocation));
        row.pi = report.pi;
        row.delta = report.delta;
        row.lb_real = report.lb_real;
        row.lb_packing = report.lb_packing;
        row.ratio_real = report.ratio_real;
        row.theorem1_pass = theorem1_check(report).pass;
        if (spec.include_oracle && p.n <= kCompareOracleMaxFiles) {
            const auto oracle = brute_force_pi_star(p.n, p.d, p.N, spec.oracle_budget);
            if (oracle.complete) row.pi_star = oracle.pi_star;
        }
    } catch (const InfeasibleError&) {
        row.error = "infeasible";
    } catch (const OverflowError&) {
        row.error = "overflow";
    } catch (const std::exception&) {
        row.error = "failed";
    }
    if (!row.error.empty()) {
        try {
            row.lb_real = lower_bound_real(p.n, p.d, p.N);
            row.lb_packing = lower_bound_packing(p.n, p.d, p.N);
        } catch (const std::exception&) {
        }
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const auto grid = expand_grid(spec);
    std::vector<SweepRow> rows(grid.size());
    const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) rows[i] = sweep_point(grid[i], spec);
    return rows;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool with_oracle) {
    out << kSweepHeader << (with_oracle ? ",pi_star" : "") << '\n';
    for (const auto& r : rows) {
        out << r.point.n << ',' << r.point.d << ',' << r.point.N << ',';
        if (!r.error.empty()) {
            out << ",,error:" << r.error << ",,,,," << format_real(r.lb_real) << ','
                << r.lb_packing << ",,false," << (r.in_regime ? "true" : "false") << ",false";
        } else {
            out << r.f << ',' << r.n_prime << ',' << r.case_name << ',' << r.g << ',' << r.pi << ','
                << r.delta.num << ',' << r.delta.den << ',' << format_real(r.lb_real) << ','
                << r.lb_packing << ',' << format_real(r.ratio_real) << ','
                << (r.theorem1_pass ? "true" : "false") << ',' << (r.in_regime ? "true" : "false")
                << ',' << (r.verify_ok ? "true" : "false");
        }
        if (with_oracle) {
            out << ',';
            if (r.pi_star) out << *r.pi_star;
        }
        out << '\n';
    }
}

}  // namespace icalloc
