// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/costs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/kernels.hpp"

namespace icalloc {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw InputError("rational with zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const auto v = std::stoull(text, &used);
            if (used != text.size()) throw InputError("bad rational");
            return Rational{v, 1};
        }
        const std::string a = text.substr(0, slash);
        const std::string b = text.substr(slash + 1);
        const auto num = std::stoull(a, &used);
        if (used != a.size()) throw InputError("bad rational");
        const auto den = std::stoull(b, &used);
        if (used != b.size()) throw InputError("bad rational");
        return make(num, den);
    } catch (const std::logic_error&) {
        throw InputError("malformed rational '" + text + "'");
    }
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
}

bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

WorkerLoads measure_loads(const Allocation& alloc) { return kernels::measure_loads_parallel(alloc); }

std::uint64_t communication_cost(const Allocation& alloc) {
    const auto loads = measure_loads(alloc);
    return loads.files.empty() ? 0 : *std::max_element(loads.files.begin(), loads.files.end());
}

namespace {

Rational delta_from_tasks(std::uint32_t n, std::uint32_t d, const std::vector<std::uint64_t>& tasks) {
    const std::uint64_t total = to_u64(binomial(n, d), "C(n,d)");
    const std::uint64_t workers = tasks.size();
    if (workers == 0) throw InputError("allocation has no workers");
    const std::uint64_t ideal = total / workers + (total % workers != 0 ? 1 : 0);
    const std::uint64_t worst = *std::max_element(tasks.begin(), tasks.end());
    return Rational::make(worst, ideal == 0 ? 1 : ideal);
}

}  // namespace

Rational computation_cost(const Allocation& alloc) {
    return delta_from_tasks(alloc.n, alloc.d, measure_loads(alloc).tasks);
}

double lower_bound_real(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    return static_cast<double>(n) / std::pow(static_cast<double>(N), 1.0 / d);
}

std::uint32_t lower_bound_packing(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    if (d < 1 || d > n || N < 1) throw InputError("need n >= d >= 1 and N >= 1");
    const u128 total = binomial(n, d);
    auto enough = [&](std::uint32_t pi) {
        try {
            return checked_mul(N, binomial(pi, d)) >= total;
        } catch (const OverflowError&) {
            return true;
        }
    };
    const double start = std::ceil(lower_bound_real(n, d, N) * (1.0 - kBoundSlack));
    auto pi = static_cast<std::uint32_t>(std::clamp(start, 0.0, static_cast<double>(n)));
    while (!enough(pi)) ++pi;
    return pi;
}

double theorem1_bound(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    return kFourE * lower_bound_real(n, d, N);
}

CostReport cost_report(std::uint32_t n, std::uint32_t d, const WorkerLoads& loads) {
    CostReport r;
    r.n = n;
    r.d = d;
    r.N = loads.tasks.size();
    r.per_worker_files = loads.files;
    r.per_worker_tasks = loads.tasks;
    r.pi = r.per_worker_files.empty()
               ? 0
               : *std::max_element(r.per_worker_files.begin(), r.per_worker_files.end());
    r.delta = delta_from_tasks(n, d, r.per_worker_tasks);
    r.lb_real = lower_bound_real(n, d, r.N);
    r.lb_packing = lower_bound_packing(n, d, r.N);
    r.ratio_real = static_cast<double>(r.pi) / r.lb_real;
    r.theorem1_bound = theorem1_bound(n, d, r.N);
    r.in_regime = in_regime(n, d, r.N);
    return r;
}

CostReport cost_report(const Allocation& alloc) {
    return cost_report(alloc.n, alloc.d, measure_loads(alloc));
}

Theorem1Verdict theorem1_check(const CostReport& report) {
    Theorem1Verdict v;
    v.pi = report.pi;
    v.bound = report.theorem1_bound;
    v.in_regime = report.in_regime;
    v.pass = static_cast<double>(report.pi) <= report.theorem1_bound * (1.0 + kBoundSlack);
    return v;
}

double makespan_estimate(const Allocation& alloc, double file_size, double link_rate,
                         double task_time) {
    if (!std::isfinite(file_size) || !std::isfinite(link_rate) || !std::isfinite(task_time) ||
        file_size < 0 || task_time < 0 || link_rate <= 0) {
        throw InputError("makespan needs file_size >= 0, link_rate > 0, task_time >= 0");
    }
    const auto loads = measure_loads(alloc);
    double worst = 0.0;
    for (std::size_t b = 0; b < loads.files.size(); ++b) {
        const double t = static_cast<double>(loads.files[b]) * file_size / link_rate +
                         static_cast<double>(loads.tasks[b]) * task_time;
        worst = std::max(worst, t);
    }
    return worst;
}

}  // namespace icalloc
