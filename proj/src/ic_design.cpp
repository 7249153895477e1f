// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/ic_design.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "icalloc/errors.hpp"

namespace icalloc {

std::string to_string(CaseKind k) { return k == CaseKind::Divisible ? "divisible" : "general"; }

double regime_limit(std::uint32_t n, std::uint32_t d) {
    return std::pow(0.9 * std::sqrt(static_cast<double>(n) / d), static_cast<double>(d));
}

bool in_regime(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    return static_cast<double>(N) <= regime_limit(n, d) * (1.0 + 1e-9);
}

std::vector<FileIndex> ICParams::excluded() const {
    std::vector<FileIndex> out;
    for (FileIndex x = n - g + 1; x <= n; ++x) out.push_back(x);
    return out;
}

namespace {

bool binomial_at_most(std::uint64_t a, std::uint64_t b, std::uint64_t bound) {
    try {
        return binomial(a, b) <= bound;
    } catch (const OverflowError&) {
        return false;
    }
}

}  // namespace

ICParams derive_params(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    if (d < 1 || d > n || N < 1) {
        throw InputError("need n >= d >= 1 and N >= 1 (n=" + std::to_string(n) +
                         ", d=" + std::to_string(d) + ", N=" + std::to_string(N) + ")");
    }
    if (d > kMaxDegree) throw InputError("d beyond supported maximum " + std::to_string(kMaxDegree));
    if (n > kMaxFileIndex) throw InputError("n beyond 65535");

    ICParams p;
    p.n = n;
    p.d = d;
    p.N = N;

    std::uint64_t f = d;
    while (binomial_at_most(f + 1, d, N)) {
        ++f;
        if (f > n) {
            throw InfeasibleError("construction infeasible: family count f exceeds n=" +
                                  std::to_string(n) + " (d=" + std::to_string(d) +
                                  ", N=" + std::to_string(N) + ")");
        }
    }
    p.f = static_cast<std::uint32_t>(f);
    p.n_prime = to_u64(binomial(f, d), "C(f,d)");
    p.in_regime = in_regime(n, d, N);

    if (n % p.f == 0) {
        p.kind = CaseKind::Divisible;
        p.s = n / p.f;
        p.g = 0;
    } else {
        p.kind = CaseKind::General;
        p.s0 = n / (p.f + d) + 1;
        const std::int64_t g = static_cast<std::int64_t>(n) -
                               static_cast<std::int64_t>(p.f) * static_cast<std::int64_t>(p.s0);
        if (g < 0) {
            throw InfeasibleError(
                "construction infeasible: n=" + std::to_string(n) + ", f=" + std::to_string(p.f) +
                ", d=" + std::to_string(d) + " give s0=floor(n/(f+d))+1=" + std::to_string(p.s0) +
                " and g=n-f*s0=" + std::to_string(g) + " < 0");
        }
        p.g = static_cast<std::uint32_t>(g);
    }
    return p;
}

FamilyLayout::FamilyLayout(std::uint32_t f, std::uint32_t family_size, std::uint32_t covered)
    : f_(f), size_(family_size), covered_(covered) {
    if (f == 0 || family_size == 0 || static_cast<std::uint64_t>(f) * family_size != covered) {
        throw InputError("family layout must tile [1, covered] with f equal blocks");
    }
}

std::vector<FileIndex> FamilyLayout::members(std::uint32_t i) const {
    std::vector<FileIndex> out;
    if (i < 1 || i > f_) return out;
    for (FileIndex x = (i - 1) * size_ + 1; x <= i * size_; ++x) out.push_back(x);
    return out;
}

FamilyLayout build_families(const ICParams& params) {
    return FamilyLayout(params.f, params.family_size(), params.n - params.g);
}

FamilySet support_family(const DTuple& t, const FamilyLayout& layout) {
    FamilySet out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::uint32_t fam = layout.family_of(t[i]);
        // elements are increasing, so equal families are adjacent
        if (fam != 0 && (out.empty() || out.back() != fam)) out.push_back(fam);
    }
    return out;
}

TupleClass classify_tuple(const DTuple& t, const FamilyLayout& layout) {
    TupleClass c{TupleKind::Complement, support_family(t, layout), 0};
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (layout.family_of(t[i]) == 0) ++c.excluded_count;
    }
    if (c.excluded_count > 0) {
        c.kind = TupleKind::Excluded;
    } else if (c.support.size() == t.size()) {
        c.kind = TupleKind::Full;
    }
    return c;
}

std::vector<DTuple> eligible_groups(const FamilySet& support, std::uint32_t f, std::uint32_t d) {
    std::vector<DTuple> out;
    if (support.size() > d) return out;
    std::vector<std::uint32_t> rest;
    for (std::uint32_t j = 1; j <= f; ++j) {
        if (!std::binary_search(support.begin(), support.end(), j)) rest.push_back(j);
    }
    const std::uint32_t extra = d - static_cast<std::uint32_t>(support.size());
    if (extra > rest.size()) return out;

    std::vector<FileIndex> pick(extra);
    for (std::uint32_t i = 0; i < extra; ++i) pick[i] = i + 1;
    std::vector<FileIndex> label;
    do {
        label.assign(support.begin(), support.end());
        for (FileIndex k : pick) label.push_back(rest[k - 1]);
        std::sort(label.begin(), label.end());
        out.emplace_back(std::span<const FileIndex>(label));
    } while (extra > 0 && next_subset(pick, static_cast<std::uint32_t>(rest.size())));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Bucket {
    std::vector<std::uint64_t> targets;
    std::uint64_t dealt = 0;
};

std::uint32_t ceil_div(std::uint32_t a, std::uint32_t b) { return (a + b - 1) / b; }

}  // namespace

BasePartition construct_base_partition(const ICParams& params, const FamilyLayout& layout) {
    const std::uint32_t d = params.d;
    const std::uint32_t f = params.f;
    if (f < d) throw std::logic_error("family count below d");

    BasePartition base;
    for (const auto& label : enumerate_dtuples(f, d)) base.labels.push_back(label);
    base.groups.resize(base.labels.size());
    const TupleRanker label_rank(f, d);

    const std::uint32_t sz = layout.family_size();
    const std::uint32_t complement_beta_min = ceil_div(d, sz);
    const std::uint32_t excluded_beta_min =
        params.g >= d ? 0 : ceil_div(d - params.g, params.s0 == 0 ? 1 : params.s0);

    std::map<std::pair<TupleKind, FamilySet>, Bucket> buckets;

    for (const auto& t : enumerate_dtuples(params.n, d)) {
        TupleClass cls = classify_tuple(t, layout);
        if (cls.kind == TupleKind::Full) {
            const auto v = cls.support;
            const DTuple label{std::span<const FileIndex>(v)};
            base.groups[label_rank.rank(label)].push_back(t);
            continue;
        }

        const auto beta = static_cast<std::uint32_t>(cls.support.size());
        const std::uint32_t beta_min =
            cls.kind == TupleKind::Complement ? complement_beta_min : excluded_beta_min;
        if (beta < beta_min || beta > d - 1) {
            throw std::logic_error("tuple " + to_string(t) + " has support size " +
                                   std::to_string(beta) + " outside [" + std::to_string(beta_min) +
                                   ", " + std::to_string(d - 1) + "]");
        }

        auto [it, fresh] = buckets.try_emplace({cls.kind, std::move(cls.support)});
        Bucket& bucket = it->second;
        if (fresh) {
            for (const auto& label : eligible_groups(it->first.second, f, d)) {
                bucket.targets.push_back(label_rank.rank(label));
            }
            if (bucket.targets.empty()) {
                throw std::logic_error("no eligible base group for tuple " + to_string(t));
            }
        }
        base.groups[bucket.targets[bucket.dealt % bucket.targets.size()]].push_back(t);
        ++bucket.dealt;
    }
    return base;
}

ExtensionPlan plan_extension(std::uint64_t N, std::uint64_t n_prime) {
    if (n_prime == 0 || N < n_prime) {
        throw InputError("extension needs N >= N' >= 1 (N=" + std::to_string(N) +
                         ", N'=" + std::to_string(n_prime) + ")");
    }
    ExtensionPlan plan;
    plan.q = N / n_prime;
    plan.r = N % n_prime;
    plan.p = plan.r == 0 ? plan.q : plan.q + 1;
    plan.parts.resize(n_prime);
    for (std::uint64_t b = 1; b <= n_prime; ++b) plan.parts[b - 1] = b <= plan.r ? plan.p : plan.q;
    return plan;
}

std::vector<std::uint64_t> slice_sizes(std::uint64_t count, std::uint64_t parts) {
    std::vector<std::uint64_t> out(parts, count / parts);
    for (std::uint64_t i = 0; i < count % parts; ++i) ++out[i];
    return out;
}

Allocation extend_to_N(BasePartition base, const ICParams& params) {
    const std::uint64_t n_prime = base.groups.size();
    const ExtensionPlan plan = plan_extension(params.N, n_prime);

    std::vector<TupleGroup> out(params.N);
    for (std::uint64_t b = 1; b <= n_prime; ++b) {
        TupleGroup& src = base.groups[b - 1];
        if (!std::is_sorted(src.begin(), src.end())) std::sort(src.begin(), src.end());
        const auto sizes = slice_sizes(src.size(), plan.parts[b - 1]);
        std::uint64_t offset = 0;
        for (std::uint64_t part = 0; part < sizes.size(); ++part) {
            const std::uint64_t worker = b + part * n_prime;  // 1-based
            auto first = src.begin() + static_cast<std::ptrdiff_t>(offset);
            out[worker - 1].assign(first, first + static_cast<std::ptrdiff_t>(sizes[part]));
            offset += sizes[part];
        }
        TupleGroup().swap(src);
    }
    return Allocation::from_groups(params.n, params.d, std::move(out));
}

Construction construct_ic(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    Construction c;
    c.params = derive_params(n, d, N);
    const FamilyLayout layout = build_families(c.params);
    c.allocation = extend_to_N(construct_base_partition(c.params, layout), c.params);
    return c;
}

Allocation construct(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    return construct_ic(n, d, N).allocation;
}

}  // namespace icalloc
