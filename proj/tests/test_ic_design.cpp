// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "icalloc/costs.hpp"
#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/verify.hpp"
#include "oracles.hpp"

using namespace icalloc;

namespace {

// f by scanning the Pascal oracle
unsigned oracle_f(unsigned d, std::uint64_t N) {
    unsigned r = d;
    while (oracle::pascal(r + 1, d) <= N) ++r;
    return r;
}

std::uint64_t max_files(const std::vector<TupleGroup>& groups, std::uint32_t n) {
    std::uint64_t m = 0;
    for (const auto& g : groups) m = std::max<std::uint64_t>(m, required_files(g, n).size());
    return m;
}

bool feasible(std::uint32_t n, std::uint32_t d, std::uint64_t N) {
    try {
        derive_params(n, d, N);
        return true;
    } catch (const InfeasibleError&) {
        return false;
    }
}

}  // namespace

TEST_CASE("derive_params examples") {
    const ICParams a = derive_params(50, 2, 10);
    CHECK(a.f == 5);
    CHECK(a.n_prime == 10);
    CHECK(a.kind == CaseKind::Divisible);
    CHECK(a.s == 10);
    CHECK(a.g == 0);
    CHECK(a.excluded().empty());

    const ICParams b = derive_params(60, 2, 21);
    CHECK(b.f == 7);
    CHECK(b.n_prime == 21);
    CHECK(b.kind == CaseKind::General);
    CHECK(b.s0 == 7);
    CHECK(b.g == 11);
    std::vector<FileIndex> excl;
    for (FileIndex x = 50; x <= 60; ++x) excl.push_back(x);
    CHECK(b.excluded() == excl);
    CHECK(b.is_excluded(50));
    CHECK_FALSE(b.is_excluded(49));

    for (std::uint32_t d = 1; d <= 4; ++d) {
        const ICParams c = derive_params(40, d, 1);
        CHECK(c.f == d);
        CHECK(c.n_prime == 1);
    }
}

TEST_CASE("f is the largest r with C(r, d) <= N") {
    for (std::uint32_t d = 1; d <= 4; ++d) {
        for (std::uint64_t N = 1; N <= 300; ++N) {
            const unsigned want = oracle_f(d, N);
            if (!feasible(200, d, N)) continue;
            const ICParams p = derive_params(200, d, N);
            CHECK(p.f == want);
            CHECK(p.n_prime == oracle::pascal(want, d));
            CHECK(p.n_prime <= N);
            CHECK(oracle::pascal(want + 1, d) > N);
        }
    }
}

TEST_CASE("infeasible parameters are a hard error naming the quantities") {
    try {
        derive_params(7, 2, 7);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("n=7") != std::string::npos);
        CHECK(msg.find("f=4") != std::string::npos);
        CHECK(msg.find("d=2") != std::string::npos);
    }
    CHECK_THROWS_AS(derive_params(3, 4, 2), InputError);
    CHECK_THROWS_AS(derive_params(3, 2, 0), InputError);
    // d = 1 with N > n needs more families than files
    CHECK_THROWS_AS(derive_params(5, 1, 9), InfeasibleError);
}

TEST_CASE("regime flag") {
    // (0.9 * sqrt(30))^2 = 24.3
    CHECK(derive_params(60, 2, 24).in_regime);
    CHECK_FALSE(derive_params(60, 2, 25).in_regime);
    CHECK(regime_limit(60, 2) == doctest::Approx(24.3));
}

TEST_CASE("build_families uses contiguous blocks") {
    const FamilyLayout l = build_families(derive_params(10, 2, 10));
    CHECK(l.families() == 5);
    CHECK(l.family_size() == 2);
    CHECK(l.members(1) == std::vector<FileIndex>{1, 2});
    CHECK(l.members(5) == std::vector<FileIndex>{9, 10});

    const FamilyLayout m = build_families(derive_params(60, 2, 21));
    CHECK(m.members(7) == std::vector<FileIndex>{43, 44, 45, 46, 47, 48, 49});
    for (FileIndex x = 50; x <= 60; ++x) CHECK(m.family_of(x) == 0);
    for (FileIndex x = 1; x <= 49; ++x) CHECK(m.family_of(x) == (x - 1) / 7 + 1);
}

TEST_CASE("support_family") {
    const FamilyLayout l = build_families(derive_params(10, 2, 10));
    CHECK(support_family(DTuple{1, 3}, l) == FamilySet{1, 2});
    CHECK(support_family(DTuple{1, 2}, l) == FamilySet{1});
    const FamilyLayout m = build_families(derive_params(60, 2, 21));
    CHECK(support_family(DTuple{50, 60}, m).empty());
    CHECK(support_family(DTuple{1, 60}, m) == FamilySet{1});

    const TupleClass c = classify_tuple(DTuple{1, 60}, m);
    CHECK(c.kind == TupleKind::Excluded);
    CHECK(c.excluded_count == 1);
    CHECK(classify_tuple(DTuple{1, 8}, m).kind == TupleKind::Full);
    CHECK(classify_tuple(DTuple{1, 2}, m).kind == TupleKind::Complement);
}

TEST_CASE("eligible_groups lists supersets in lexicographic order") {
    CHECK(eligible_groups({1}, 4, 2) == std::vector<DTuple>{{1, 2}, {1, 3}, {1, 4}});
    CHECK(eligible_groups({2}, 4, 2) == std::vector<DTuple>{{1, 2}, {2, 3}, {2, 4}});
    CHECK(eligible_groups({}, 3, 2) == std::vector<DTuple>{{1, 2}, {1, 3}, {2, 3}});
    CHECK(eligible_groups({1, 3}, 4, 2) == std::vector<DTuple>{{1, 3}});
    CHECK(eligible_groups({2}, 5, 3).size() == 6);
}

TEST_CASE("base partition for (10, 2, 10)") {
    const ICParams p = derive_params(10, 2, 10);
    const FamilyLayout l = build_families(p);
    const BasePartition base = construct_base_partition(p, l);
    REQUIRE(base.labels.size() == 10);
    CHECK(base.labels.front() == DTuple{1, 2});
    CHECK(base.labels.back() == DTuple{4, 5});

    auto holder = [&](const DTuple& t) {
        std::vector<std::size_t> who;
        for (std::size_t i = 0; i < base.groups.size(); ++i) {
            if (std::count(base.groups[i].begin(), base.groups[i].end(), t)) who.push_back(i);
        }
        return who;
    };
    // full support {1,3} -> families {1,2}
    auto who = holder(DTuple{1, 3});
    REQUIRE(who.size() == 1);
    CHECK(base.labels[who[0]] == DTuple{1, 2});
    // C_{1,{1}} = {{1,2}}; its only member goes to the first eligible label
    who = holder(DTuple{1, 2});
    REQUIRE(who.size() == 1);
    CHECK(base.labels[who[0]] == DTuple{1, 2});
    // C_{1,{3}} = {{5,6}} -> first label containing 3
    who = holder(DTuple{5, 6});
    REQUIRE(who.size() == 1);
    CHECK(base.labels[who[0]] == DTuple{1, 3});

    for (const auto& g : base.groups) CHECK(required_files(g, 10).size() <= 4);
}

TEST_CASE("general case covers excluded tuples exactly once (60, 2, 21)") {
    const ICParams p = derive_params(60, 2, 21);
    const BasePartition base = construct_base_partition(p, build_families(p));
    std::uint64_t total = 0;
    std::set<DTuple> seen;
    for (const auto& g : base.groups) {
        total += g.size();
        for (const auto& t : g) seen.insert(t);
    }
    CHECK(total == 1770);
    CHECK(seen.size() == 1770);
    for (const auto& t : enumerate_dtuples(60, 2)) {
        if (t.back() >= 50) CHECK(seen.count(t) == 1);
    }
    CHECK(max_files(base.groups, 60) <= 7 * 2 + 11);
}

TEST_CASE("every assigned tuple's support lies inside its group label") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int iter = 0; iter < 60; ++iter) {
        const std::uint32_t d = 1 + rng() % 3;
        const std::uint32_t n = d + 2 + rng() % 28;
        const std::uint64_t N = 1 + rng() % 40;
        if (!feasible(n, d, N)) continue;
        ++checked;
        const ICParams p = derive_params(n, d, N);
        const FamilyLayout l = build_families(p);
        const BasePartition base = construct_base_partition(p, l);
        bool sound = true;
        for (std::size_t i = 0; i < base.groups.size(); ++i) {
            const auto label = base.labels[i].to_vector();
            const auto excl = p.excluded();
            std::set<FileIndex> allowed(excl.begin(), excl.end());
            for (auto fam : label) {
                for (auto x : l.members(fam)) allowed.insert(x);
            }
            for (const auto& t : base.groups[i]) {
                for (auto fam : support_family(t, l)) {
                    sound = sound && std::binary_search(label.begin(), label.end(), fam);
                }
                for (std::size_t k = 0; k < t.size(); ++k) sound = sound && allowed.count(t[k]);
            }
        }
        CHECK(sound);
        const std::uint64_t pi = max_files(base.groups, n);
        if (p.kind == CaseKind::Divisible) {
            CHECK(pi <= std::uint64_t{p.s} * d);
        } else {
            CHECK(pi <= std::uint64_t{p.s0} * d + p.g);
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("round-robin keeps each (bucket, label) share within one") {
    const ICParams p = derive_params(30, 3, 10);
    const FamilyLayout l = build_families(p);
    const BasePartition base = construct_base_partition(p, l);
    std::map<std::pair<int, FamilySet>, std::map<std::size_t, int>> share;
    for (std::size_t i = 0; i < base.groups.size(); ++i) {
        for (const auto& t : base.groups[i]) {
            const TupleClass c = classify_tuple(t, l);
            if (c.kind == TupleKind::Full) continue;
            share[{static_cast<int>(c.kind), c.support}][i]++;
        }
    }
    for (const auto& [key, per_group] : share) {
        const auto targets = eligible_groups(key.second, p.f, p.d);
        int lo = 1 << 30, hi = 0;
        for (const auto& label : targets) {
            std::size_t idx = std::find(base.labels.begin(), base.labels.end(), label) - base.labels.begin();
            const int c = per_group.count(idx) ? per_group.at(idx) : 0;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("extension plan and slicing") {
    const ExtensionPlan plan = plan_extension(25, 21);
    CHECK(plan.q == 1);
    CHECK(plan.p == 2);
    CHECK(plan.r == 4);
    std::uint64_t split = 0, total = 0;
    for (auto s : plan.parts) {
        split += s == 2;
        total += s;
    }
    CHECK(split == 4);
    CHECK(total == 25);
    CHECK(plan.parts[0] == 2);
    CHECK(plan.parts[3] == 2);
    CHECK(plan.parts[4] == 1);

    CHECK(slice_sizes(7, 3) == std::vector<std::uint64_t>{3, 2, 2});
    CHECK(slice_sizes(2, 3) == std::vector<std::uint64_t>{1, 1, 0});
    CHECK_THROWS_AS(plan_extension(20, 21), InputError);

    const ExtensionPlan same = plan_extension(21, 21);
    for (auto s : same.parts) CHECK(s == 1);
}

TEST_CASE("extension with N = N' is the identity") {
    const ICParams p = derive_params(30, 2, 10);
    REQUIRE(p.n_prime == 10);
    BasePartition base = construct_base_partition(p, build_families(p));
    const auto groups = base.groups;
    const Allocation a = extend_to_N(std::move(base), p);
    CHECK(a.groups == groups);
}

TEST_CASE("extension places slices at b + b' * N' and never raises pi") {
    const ICParams p = derive_params(60, 2, 25);
    REQUIRE(p.n_prime == 21);
    BasePartition base = construct_base_partition(p, build_families(p));
    const auto before = base.groups;
    const std::uint64_t pi_before = max_files(before, 60);
    const Allocation a = extend_to_N(std::move(base), p);
    REQUIRE(a.workers() == 25);
    CHECK(max_files(a.groups, 60) <= pi_before);
    for (std::size_t b = 1; b <= 21; ++b) {
        const auto& src = before[b - 1];
        if (b <= 4) {
            const auto& first = a.groups[b - 1];
            const auto& second = a.groups[b + 21 - 1];
            CHECK(first.size() == (src.size() + 1) / 2);
            CHECK(second.size() == src.size() / 2);
            TupleGroup joined = first;
            joined.insert(joined.end(), second.begin(), second.end());
            CHECK(joined == src);
        } else {
            CHECK(a.groups[b - 1] == src);
        }
    }
}

TEST_CASE("constructed allocations partition A_{n,d}") {
    std::mt19937 rng(3);
    for (int iter = 0; iter < 80; ++iter) {
        const std::uint32_t d = 1 + rng() % 4;
        const std::uint32_t n = d + rng() % 25;
        const std::uint64_t N = 1 + rng() % 60;
        if (!feasible(n, d, N)) continue;
        const Construction c = construct_ic(n, d, N);
        CHECK(c.allocation.workers() == N);
        CHECK(c.allocation.total_tuples() == oracle::pascal(n, d));
        CHECK(verify_partition(c.allocation).ok);
        CHECK(N < (d + 1) * c.params.n_prime);
    }
}

TEST_CASE("construct examples") {
    CHECK(communication_cost(construct(50, 2, 10)) == 20);
    CHECK(communication_cost(construct(60, 2, 21)) <= 25);
    const Allocation one = construct(7, 2, 1);
    REQUIRE(one.workers() == 1);
    CHECK(one.groups[0].size() == 21);
    CHECK(communication_cost(one) == 7);
    CHECK(construct(60, 2, 21) == construct(60, 2, 21));
}
