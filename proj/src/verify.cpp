// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "icalloc/costs.hpp"
#include "icalloc/errors.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/kernels.hpp"

namespace icalloc {

std::string to_string(FailureKind k) {
    switch (k) {
        case FailureKind::ShapeMismatch: return "shape_mismatch";
        case FailureKind::InvalidTuple: return "invalid_tuple";
        case FailureKind::DuplicateTuple: return "duplicate_tuple";
        case FailureKind::MissingTuple: return "missing_tuple";
        case FailureKind::FileSetMismatch: return "file_set_mismatch";
    }
    return "unknown";
}

std::string to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::Complete: return "complete";
        case OracleStatus::BudgetExhausted: return "budget_exhausted";
        case OracleStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

Verdict verify_partition(const Allocation& alloc) { return kernels::verify_partition_parallel(alloc); }

namespace {

class CoverSearch {
public:
    CoverSearch(std::uint32_t n, std::uint32_t d, std::uint64_t N, std::uint64_t budget)
        : n_(n), d_(d), N_(N), budget_(budget), ranker_(n, d) {}

    enum class Outcome { Found, Refuted, OutOfBudget };

    // Tries to cover A_{n,d} with at most N sets of k files.
    Outcome run(std::uint32_t k) {
        k_ = k;
        per_set_ = to_u64(binomial(k, d_), "C(k,d)");
        const std::uint64_t words = (ranker_.count() + 63) / 64;
        uncovered_.assign(words, ~std::uint64_t{0});
        if (ranker_.count() % 64 != 0) uncovered_.back() = (std::uint64_t{1} << (ranker_.count() % 64)) - 1;
        remaining_ = ranker_.count();
        chosen_.clear();
        return search();
    }

    const std::vector<FileSet>& chosen() const noexcept { return chosen_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    Outcome search() {
        if (remaining_ == 0) return Outcome::Found;
        const std::uint64_t sets_left = N_ - chosen_.size();
        if (sets_left == 0) return Outcome::Refuted;
        if (static_cast<u128>(sets_left) * per_set_ < remaining_) return Outcome::Refuted;
        if (nodes_ >= budget_) return Outcome::OutOfBudget;
        ++nodes_;

        // every cover must contain a set through the first uncovered tuple;
        // at the root this puts file 1 in the first set
        const DTuple first = ranker_.unrank(first_uncovered());
        std::vector<FileIndex> others;
        for (FileIndex x = 1; x <= n_; ++x) {
            if (!first.contains(x)) others.push_back(x);
        }
        const std::uint32_t extra = k_ - d_;
        std::vector<FileIndex> pick(extra);
        for (std::uint32_t i = 0; i < extra; ++i) pick[i] = i + 1;

        std::vector<std::uint64_t> newly;
        do {
            FileSet set = first.to_vector();
            for (FileIndex i : pick) set.push_back(others[i - 1]);
            std::sort(set.begin(), set.end());

            newly.clear();
            cover_ranks(set, newly);
            for (auto r : newly) clear_bit(r);
            remaining_ -= newly.size();
            chosen_.push_back(set);

            const Outcome out = search();
            if (out != Outcome::Refuted) return out;

            chosen_.pop_back();
            remaining_ += newly.size();
            for (auto r : newly) set_bit(r);
        } while (extra > 0 && next_subset(pick, static_cast<std::uint32_t>(others.size())));
        return Outcome::Refuted;
    }

    // ranks of the still-uncovered d-subsets of `set`
    void cover_ranks(const FileSet& set, std::vector<std::uint64_t>& out) const {
        std::vector<FileIndex> idx(d_);
        for (std::uint32_t i = 0; i < d_; ++i) idx[i] = i + 1;
        std::vector<FileIndex> elems(d_);
        do {
            for (std::uint32_t i = 0; i < d_; ++i) elems[i] = set[idx[i] - 1];
            const std::uint64_t r = ranker_.rank(DTuple(std::span<const FileIndex>(elems)));
            if (test_bit(r)) out.push_back(r);
        } while (next_subset(idx, static_cast<std::uint32_t>(set.size())));
    }

    std::uint64_t first_uncovered() const {
        for (std::size_t w = 0; w < uncovered_.size(); ++w) {
            if (uncovered_[w] != 0) return w * 64 + static_cast<std::uint64_t>(std::countr_zero(uncovered_[w]));
        }
        return ranker_.count();
    }

    bool test_bit(std::uint64_t r) const { return (uncovered_[r / 64] >> (r % 64)) & 1u; }
    void clear_bit(std::uint64_t r) { uncovered_[r / 64] &= ~(std::uint64_t{1} << (r % 64)); }
    void set_bit(std::uint64_t r) { uncovered_[r / 64] |= std::uint64_t{1} << (r % 64); }

    std::uint32_t n_;
    std::uint32_t d_;
    std::uint64_t N_;
    std::uint64_t budget_;
    TupleRanker ranker_;
    std::uint32_t k_ = 0;
    std::uint64_t per_set_ = 0;
    std::vector<std::uint64_t> uncovered_;
    std::uint64_t remaining_ = 0;
    std::vector<FileSet> chosen_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult brute_force_pi_star(std::uint32_t n, std::uint32_t d, std::uint64_t N,
                                 std::uint64_t budget) {
    if (d < 1 || d > n || N < 1) throw InputError("need n >= d >= 1 and N >= 1");
    if (budget == 0) throw InputError("oracle budget must be positive");
    if (binomial(n, d) > kOracleMaxTuples) {
        throw InputError("oracle limited to C(n,d) <= " + std::to_string(kOracleMaxTuples));
    }

    OracleResult result;
    result.upper_bound = n;
    const double start = std::ceil(lower_bound_real(n, d, N) * (1.0 - kBoundSlack));
    std::uint32_t k = std::max<std::uint32_t>(d, static_cast<std::uint32_t>(std::max(0.0, start)));

    CoverSearch search(n, d, N, budget);
    for (; k < n; ++k) {
        const auto outcome = search.run(k);
        result.nodes = search.nodes();
        if (outcome == CoverSearch::Outcome::Found) {
            result.complete = true;
            result.pi_star = k;
            result.upper_bound = k;
            result.witness = search.chosen();
            return result;
        }
        if (outcome == CoverSearch::Outcome::OutOfBudget) {
            result.pi_star = k;  // every smaller k was refuted
            return result;
        }
    }
    // k == n: the single set [n] covers everything
    result.complete = true;
    result.pi_star = n;
    FileSet all(n);
    for (FileIndex x = 1; x <= n; ++x) all[x - 1] = x;
    result.witness = {all};
    return result;
}

Allocation witness_to_allocation(const std::vector<FileSet>& witness, std::uint32_t n,
                                 std::uint32_t d, std::uint64_t N) {
    if (witness.size() > N) throw InputError("witness has more sets than workers");
    std::vector<TupleGroup> groups(N);
    for (const auto& t : enumerate_dtuples(n, d)) {
        bool placed = false;
        for (std::size_t b = 0; b < witness.size() && !placed; ++b) {
            const auto& s = witness[b];
            bool inside = true;
            for (std::size_t i = 0; i < t.size() && inside; ++i) {
                inside = std::binary_search(s.begin(), s.end(), t[i]);
            }
            if (inside) {
                groups[b].push_back(t);
                placed = true;
            }
        }
        if (!placed) throw InputError("witness does not cover " + to_string(t));
    }
    return Allocation::from_groups(n, d, std::move(groups));
}

CompareRecord compare(std::uint32_t n, std::uint32_t d, std::uint64_t N,
                      std::uint64_t oracle_budget) {
    CompareRecord rec;
    rec.n = n;
    rec.d = d;
    rec.N = N;
    rec.lb_packing = lower_bound_packing(n, d, N);
    rec.lb_real = lower_bound_real(n, d, N);

    try {
        rec.pi_ic = communication_cost(construct(n, d, N));
        rec.ratio = static_cast<double>(*rec.pi_ic) / rec.lb_real;
    } catch (const InfeasibleError& e) {
        rec.ic_error = e.what();
    }

    if (n <= kCompareOracleMaxFiles) {
        const OracleResult oracle = brute_force_pi_star(n, d, N, oracle_budget);
        rec.oracle_nodes = oracle.nodes;
        if (oracle.complete) {
            rec.oracle_status = OracleStatus::Complete;
            rec.pi_star = oracle.pi_star;
        } else {
            rec.oracle_status = OracleStatus::BudgetExhausted;
        }
    }
    return rec;
}

}  // namespace icalloc
