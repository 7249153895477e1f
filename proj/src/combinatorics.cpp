// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "icalloc/errors.hpp"

namespace icalloc {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void check_tuple_for(std::span<const FileIndex> t, std::uint32_t n) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1 || t[i] > n || (i > 0 && t[i] <= t[i - 1])) {
            throw InputError("subset is not strictly increasing within [1, " + std::to_string(n) +
                             "]");
        }
    }
}

}  // namespace

u128 checked_add(u128 a, u128 b) {
    if (a > kU128Max - b) throw OverflowError("128-bit addition overflow");
    return a + b;
}

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > kU128Max / a) throw OverflowError("128-bit multiplication overflow");
    return a * b;
}

std::uint64_t to_u64(u128 v, const char* what) {
    if (v > std::numeric_limits<std::uint64_t>::max()) {
        throw OverflowError(std::string(what) + " exceeds 64 bits: " + to_string(v));
    }
    return static_cast<std::uint64_t>(v);
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    // result holds C(a - b + i, i); each step stays exact because i divides
    // result * (a - b + i), and after removing gcd(result, i) the rest of i
    // divides (a - b + i).
    u128 result = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        u128 num = a - b + i;
        u128 g = gcd128(result, i);
        u128 r = result / g;
        u128 den = i / g;
        result = checked_mul(r, num / den);
    }
    return result;
}

BinomialTable::BinomialTable(std::uint32_t max_a)
    : max_a_(max_a),
      values_(index(max_a, max_a) + 1, 0),
      overflow_(index(max_a, max_a) + 1, false) {
    for (std::uint32_t a = 0; a <= max_a; ++a) {
        values_[index(a, 0)] = 1;
        values_[index(a, a)] = 1;
        for (std::uint32_t b = 1; b < a; ++b) {
            const std::size_t l = index(a - 1, b - 1);
            const std::size_t r = index(a - 1, b);
            const std::size_t here = index(a, b);
            if (overflow_[l] || overflow_[r] || values_[l] > kU128Max - values_[r]) {
                overflow_[here] = true;
            } else {
                values_[here] = values_[l] + values_[r];
            }
        }
    }
}

u128 BinomialTable::at(std::uint32_t a, std::uint32_t b) const {
    if (a > max_a_) throw std::out_of_range("BinomialTable: a beyond cached range");
    if (b > a) return 0;
    if (overflow_[index(a, b)]) {
        throw OverflowError("C(" + std::to_string(a) + "," + std::to_string(b) +
                            ") exceeds 128 bits");
    }
    return values_[index(a, b)];
}

bool BinomialTable::overflowed(std::uint32_t a, std::uint32_t b) const {
    if (a > max_a_) throw std::out_of_range("BinomialTable: a beyond cached range");
    return b <= a && overflow_[index(a, b)];
}

DTuple::DTuple(std::initializer_list<FileIndex> elems)
    : DTuple(std::span<const FileIndex>(elems.begin(), elems.size())) {}

DTuple::DTuple(std::span<const FileIndex> elems) {
    if (elems.size() > kMaxDegree) {
        throw InputError("tuple size " + std::to_string(elems.size()) + " exceeds supported " +
                         std::to_string(kMaxDegree));
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] > kMaxFileIndex) throw InputError("file index beyond 65535");
        elems_[i] = static_cast<std::uint16_t>(elems[i]);
    }
    size_ = static_cast<std::uint8_t>(elems.size());
}

std::vector<FileIndex> DTuple::to_vector() const {
    return std::vector<FileIndex>(elems_.begin(), elems_.begin() + size_);
}

bool DTuple::contains(FileIndex x) const noexcept {
    return std::find(elems_.begin(), elems_.begin() + size_, x) != elems_.begin() + size_;
}

bool DTuple::valid_for(std::uint32_t n, std::uint32_t d) const noexcept {
    if (size_ != d) return false;
    for (std::size_t i = 0; i < size_; ++i) {
        if (elems_[i] < 1 || elems_[i] > n) return false;
        if (i > 0 && elems_[i] <= elems_[i - 1]) return false;
    }
    return true;
}

bool operator==(const DTuple& a, const DTuple& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.elems_.begin(), a.elems_.begin() + a.size_,
                                            b.elems_.begin());
}

std::strong_ordering operator<=>(const DTuple& a, const DTuple& b) noexcept {
    return std::lexicographical_compare_three_way(a.elems_.begin(), a.elems_.begin() + a.size_,
                                                  b.elems_.begin(), b.elems_.begin() + b.size_);
}

std::string to_string(const DTuple& t) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + "}";
}

std::ostream& operator<<(std::ostream& os, const DTuple& t) { return os << to_string(t); }

class DTupleCursor {
public:
    static bool advance(DTuple& t, std::uint32_t n) {
        const std::size_t d = t.size_;
        // rightmost position that can still move right
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (t.elems_[i] < n - (d - 1 - i)) {
                ++t.elems_[i];
                for (std::size_t j = i + 1; j < d; ++j) t.elems_[j] = t.elems_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }
};

DTuple first_dtuple(std::uint32_t n, std::uint32_t d) {
    if (d < 1 || d > n) {
        throw InputError("need 1 <= d <= n (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                         ")");
    }
    if (n > kMaxFileIndex) throw InputError("n beyond 65535");
    std::vector<FileIndex> e(d);
    std::iota(e.begin(), e.end(), 1u);
    return DTuple(e);
}

bool next_dtuple(DTuple& t, std::uint32_t n) { return DTupleCursor::advance(t, n); }

DTupleRange::DTupleRange(std::uint32_t n, std::uint32_t d) : n_(n), first_(first_dtuple(n, d)) {}

DTupleRange enumerate_dtuples(std::uint32_t n, std::uint32_t d) { return DTupleRange(n, d); }

u128 lex_rank(std::span<const FileIndex> subset, std::uint32_t n) {
    check_tuple_for(subset, n);
    const std::size_t k = subset.size();
    u128 rank = 0;
    FileIndex prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        // subsets agreeing before i with a smaller value at i; hockey-stick sum of
        // C(n - v, k - i - 1) over prev < v < subset[i]
        rank = checked_add(rank, binomial(n - prev, k - i) - binomial(n - subset[i] + 1, k - i));
        prev = subset[i];
    }
    return rank;
}

u128 lex_rank(const DTuple& t, std::uint32_t n) {
    const auto v = t.to_vector();
    return lex_rank(std::span<const FileIndex>(v), n);
}

std::vector<FileIndex> lex_unrank_subset(u128 rank, std::uint32_t n, std::uint32_t k) {
    if (k > n) throw InputError("subset size exceeds n");
    if (rank >= binomial(n, k)) {
        throw InputError("rank " + to_string(rank) + " out of range for C(" + std::to_string(n) +
                         "," + std::to_string(k) + ")");
    }
    std::vector<FileIndex> out;
    out.reserve(k);
    FileIndex v = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        for (;; ++v) {
            const u128 block = binomial(n - v, k - i - 1);
            if (rank < block) break;
            rank -= block;
        }
        out.push_back(v);
        ++v;
    }
    return out;
}

DTuple lex_unrank(u128 rank, std::uint32_t n, std::uint32_t d) {
    if (d < 1 || d > n) throw InputError("need 1 <= d <= n");
    const auto v = lex_unrank_subset(rank, n, d);
    return DTuple(std::span<const FileIndex>(v));
}

bool next_subset(std::vector<FileIndex>& subset, std::uint32_t n) {
    const std::size_t k = subset.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (subset[i] < n - (k - 1 - i)) {
            ++subset[i];
            for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace icalloc

namespace icalloc {

TupleRanker::TupleRanker(std::uint32_t n, std::uint32_t d)
    : n_(n), d_(d), count_(to_u64(binomial(n, d), "C(n,d)")),
      table_(static_cast<std::size_t>(n + 1) * (d + 1), 0) {
    if (d < 1 || d > n) throw InputError("need 1 <= d <= n");
    if (d > kMaxDegree) throw InputError("d exceeds supported degree");
    for (std::uint32_t a = 0; a <= n; ++a) {
        for (std::uint32_t b = 0; b <= d; ++b) {
            table_[static_cast<std::size_t>(a) * (d + 1) + b] =
                to_u64(binomial(a, b), "binomial table entry");
        }
    }
}

DTuple TupleRanker::unrank(std::uint64_t r) const { return lex_unrank(r, n_, d_); }

}  // namespace icalloc
