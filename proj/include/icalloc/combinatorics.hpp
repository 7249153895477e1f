// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace icalloc {

using u128 = unsigned __int128;

using FileIndex = std::uint32_t;  // 1-based file index

/// Largest supported subset size d for a DTuple.
inline constexpr std::size_t kMaxDegree = 12;
/// Largest supported file index; DTuple stores 16-bit elements.
inline constexpr FileIndex kMaxFileIndex = 65535;

u128 checked_add(u128 a, u128 b);
u128 checked_mul(u128 a, u128 b);

/// Narrows an exact count to 64 bits, throwing OverflowError when it does not fit.
std::uint64_t to_u64(u128 v, const char* what);

std::string to_string(u128 v);

/// Exact C(a, b); 0 when b > a. Throws OverflowError beyond 128 bits.
u128 binomial(std::uint64_t a, std::uint64_t b);

/// Pascal triangle cache of C(a, b) for 0 <= b <= a <= max_a.
///
/// Entries that do not fit in 128 bits are stored as overflowed and
/// reported by at() instead of wrapping.
class BinomialTable {
public:
    explicit BinomialTable(std::uint32_t max_a);

    std::uint32_t max_a() const noexcept { return max_a_; }

    /// C(a, b); 0 when b > a. Throws OverflowError for overflowed entries and
    /// std::out_of_range for a > max_a.
    u128 at(std::uint32_t a, std::uint32_t b) const;
    bool overflowed(std::uint32_t a, std::uint32_t b) const;

private:
    std::size_t index(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::size_t>(a) * (a + 1) / 2 + b;
    }

    std::uint32_t max_a_;
    std::vector<u128> values_;
    std::vector<bool> overflow_;
};

/// A strictly increasing d-subset of [n], 1-based.
class DTuple {
public:
    DTuple() = default;
    DTuple(std::initializer_list<FileIndex> elems);
    explicit DTuple(std::span<const FileIndex> elems);

    std::size_t size() const noexcept { return size_; }
    FileIndex operator[](std::size_t i) const noexcept { return elems_[i]; }
    FileIndex front() const noexcept { return elems_[0]; }
    FileIndex back() const noexcept { return elems_[size_ - 1]; }

    std::vector<FileIndex> to_vector() const;
    bool contains(FileIndex x) const noexcept;

    /// True iff elements are strictly increasing, within [1, n], and size() == d.
    bool valid_for(std::uint32_t n, std::uint32_t d) const noexcept;

    friend bool operator==(const DTuple& a, const DTuple& b) noexcept;
    friend std::strong_ordering operator<=>(const DTuple& a, const DTuple& b) noexcept;

private:
    friend class DTupleCursor;
    std::array<std::uint16_t, kMaxDegree> elems_{};
    std::uint8_t size_ = 0;
};

std::string to_string(const DTuple& t);
std::ostream& operator<<(std::ostream& os, const DTuple& t);

/// First tuple {1..d} of A_{n,d}. Throws InputError unless 1 <= d <= n.
DTuple first_dtuple(std::uint32_t n, std::uint32_t d);

/// Advances t to its lexicographic successor in A_{n,d}. Returns false (and
/// leaves t unchanged) when t is the last tuple.
bool next_dtuple(DTuple& t, std::uint32_t n);

/// Lazy lexicographic stream over A_{n,d}; nothing is materialized.
class DTupleRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = DTuple;
        using difference_type = std::ptrdiff_t;
        using pointer = const DTuple*;
        using reference = const DTuple&;

        iterator() = default;
        iterator(DTuple cur, std::uint32_t n) : cur_(cur), n_(n), done_(false) {}

        reference operator*() const noexcept { return cur_; }
        pointer operator->() const noexcept { return &cur_; }
        iterator& operator++() {
            if (!next_dtuple(cur_, n_)) done_ = true;
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) noexcept {
            return a.done_ == b.done_ && (a.done_ || a.cur_ == b.cur_);
        }

    private:
        DTuple cur_;
        std::uint32_t n_ = 0;
        bool done_ = true;
    };

    DTupleRange(std::uint32_t n, std::uint32_t d);

    iterator begin() const { return iterator(first_, n_); }
    iterator end() const { return iterator(); }

private:
    std::uint32_t n_;
    DTuple first_;
};

/// All d-subsets of [n] in lexicographic order. Throws InputError unless 1 <= d <= n.
DTupleRange enumerate_dtuples(std::uint32_t n, std::uint32_t d);

/// 0-based lexicographic position of t in A_{n, |t|}.
u128 lex_rank(const DTuple& t, std::uint32_t n);

/// Inverse of lex_rank. Throws InputError when rank >= C(n, d).
DTuple lex_unrank(u128 rank, std::uint32_t n, std::uint32_t d);

/// Same as lex_rank for an arbitrary sorted subset (size unrestricted).
u128 lex_rank(std::span<const FileIndex> subset, std::uint32_t n);
std::vector<FileIndex> lex_unrank_subset(u128 rank, std::uint32_t n, std::uint32_t k);

/// Advances a sorted k-subset of [n] to its lexicographic successor.
bool next_subset(std::vector<FileIndex>& subset, std::uint32_t n);

}  // namespace icalloc

namespace icalloc {

/// Fast 64-bit ranking for hot loops over a fixed A_{n,d}.
///
/// Precomputes C(a, b) for a <= n, b <= d. Construction throws OverflowError
/// when C(n, d) does not fit in 64 bits.
class TupleRanker {
public:
    TupleRanker(std::uint32_t n, std::uint32_t d);

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t d() const noexcept { return d_; }
    std::uint64_t count() const noexcept { return count_; }

    /// Rank of a tuple already known to be valid for (n, d).
    std::uint64_t rank(const DTuple& t) const noexcept {
        std::uint64_t r = 0;
        FileIndex prev = 0;
        for (std::uint32_t i = 0; i < d_; ++i) {
            r += c(n_ - prev, d_ - i) - c(n_ - t[i] + 1, d_ - i);
            prev = t[i];
        }
        return r;
    }

    DTuple unrank(std::uint64_t r) const;

private:
    std::uint64_t c(std::uint32_t a, std::uint32_t b) const noexcept {
        return table_[static_cast<std::size_t>(a) * (d_ + 1) + b];
    }

    std::uint32_t n_;
    std::uint32_t d_;
    std::uint64_t count_;
    std::vector<std::uint64_t> table_;
};

}  // namespace icalloc
