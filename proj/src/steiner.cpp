// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#include "icalloc/steiner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "icalloc/errors.hpp"

namespace icalloc {

namespace {

constexpr std::string_view kFano =
    "# Fano plane S(2,3,7)\n"
    "2 3 7\n"
    "1 2 3\n"
    "1 4 5\n"
    "1 6 7\n"
    "2 4 6\n"
    "2 5 7\n"
    "3 4 7\n"
    "3 5 6\n";

void check_parameters(std::uint32_t t, std::uint32_t k, std::uint32_t v) {
    if (t < 1 || t > k || k > v) {
        throw InputError("need 1 <= t <= k <= v (t=" + std::to_string(t) + ", k=" +
                         std::to_string(k) + ", v=" + std::to_string(v) + ")");
    }
    if (t > kMaxDegree) throw InputError("t beyond supported maximum");
}

void check_block(const FileSet& block, std::size_t index, std::uint32_t k, std::uint32_t v) {
    const std::string where = "block " + std::to_string(index + 1);
    if (block.size() != k) {
        throw InputError(where + " has " + std::to_string(block.size()) + " points, expected " +
                         std::to_string(k));
    }
    FileSet sorted = block;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > v) {
            throw InputError(where + " has point " + std::to_string(sorted[i]) + " outside [1, " +
                             std::to_string(v) + "]");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw InputError(where + " repeats point " + std::to_string(sorted[i]));
        }
    }
}

// Calls fn(tuple) for every t-subset of a sorted block.
template <class Fn>
void for_each_subset(const FileSet& sorted_block, std::uint32_t t, Fn&& fn) {
    std::vector<FileIndex> idx(t);
    for (std::uint32_t i = 0; i < t; ++i) idx[i] = i + 1;
    std::vector<FileIndex> elems(t);
    do {
        for (std::uint32_t i = 0; i < t; ++i) elems[i] = sorted_block[idx[i] - 1];
        fn(DTuple(std::span<const FileIndex>(elems)));
    } while (next_subset(idx, static_cast<std::uint32_t>(sorted_block.size())));
}

}  // namespace

SteinerVerdict check_steiner(const SteinerSystem& c) {
    check_parameters(c.t, c.k, c.v);
    for (std::size_t i = 0; i < c.blocks.size(); ++i) check_block(c.blocks[i], i, c.k, c.v);

    const TupleRanker ranker(c.v, c.t);
    std::vector<std::uint64_t> coverage(ranker.count(), 0);
    for (const auto& block : c.blocks) {
        FileSet sorted = block;
        std::sort(sorted.begin(), sorted.end());
        for_each_subset(sorted, c.t, [&](const DTuple& s) { ++coverage[ranker.rank(s)]; });
    }

    SteinerVerdict verdict;
    for (std::uint64_t r = 0; r < coverage.size(); ++r) {
        if (coverage[r] == 1) continue;
        const DTuple s = ranker.unrank(r);
        if (!verdict.counterexample) {
            verdict.counterexample = s;
            verdict.counterexample_coverage = coverage[r];
        }
        (coverage[r] == 0 ? verdict.uncovered : verdict.overcovered).push_back(s);
    }
    verdict.valid = !verdict.counterexample.has_value();
    return verdict;
}

DivisibilityResult divisibility_conditions(std::uint32_t t, std::uint32_t k, std::uint32_t v) {
    check_parameters(t, k, v);
    DivisibilityResult result;
    for (std::uint32_t i = 0; i < t; ++i) {
        const u128 num = binomial(v - i, t - i);
        const u128 den = binomial(k - i, t - i);
        if (num % den != 0) {
            result.pass = false;
            result.violated_at = i;
            return result;
        }
    }
    return result;
}

Allocation steiner_to_allocation(const SteinerSystem& sys) {
    const SteinerVerdict verdict = check_steiner(sys);
    if (!verdict.valid) {
        throw InputError("not a Steiner system: " + to_string(*verdict.counterexample) +
                         " covered " + std::to_string(verdict.counterexample_coverage) + " times");
    }
    std::vector<TupleGroup> groups;
    groups.reserve(sys.blocks.size());
    for (const auto& block : sys.blocks) {
        FileSet sorted = block;
        std::sort(sorted.begin(), sorted.end());
        TupleGroup g;
        for_each_subset(sorted, sys.t, [&](const DTuple& s) { g.push_back(s); });
        groups.push_back(std::move(g));
    }
    return Allocation::from_groups(sys.v, sys.t, std::move(groups));
}

namespace {

std::vector<std::uint64_t> parse_numbers(const std::string& line, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (ss >> tok) {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            throw ParseError(lineno, "expected a nonnegative integer, got '" + tok + "'");
        }
        if (tok.size() > 9) throw ParseError(lineno, "integer too large: " + tok);
        out.push_back(std::stoull(tok));
    }
    return out;
}

bool skippable(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

SteinerSystem parse_steiner(std::istream& in) {
    SteinerSystem sys;
    bool have_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        const auto nums = parse_numbers(line, lineno);
        if (!have_header) {
            if (nums.size() != 3) throw ParseError(lineno, "header must be 't k v'");
            sys.t = static_cast<std::uint32_t>(nums[0]);
            sys.k = static_cast<std::uint32_t>(nums[1]);
            sys.v = static_cast<std::uint32_t>(nums[2]);
            if (sys.t < 1 || sys.t > sys.k || sys.k > sys.v) {
                throw ParseError(lineno, "header needs 1 <= t <= k <= v");
            }
            have_header = true;
            continue;
        }
        if (nums.size() != sys.k) {
            throw ParseError(lineno, "block has " + std::to_string(nums.size()) +
                                         " points, header says k=" + std::to_string(sys.k));
        }
        sys.blocks.emplace_back(nums.begin(), nums.end());
    }
    if (!have_header) throw ParseError(0, "missing 't k v' header");
    if (sys.blocks.empty()) throw ParseError(lineno, "no blocks after header");
    return sys;
}

SteinerSystem parse_steiner(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_steiner(in);
}

SteinerSystem load_steiner_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return parse_steiner(in);
}

std::string format_steiner(const SteinerSystem& sys) {
    std::string out = std::to_string(sys.t) + " " + std::to_string(sys.k) + " " +
                      std::to_string(sys.v) + "\n";
    for (const auto& block : sys.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(block[i]);
        }
        out += '\n';
    }
    return out;
}

std::string_view fano_plane_text() { return kFano; }

SteinerSystem fano_plane() { return parse_steiner(kFano); }

}  // namespace icalloc
