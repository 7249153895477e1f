// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "icalloc/allocation.hpp"
#include "icalloc/costs.hpp"
#include "icalloc/ic_design.hpp"
#include "icalloc/steiner.hpp"
#include "icalloc/verify.hpp"

namespace icalloc {

/// Tuple lists are left out of documents above this size unless requested.
inline constexpr std::uint64_t kInlineTupleLimit = 100000;

/// Serializable view of an allocation with its parameters, costs and verdict.
struct AllocationDocument {
    std::string source = "ic";  // "ic", "steiner" or "oracle"
    std::optional<ICParams> ic;
    std::optional<SteinerSystem> steiner;  // header only; blocks are not serialized
    Allocation allocation;
    bool has_tuples = true;
    std::vector<std::uint64_t> tuple_counts;
    CostReport costs;
    Theorem1Verdict theorem1;
    Verdict verdict;
};

/// Runs verification and cost measurement for the allocation.
AllocationDocument make_document(Allocation alloc, std::string source,
                                 std::optional<ICParams> ic = std::nullopt);

enum class TupleListing { Auto, Always, Never };

nlohmann::ordered_json to_json(const AllocationDocument& doc, TupleListing tuples = TupleListing::Auto);

/// Parses a document produced by to_json. When the document carries tuple
/// lists the allocation is rebuilt exactly; otherwise groups are empty and
/// has_tuples is false. Throws ParseError on schema violations.
AllocationDocument document_from_json(const nlohmann::ordered_json& j);
AllocationDocument parse_document(std::istream& in);

/// One line per worker: worker,file_count,tuple_count,files
void write_worker_csv(std::ostream& out, const AllocationDocument& doc);

}  // namespace icalloc
