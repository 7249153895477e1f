// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace icalloc::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  // verification or bound failure
    kInfeasible = 2,   // infeasible or out-of-range parameters
    kIoError = 3,      // I/O, parse or usage error
};

/// Entry point of the icalloc tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icalloc::cli
