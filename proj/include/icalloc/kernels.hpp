// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The icalloc Authors.

#pragma once

#include "icalloc/allocation.hpp"
#include "icalloc/costs.hpp"
#include "icalloc/verify.hpp"

// Data-parallel kernels over the workers of an allocation. Each kernel has a
// serial reference and an OpenMP version that must return identical results.

namespace icalloc::kernels {

/// Threads the parallel kernels will use (1 without OpenMP).
int max_threads();

WorkerLoads measure_loads_serial(const Allocation& alloc);
WorkerLoads measure_loads_parallel(const Allocation& alloc);

Verdict verify_partition_serial(const Allocation& alloc);
Verdict verify_partition_parallel(const Allocation& alloc);

}  // namespace icalloc::kernels
