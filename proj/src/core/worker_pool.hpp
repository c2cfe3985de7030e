/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace irga {

/// Worker count to use for a request; 0 means one per hardware thread.
int resolve_workers(int requested);

/// Calls task(i) for every i in [0, n) on up to `workers` threads. Each task
/// writes only its own output slot, so results do not depend on scheduling.
/// If tasks throw, the exception of the smallest failing index is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task);

}  // namespace irga
