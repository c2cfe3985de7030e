/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <random>

namespace irga {

using Rng = std::mt19937_64;

/// Mixes a base seed with stream coordinates (equation, origin, replication).
/// Streams derived this way do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

double draw_normal(Rng& rng);
double draw_uniform(Rng& rng);  // (0, 1)
/// Gamma with shape and *rate*.
double draw_gamma(Rng& rng, double shape, double rate);

}  // namespace irga
