/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include "rng.hpp"

namespace irga {

/// Draw from the generalized inverse Gaussian law with density proportional to
/// x^(p-1) exp(-(chi/x + psi*x)/2), x > 0.
///
/// Uses the Hoermann-Leydold (2014) generators: ratio-of-uniforms with mode
/// shift for p > 2 or omega > 3, ratio-of-uniforms without shift where the
/// density is not too concentrated near zero, and their rejection sampler
/// with a three-piece hat otherwise. Negative p is handled through
/// X ~ GIG(p, chi, psi) <=> 1/X ~ GIG(-p, psi, chi).
///
/// Requires chi > 0 and psi > 0, except chi = 0 with p > 0 (Gamma limit) and
/// psi = 0 with p < 0 (inverse Gamma limit).
double draw_gig(Rng& rng, double p, double chi, double psi);

}  // namespace irga
