/*
 * Copyright 2026 The irga-tvp Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "gig.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace irga {

namespace {

constexpr const char* kModule = "priors";

// All three generators sample the standardized form
// g(x) = x^(lambda-1) exp(-omega/2 (x + 1/x)) with lambda >= 0.

double mode_of(double lambda, double omega) {
  // (lambda-1 + sqrt((lambda-1)^2 + omega^2)) / omega, written to avoid cancellation
  const double a = lambda - 1.0;
  const double root = std::hypot(a, omega);
  return a >= 0.0 ? (a + root) / omega : omega / (root - a);
}

double rou_with_shift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = mode_of(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Extremes of (x - xm) sqrt(g(x)) are roots of a cubic; three real roots.
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + draw_uniform(rng) * (uplus - uminus);
    const double v = draw_uniform(rng);
    const double x = u / v + xm;
    if (x <= 0.0) continue;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

double rou_no_shift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = mode_of(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  // maximiser of x^2 g(x)
  const double ym = ((lambda + 1.0) + std::hypot(lambda + 1.0, omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);

  for (;;) {
    const double u = um * draw_uniform(rng);
    const double v = draw_uniform(rng);
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Rejection from a hat that is constant on (0, x0), x^(lambda-1) e^(-omega) on
// (x0, 2/omega) and exponential beyond. Valid for 0 <= lambda < 1.
double concave_hat(Rng& rng, double lambda, double omega) {
  const double lm1 = lambda - 1.0;
  auto log_g = [&](double x) { return lm1 * std::log(x) - 0.5 * omega * (x + 1.0 / x); };

  const double xm = omega / ((1.0 - lambda) + std::hypot(1.0 - lambda, omega));
  const double x0 = omega / (1.0 - lambda);
  const double xs = std::max(x0, 2.0 / omega);
  const double k1 = std::exp(log_g(xm));
  const double a1 = k1 * x0;

  double k2 = 0.0;
  double a2 = 0.0;
  if (x0 < 2.0 / omega) {
    k2 = std::exp(-omega);
    a2 = lambda == 0.0 ? k2 * std::log(2.0 / (omega * omega))
                       : k2 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
  }
  const double k3 = std::pow(xs, lm1);
  const double a3 = 2.0 * k3 * std::exp(-xs * omega / 2.0) / omega;
  const double total = a1 + a2 + a3;

  for (;;) {
    double v = total * draw_uniform(rng);
    double x = 0.0;
    double hat = 0.0;
    if (v <= a1) {
      x = x0 * v / a1;
      hat = k1;
    } else if (v <= a1 + a2) {
      v -= a1;
      x = lambda == 0.0 ? omega * std::exp(v * std::exp(omega))
                        : std::pow(std::pow(x0, lambda) + v * lambda / k2, 1.0 / lambda);
      hat = k2 * std::pow(x, lm1);
    } else {
      v -= a1 + a2;
      x = -2.0 / omega * std::log(std::exp(-xs * omega / 2.0) - v * omega / (2.0 * k3));
      hat = k3 * std::exp(-x * omega / 2.0);
    }
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    if (draw_uniform(rng) * hat <= std::exp(log_g(x))) return x;
  }
}

double standard_gig(Rng& rng, double lambda, double omega) {
  if (lambda > 2.0 || omega > 3.0) return rou_with_shift(rng, lambda, omega);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return rou_no_shift(rng, lambda, omega);
  return concave_hat(rng, lambda, omega);
}

}  // namespace

double draw_gig(Rng& rng, double p, double chi, double psi) {
  if (!std::isfinite(p) || !(chi >= 0.0) || !(psi >= 0.0) || !std::isfinite(chi) ||
      !std::isfinite(psi)) {
    throw_numerical(kModule, "invalid GIG parameters p=" + std::to_string(p) +
                                 " chi=" + std::to_string(chi) + " psi=" + std::to_string(psi));
  }
  if (chi == 0.0) {
    if (p > 0.0 && psi > 0.0) return draw_gamma(rng, p, psi / 2.0);
    throw_numerical(kModule, "GIG with chi = 0 requires p > 0 and psi > 0");
  }
  if (psi == 0.0) {
    if (p < 0.0) return 1.0 / draw_gamma(rng, -p, chi / 2.0);
    throw_numerical(kModule, "GIG with psi = 0 requires p < 0 and chi > 0");
  }
  const double alpha = std::sqrt(chi / psi);
  const double omega = std::sqrt(chi * psi);
  const double y = standard_gig(rng, std::abs(p), omega);
  return p >= 0.0 ? alpha * y : alpha / y;
}

}  // namespace irga
