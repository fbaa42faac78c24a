#pragma once

#include <cstddef>
#include <span>

namespace fdrlim {

// Standard normal density, CDF, survival function and quantile.
double normal_pdf(double z);
double normal_cdf(double z);
double normal_sf(double z);

// Inverse standard normal CDF (Wichura's PPND16), accurate to ~1e-15
// for p in (0,1). Throws std::domain_error otherwise.
double normal_quantile(double p);

// Linear-interpolation sample quantile (R type 7). `sorted` must be
// ascending and nonempty, p in [0,1].
double quantile_sorted(std::span<const double> sorted, double p);

double sample_sd(std::span<const double> x);  // n-1 divisor, 0 for n < 2

}  // namespace fdrlim
