#pragma once

#include <utility>
#include <vector>

namespace storyflux {

// Step CDF over equally weighted samples. `points` holds one entry per
// distinct value with the fraction of samples <= that value.
struct EmpiricalCdf {
  std::vector<std::pair<double, double>> points;
  double median = 0;
  std::size_t n = 0;

  // Smallest value v with F(v) >= p (lower interpolation).
  double quantile(double p) const;
  double fraction_at_most(double value) const;
  double fraction_at_least(double value) const;
};

// Throws Error(InvalidArgument) for an empty sample.
EmpiricalCdf empirical_cdf(std::vector<double> samples);

}  // namespace storyflux
