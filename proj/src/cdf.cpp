#include "storyflux/cdf.h"

#include <algorithm>

#include "storyflux/error.h"

namespace storyflux {

EmpiricalCdf empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
  std::sort(samples.begin(), samples.end());
  EmpiricalCdf cdf;
  cdf.n = samples.size();
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    cdf.points.emplace_back(samples[i], static_cast<double>(i + 1) / n);
  }
  cdf.points.back().second = 1.0;
  cdf.median = samples[(samples.size() - 1) / 2];
  return cdf;
}

double EmpiricalCdf::quantile(double p) const {
  // Compare on counts to avoid rounding in i/n.
  const double target = p * static_cast<double>(n);
  for (const auto& [value, frac] : points) {
    if (frac * static_cast<double>(n) + 1e-9 >= target) return value;
  }
  return points.back().first;
}

double EmpiricalCdf::fraction_at_most(double value) const {
  double frac = 0;
  for (const auto& [v, f] : points) {
    if (v > value) break;
    frac = f;
  }
  return frac;
}

double EmpiricalCdf::fraction_at_least(double value) const {
  double below = 0;
  for (const auto& [v, f] : points) {
    if (v >= value) break;
    below = f;
  }
  return 1.0 - below;
}

}  // namespace storyflux
