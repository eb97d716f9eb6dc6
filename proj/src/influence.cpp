#include "storyflux/influence.h"

#include <algorithm>
#include <cmath>

#include "storyflux/error.h"

namespace storyflux {

namespace {

double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace

double InfluenceMatrix::row_sum(std::size_t source) const {
  double sum = 0;
  for (std::size_t d = 0; d < size; ++d) {
    if (const auto& c = at(source, d)) sum += c->mean;
  }
  return sum;
}

double InfluenceMatrix::external_sum(std::size_t source) const {
  double sum = 0;
  for (std::size_t d = 0; d < size; ++d) {
    if (d == source) continue;
    if (const auto& c = at(source, d)) sum += c->mean;
  }
  return sum;
}

InfluenceMatrix influence_raw(const PosteriorSamples& samples) {
  if (samples.draws.empty()) throw Error(ErrorKind::InvalidArgument, "no posterior draws");
  const std::size_t k = samples.event_counts.size();
  InfluenceMatrix out{InfluenceKind::Raw, k, std::vector<std::optional<InfluenceEstimate>>(k * k)};
  std::vector<double> per_draw(samples.draws.size());
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t d = 0; d < k; ++d) {
      const auto n_dest = samples.event_counts[d];
      if (n_dest == 0) continue;
      double mean_count = 0;
      for (std::size_t j = 0; j < samples.draws.size(); ++j) {
        const double c = samples.draws[j].parent_counts(s, d);
        mean_count += c;
        per_draw[j] = 100.0 * c / static_cast<double>(n_dest);
      }
      mean_count /= static_cast<double>(samples.draws.size());
      // Scale the mean count rather than averaging percentages, so a single
      // story reproduces its pooled aggregate exactly.
      out.at(s, d) = InfluenceEstimate{100.0 * mean_count / static_cast<double>(n_dest),
                                       quantile(per_draw, 0.05), quantile(per_draw, 0.95)};
    }
  }
  return out;
}

InfluenceMatrix influence_normalized(const InfluenceMatrix& raw,
                                     const std::vector<std::size_t>& event_counts) {
  if (event_counts.size() != raw.size) {
    throw Error(ErrorKind::InvalidArgument, "event counts do not match matrix size");
  }
  InfluenceMatrix out{InfluenceKind::Normalized, raw.size, raw.cells};
  for (std::size_t s = 0; s < raw.size; ++s) {
    for (std::size_t d = 0; d < raw.size; ++d) {
      auto& cell = out.at(s, d);
      if (!cell) continue;
      if (event_counts[s] == 0) {
        cell.reset();
        continue;
      }
      const double n = static_cast<double>(event_counts[s]);
      cell = InfluenceEstimate{cell->mean / n, cell->lo90 / n, cell->hi90 / n};
    }
  }
  return out;
}

StoryAttribution StoryAttribution::from_samples(const PosteriorSamples& samples) {
  StoryAttribution a;
  a.event_counts = samples.event_counts;
  a.parent_counts.reserve(samples.draws.size());
  for (const auto& d : samples.draws) a.parent_counts.push_back(d.parent_counts);
  return a;
}

AggregateInfluence aggregate_influence(const std::vector<StoryAttribution>& stories,
                                       AggregationMode mode) {
  if (stories.empty()) throw Error(ErrorKind::InvalidArgument, "no stories to aggregate");
  const std::size_t k = stories.front().event_counts.size();
  std::size_t n_draws = stories.front().parent_counts.size();
  for (const auto& st : stories) {
    if (st.event_counts.size() != k) throw Error(ErrorKind::InvalidArgument, "K mismatch");
    if (st.parent_counts.empty()) throw Error(ErrorKind::InvalidArgument, "story without draws");
    if (st.parent_counts.size() != n_draws) n_draws = 0;
  }

  AggregateInfluence agg;
  agg.event_counts.assign(k, 0);
  for (const auto& st : stories) {
    for (std::size_t p = 0; p < k; ++p) agg.event_counts[p] += st.event_counts[p];
  }

  // Mean parent-count matrix per story.
  std::vector<Matrix> mean_counts;
  for (const auto& st : stories) {
    Matrix m(k, k);
    for (const auto& c : st.parent_counts) {
      for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t d = 0; d < k; ++d) m(s, d) += c(s, d);
      }
    }
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t d = 0; d < k; ++d) m(s, d) /= static_cast<double>(st.parent_counts.size());
    }
    mean_counts.push_back(std::move(m));
  }

  // Aggregated raw and normalized values for one set of per-story count
  // matrices (either posterior means or draw j of every story).
  auto combine = [&](auto&& counts_of, std::size_t s, std::size_t d)
      -> std::optional<std::pair<double, double>> {
    if (mode == AggregationMode::Pooled) {
      if (agg.event_counts[d] == 0) return std::nullopt;
      double c = 0;
      for (std::size_t i = 0; i < stories.size(); ++i) c += counts_of(i)(s, d);
      const double raw = 100.0 * c / static_cast<double>(agg.event_counts[d]);
      const double norm = agg.event_counts[s] ? raw / static_cast<double>(agg.event_counts[s])
                                              : std::nan("");
      return std::pair{raw, norm};
    }
    double raw_sum = 0, raw_w = 0, norm_sum = 0, norm_w = 0;
    for (std::size_t i = 0; i < stories.size(); ++i) {
      const auto& n = stories[i].event_counts;
      if (n[d] == 0) continue;
      double total = 0;
      for (auto v : n) total += static_cast<double>(v);
      const double raw = 100.0 * counts_of(i)(s, d) / static_cast<double>(n[d]);
      raw_sum += total * raw;
      raw_w += total;
      if (n[s] > 0) {
        norm_sum += total * raw / static_cast<double>(n[s]);
        norm_w += total;
      }
    }
    if (raw_w == 0) return std::nullopt;
    return std::pair{raw_sum / raw_w, norm_w > 0 ? norm_sum / norm_w : std::nan("")};
  };

  agg.raw = {InfluenceKind::Raw, k, std::vector<std::optional<InfluenceEstimate>>(k * k)};
  agg.normalized = {InfluenceKind::Normalized, k,
                    std::vector<std::optional<InfluenceEstimate>>(k * k)};
  std::vector<double> raw_draws, norm_draws;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t d = 0; d < k; ++d) {
      auto mean = combine([&](std::size_t i) -> const Matrix& { return mean_counts[i]; }, s, d);
      if (!mean) continue;
      InfluenceEstimate raw{mean->first, mean->first, mean->first};
      InfluenceEstimate norm{mean->second, mean->second, mean->second};
      if (n_draws > 0) {
        raw_draws.clear();
        norm_draws.clear();
        for (std::size_t j = 0; j < n_draws; ++j) {
          auto v = combine(
              [&](std::size_t i) -> const Matrix& { return stories[i].parent_counts[j]; }, s, d);
          raw_draws.push_back(v->first);
          norm_draws.push_back(v->second);
        }
        raw.lo90 = quantile(raw_draws, 0.05);
        raw.hi90 = quantile(raw_draws, 0.95);
        if (mode == AggregationMode::Pooled && agg.event_counts[s] > 0) {
          // The pooled source count is the same in every draw.
          const double n_s = static_cast<double>(agg.event_counts[s]);
          norm.lo90 = raw.lo90 / n_s;
          norm.hi90 = raw.hi90 / n_s;
        } else {
          norm.lo90 = quantile(norm_draws, 0.05);
          norm.hi90 = quantile(norm_draws, 0.95);
        }
      }
      agg.raw.at(s, d) = raw;
      if (!std::isnan(mean->second)) agg.normalized.at(s, d) = norm;
    }
  }
  return agg;
}

}  // namespace storyflux
