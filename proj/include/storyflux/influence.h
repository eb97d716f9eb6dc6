#pragma once

#include <optional>
#include <vector>

#include "storyflux/gibbs.h"

namespace storyflux {

struct InfluenceEstimate {
  double mean = 0;
  double lo90 = 0;
  double hi90 = 0;
};

enum class InfluenceKind { Raw, Normalized };

// K x K source -> destination estimates. Cells are nullopt ("undefined")
// when the denominator count is zero.
struct InfluenceMatrix {
  InfluenceKind kind = InfluenceKind::Raw;
  std::size_t size = 0;
  std::vector<std::optional<InfluenceEstimate>> cells;

  const std::optional<InfluenceEstimate>& at(std::size_t source, std::size_t dest) const {
    return cells[source * size + dest];
  }
  std::optional<InfluenceEstimate>& at(std::size_t source, std::size_t dest) {
    return cells[source * size + dest];
  }
  // Sum of the defined means in one source row.
  double row_sum(std::size_t source) const;
  // Row sum excluding the diagonal.
  double external_sum(std::size_t source) const;
};

// raw(s, d) = 100 * E[C(s, d)] / N_d in percent, with the central 90%
// interval of the per-draw values.
InfluenceMatrix influence_raw(const PosteriorSamples& samples);

// normalized(s, d) = raw(s, d) / N_s.
InfluenceMatrix influence_normalized(const InfluenceMatrix& raw,
                                     const std::vector<std::size_t>& event_counts);

// Per-story attribution retained for aggregation: one parent-count matrix per
// posterior draw and the story's event counts.
struct StoryAttribution {
  std::vector<Matrix> parent_counts;
  std::vector<std::size_t> event_counts;

  static StoryAttribution from_samples(const PosteriorSamples& samples);
};

enum class AggregationMode {
  // 100 * sum_i E[C_i(s, d)] / sum_i N_{i,d}.
  Pooled,
  // Per-story raw matrices averaged with weights equal to story event totals.
  WeightedMean,
};

struct AggregateInfluence {
  InfluenceMatrix raw;
  InfluenceMatrix normalized;
  std::vector<std::size_t> event_counts;  // pooled N_k
};

// Intervals come from draw-wise pooling, which needs the same number of draws
// per story; with unequal draw counts they collapse to the mean. Throws
// Error(InvalidArgument) for an empty list or mismatched K.
AggregateInfluence aggregate_influence(const std::vector<StoryAttribution>& stories,
                                       AggregationMode mode = AggregationMode::Pooled);

}  // namespace storyflux
