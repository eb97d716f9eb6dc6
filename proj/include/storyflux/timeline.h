#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "storyflux/cdf.h"
#include "storyflux/corpus.h"
#include "storyflux/storygraph.h"

namespace storyflux {

inline constexpr std::size_t kDefaultMinStoryTotal = 100;

struct StorySeries {
  int story_id = 0;
  std::string community;
  // Occurrence timestamps floored to the start of their bin, ascending.
  std::vector<std::int64_t> events;
  // The same occurrences before binning, ascending.
  std::vector<std::int64_t> raw_timestamps;
  int bin_hours = 1;
};

// One event per post-URL occurrence whose URL belongs to a story; one series
// per (story, community) with at least one event, ordered by story id then
// community name.
std::vector<StorySeries> story_series(const std::vector<Post>& posts,
                                      const std::vector<Story>& stories, int bin_hours = 1);

std::int64_t floor_to_bin(std::int64_t timestamp, int bin_hours);

// Story ids (ascending) whose events summed over communities reach min_total.
std::vector<int> filter_popular(const std::vector<StorySeries>& series,
                                std::size_t min_total = kDefaultMinStoryTotal);

struct Lifespan {
  int story_id = 0;
  std::string community;
  double span_days = 0;
};

// Span between first and last raw timestamp. Throws Error(EmptySeries).
Lifespan lifespan(const StorySeries& series);

// Throws Error(EmptyCommunity) when no lifespan belongs to the community.
EmpiricalCdf lifespan_cdf(const std::vector<Lifespan>& lifespans, const std::string& community);

}  // namespace storyflux
