#include "storyflux/timeline.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "storyflux/error.h"

namespace storyflux {

std::int64_t floor_to_bin(std::int64_t timestamp, int bin_hours) {
  if (bin_hours <= 0) throw Error(ErrorKind::InvalidArgument, "bin_hours must be positive");
  const std::int64_t width = std::int64_t{bin_hours} * 3600;
  std::int64_t q = timestamp / width;
  if (timestamp % width != 0 && timestamp < 0) --q;
  return q * width;
}

std::vector<StorySeries> story_series(const std::vector<Post>& posts,
                                      const std::vector<Story>& stories, int bin_hours) {
  if (bin_hours <= 0) throw Error(ErrorKind::InvalidArgument, "bin_hours must be positive");
  std::unordered_map<std::string, int> story_of;
  for (const auto& story : stories) {
    for (const auto& url : story.urls) story_of.emplace(url, story.id);
  }
  std::map<std::pair<int, std::string>, std::vector<std::int64_t>> grouped;
  for (const auto& post : posts) {
    for (const auto& url : post.urls) {
      auto it = story_of.find(url.render());
      if (it == story_of.end()) continue;
      grouped[{it->second, post.community}].push_back(post.timestamp);
    }
  }
  std::vector<StorySeries> out;
  out.reserve(grouped.size());
  for (auto& [key, stamps] : grouped) {
    StorySeries s;
    s.story_id = key.first;
    s.community = key.second;
    s.bin_hours = bin_hours;
    std::sort(stamps.begin(), stamps.end());
    s.events.reserve(stamps.size());
    for (auto t : stamps) s.events.push_back(floor_to_bin(t, bin_hours));
    s.raw_timestamps = std::move(stamps);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> filter_popular(const std::vector<StorySeries>& series, std::size_t min_total) {
  std::map<int, std::size_t> totals;
  for (const auto& s : series) totals[s.story_id] += s.events.size();
  std::vector<int> kept;
  for (const auto& [id, total] : totals) {
    if (total >= min_total) kept.push_back(id);
  }
  return kept;
}

Lifespan lifespan(const StorySeries& series) {
  if (series.raw_timestamps.empty()) {
    throw Error(ErrorKind::EmptySeries, "story " + std::to_string(series.story_id) + " on " +
                                            series.community + " has no events");
  }
  const auto [lo, hi] =
      std::minmax_element(series.raw_timestamps.begin(), series.raw_timestamps.end());
  return {series.story_id, series.community, static_cast<double>(*hi - *lo) / 86400.0};
}

EmpiricalCdf lifespan_cdf(const std::vector<Lifespan>& lifespans, const std::string& community) {
  std::vector<double> days;
  for (const auto& l : lifespans) {
    if (l.community == community) days.push_back(l.span_days);
  }
  if (days.empty()) throw Error(ErrorKind::EmptyCommunity, "no lifespans for " + community);
  return empirical_cdf(std::move(days));
}

}  // namespace storyflux
