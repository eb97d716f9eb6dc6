#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "storyflux/corpus.h"
#include "storyflux/louvain.h"

namespace storyflux {

inline constexpr int kDefaultMinConfidence = 60;
inline constexpr std::size_t kDefaultMaxUniqueEvents = 60;
inline constexpr std::uint32_t kDefaultEdgeWeight = 3;

// Keeps mentions with confidence >= min_confidence.
std::vector<EventMention> filter_mentions(std::vector<EventMention> mentions,
                                          int min_confidence = kDefaultMinConfidence);

// Drops every mention of a URL that carries more than max_unique_events
// distinct event ids (news homepages and other hubs).
std::vector<EventMention> drop_hub_urls(std::vector<EventMention> mentions,
                                        std::size_t max_unique_events = kDefaultMaxUniqueEvents);

struct StoryEdge {
  std::uint32_t a = 0;  // a < b
  std::uint32_t b = 0;
  std::uint32_t weight = 0;  // shared distinct event ids
};

// URL graph. Nodes are rendered canonical URLs in ascending order; edges are
// stored once with a < b, sorted, weight >= 1, no self-loops.
struct StoryGraph {
  std::vector<std::string> urls;
  std::vector<std::string> domains;
  std::vector<std::vector<std::int64_t>> events;  // sorted distinct ids per node
  std::vector<StoryEdge> edges;

  std::size_t node_count() const { return urls.size(); }
  WeightedGraph to_weighted() const;
  std::vector<std::size_t> degrees() const;
};

StoryGraph build_story_graph(const std::vector<EventMention>& mentions);

// Removes edges with weight < min_weight. Nodes are kept.
StoryGraph prune_edges(StoryGraph graph, std::uint32_t min_weight = kDefaultEdgeWeight);

double modularity(const StoryGraph& graph, const std::vector<int>& assignment);
Partition louvain(const StoryGraph& graph, std::uint64_t seed = 0);

struct Story {
  int id = 0;
  std::vector<std::string> urls;  // ascending
  std::set<std::string> domains;
  std::vector<std::int64_t> event_ids;  // ascending
};

// One story per community spanning at least two source domains. Isolated
// nodes never form stories. Ids follow descending size, then the smallest URL.
std::vector<Story> extract_stories(const StoryGraph& graph, const Partition& partition);
std::vector<Story> extract_stories(const StoryGraph& graph, const Partition& partition,
                                   const std::map<std::string, std::string>& url_domain);

}  // namespace storyflux
