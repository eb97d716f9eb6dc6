#include "storyflux/storygraph.h"

#include <algorithm>
#include <unordered_map>

#include "storyflux/error.h"

namespace storyflux {

std::vector<EventMention> filter_mentions(std::vector<EventMention> mentions,
                                          int min_confidence) {
  std::erase_if(mentions,
                [&](const EventMention& m) { return m.confidence < min_confidence; });
  return mentions;
}

std::vector<EventMention> drop_hub_urls(std::vector<EventMention> mentions,
                                        std::size_t max_unique_events) {
  std::unordered_map<std::string, std::vector<std::int64_t>> per_url;
  for (const auto& m : mentions) per_url[m.url.render()].push_back(m.event_id);
  std::unordered_map<std::string, bool> hub;
  for (auto& [url, ids] : per_url) {
    std::sort(ids.begin(), ids.end());
    const auto distinct =
        static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
    hub[url] = distinct > max_unique_events;
  }
  std::erase_if(mentions, [&](const EventMention& m) { return hub[m.url.render()]; });
  return mentions;
}

WeightedGraph StoryGraph::to_weighted() const {
  std::vector<WeightedEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({e.a, e.b, static_cast<double>(e.weight)});
  return WeightedGraph(urls.size(), out);
}

std::vector<std::size_t> StoryGraph::degrees() const {
  std::vector<std::size_t> deg(urls.size(), 0);
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

StoryGraph build_story_graph(const std::vector<EventMention>& mentions) {
  StoryGraph graph;
  std::map<std::string, std::string> url_domain;
  for (const auto& m : mentions) url_domain.emplace(m.url.render(), m.url.source_domain);
  std::unordered_map<std::string, std::uint32_t> index;
  for (const auto& [url, domain] : url_domain) {
    index.emplace(url, static_cast<std::uint32_t>(graph.urls.size()));
    graph.urls.push_back(url);
    graph.domains.push_back(domain);
  }
  graph.events.resize(graph.urls.size());
  for (const auto& m : mentions) graph.events[index.at(m.url.render())].push_back(m.event_id);

  std::map<std::int64_t, std::vector<std::uint32_t>> event_nodes;
  for (std::uint32_t i = 0; i < graph.events.size(); ++i) {
    auto& ids = graph.events[i];
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids) event_nodes[id].push_back(i);
  }

  // Node lists per event are ascending because nodes were visited in order.
  std::unordered_map<std::uint64_t, std::uint32_t> weights;
  for (const auto& [id, nodes] : event_nodes) {
    for (std::size_t x = 0; x < nodes.size(); ++x) {
      for (std::size_t y = x + 1; y < nodes.size(); ++y) {
        ++weights[(std::uint64_t{nodes[x]} << 32) | nodes[y]];
      }
    }
  }
  graph.edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    graph.edges.push_back({static_cast<std::uint32_t>(key >> 32),
                           static_cast<std::uint32_t>(key & 0xffffffffu), w});
  }
  std::sort(graph.edges.begin(), graph.edges.end(), [](const StoryEdge& x, const StoryEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return graph;
}

StoryGraph prune_edges(StoryGraph graph, std::uint32_t min_weight) {
  std::erase_if(graph.edges, [&](const StoryEdge& e) { return e.weight < min_weight; });
  return graph;
}

double modularity(const StoryGraph& graph, const std::vector<int>& assignment) {
  return modularity(graph.to_weighted(), assignment);
}

Partition louvain(const StoryGraph& graph, std::uint64_t seed) {
  LouvainOptions options;
  options.seed = seed;
  return louvain(graph.to_weighted(), options);
}

std::vector<Story> extract_stories(const StoryGraph& graph, const Partition& partition) {
  std::map<std::string, std::string> url_domain;
  for (std::size_t i = 0; i < graph.urls.size(); ++i) url_domain[graph.urls[i]] = graph.domains[i];
  return extract_stories(graph, partition, url_domain);
}

std::vector<Story> extract_stories(const StoryGraph& graph, const Partition& partition,
                                   const std::map<std::string, std::string>& url_domain) {
  if (partition.assignment.size() != graph.node_count()) {
    throw Error(ErrorKind::UnassignedNode, "partition does not match graph");
  }
  const auto degree = graph.degrees();
  std::map<int, std::vector<std::uint32_t>> members;
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    if (degree[i] == 0) continue;
    members[partition.assignment[i]].push_back(i);
  }

  std::vector<Story> stories;
  for (const auto& [community, nodes] : members) {
    Story story;
    std::set<std::int64_t> events;
    for (auto node : nodes) {
      story.urls.push_back(graph.urls[node]);
      auto it = url_domain.find(graph.urls[node]);
      if (it != url_domain.end() && !it->second.empty()) story.domains.insert(it->second);
      events.insert(graph.events[node].begin(), graph.events[node].end());
    }
    if (story.domains.size() < 2) continue;
    std::sort(story.urls.begin(), story.urls.end());
    story.event_ids.assign(events.begin(), events.end());
    stories.push_back(std::move(story));
  }
  std::sort(stories.begin(), stories.end(), [](const Story& x, const Story& y) {
    if (x.urls.size() != y.urls.size()) return x.urls.size() > y.urls.size();
    return x.urls.front() < y.urls.front();
  });
  for (std::size_t i = 0; i < stories.size(); ++i) stories[i].id = static_cast<int>(i);
  return stories;
}

}  // namespace storyflux
