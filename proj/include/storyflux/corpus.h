#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storyflux/trust.h"
#include "storyflux/url.h"

namespace storyflux {

// Known communities and their one-level parent relation.
class CommunityRegistry {
 public:
  // Names are lowercased. Throws Error(InvalidCommunity) for empty or duplicate
  // names, unknown parents, or a parent that is itself a subcommunity.
  void add(std::string_view name, std::optional<std::string_view> parent = std::nullopt);

  // Parses "twitter,reddit,the_donald:reddit" (child:parent).
  static CommunityRegistry parse(std::string_view spec);

  bool contains(std::string_view name) const;
  std::optional<std::string> parent_of(std::string_view name) const;
  // Registration order; this is also the process order used for Hawkes fits.
  const std::vector<std::string>& names() const { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::optional<std::string>, std::less<>> parents_;
};

std::string normalize_community_name(std::string_view name);

struct NewsSource {
  std::string domain;
  double score = 0;
  bool trustworthy = false;
};

// Domain lookup with dot-boundary suffix matching; longest match wins.
class SourceIndex {
 public:
  SourceIndex() = default;
  // Throws Error(DuplicateSource) when two sources share a domain.
  explicit SourceIndex(std::vector<NewsSource> sources);

  const NewsSource* match(std::string_view host) const;
  const NewsSource* find_domain(std::string_view domain) const;
  const std::vector<NewsSource>& sources() const { return sources_; }
  std::size_t size() const { return sources_.size(); }

 private:
  std::vector<NewsSource> sources_;  // sorted by domain
};

std::optional<NewsSource> match_source(const CanonicalUrl& url,
                                       const std::vector<NewsSource>& sources);

struct SourceLoad {
  std::vector<NewsSource> sources;
  std::size_t records = 0;
  std::size_t dropped_malformed = 0;
};

// "domain,score" CSV. Scores carry at most one fractional digit.
SourceLoad load_sources(std::istream& in, double trust_cutoff = kDefaultTrustCutoff);

struct Post {
  std::string id;
  std::string community;
  std::int64_t timestamp = 0;
  std::vector<std::string> raw_urls;
  // Canonicalized URLs that matched a source, one per occurrence.
  std::vector<CanonicalUrl> urls;
  std::optional<std::string> text;
};

struct PostIngestReport {
  std::size_t records = 0;
  std::size_t emitted = 0;
  std::size_t dropped_malformed = 0;
  std::size_t dropped_unknown_community = 0;
  std::size_t dropped_outside_window = 0;
  std::size_t dropped_no_source = 0;
  // URL-level tallies; they do not enter the record balance.
  std::size_t urls_seen = 0;
  std::size_t urls_malformed = 0;
  std::size_t urls_unresolved = 0;
  std::size_t urls_no_source = 0;

  std::size_t dropped_total() const {
    return dropped_malformed + dropped_unknown_community + dropped_outside_window +
           dropped_no_source;
  }
  std::map<std::string, std::size_t> as_map() const;
};

struct PostLoadOptions {
  // When set, posts from unregistered communities are dropped.
  const CommunityRegistry* communities = nullptr;
  std::optional<std::int64_t> window_start;  // inclusive
  std::optional<std::int64_t> window_end;    // exclusive
  UrlResolver* resolver = nullptr;
  ShortenerSet shorteners = ShortenerSet::defaults();
};

struct PostLoad {
  std::vector<Post> posts;
  PostIngestReport report;
};

// One JSON object per line: id, community, ts, urls, optional text. Blank
// lines are ignored. Throws Error(UnreadableInput) only on stream failure.
PostLoad load_posts(std::istream& in, const SourceIndex& sources,
                    const PostLoadOptions& options = {});

struct EventMention {
  CanonicalUrl url;
  std::int64_t event_id = 0;
  int confidence = 0;
};

struct MentionIngestReport {
  std::size_t records = 0;
  std::size_t emitted = 0;
  std::size_t dropped_malformed = 0;
  std::size_t dropped_invalid_confidence = 0;
  std::size_t dropped_no_source = 0;

  std::size_t dropped_total() const {
    return dropped_malformed + dropped_invalid_confidence + dropped_no_source;
  }
  std::map<std::string, std::size_t> as_map() const;
};

struct MentionLoad {
  std::vector<EventMention> mentions;
  MentionIngestReport report;
};

bool is_valid_confidence(int confidence);

// "url,event_id,confidence" CSV.
MentionLoad load_event_mentions(std::istream& in, const SourceIndex& sources);

// Removes from the parent community every post that also appears (same id) in
// the focus subcommunity. Throws Error(UnknownCommunity) if focus is not a
// registered subcommunity.
std::vector<Post> disjoint_communities(std::vector<Post> posts, std::string_view focus,
                                       const CommunityRegistry& communities);

}  // namespace storyflux
