#include "storyflux/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "storyflux/csv.h"
#include "storyflux/error.h"

namespace storyflux {

Trust trust_label(double score, double cutoff) {
  if (!(score >= 0.0 && score <= 100.0)) {
    throw Error(ErrorKind::OutOfRangeScore, "score outside [0,100]: " + csv::format_double(score));
  }
  return score >= cutoff ? Trust::Trustworthy : Trust::Untrustworthy;
}

std::string normalize_community_name(std::string_view name) {
  std::string out(csv::trim(name));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void CommunityRegistry::add(std::string_view name, std::optional<std::string_view> parent) {
  auto key = normalize_community_name(name);
  if (key.empty()) throw Error(ErrorKind::InvalidCommunity, "empty community name");
  if (parents_.count(key)) throw Error(ErrorKind::InvalidCommunity, "duplicate community " + key);
  std::optional<std::string> parent_key;
  if (parent) {
    parent_key = normalize_community_name(*parent);
    auto it = parents_.find(*parent_key);
    if (it == parents_.end()) {
      throw Error(ErrorKind::InvalidCommunity, "unknown parent " + *parent_key + " for " + key);
    }
    if (it->second) {
      throw Error(ErrorKind::InvalidCommunity, "parent " + *parent_key + " is a subcommunity");
    }
  }
  parents_.emplace(key, parent_key);
  order_.push_back(std::move(key));
}

CommunityRegistry CommunityRegistry::parse(std::string_view spec) {
  CommunityRegistry registry;
  // Parents may be listed after their children, so register top-level first.
  std::vector<std::pair<std::string, std::string>> children;
  std::vector<std::string> entries;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    auto item = csv::trim(spec.substr(start, end - start));
    if (!item.empty()) entries.emplace_back(item);
    start = end + 1;
  }
  std::vector<std::pair<std::string, std::optional<std::string>>> parsed;
  for (const auto& e : entries) {
    auto colon = e.find(':');
    if (colon == std::string::npos) {
      parsed.emplace_back(e, std::nullopt);
    } else {
      parsed.emplace_back(e.substr(0, colon), e.substr(colon + 1));
    }
  }
  for (const auto& [name, parent] : parsed) {
    if (!parent) registry.add(name);
  }
  for (const auto& [name, parent] : parsed) {
    if (parent) registry.add(name, std::string_view(*parent));
  }
  // Restore the listed order.
  std::vector<std::string> order;
  for (const auto& [name, parent] : parsed) order.push_back(normalize_community_name(name));
  registry.order_ = std::move(order);
  return registry;
}

bool CommunityRegistry::contains(std::string_view name) const {
  return parents_.find(name) != parents_.end();
}

std::optional<std::string> CommunityRegistry::parent_of(std::string_view name) const {
  auto it = parents_.find(name);
  if (it == parents_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CommunityRegistry::index_of(std::string_view name) const {
  auto it = std::find(order_.begin(), order_.end(), name);
  if (it == order_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order_.begin());
}

SourceIndex::SourceIndex(std::vector<NewsSource> sources) : sources_(std::move(sources)) {
  std::sort(sources_.begin(), sources_.end(),
            [](const NewsSource& a, const NewsSource& b) { return a.domain < b.domain; });
  for (std::size_t i = 1; i < sources_.size(); ++i) {
    if (sources_[i].domain == sources_[i - 1].domain) {
      throw Error(ErrorKind::DuplicateSource, "duplicate source domain " + sources_[i].domain);
    }
  }
}

const NewsSource* SourceIndex::find_domain(std::string_view domain) const {
  auto it = std::lower_bound(sources_.begin(), sources_.end(), domain,
                             [](const NewsSource& s, std::string_view d) { return s.domain < d; });
  if (it == sources_.end() || it->domain != domain) return nullptr;
  return &*it;
}

const NewsSource* SourceIndex::match(std::string_view host) const {
  // The full host is the longest candidate; drop one label at a time.
  while (!host.empty()) {
    if (const auto* s = find_domain(host)) return s;
    const auto dot = host.find('.');
    if (dot == std::string_view::npos) break;
    host.remove_prefix(dot + 1);
  }
  return nullptr;
}

std::optional<NewsSource> match_source(const CanonicalUrl& url,
                                       const std::vector<NewsSource>& sources) {
  SourceIndex index(sources);
  if (const auto* s = index.match(url.host)) return *s;
  return std::nullopt;
}

namespace {

// Non-negative decimal with at most one fractional digit.
std::optional<double> parse_score(std::string_view s) {
  s = csv::trim(s);
  if (s.empty()) return std::nullopt;
  const auto dot = s.find('.');
  const auto whole = s.substr(0, dot);
  if (whole.empty() || !std::all_of(whole.begin(), whole.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    return std::nullopt;
  }
  if (dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (frac.size() != 1 || !std::isdigit(static_cast<unsigned char>(frac[0]))) {
      return std::nullopt;
    }
  }
  return std::stod(std::string(s));
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  s = csv::trim(s);
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

bool is_normalized_domain(const std::string& domain) {
  auto parsed = parse_canonical_url(domain);
  const auto* url = std::get_if<CanonicalUrl>(&parsed);
  return url && url->path.empty() && url->host == domain;
}

}  // namespace

SourceLoad load_sources(std::istream& in, double trust_cutoff) {
  if (!in) throw Error(ErrorKind::UnreadableInput, "sources stream is not readable");
  SourceLoad load;
  if (in.peek() == std::char_traits<char>::eof()) return load;
  if (!csv::read_header(in, {"domain", "score"})) {
    throw Error(ErrorKind::UnreadableInput, "sources file must start with header domain,score");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    ++load.records;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 2) {
      ++load.dropped_malformed;
      continue;
    }
    std::string domain(csv::trim((*fields)[0]));
    auto score = parse_score((*fields)[1]);
    if (!is_normalized_domain(domain) || !score || *score > 100.0) {
      ++load.dropped_malformed;
      continue;
    }
    const bool trusted = trust_label(*score, trust_cutoff) == Trust::Trustworthy;
    load.sources.push_back({std::move(domain), *score, trusted});
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableInput, "error while reading sources");
  return load;
}

std::map<std::string, std::size_t> PostIngestReport::as_map() const {
  return {{"records", records},
          {"emitted", emitted},
          {"dropped_malformed", dropped_malformed},
          {"dropped_unknown_community", dropped_unknown_community},
          {"dropped_outside_window", dropped_outside_window},
          {"dropped_no_source", dropped_no_source},
          {"urls_seen", urls_seen},
          {"urls_malformed", urls_malformed},
          {"urls_unresolved", urls_unresolved},
          {"urls_no_source", urls_no_source}};
}

PostLoad load_posts(std::istream& in, const SourceIndex& sources,
                    const PostLoadOptions& options) {
  if (!in) throw Error(ErrorKind::UnreadableInput, "posts stream is not readable");
  PostLoad load;
  auto& report = load.report;
  std::string line;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    ++report.records;

    Post post;
    try {
      auto record = nlohmann::json::parse(line);
      if (!record.is_object()) throw std::invalid_argument("not an object");
      const auto& id = record.at("id");
      const auto& community = record.at("community");
      const auto& ts = record.at("ts");
      const auto& urls = record.at("urls");
      if (!id.is_string() || !community.is_string() || !ts.is_number_integer() ||
          !urls.is_array()) {
        throw std::invalid_argument("field types");
      }
      post.id = id.get<std::string>();
      post.community = normalize_community_name(community.get<std::string>());
      post.timestamp = ts.get<std::int64_t>();
      for (const auto& u : urls) {
        if (!u.is_string()) throw std::invalid_argument("url type");
        post.raw_urls.push_back(u.get<std::string>());
      }
      if (auto text = record.find("text"); text != record.end() && !text->is_null()) {
        if (!text->is_string()) throw std::invalid_argument("text type");
        post.text = text->get<std::string>();
      }
      if (post.id.empty() || post.community.empty()) throw std::invalid_argument("empty key");
    } catch (const std::exception&) {
      ++report.dropped_malformed;
      continue;
    }

    if (options.communities && !options.communities->contains(post.community)) {
      ++report.dropped_unknown_community;
      continue;
    }
    if ((options.window_start && post.timestamp < *options.window_start) ||
        (options.window_end && post.timestamp >= *options.window_end)) {
      ++report.dropped_outside_window;
      continue;
    }

    for (const auto& raw : post.raw_urls) {
      ++report.urls_seen;
      std::string target = raw;
      if (options.resolver) {
        try {
          target = resolve_short_url(raw, *options.resolver, options.shorteners);
        } catch (const Error&) {
          ++report.urls_unresolved;
          continue;
        }
      }
      auto parsed = parse_canonical_url(target);
      auto* url = std::get_if<CanonicalUrl>(&parsed);
      if (!url) {
        ++report.urls_malformed;
        continue;
      }
      const auto* source = sources.match(url->host);
      if (!source) {
        ++report.urls_no_source;
        continue;
      }
      url->source_domain = source->domain;
      post.urls.push_back(std::move(*url));
    }
    if (post.urls.empty()) {
      ++report.dropped_no_source;
      continue;
    }
    load.posts.push_back(std::move(post));
    ++report.emitted;
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableInput, "error while reading posts");
  return load;
}

std::map<std::string, std::size_t> MentionIngestReport::as_map() const {
  return {{"records", records},
          {"emitted", emitted},
          {"dropped_malformed", dropped_malformed},
          {"dropped_invalid_confidence", dropped_invalid_confidence},
          {"dropped_no_source", dropped_no_source}};
}

bool is_valid_confidence(int confidence) {
  return confidence >= 10 && confidence <= 100 && confidence % 10 == 0;
}

MentionLoad load_event_mentions(std::istream& in, const SourceIndex& sources) {
  if (!in) throw Error(ErrorKind::UnreadableInput, "mentions stream is not readable");
  MentionLoad load;
  auto& report = load.report;
  if (in.peek() == std::char_traits<char>::eof()) return load;
  if (!csv::read_header(in, {"url", "event_id", "confidence"})) {
    throw Error(ErrorKind::UnreadableInput,
                "mentions file must start with header url,event_id,confidence");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    ++report.records;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 3) {
      ++report.dropped_malformed;
      continue;
    }
    auto parsed = parse_canonical_url((*fields)[0]);
    auto* url = std::get_if<CanonicalUrl>(&parsed);
    auto event_id = parse_int<std::int64_t>((*fields)[1]);
    auto confidence = parse_int<int>((*fields)[2]);
    if (!url || !event_id || !confidence) {
      ++report.dropped_malformed;
      continue;
    }
    if (!is_valid_confidence(*confidence)) {
      ++report.dropped_invalid_confidence;
      continue;
    }
    const auto* source = sources.match(url->host);
    if (!source) {
      ++report.dropped_no_source;
      continue;
    }
    url->source_domain = source->domain;
    load.mentions.push_back({std::move(*url), *event_id, *confidence});
    ++report.emitted;
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableInput, "error while reading mentions");
  return load;
}

std::vector<Post> disjoint_communities(std::vector<Post> posts, std::string_view focus,
                                       const CommunityRegistry& communities) {
  const auto focus_key = normalize_community_name(focus);
  const auto parent = communities.parent_of(focus_key);
  if (!communities.contains(focus_key) || !parent) {
    throw Error(ErrorKind::UnknownCommunity, focus_key + " is not a registered subcommunity");
  }
  std::unordered_set<std::string> focus_ids;
  for (const auto& p : posts) {
    if (p.community == focus_key) focus_ids.insert(p.id);
  }
  std::erase_if(posts, [&](const Post& p) {
    return p.community == *parent && focus_ids.count(p.id) > 0;
  });
  return posts;
}

}  // namespace storyflux
