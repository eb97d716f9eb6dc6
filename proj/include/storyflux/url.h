#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "storyflux/error.h"

namespace storyflux {

// A news URL reduced to host + path. Query, fragment, scheme, port, userinfo,
// any leading "www." labels and trailing slashes are gone; path case and
// percent-encoding are kept as they came in.
struct CanonicalUrl {
  std::string host;
  std::string path;
  // Domain of the matched NewsSource; empty until matched.
  std::string source_domain;

  std::string render() const { return host + path; }

  friend bool operator==(const CanonicalUrl& a, const CanonicalUrl& b) {
    return a.host == b.host && a.path == b.path;
  }
  friend std::strong_ordering operator<=>(const CanonicalUrl& a, const CanonicalUrl& b) {
    if (auto c = a.host <=> b.host; c != 0) return c;
    return a.path <=> b.path;
  }
};

// Non-throwing form; the error alternative is MalformedUrl or EmptyHost.
std::variant<CanonicalUrl, ErrorKind> parse_canonical_url(std::string_view raw);

// Throws Error(MalformedUrl | EmptyHost).
CanonicalUrl canonicalize_url(std::string_view raw);

// Hosts treated as URL shorteners. Matching is exact or on a dot boundary.
class ShortenerSet {
 public:
  ShortenerSet() = default;
  explicit ShortenerSet(std::set<std::string> hosts) : hosts_(std::move(hosts)) {}

  static ShortenerSet defaults();

  bool contains_host(std::string_view host) const;
  const std::set<std::string>& hosts() const { return hosts_; }

 private:
  std::set<std::string> hosts_;
};

// One redirect hop at a time. Implementations return nullopt when the URL does
// not redirect and may throw Error(ResolverTimeout).
class UrlResolver {
 public:
  virtual ~UrlResolver() = default;
  virtual std::optional<std::string> next_hop(const std::string& url) = 0;
};

// Redirects from a recorded mapping. Keys and lookups are compared by their
// canonical rendering, so "https://bit.ly/a" and "bit.ly/a" are the same key.
class FixtureResolver : public UrlResolver {
 public:
  FixtureResolver() = default;
  explicit FixtureResolver(const std::map<std::string, std::string>& redirects);

  void add(const std::string& from, const std::string& to);
  std::optional<std::string> next_hop(const std::string& url) override;

  // Reads "from,to" CSV rows (header "from,to").
  static FixtureResolver from_file(const std::filesystem::path& path);

 private:
  std::map<std::string, std::string> redirects_;
};

// Memoizes next_hop answers of an inner resolver, keyed by the raw URL, and
// persists them as a "from,to" CSV ("to" empty for terminal URLs). Without an
// inner resolver only cached answers are available and misses are terminal.
class CachingResolver : public UrlResolver {
 public:
  explicit CachingResolver(UrlResolver* inner = nullptr) : inner_(inner) {}

  std::optional<std::string> next_hop(const std::string& url) override;

  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::size_t size() const { return cache_.size(); }

 private:
  UrlResolver* inner_;
  std::map<std::string, std::optional<std::string>> cache_;
};

inline constexpr int kMaxRedirects = 10;

// Follows redirects for shortener hosts; other URLs pass through unchanged.
// Throws Error(ResolverLoop) past kMaxRedirects hops and lets
// Error(ResolverTimeout) from the resolver propagate.
std::string resolve_short_url(const std::string& raw, UrlResolver& resolver,
                              const ShortenerSet& shorteners = ShortenerSet::defaults());

}  // namespace storyflux
