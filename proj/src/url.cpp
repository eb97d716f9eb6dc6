#include "storyflux/url.h"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "storyflux/csv.h"

namespace storyflux {

namespace {

bool is_scheme_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool is_host_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_';
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::variant<CanonicalUrl, ErrorKind> parse_canonical_url(std::string_view raw) {
  std::string_view s = csv::trim(raw);
  if (s.empty()) return ErrorKind::MalformedUrl;
  for (char c : s) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == 0x7f) return ErrorKind::MalformedUrl;
  }

  // Scheme, if any, must be followed by "//".
  bool had_scheme = false;
  if (auto colon = s.find(':'); colon != std::string_view::npos) {
    const auto first_delim = s.find_first_of("/?#");
    if (colon < first_delim) {
      const auto scheme = s.substr(0, colon);
      const bool looks_like_scheme =
          !scheme.empty() && std::isalpha(static_cast<unsigned char>(scheme[0])) &&
          std::all_of(scheme.begin(), scheme.end(), is_scheme_char);
      if (looks_like_scheme) {
        if (s.substr(colon + 1, 2) != "//") {
          // "host:port/..." without a scheme is still acceptable.
          const auto rest = s.substr(colon + 1);
          const auto port_end = rest.find_first_of("/?#");
          const auto port = rest.substr(0, port_end);
          if (port.empty() || !std::all_of(port.begin(), port.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
              })) {
            return ErrorKind::MalformedUrl;
          }
        } else {
          s.remove_prefix(colon + 3);
          had_scheme = true;
        }
      }
    }
  }
  if (!had_scheme && s.substr(0, 2) == "//") {
    s.remove_prefix(2);
    had_scheme = true;
  }

  const auto authority_end = s.find_first_of("/?#");
  std::string_view authority = s.substr(0, authority_end);
  std::string_view rest =
      authority_end == std::string_view::npos ? std::string_view{} : s.substr(authority_end);

  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }
  if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    const auto port = authority.substr(colon + 1);
    if (!std::all_of(port.begin(), port.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return ErrorKind::MalformedUrl;
    }
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) {
    return had_scheme ? ErrorKind::EmptyHost : ErrorKind::MalformedUrl;
  }
  if (!std::all_of(authority.begin(), authority.end(), is_host_char)) {
    return ErrorKind::MalformedUrl;
  }

  std::string host = to_lower(authority);
  if (!host.empty() && host.back() == '.') host.pop_back();
  while (host.rfind("www.", 0) == 0) host.erase(0, 4);
  if (host.empty()) return ErrorKind::EmptyHost;
  if (host.find('.') == std::string::npos || host.front() == '.' ||
      host.find("..") != std::string::npos || host.back() == '.') {
    return ErrorKind::MalformedUrl;
  }

  const auto path_end = rest.find_first_of("?#");
  std::string path(rest.substr(0, path_end));
  while (!path.empty() && path.back() == '/') path.pop_back();

  return CanonicalUrl{std::move(host), std::move(path), {}};
}

CanonicalUrl canonicalize_url(std::string_view raw) {
  auto parsed = parse_canonical_url(raw);
  if (auto* kind = std::get_if<ErrorKind>(&parsed)) {
    throw Error(*kind, "cannot canonicalize URL '" + std::string(raw) + "'");
  }
  return std::get<CanonicalUrl>(std::move(parsed));
}

ShortenerSet ShortenerSet::defaults() {
  return ShortenerSet({"bit.ly", "buff.ly", "dlvr.it", "fb.me", "goo.gl", "ift.tt",
                       "nyti.ms", "ow.ly", "t.co", "tinyurl.com", "trib.al", "wp.me"});
}

bool ShortenerSet::contains_host(std::string_view host) const {
  while (true) {
    if (hosts_.count(std::string(host))) return true;
    const auto dot = host.find('.');
    if (dot == std::string_view::npos) return false;
    host.remove_prefix(dot + 1);
  }
}

namespace {

std::string fixture_key(const std::string& url) {
  auto parsed = parse_canonical_url(url);
  if (auto* u = std::get_if<CanonicalUrl>(&parsed)) return u->render();
  return url;
}

}  // namespace

FixtureResolver::FixtureResolver(const std::map<std::string, std::string>& redirects) {
  for (const auto& [from, to] : redirects) add(from, to);
}

void FixtureResolver::add(const std::string& from, const std::string& to) {
  redirects_[fixture_key(from)] = to;
}

std::optional<std::string> FixtureResolver::next_hop(const std::string& url) {
  auto it = redirects_.find(fixture_key(url));
  if (it == redirects_.end()) return std::nullopt;
  return it->second;
}

FixtureResolver FixtureResolver::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in || !csv::read_header(in, {"from", "to"})) {
    throw Error(ErrorKind::UnreadableInput, "cannot read redirect fixture " + path.string());
  }
  FixtureResolver resolver;
  std::string line;
  while (std::getline(in, line)) {
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 2) continue;
    resolver.add((*fields)[0], (*fields)[1]);
  }
  return resolver;
}

std::optional<std::string> CachingResolver::next_hop(const std::string& url) {
  if (auto it = cache_.find(url); it != cache_.end()) return it->second;
  if (!inner_) return std::nullopt;
  auto hop = inner_->next_hop(url);
  cache_.emplace(url, hop);
  return hop;
}

void CachingResolver::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  if (!csv::read_header(in, {"from", "to"})) {
    throw Error(ErrorKind::UnreadableInput, "bad resolver cache header in " + path.string());
  }
  std::string line;
  while (std::getline(in, line)) {
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 2) continue;
    const auto& to = (*fields)[1];
    cache_[(*fields)[0]] = to.empty() ? std::nullopt : std::optional<std::string>(to);
  }
}

void CachingResolver::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  out << "from,to\n";
  for (const auto& [from, to] : cache_) csv::write_row(out, {from, to.value_or("")});
}

std::string resolve_short_url(const std::string& raw, UrlResolver& resolver,
                              const ShortenerSet& shorteners) {
  auto parsed = parse_canonical_url(raw);
  const auto* url = std::get_if<CanonicalUrl>(&parsed);
  if (!url || !shorteners.contains_host(url->host)) return raw;

  std::string current = raw;
  int hops = 0;
  while (auto next = resolver.next_hop(current)) {
    if (++hops > kMaxRedirects) {
      throw Error(ErrorKind::ResolverLoop, "redirect chain longer than " +
                                               std::to_string(kMaxRedirects) + " for " + raw);
    }
    current = std::move(*next);
  }
  return current;
}

}  // namespace storyflux
