#include "storyflux/config.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "storyflux/checksum.h"
#include "storyflux/csv.h"
#include "storyflux/error.h"

namespace storyflux {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::InvalidConfig,
              "invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view value) {
  Int out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    bad_value(key, value);
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used != value.size()) bad_value(key, value);
    return v;
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
  if (value.empty()) return {};
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

std::string layout_name(Chi2Layout layout) {
  switch (layout) {
    case Chi2Layout::Pairwise: return "pairwise";
    case Chi2Layout::Joint: return "joint";
    case Chi2Layout::Both: return "both";
  }
  return "both";
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value,
                         const std::filesystem::path& base_dir) {
  value = csv::trim(value);
  if (key == "posts") posts = resolve(base_dir, value);
  else if (key == "sources") sources = resolve(base_dir, value);
  else if (key == "mentions") mentions = resolve(base_dir, value);
  else if (key == "annotations") annotations = resolve(base_dir, value);
  else if (key == "output_dir") output_dir = resolve(base_dir, value);
  else if (key == "resolver_fixture") resolver_fixture = resolve(base_dir, value);
  else if (key == "resolver_cache") resolver_cache = resolve(base_dir, value);
  else if (key == "communities") communities = std::string(value);
  else if (key == "focus_community") focus_community = std::string(value);
  else if (key == "min_confidence") min_confidence = parse_integer<int>(key, value);
  else if (key == "max_unique_events") max_unique_events = parse_integer<std::size_t>(key, value);
  else if (key == "edge_weight_d") edge_weight_d = parse_integer<std::uint32_t>(key, value);
  else if (key == "min_story_total") min_story_total = parse_integer<std::size_t>(key, value);
  else if (key == "trust_cutoff") trust_cutoff = parse_real(key, value);
  else if (key == "bin_hours") bin_hours = parse_integer<int>(key, value);
  else if (key == "dt_max_hours") dt_max_hours = parse_real(key, value);
  else if (key == "gibbs_iters") gibbs_iters = parse_integer<int>(key, value);
  else if (key == "gibbs_burnin") gibbs_burnin = parse_integer<int>(key, value);
  else if (key == "seed") seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "workers") workers = parse_integer<int>(key, value);
  else if (key == "window_start") window_start = parse_integer<std::int64_t>(key, value);
  else if (key == "window_end") window_end = parse_integer<std::int64_t>(key, value);
  else if (key == "total_docs") total_docs = parse_integer<std::size_t>(key, value);
  else if (key == "top_entities") top_entities = parse_integer<std::size_t>(key, value);
  else if (key == "top_stories") top_stories = parse_integer<std::size_t>(key, value);
  else if (key == "chi2_layout") {
    if (value == "pairwise") chi2_layout = Chi2Layout::Pairwise;
    else if (value == "joint") chi2_layout = Chi2Layout::Joint;
    else if (value == "both") chi2_layout = Chi2Layout::Both;
    else bad_value(key, value);
  } else if (key == "aggregation") {
    if (value == "pooled") aggregation = AggregationMode::Pooled;
    else if (value == "weighted_mean") aggregation = AggregationMode::WeightedMean;
    else bad_value(key, value);
  }
  else if (key == "prior_background_shape") priors.background_shape = parse_real(key, value);
  else if (key == "prior_background_rate") priors.background_rate = parse_real(key, value);
  else if (key == "prior_weight_shape") priors.weight_shape = parse_real(key, value);
  else if (key == "prior_weight_rate") priors.weight_rate = parse_real(key, value);
  else if (key == "prior_mu0") priors.mu0 = parse_real(key, value);
  else if (key == "prior_kappa0") priors.kappa0 = parse_real(key, value);
  else if (key == "prior_tau_shape") priors.tau_shape = parse_real(key, value);
  else if (key == "prior_tau_rate") priors.tau_rate = parse_real(key, value);
  else throw Error(ErrorKind::InvalidConfig, "unknown config key '" + std::string(key) + "'");
}

PipelineConfig PipelineConfig::parse(std::string_view text, const std::filesystem::path& base_dir) {
  PipelineConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto body = csv::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
    }
    config.set(csv::trim(body.substr(0, eq)), body.substr(eq + 1), base_dir);
  }
  return config;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingInput, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.parent_path());
}

void PipelineConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidConfig, what);
  };
  require(min_confidence > 0, "min_confidence must be positive");
  require(max_unique_events > 0, "max_unique_events must be positive");
  require(edge_weight_d > 0, "edge_weight_d must be positive");
  require(min_story_total > 0, "min_story_total must be positive");
  require(trust_cutoff > 0 && trust_cutoff <= 100, "trust_cutoff must be in (0, 100]");
  require(bin_hours > 0, "bin_hours must be positive");
  require(dt_max_hours > 0, "dt_max_hours must be positive");
  require(gibbs_iters > 0, "gibbs_iters must be positive");
  require(gibbs_burnin >= 0 && gibbs_burnin < gibbs_iters, "gibbs_burnin must be in [0, gibbs_iters)");
  require(workers > 0, "workers must be positive");
  require(!output_dir.empty(), "output_dir is required");
  require(!window_start || !window_end || *window_start < *window_end,
          "window_start must precede window_end");
  try {
    priors.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
}

std::string PipelineConfig::canonical_text() const {
  std::map<std::string, std::string> kv;
  kv["posts"] = posts.string();
  kv["sources"] = sources.string();
  kv["mentions"] = mentions.string();
  kv["annotations"] = annotations.string();
  kv["output_dir"] = output_dir.string();
  kv["resolver_fixture"] = resolver_fixture.string();
  kv["resolver_cache"] = resolver_cache.string();
  kv["communities"] = communities;
  kv["focus_community"] = focus_community;
  kv["min_confidence"] = std::to_string(min_confidence);
  kv["max_unique_events"] = std::to_string(max_unique_events);
  kv["edge_weight_d"] = std::to_string(edge_weight_d);
  kv["min_story_total"] = std::to_string(min_story_total);
  kv["trust_cutoff"] = csv::format_double(trust_cutoff);
  kv["bin_hours"] = std::to_string(bin_hours);
  kv["dt_max_hours"] = csv::format_double(dt_max_hours);
  kv["gibbs_iters"] = std::to_string(gibbs_iters);
  kv["gibbs_burnin"] = std::to_string(gibbs_burnin);
  kv["seed"] = seed ? std::to_string(*seed) : "";
  kv["workers"] = std::to_string(workers);
  kv["window_start"] = window_start ? std::to_string(*window_start) : "";
  kv["window_end"] = window_end ? std::to_string(*window_end) : "";
  kv["total_docs"] = std::to_string(total_docs);
  kv["top_entities"] = std::to_string(top_entities);
  kv["top_stories"] = std::to_string(top_stories);
  kv["chi2_layout"] = layout_name(chi2_layout);
  kv["aggregation"] = aggregation == AggregationMode::Pooled ? "pooled" : "weighted_mean";
  kv["prior_background_shape"] = csv::format_double(priors.background_shape);
  kv["prior_background_rate"] = csv::format_double(priors.background_rate);
  kv["prior_weight_shape"] = csv::format_double(priors.weight_shape);
  kv["prior_weight_rate"] = csv::format_double(priors.weight_rate);
  kv["prior_mu0"] = csv::format_double(priors.mu0);
  kv["prior_kappa0"] = csv::format_double(priors.kappa0);
  kv["prior_tau_shape"] = csv::format_double(priors.tau_shape);
  kv["prior_tau_rate"] = csv::format_double(priors.tau_rate);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string PipelineConfig::hash() const { return hex64(fnv1a64(canonical_text())); }

}  // namespace storyflux
