#include "storyflux/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "storyflux/checksum.h"
#include "storyflux/corpus.h"
#include "storyflux/csv.h"
#include "storyflux/entitystats.h"
#include "storyflux/gibbs.h"
#include "storyflux/storygraph.h"
#include "storyflux/truststats.h"

namespace storyflux::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingInput:
    case ErrorKind::InvalidConfig:
    case ErrorKind::UnreadableInput:
    case ErrorKind::MissingArtifact:
    case ErrorKind::DuplicateSource:
    case ErrorKind::InvalidCommunity:
    case ErrorKind::UnknownCommunity:
      return kExitInputError;
    case ErrorKind::NoPopularStories:
    case ErrorKind::EmptyGraph:
    case ErrorKind::EmptyEvents:
    case ErrorKind::EmptyCommunity:
      return kExitEmptyResult;
    default:
      return kExitInternal;
  }
}

const std::vector<std::string>& required_bundle_files() {
  static const std::vector<std::string> files = {
      "trust_shares.csv", "chi2.csv",        "entity_shares.csv",        "stories.csv",
      "lifespans.csv",    "influence_raw.csv", "influence_normalized.csv", "summary.txt"};
  return files;
}

namespace {

using Clock = std::chrono::steady_clock;

void require_input(const fs::path& path, const char* what) {
  if (path.empty() || !fs::is_regular_file(path)) {
    throw Error(ErrorKind::MissingInput,
                std::string(what) + " input not found: " + (path.empty() ? "<unset>" : path.string()));
  }
}

fs::path artifact(const PipelineConfig& config, const fs::path& rel) {
  return config.output_dir / rel;
}

std::ifstream open_artifact(const PipelineConfig& config, const fs::path& rel) {
  const auto path = artifact(config, rel);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingArtifact, "missing artifact " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::MissingInput, "cannot write " + path.string());
  return out;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnreadableInput, "cannot open " + path.string());
  return in;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in,
                                               const std::vector<std::string>& header,
                                               const std::string& name) {
  if (!csv::read_header(in, header)) {
    throw Error(ErrorKind::MissingArtifact, "artifact " + name + " has an unexpected header");
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != header.size()) {
      throw Error(ErrorKind::InvariantViolation, "corrupt row in artifact " + name);
    }
    rows.push_back(std::move(*fields));
  }
  return rows;
}

void write_json(const fs::path& path, const json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
}

void update_manifest(const PipelineConfig& config, const std::string& stage, double seconds,
                     const json& counts, const std::vector<fs::path>& outputs) {
  const auto path = artifact(config, paths::kManifest);
  json manifest;
  if (std::ifstream in(path); in) {
    try {
      manifest = json::parse(in);
    } catch (const json::exception&) {
      manifest = json::object();
    }
  }
  if (!manifest.is_object() || manifest.value("config_hash", "") != config.hash()) {
    manifest = json::object();
    manifest["config_hash"] = config.hash();
  }
  json entry;
  entry["seconds"] = seconds;
  entry["counts"] = counts;
  json checksums = json::object();
  for (const auto& out : outputs) {
    checksums[fs::relative(out, config.output_dir).generic_string()] = file_checksum(out);
  }
  entry["outputs"] = checksums;
  manifest["stages"][stage] = entry;
  write_json(path, manifest);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SourceIndex read_sources_artifact(const PipelineConfig& config) {
  auto in = open_artifact(config, paths::kSources);
  std::vector<NewsSource> sources;
  for (auto& row : read_csv(in, {"domain", "score", "trustworthy"}, "sources.csv")) {
    sources.push_back({row[0], std::stod(row[1]), row[2] == "1"});
  }
  return SourceIndex(std::move(sources));
}

std::vector<Post> read_posts_artifact(const PipelineConfig& config) {
  auto in = open_artifact(config, paths::kPosts);
  std::vector<Post> posts;
  std::string last_index;
  for (auto& row : read_csv(in, {"post_index", "post_id", "community", "ts", "url", "domain"},
                            "posts.csv")) {
    if (posts.empty() || row[0] != last_index) {
      Post p;
      p.id = row[1];
      p.community = row[2];
      p.timestamp = std::stoll(row[3]);
      posts.push_back(std::move(p));
      last_index = row[0];
    }
    auto url = canonicalize_url(row[4]);
    url.source_domain = row[5];
    posts.back().raw_urls.push_back(row[4]);
    posts.back().urls.push_back(std::move(url));
  }
  return posts;
}

std::vector<EventMention> read_mentions_artifact(const PipelineConfig& config) {
  auto in = open_artifact(config, paths::kMentions);
  std::vector<EventMention> mentions;
  for (auto& row : read_csv(in, {"url", "domain", "event_id", "confidence"}, "mentions.csv")) {
    auto url = canonicalize_url(row[0]);
    url.source_domain = row[1];
    mentions.push_back({std::move(url), std::stoll(row[2]), std::stoi(row[3])});
  }
  return mentions;
}

std::vector<Story> read_stories_artifact(const PipelineConfig& config) {
  auto in = open_artifact(config, paths::kStories);
  std::map<int, Story> by_id;
  for (auto& row : read_csv(in, {"story_id", "url", "domain"}, "stories.csv")) {
    const int id = std::stoi(row[0]);
    auto& story = by_id[id];
    story.id = id;
    story.urls.push_back(row[1]);
    story.domains.insert(row[2]);
  }
  std::vector<Story> stories;
  for (auto& [id, story] : by_id) stories.push_back(std::move(story));
  return stories;
}

std::string render_cell(const std::optional<InfluenceEstimate>& cell, double InfluenceEstimate::*f) {
  return cell ? csv::format_double((*cell).*f) : "NA";
}

struct InfluenceTable {
  std::vector<std::string> communities;
  std::map<std::pair<std::string, std::string>, std::optional<InfluenceEstimate>> cells;
};

InfluenceTable read_influence_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingArtifact, "missing artifact " + path.string());
  InfluenceTable table;
  for (auto& row : read_csv(in, {"source", "destination", "mean", "lo90", "hi90"},
                            path.filename().string())) {
    if (std::find(table.communities.begin(), table.communities.end(), row[0]) ==
        table.communities.end()) {
      table.communities.push_back(row[0]);
    }
    std::optional<InfluenceEstimate> cell;
    if (row[2] != "NA") cell = InfluenceEstimate{std::stod(row[2]), std::stod(row[3]), std::stod(row[4])};
    table.cells[{row[0], row[1]}] = cell;
  }
  return table;
}

void copy_artifact(const fs::path& from, const fs::path& to) {
  if (!fs::is_regular_file(from)) throw Error(ErrorKind::MissingArtifact, "missing artifact " + from.string());
  fs::create_directories(to.parent_path());
  fs::copy_file(from, to, fs::copy_options::overwrite_existing);
}

}  // namespace

void write_influence_csv(const fs::path& path, const InfluenceMatrix& matrix,
                         const std::vector<std::string>& communities) {
  auto out = open_output(path);
  out << "source,destination,mean,lo90,hi90\n";
  for (std::size_t s = 0; s < matrix.size; ++s) {
    for (std::size_t d = 0; d < matrix.size; ++d) {
      const auto& cell = matrix.at(s, d);
      csv::write_row(out, {communities[s], communities[d], render_cell(cell, &InfluenceEstimate::mean),
                           render_cell(cell, &InfluenceEstimate::lo90),
                           render_cell(cell, &InfluenceEstimate::hi90)});
    }
  }
}

std::vector<std::string> process_order(const PipelineConfig& config,
                                       const std::vector<Post>& posts) {
  if (!config.communities.empty()) return CommunityRegistry::parse(config.communities).names();
  std::set<std::string> names;
  for (const auto& p : posts) names.insert(p.community);
  return {names.begin(), names.end()};
}

EventSeq story_event_seq(const std::vector<StorySeries>& story_series,
                         const std::vector<std::string>& communities, int bin_hours) {
  EventSeq seq;
  seq.processes = communities.size();
  std::int64_t first = INT64_MAX;
  std::int64_t last = INT64_MIN;
  for (const auto& s : story_series) {
    if (s.events.empty()) continue;
    first = std::min(first, s.events.front());
    last = std::max(last, s.events.back());
  }
  if (first == INT64_MAX) throw Error(ErrorKind::EmptyEvents, "story has no events");
  for (const auto& s : story_series) {
    auto it = std::find(communities.begin(), communities.end(), s.community);
    if (it == communities.end()) continue;
    const auto process = static_cast<std::uint32_t>(it - communities.begin());
    for (auto t : s.events) seq.events.push_back({static_cast<double>(t - first) / 3600.0, process});
  }
  seq.horizon = static_cast<double>(last - first) / 3600.0 + bin_hours;
  seq.normalize();
  return seq;
}

StageOutcome cmd_ingest(const PipelineConfig& config) {
  config.validate();
  const auto start = Clock::now();
  require_input(config.posts, "posts");
  require_input(config.sources, "sources");
  require_input(config.mentions, "mentions");
  StageOutcome outcome;

  auto sources_in = open_input(config.sources);
  auto source_load = load_sources(sources_in, config.trust_cutoff);
  SourceIndex index(source_load.sources);

  std::optional<CommunityRegistry> registry;
  if (!config.communities.empty()) {
    try {
      registry = CommunityRegistry::parse(config.communities);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }
  }

  std::optional<FixtureResolver> fixture;
  std::optional<CachingResolver> cache;
  PostLoadOptions options;
  options.communities = registry ? &*registry : nullptr;
  options.window_start = config.window_start;
  options.window_end = config.window_end;
  if (!config.resolver_fixture.empty()) {
    require_input(config.resolver_fixture, "resolver fixture");
    fixture = FixtureResolver::from_file(config.resolver_fixture);
  }
  if (fixture || !config.resolver_cache.empty()) {
    cache.emplace(fixture ? &*fixture : nullptr);
    if (!config.resolver_cache.empty()) cache->load(config.resolver_cache);
    options.resolver = &*cache;
  }

  auto posts_in = open_input(config.posts);
  auto post_load = load_posts(posts_in, index, options);
  auto mentions_in = open_input(config.mentions);
  auto mention_load = load_event_mentions(mentions_in, index);
  if (cache && !config.resolver_cache.empty()) cache->save(config.resolver_cache);

  {
    auto out = open_output(artifact(config, paths::kSources));
    out << "domain,score,trustworthy\n";
    for (const auto& s : index.sources()) {
      csv::write_row(out, {s.domain, csv::format_double(s.score), s.trustworthy ? "1" : "0"});
    }
  }
  {
    auto out = open_output(artifact(config, paths::kPosts));
    out << "post_index,post_id,community,ts,url,domain\n";
    for (std::size_t i = 0; i < post_load.posts.size(); ++i) {
      const auto& p = post_load.posts[i];
      for (const auto& u : p.urls) {
        csv::write_row(out, {std::to_string(i), p.id, p.community, std::to_string(p.timestamp),
                             u.render(), u.source_domain});
      }
    }
  }
  {
    auto out = open_output(artifact(config, paths::kMentions));
    out << "url,domain,event_id,confidence\n";
    for (const auto& m : mention_load.mentions) {
      csv::write_row(out, {m.url.render(), m.url.source_domain, std::to_string(m.event_id),
                           std::to_string(m.confidence)});
    }
  }
  json report;
  report["posts"] = post_load.report.as_map();
  report["mentions"] = mention_load.report.as_map();
  report["sources"] = {{"records", source_load.records},
                       {"emitted", source_load.sources.size()},
                       {"dropped_malformed", source_load.dropped_malformed}};
  write_json(artifact(config, paths::kIngestReport), report);

  if (post_load.posts.empty()) outcome.warnings.push_back("no posts survived ingestion");
  update_manifest(config, "ingest", seconds_since(start), report,
                  {artifact(config, paths::kSources), artifact(config, paths::kPosts),
                   artifact(config, paths::kMentions), artifact(config, paths::kIngestReport)});
  return outcome;
}

StageOutcome cmd_cluster(const PipelineConfig& config) {
  config.validate();
  const auto start = Clock::now();
  StageOutcome outcome;
  auto mentions = read_mentions_artifact(config);
  json stats;
  stats["mentions"] = mentions.size();
  mentions = filter_mentions(std::move(mentions), config.min_confidence);
  stats["mentions_after_confidence"] = mentions.size();
  mentions = drop_hub_urls(std::move(mentions), config.max_unique_events);
  stats["mentions_after_hub_filter"] = mentions.size();
  auto graph = build_story_graph(mentions);
  stats["nodes"] = graph.node_count();
  stats["edges"] = graph.edges.size();
  graph = prune_edges(std::move(graph), config.edge_weight_d);
  stats["edges_after_prune"] = graph.edges.size();

  std::vector<Story> stories;
  if (graph.edges.empty()) {
    outcome.warnings.push_back("no edges survive filtering; zero stories");
    stats["communities"] = 0;
    stats["modularity"] = 0.0;
  } else {
    auto partition = louvain(graph, config.seed.value_or(0));
    stats["communities"] = partition.n_communities;
    stats["modularity"] = std::stod(csv::format_double(partition.modularity));
    stories = extract_stories(graph, partition);
  }
  stats["stories"] = stories.size();

  {
    auto out = open_output(artifact(config, paths::kStories));
    out << "story_id,url,domain\n";
    std::map<std::string, std::string> domain_of;
    for (std::size_t i = 0; i < graph.urls.size(); ++i) domain_of[graph.urls[i]] = graph.domains[i];
    for (const auto& s : stories) {
      for (const auto& u : s.urls) csv::write_row(out, {std::to_string(s.id), u, domain_of[u]});
    }
  }
  write_json(artifact(config, paths::kGraphStats), stats);
  update_manifest(config, "cluster", seconds_since(start), stats,
                  {artifact(config, paths::kStories), artifact(config, paths::kGraphStats)});
  return outcome;
}

namespace {

struct StoryFit {
  int story_id = 0;
  std::vector<std::size_t> counts;
  InfluenceMatrix raw;
  InfluenceMatrix normalized;
  StoryAttribution attribution;
  std::vector<double> trace;
};

}  // namespace

StageOutcome cmd_fit(const PipelineConfig& config) {
  config.validate();
  if (!config.seed) throw Error(ErrorKind::InvalidConfig, "seed is mandatory for the fit stage");
  const auto start = Clock::now();
  StageOutcome outcome;

  auto posts = read_posts_artifact(config);
  auto stories = read_stories_artifact(config);
  const auto communities = process_order(config, posts);
  if (!config.focus_community.empty()) {
    try {
      posts = disjoint_communities(std::move(posts), config.focus_community,
                                   CommunityRegistry::parse(config.communities));
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, e.what());
    }
  }

  auto series = story_series(posts, stories, config.bin_hours);
  {
    auto out = open_output(artifact(config, paths::kSeries));
    out << "story_id,community,ts\n";
    for (const auto& s : series) {
      for (auto t : s.events) {
        csv::write_row(out, {std::to_string(s.story_id), s.community, std::to_string(t)});
      }
    }
  }
  {
    auto out = open_output(artifact(config, paths::kLifespans));
    out << "story_id,community,span_days\n";
    for (const auto& s : series) {
      auto l = lifespan(s);
      csv::write_row(out, {std::to_string(l.story_id), l.community, csv::format_double(l.span_days)});
    }
  }

  const auto popular = filter_popular(series, config.min_story_total);
  if (popular.empty()) {
    throw Error(ErrorKind::NoPopularStories,
                "no story reaches " + std::to_string(config.min_story_total) + " occurrences");
  }

  std::map<int, std::vector<StorySeries>> by_story;
  for (const auto& s : series) by_story[s.story_id].push_back(s);

  std::vector<StoryFit> fits(popular.size());
  std::vector<std::exception_ptr> errors(popular.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < popular.size(); i = next++) {
      try {
        const int id = popular[i];
        auto seq = story_event_seq(by_story[id], communities, config.bin_hours);
        FitOptions options;
        options.n_iters = config.gibbs_iters;
        options.n_burnin = config.gibbs_burnin;
        options.dt_max = config.dt_max_hours;
        options.seed = derive_seed(*config.seed, static_cast<std::uint64_t>(id));
        auto samples = fit(seq, config.priors, options);
        for (const auto& draw : samples.draws) {
          for (std::size_t d = 0; d < seq.processes; ++d) {
            double attributed = static_cast<double>(draw.background_counts[d]);
            for (std::size_t s = 0; s < seq.processes; ++s) attributed += draw.parent_counts(s, d);
            if (attributed != static_cast<double>(samples.event_counts[d])) {
              throw Error(ErrorKind::InvariantViolation, "parent counts do not partition events");
            }
          }
        }
        StoryFit& f = fits[i];
        f.story_id = id;
        f.counts = samples.event_counts;
        f.raw = influence_raw(samples);
        f.normalized = influence_normalized(f.raw, samples.event_counts);
        f.attribution = StoryAttribution::from_samples(samples);
        f.trace = std::move(samples.log_likelihood_trace);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_workers = static_cast<std::size_t>(std::max(1, config.workers));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(n_workers, popular.size()); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<fs::path> outputs = {artifact(config, paths::kSeries), artifact(config, paths::kLifespans)};
  {
    auto out = open_output(artifact(config, paths::kPopular));
    out << "story_id,community,n_events\n";
    for (const auto& f : fits) {
      for (std::size_t k = 0; k < communities.size(); ++k) {
        csv::write_row(out, {std::to_string(f.story_id), communities[k], std::to_string(f.counts[k])});
      }
    }
    outputs.push_back(artifact(config, paths::kPopular));
  }
  {
    auto out = open_output(artifact(config, paths::kDiagnostics));
    out << "story_id,iteration,log_likelihood\n";
    for (const auto& f : fits) {
      for (std::size_t it = 0; it < f.trace.size(); ++it) {
        csv::write_row(out, {std::to_string(f.story_id), std::to_string(it), csv::format_double(f.trace[it])});
      }
    }
    outputs.push_back(artifact(config, paths::kDiagnostics));
  }
  // Per-story tables from an earlier run may belong to stories that are no
  // longer popular.
  fs::remove_all(artifact(config, paths::kStoryDir));
  std::vector<StoryAttribution> attributions;
  for (const auto& f : fits) {
    const auto dir = artifact(config, paths::kStoryDir / std::to_string(f.story_id));
    write_influence_csv(dir / "influence_raw.csv", f.raw, communities);
    write_influence_csv(dir / "influence_normalized.csv", f.normalized, communities);
    outputs.push_back(dir / "influence_raw.csv");
    outputs.push_back(dir / "influence_normalized.csv");
    attributions.push_back(f.attribution);
  }
  auto agg = aggregate_influence(attributions, config.aggregation);
  write_influence_csv(artifact(config, paths::kInfluenceRaw), agg.raw, communities);
  write_influence_csv(artifact(config, paths::kInfluenceNormalized), agg.normalized, communities);
  {
    auto out = open_output(artifact(config, paths::kInfluenceSums));
    out << "source,sum\n";
    for (std::size_t s = 0; s < communities.size(); ++s) {
      csv::write_row(out, {communities[s], csv::format_double(agg.normalized.row_sum(s))});
    }
  }
  outputs.push_back(artifact(config, paths::kInfluenceRaw));
  outputs.push_back(artifact(config, paths::kInfluenceNormalized));
  outputs.push_back(artifact(config, paths::kInfluenceSums));

  json counts;
  counts["series"] = series.size();
  counts["stories"] = stories.size();
  counts["popular_stories"] = popular.size();
  counts["events"] = agg.event_counts;
  update_manifest(config, "fit", seconds_since(start), counts, outputs);
  return outcome;
}

StageOutcome cmd_report(const PipelineConfig& config) {
  config.validate();
  const auto start = Clock::now();
  StageOutcome outcome;
  const auto bundle = artifact(config, paths::kReportDir);
  std::vector<fs::path> outputs;

  auto index = read_sources_artifact(config);
  auto posts = read_posts_artifact(config);
  auto stories = read_stories_artifact(config);

  // Trust statistics.
  auto shares = community_trust_shares(posts, index);
  {
    auto out = open_output(bundle / "trust_shares.csv");
    out << "community,n_trust,n_untrust,share_untrust\n";
    for (const auto& s : shares) {
      csv::write_row(out, {s.community, std::to_string(s.n_trust), std::to_string(s.n_untrust),
                           csv::format_double(s.share_untrust)});
    }
    outputs.push_back(bundle / "trust_shares.csv");
  }
  std::map<std::string, double> medians;
  for (const auto& s : shares) {
    auto cdf = score_cdf(posts, index, s.community);
    medians[s.community] = cdf.cdf.median;
    const auto path = bundle / ("score_cdf_" + s.community + ".csv");
    auto out = open_output(path);
    out << "score,cum_frac\n";
    for (const auto& [score, frac] : cdf.cdf.points) {
      csv::write_row(out, {csv::format_double(score), csv::format_double(frac)});
    }
    outputs.push_back(path);
  }
  {
    auto out = open_output(bundle / "chi2.csv");
    out << "layout,communities,statistic,dof,p_value\n";
    for (const auto& row : trust_chi2_tests(shares, config.chi2_layout)) {
      csv::write_row(out, {row.layout, row.communities, csv::format_double(row.result.statistic),
                           std::to_string(row.result.dof), csv::format_double(row.result.p_value)});
    }
    outputs.push_back(bundle / "chi2.csv");
  }

  // Entities.
  {
    std::vector<EntityShareRow> rows;
    if (!config.annotations.empty()) {
      require_input(config.annotations, "annotations");
      auto in = open_input(config.annotations);
      auto load = load_annotations(in);
      std::set<std::string> docs;
      for (const auto& a : load.annotations) docs.insert(a.doc_id);
      const std::size_t total = config.total_docs ? config.total_docs : docs.size();
      rows = top_entities(entity_doc_shares(load.annotations, total), config.top_entities);
    } else {
      outcome.warnings.push_back("no annotations configured; entity_shares.csv is empty");
    }
    auto out = open_output(bundle / "entity_shares.csv");
    out << "entity,doc_share,n_docs\n";
    for (const auto& r : rows) {
      csv::write_row(out, {r.entity, csv::format_double(r.doc_share), std::to_string(r.n_docs)});
    }
    outputs.push_back(bundle / "entity_shares.csv");
  }

  // Stories, timelines and influence carried over from earlier stages.
  copy_artifact(artifact(config, paths::kStories), bundle / "stories.csv");
  copy_artifact(artifact(config, paths::kSeries), bundle / "series.csv");
  copy_artifact(artifact(config, paths::kLifespans), bundle / "lifespans.csv");
  copy_artifact(artifact(config, paths::kInfluenceRaw), bundle / "influence_raw.csv");
  copy_artifact(artifact(config, paths::kInfluenceNormalized), bundle / "influence_normalized.csv");
  copy_artifact(artifact(config, paths::kInfluenceSums), bundle / "influence_normalized_sums.csv");
  for (const char* f : {"stories.csv", "series.csv", "lifespans.csv", "influence_raw.csv",
                        "influence_normalized.csv", "influence_normalized_sums.csv"}) {
    outputs.push_back(bundle / f);
  }

  std::vector<Lifespan> lifespans;
  {
    auto in = open_artifact(config, paths::kLifespans);
    for (auto& row : read_csv(in, {"story_id", "community", "span_days"}, "lifespans.csv")) {
      lifespans.push_back({std::stoi(row[0]), row[1], std::stod(row[2])});
    }
  }
  std::set<std::string> lifespan_communities;
  for (const auto& l : lifespans) lifespan_communities.insert(l.community);
  for (const auto& c : lifespan_communities) {
    auto cdf = lifespan_cdf(lifespans, c);
    const auto path = bundle / ("lifespan_cdf_" + c + ".csv");
    auto out = open_output(path);
    out << "span_days,cum_frac\n";
    for (const auto& [days, frac] : cdf.points) {
      csv::write_row(out, {csv::format_double(days), csv::format_double(frac)});
    }
    outputs.push_back(path);
  }

  // Per-story external influence ranking.
  std::vector<int> popular;
  {
    auto in = open_artifact(config, paths::kPopular);
    std::set<int> ids;
    for (auto& row : read_csv(in, {"story_id", "community", "n_events"}, "popular_stories.csv")) {
      ids.insert(std::stoi(row[0]));
    }
    popular.assign(ids.begin(), ids.end());
  }
  auto aggregate = read_influence_csv(artifact(config, paths::kInfluenceRaw));
  std::map<std::string, std::vector<std::pair<double, int>>> ranking;
  for (int id : popular) {
    auto table = read_influence_csv(artifact(config, paths::kStoryDir / std::to_string(id) /
                                                         "influence_raw.csv"));
    for (const auto& src : table.communities) {
      double external = 0;
      for (const auto& dst : table.communities) {
        if (dst == src) continue;
        if (const auto& cell = table.cells[{src, dst}]) external += cell->mean;
      }
      ranking[src].emplace_back(external, id);
    }
  }
  {
    std::ostringstream summary;
    summary << "stories: " << stories.size() << "\n";
    summary << "popular stories: " << popular.size() << "\n";
    summary << "\nuntrustworthy occurrence share and median score per community\n";
    for (const auto& s : shares) {
      summary << "  " << s.community << ": share_untrust=" << csv::format_double(s.share_untrust)
              << " median_score=" << csv::format_double(medians[s.community]) << "\n";
    }
    summary << "\naggregate raw influence (percent, source -> destination)\n";
    for (const auto& src : aggregate.communities) {
      for (const auto& dst : aggregate.communities) {
        const auto& cell = aggregate.cells[{src, dst}];
        summary << "  " << src << " -> " << dst << ": "
                << (cell ? csv::format_double(cell->mean) : std::string("NA")) << "\n";
      }
    }
    summary << "\ntop externally influential stories per community\n";
    for (auto& [community, entries] : ranking) {
      std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      summary << "  " << community << ":";
      const auto n = std::min(config.top_stories, entries.size());
      for (std::size_t i = 0; i < n; ++i) {
        summary << " " << entries[i].second << "(" << csv::format_double(entries[i].first) << ")";
      }
      summary << "\n";
    }
    auto out = open_output(bundle / "summary.txt");
    out << summary.str();
    outputs.push_back(bundle / "summary.txt");
  }

  json counts;
  counts["bundle_files"] = outputs.size();
  update_manifest(config, "report", seconds_since(start), counts, outputs);
  return outcome;
}

StageOutcome run_all(const PipelineConfig& config) {
  StageOutcome all;
  for (auto stage : {cmd_ingest, cmd_cluster, cmd_fit, cmd_report}) {
    auto o = stage(config);
    all.warnings.insert(all.warnings.end(), o.warnings.begin(), o.warnings.end());
  }
  return all;
}

}  // namespace storyflux::pipeline
