#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "storyflux/config.h"
#include "storyflux/error.h"
#include "storyflux/hawkes.h"
#include "storyflux/influence.h"
#include "storyflux/timeline.h"

namespace storyflux::pipeline {

// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitEmptyResult = 3;
inline constexpr int kExitInternal = 4;

int exit_code(ErrorKind kind);

struct StageOutcome {
  std::vector<std::string> warnings;
};

// Stage artifacts, relative to the output directory.
namespace paths {
inline const std::filesystem::path kManifest = "manifest.json";
inline const std::filesystem::path kPosts = "corpus/posts.csv";
inline const std::filesystem::path kSources = "corpus/sources.csv";
inline const std::filesystem::path kMentions = "corpus/mentions.csv";
inline const std::filesystem::path kIngestReport = "corpus/ingest_report.json";
inline const std::filesystem::path kStories = "cluster/stories.csv";
inline const std::filesystem::path kGraphStats = "cluster/graph_stats.json";
inline const std::filesystem::path kSeries = "fit/series.csv";
inline const std::filesystem::path kLifespans = "fit/lifespans.csv";
inline const std::filesystem::path kPopular = "fit/popular_stories.csv";
inline const std::filesystem::path kInfluenceRaw = "fit/influence_raw.csv";
inline const std::filesystem::path kInfluenceNormalized = "fit/influence_normalized.csv";
inline const std::filesystem::path kInfluenceSums = "fit/influence_normalized_sums.csv";
inline const std::filesystem::path kDiagnostics = "fit/fit_diagnostics.csv";
inline const std::filesystem::path kStoryDir = "fit/stories";
inline const std::filesystem::path kReportDir = "report";
}  // namespace paths

// Files every report bundle contains; per-community CDF files come on top.
const std::vector<std::string>& required_bundle_files();

// Reads posts, sources and mentions; writes validated intermediates and the
// ingestion report. Throws Error(MissingInput) for absent input paths.
StageOutcome cmd_ingest(const PipelineConfig& config);

// Confidence filter, hub filter, graph, edge pruning, Louvain, story
// extraction. Writes stories.csv; zero stories is a warning, not an error.
StageOutcome cmd_cluster(const PipelineConfig& config);

// Timelines, popularity filter and one Hawkes fit per popular story, then
// aggregate influence. Throws Error(NoPopularStories).
StageOutcome cmd_fit(const PipelineConfig& config);

// Trust, entity, lifespan and influence tables plus summary.txt under report/.
StageOutcome cmd_report(const PipelineConfig& config);

StageOutcome run_all(const PipelineConfig& config);

// Process order for Hawkes fits: the configured communities, or the sorted
// names found in the posts.
std::vector<std::string> process_order(const PipelineConfig& config,
                                       const std::vector<Post>& posts);

// Hours since the story's first bin; the window ends one bin after its last
// event.
EventSeq story_event_seq(const std::vector<StorySeries>& story_series,
                         const std::vector<std::string>& communities, int bin_hours);

void write_influence_csv(const std::filesystem::path& path, const InfluenceMatrix& matrix,
                         const std::vector<std::string>& communities);

}  // namespace storyflux::pipeline
