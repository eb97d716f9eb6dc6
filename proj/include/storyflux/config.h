#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "storyflux/gibbs.h"
#include "storyflux/influence.h"
#include "storyflux/truststats.h"

namespace storyflux {

// Flat "key = value" configuration; '#' starts a comment. Relative paths are
// resolved against the directory of the config file.
struct PipelineConfig {
  std::filesystem::path posts;
  std::filesystem::path sources;
  std::filesystem::path mentions;
  std::filesystem::path annotations;  // optional
  std::filesystem::path output_dir;
  std::filesystem::path resolver_fixture;  // optional
  std::filesystem::path resolver_cache;    // optional

  std::string communities;  // "twitter,reddit,the_donald:reddit,4chan,gab"; empty = infer
  std::string focus_community;  // subcommunity split from its parent before fitting

  int min_confidence = 60;
  std::size_t max_unique_events = 60;
  std::uint32_t edge_weight_d = 3;
  std::size_t min_story_total = 100;
  double trust_cutoff = 60.0;
  int bin_hours = 1;
  double dt_max_hours = 24.0;
  int gibbs_iters = 500;
  int gibbs_burnin = 200;
  std::optional<std::uint64_t> seed;
  int workers = 1;

  std::optional<std::int64_t> window_start;
  std::optional<std::int64_t> window_end;
  std::size_t total_docs = 0;  // 0 = distinct annotated documents
  std::size_t top_entities = 20;
  std::size_t top_stories = 20;
  Chi2Layout chi2_layout = Chi2Layout::Both;
  AggregationMode aggregation = AggregationMode::Pooled;
  HawkesPriors priors;

  // Throws Error(MissingInput) if the file is absent, Error(InvalidConfig)
  // on unknown keys or bad values.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig parse(std::string_view text, const std::filesystem::path& base_dir = {});

  void set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});
  // Throws Error(InvalidConfig) for non-positive thresholds.
  void validate() const;
  // Sorted key = value rendering; identical configs render identically.
  std::string canonical_text() const;
  std::string hash() const;
};

}  // namespace storyflux
