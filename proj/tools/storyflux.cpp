// storyflux: news story clustering and cross-community influence pipeline.
//
//   storyflux ingest|cluster|fit|report|run --config <path> [overrides]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "storyflux/config.h"
#include "storyflux/error.h"
#include "storyflux/pipeline.h"

namespace {

struct Overrides {
  std::optional<std::string> edge_weight_d;
  std::optional<std::string> min_confidence;
  std::optional<std::string> min_story_total;
  std::optional<std::string> bin_hours;
  std::optional<std::string> dt_max;
  std::optional<std::string> seed;
  std::optional<std::string> workers;
  std::optional<std::string> output_dir;
};

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json record = {{"error", kind}, {"message", message}};
  std::cerr << record.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"storyflux: news story clustering and cross-community influence"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "pipeline config file")->required();
    sub->add_option("--edge-weight-d", ov.edge_weight_d, "minimum shared-event edge weight");
    sub->add_option("--min-confidence", ov.min_confidence, "minimum event mention confidence");
    sub->add_option("--min-story-total", ov.min_story_total, "minimum occurrences per story");
    sub->add_option("--bin-hours", ov.bin_hours, "timeseries bin width in hours");
    sub->add_option("--dt-max", ov.dt_max, "impulse support in hours");
    sub->add_option("--seed", ov.seed, "random seed");
    sub->add_option("--workers", ov.workers, "parallel story fits");
    sub->add_option("--output-dir", ov.output_dir, "output directory");
  };
  auto* ingest = app.add_subcommand("ingest", "validate inputs and write corpus intermediates");
  auto* cluster = app.add_subcommand("cluster", "build the URL graph and extract stories");
  auto* fit = app.add_subcommand("fit", "fit per-story Hawkes models and aggregate influence");
  auto* report = app.add_subcommand("report", "write the report bundle");
  auto* run = app.add_subcommand("run", "ingest, cluster, fit and report");
  for (auto* sub : {ingest, cluster, fit, report, run}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : storyflux::pipeline::kExitInputError;
  }

  try {
    auto config = storyflux::PipelineConfig::load(config_path);
    auto apply = [&](const char* key, const std::optional<std::string>& value) {
      if (value) config.set(key, *value, std::filesystem::current_path());
    };
    apply("edge_weight_d", ov.edge_weight_d);
    apply("min_confidence", ov.min_confidence);
    apply("min_story_total", ov.min_story_total);
    apply("bin_hours", ov.bin_hours);
    apply("dt_max_hours", ov.dt_max);
    apply("seed", ov.seed);
    apply("workers", ov.workers);
    apply("output_dir", ov.output_dir);

    storyflux::pipeline::StageOutcome outcome;
    if (*ingest) outcome = storyflux::pipeline::cmd_ingest(config);
    else if (*cluster) outcome = storyflux::pipeline::cmd_cluster(config);
    else if (*fit) outcome = storyflux::pipeline::cmd_fit(config);
    else if (*report) outcome = storyflux::pipeline::cmd_report(config);
    else outcome = storyflux::pipeline::run_all(config);
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    return storyflux::pipeline::kExitOk;
  } catch (const storyflux::Error& e) {
    emit_error(std::string(storyflux::error_kind_name(e.kind())), e.what());
    return storyflux::pipeline::exit_code(e.kind());
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return storyflux::pipeline::kExitInternal;
  }
}
