#pragma once
// Synthetic corpus writer for pipeline tests: sources, posts, event mentions
// and entity annotations with a known story structure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace synth {

struct CorpusSpec {
  std::size_t n_posts = 1000;
  std::size_t n_urls = 200;
  std::size_t n_stories = 10;
  std::uint64_t seed = 1;
  // Extra mentions linking a URL to another story's event.
  double noise = 0.0;
  std::int64_t start = 1'500'000'000;
};

inline const std::vector<std::string>& communities() {
  static const std::vector<std::string> c = {"twitter", "reddit", "the_donald", "4chan", "gab"};
  return c;
}

inline const std::vector<std::pair<std::string, std::string>>& domains() {
  static const std::vector<std::pair<std::string, std::string>> d = {
      {"cnn.com", "80"},       {"bbc.co.uk", "95"},     {"breitbart.com", "49.5"},
      {"nytimes.com", "100"},  {"infowars.com", "12.5"}, {"foxnews.com", "69.5"},
      {"rt.com", "25"},        {"reuters.com", "100"},  {"dailycaller.com", "57"},
      {"theguardian.com", "92.5"}};
  return d;
}

inline std::string url_of(std::size_t i, std::size_t story) {
  const auto& d = domains()[(i / 7 + story) % domains().size()].first;
  return "https://www." + d + "/story/" + std::to_string(story) + "/item-" + std::to_string(i) +
         "?utm_source=feed";
}

inline std::size_t story_of(std::size_t url, const CorpusSpec& spec) { return url % spec.n_stories; }

// Writes sources.csv, posts.jsonl, mentions.csv, annotations.csv and
// pipeline.conf into dir; returns the config path.
inline std::filesystem::path write_corpus(const std::filesystem::path& dir, const CorpusSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0, 1);

  {
    std::ofstream out(dir / "sources.csv");
    out << "domain,score\n";
    for (const auto& [d, s] : domains()) out << d << "," << s << "\n";
  }

  {
    std::ofstream out(dir / "mentions.csv");
    out << "url,event_id,confidence\n";
    for (std::size_t u = 0; u < spec.n_urls; ++u) {
      const auto story = story_of(u, spec);
      for (int e = 0; e < 4; ++e) {
        out << url_of(u, story) << "," << 10000 + story * 10 + e << "," << 60 + 10 * ((u + e) % 5) << "\n";
      }
      if (unit(rng) < spec.noise) {
        const auto other = (story + 1 + rng() % (spec.n_stories - 1)) % spec.n_stories;
        out << url_of(u, story) << "," << 10000 + other * 10 + rng() % 4 << ",70\n";
      }
      // Low-confidence mentions never enter the graph.
      out << url_of(u, story) << "," << 90000 + rng() % 50 << ",40\n";
    }
    // A hub URL tied to many events is dropped before graph construction.
    for (int e = 0; e < 61; ++e) out << "https://cnn.com/," << 10000 + e << ",100\n";
  }

  {
    // Story popularity falls off geometrically; each story has its own start
    // time and bursts of activity.
    std::vector<double> weight(spec.n_stories);
    double total = 0;
    for (std::size_t s = 0; s < spec.n_stories; ++s) total += weight[s] = std::pow(0.85, double(s));
    std::vector<std::int64_t> story_start(spec.n_stories);
    for (auto& t : story_start) t = spec.start + static_cast<std::int64_t>(unit(rng) * 20 * 86400);

    std::ofstream out(dir / "posts.jsonl");
    std::ofstream ann(dir / "annotations.csv");
    ann << "doc_id,entity,label\n";
    const char* entities[] = {"Trump", "US", "U.S.", "Russia", "Clinton", "FBI", "Obama", "CNN"};
    for (std::size_t p = 0; p < spec.n_posts; ++p) {
      double r = unit(rng) * total;
      std::size_t story = 0;
      while (story + 1 < spec.n_stories && r > weight[story]) r -= weight[story++];
      const std::size_t per_story = (spec.n_urls + spec.n_stories - 1 - story) / spec.n_stories;
      const std::size_t url = story + spec.n_stories * (rng() % per_story);
      const auto& community = communities()[rng() % communities().size()];
      const auto ts = story_start[story] +
                      static_cast<std::int64_t>(-std::log(1 - unit(rng)) * 8 * 86400);
      const std::string id = "p" + std::to_string(p);
      auto line = [&](const std::string& c) {
        out << R"({"id":")" << id << R"(","community":")" << c << R"(","ts":)" << ts
            << R"(,"urls":[")" << url_of(url, story) << R"("]})" << "\n";
      };
      line(community);
      // The subcommunity's posts also appear in the parent dump.
      if (community == "the_donald") line("reddit");
      ann << id << "," << entities[rng() % 8] << ",X\n";
      if (rng() % 3 == 0) ann << id << "," << entities[rng() % 8] << ",X\n";
    }
  }

  const auto conf = dir / "pipeline.conf";
  std::ofstream out(conf);
  out << "posts = posts.jsonl\n"
         "sources = sources.csv\n"
         "mentions = mentions.csv\n"
         "annotations = annotations.csv\n"
         "output_dir = out\n"
         "communities = twitter,reddit,the_donald:reddit,4chan,gab\n"
         "focus_community = the_donald\n"
         "seed = 7\n"
         "gibbs_iters = 60\n"
         "gibbs_burnin = 20\n"
         "workers = 2\n";
  return conf;
}

}  // namespace synth
