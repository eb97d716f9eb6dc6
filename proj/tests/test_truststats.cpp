#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.h"
#include "storyflux/cdf.h"
#include "storyflux/entitystats.h"
#include "storyflux/error.h"
#include "storyflux/special.h"
#include "storyflux/trust.h"
#include "storyflux/truststats.h"

using namespace storyflux;

namespace {

SourceIndex sources() {
  return SourceIndex({{"good.com", 90, true},
                      {"ok.com", 60, true},
                      {"bad.com", 20, false},
                      {"meh.com", 59.9, false}});
}

Post post(const std::string& community, std::vector<std::string> urls) {
  Post p;
  p.id = community + std::to_string(urls.size());
  p.community = community;
  for (auto& u : urls) {
    auto c = canonicalize_url(u);
    c.source_domain = c.host;
    p.urls.push_back(c);
  }
  return p;
}

struct Chi2Case {
  ContingencyTable table;
  double statistic;
  int dof;
  double p;
};

// Frozen from an independent statistics package (no continuity correction).
const std::vector<Chi2Case> kChi2Cases = {
    {{{10, 10}, {10, 10}}, 0.0, 1, 1.0},
    {{{10, 20}, {20, 10}}, 6.666666666666667, 1, 0.009823274507519235},
    {{{50, 0}, {0, 50}}, 100.0, 1, 1.5239706048320995e-23},
    {{{12, 5}, {7, 9}}, 2.4305755196815575, 1, 0.118989205532145},
    {{{30, 10, 20}, {20, 25, 15}}, 9.142857142857142, 2, 0.010343173196618252},
    {{{5, 8, 12, 3}, {9, 4, 6, 10}, {7, 7, 7, 7}}, 8.64059625665148, 6, 0.1948222578388553},
    {{{100, 200}, {150, 50}}, 83.33333333333334, 1, 6.932079668133659e-20},
    {{{1, 2}, {3, 4}}, 0.07936507936507939, 1, 0.7781596861761658},
    {{{45, 55}, {60, 40}, {30, 70}}, 18.18181818181818, 2, 0.00011268558050780092},
    {{{1000, 1200}, {800, 1500}}, 53.359683794466406, 1, 2.777387285698736e-13},
};

}  // namespace

TEST_CASE("trust_label boundaries") {
  CHECK(trust_label(60.0) == Trust::Trustworthy);
  CHECK(trust_label(59.9) == Trust::Untrustworthy);
  CHECK(trust_label(100) == Trust::Trustworthy);
  CHECK(trust_label(0) == Trust::Untrustworthy);
  CHECK_THROWS_AS(trust_label(100.1), Error);
  CHECK_THROWS_AS(trust_label(-1), Error);
}

TEST_CASE("community_trust_shares counts occurrences") {
  std::vector<Post> posts = {post("gab", {"good.com/a", "bad.com/b"}), post("gab", {"ok.com/c"}),
                             post("gab", {"good.com/a"}), post("twitter", {"good.com/z"})};
  auto shares = community_trust_shares(posts, sources());
  REQUIRE(shares.size() == 2);
  CHECK(shares[0].community == "gab");
  CHECK(shares[0].n_trust == 3);
  CHECK(shares[0].n_untrust == 1);
  CHECK(shares[0].share_untrust == doctest::Approx(0.25));
  CHECK(shares[1].share_untrust == 0.0);
}

TEST_CASE("score_cdf median and steps") {
  auto one = score_cdf({post("a", {"good.com/x"})}, sources(), "a");
  CHECK(one.cdf.median == 90);
  REQUIRE(one.cdf.points.size() == 1);
  CHECK(one.cdf.points[0].second == 1.0);

  SourceIndex idx({{"s60.com", 60, true}, {"s70.com", 70, true}, {"s80.com", 80, true},
                   {"s90.com", 90, true}});
  std::vector<Post> posts = {post("a", {"s60.com/x", "s70.com/x"}),
                             post("a", {"s80.com/x", "s90.com/x"})};
  auto four = score_cdf(posts, idx, "a");
  CHECK(four.cdf.median == 70);
  CHECK(four.cdf.points.back().second == 1.0);
  CHECK_THROWS_AS(score_cdf(posts, idx, "b"), Error);
}

TEST_CASE("concatenated score CDF lies within the envelope") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<double> a, b;
  for (int i = 0; i < 37; ++i) a.push_back(std::round(u(rng)));
  for (int i = 0; i < 53; ++i) b.push_back(std::round(u(rng) * 0.7 + 30));
  auto ca = empirical_cdf(a), cb = empirical_cdf(b);
  std::vector<double> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  auto cab = empirical_cdf(ab);
  for (double v = -1; v <= 101; v += 0.5) {
    double fa = ca.fraction_at_most(v), fb = cb.fraction_at_most(v), f = cab.fraction_at_most(v);
    CHECK(f >= std::min(fa, fb) - 1e-12);
    CHECK(f <= std::max(fa, fb) + 1e-12);
  }
}

TEST_CASE("empirical_cdf quantiles match a sort oracle") {
  std::vector<double> xs = {5, 1, 9, 3, 3, 7, 2, 8, 6, 4};
  auto cdf = empirical_cdf(xs);
  auto sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  CHECK(cdf.median == sorted[(sorted.size() - 1) / 2]);
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    double p = static_cast<double>(k) / sorted.size();
    CHECK(cdf.quantile(p) == sorted[k - 1]);
  }
  CHECK(cdf.fraction_at_least(7) == doctest::Approx(0.3));
  CHECK_THROWS_AS(empirical_cdf({}), Error);
}

TEST_CASE("chi2_test against frozen values and the quadrature oracle") {
  for (const auto& c : kChi2Cases) {
    auto r = chi2_test(c.table);
    CHECK(r.statistic == doctest::Approx(c.statistic).epsilon(1e-12));
    CHECK(std::fabs(r.statistic - oracle::chi2_statistic(c.table)) < 1e-6);
    CHECK(r.dof == c.dof);
    CHECK(r.p_value == doctest::Approx(c.p).epsilon(1e-9));
    CHECK(std::fabs(r.p_value - oracle::chi2_upper_tail(r.statistic, r.dof)) < 1e-4);
  }
}

TEST_CASE("chi2_test rejects degenerate tables") {
  CHECK_THROWS_AS(chi2_test({{1, 2}}), Error);
  CHECK_THROWS_AS(chi2_test({{0, 0}, {1, 2}}), Error);
  CHECK_THROWS_AS(chi2_test({{0, 3}, {0, 2}}), Error);
  CHECK_THROWS_AS(chi2_test({{1, 2}, {3}}), Error);
}

TEST_CASE("chi2_test is permutation invariant and scales linearly") {
  ContingencyTable t = {{5, 8, 12, 3}, {9, 4, 6, 10}, {7, 7, 7, 7}};
  double base = chi2_test(t).statistic;
  ContingencyTable rows = {t[2], t[0], t[1]};
  CHECK(chi2_test(rows).statistic == doctest::Approx(base).epsilon(1e-12));
  ContingencyTable cols = t;
  for (auto& r : cols) std::swap(r[0], r[3]);
  CHECK(chi2_test(cols).statistic == doctest::Approx(base).epsilon(1e-12));
  for (int c : {2, 3, 10}) {
    ContingencyTable s = t;
    for (auto& r : s)
      for (auto& v : r) v *= c;
    CHECK(chi2_test(s).statistic == doctest::Approx(c * base).epsilon(1e-12));
  }
}

TEST_CASE("chi2 p-value decreases strictly in the statistic") {
  for (int dof : {1, 2, 5, 12}) {
    double prev = 1.0 + 1e-9;
    for (double x = 0.1; x < 120; x *= 1.3) {
      double p = chi2_survival(x, dof);
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("trust_chi2_tests layouts") {
  std::vector<TrustShare> shares = {{"a", 90, 10, 0.1}, {"b", 50, 50, 0.5}, {"c", 70, 30, 0.3}};
  auto pairs = trust_chi2_tests(shares, Chi2Layout::Pairwise);
  CHECK(pairs.size() == 3);
  CHECK(pairs[0].communities == "a|b");
  auto joint = trust_chi2_tests(shares, Chi2Layout::Joint);
  REQUIRE(joint.size() == 1);
  CHECK(joint[0].result.dof == 2);
  CHECK(trust_chi2_tests(shares, Chi2Layout::Both).size() == 4);
}

TEST_CASE("entity_doc_shares deduplicates per document") {
  CHECK(entity_doc_shares({}, 3).empty());
  std::vector<EntityAnnotation> ann = {{"a", "Trump", "PERSON"},
                                       {"a", "Trump", "PERSON"},
                                       {"b", "Trump", "PERSON"},
                                       {"c", "US", "GPE"},
                                       {"c", "U.S.", "GPE"}};
  auto rows = entity_doc_shares(ann, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].entity == "Trump");
  CHECK(rows[0].doc_share == doctest::Approx(2.0 / 3.0));
  CHECK(rows[1].entity == "U.S.");
  CHECK(rows[2].entity == "US");
  CHECK_THROWS_AS(entity_doc_shares(ann, 2), Error);

  auto doubled = ann;
  doubled.insert(doubled.end(), ann.begin(), ann.end());
  auto rows2 = entity_doc_shares(doubled, 3);
  REQUIRE(rows2.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows2[i].entity == rows[i].entity);
    CHECK(rows2[i].doc_share == rows[i].doc_share);
  }
}

TEST_CASE("top_entities takes the largest shares") {
  CHECK(top_entities({{"x", 0.5, 1}}, 0).empty());
  std::vector<EntityShareRow> five(5, {"x", 0.1, 1});
  CHECK(top_entities(five, 20).size() == 5);

  std::mt19937 rng(11);
  std::vector<EntityAnnotation> ann;
  for (int e = 0; e < 30; ++e) {
    int docs = 1 + static_cast<int>(rng() % 40);
    for (int d = 0; d < docs; ++d)
      ann.push_back({"d" + std::to_string(rng() % 50), "E" + std::to_string(e), "X"});
  }
  auto rows = entity_doc_shares(ann, 50);
  REQUIRE(rows.size() == 30);
  auto top = top_entities(rows, 20);
  auto oracle_rows = rows;
  std::sort(oracle_rows.begin(), oracle_rows.end(), [](const auto& a, const auto& b) {
    return a.n_docs != b.n_docs ? a.n_docs > b.n_docs : a.entity < b.entity;
  });
  REQUIRE(top.size() == 20);
  for (int i = 0; i < 20; ++i) CHECK(top[i].entity == oracle_rows[i].entity);
  std::size_t sum = 0;
  for (const auto& r : rows) {
    sum += r.n_docs;
    CHECK(r.doc_share <= 1.0);
  }
  std::set<std::string> docs;
  for (const auto& a : ann) docs.insert(a.doc_id);
  CHECK(sum >= docs.size());
}

TEST_CASE("load_annotations drops incomplete rows") {
  std::istringstream in("doc_id,entity,label\na,Trump,PERSON\n,X,Y\nb,,Z\nc,\"Washington, D.C.\",GPE\n");
  auto load = load_annotations(in);
  CHECK(load.records == 4);
  CHECK(load.annotations.size() == 2);
  CHECK(load.dropped_malformed == 2);
  CHECK(load.annotations[1].entity == "Washington, D.C.");
}
