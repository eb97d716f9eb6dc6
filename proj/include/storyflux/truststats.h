#pragma once

#include <string>
#include <vector>

#include "storyflux/cdf.h"
#include "storyflux/corpus.h"
#include "storyflux/trust.h"

namespace storyflux {

struct TrustShare {
  std::string community;
  std::size_t n_trust = 0;
  std::size_t n_untrust = 0;
  double share_untrust = 0;
};

// Counts every post-URL occurrence. Communities without occurrences are
// omitted; output is ordered by community name.
std::vector<TrustShare> community_trust_shares(const std::vector<Post>& posts,
                                               const SourceIndex& sources);

struct ScoreCdf {
  std::string community;
  EmpiricalCdf cdf;
};

// One sample per URL occurrence. Throws Error(EmptyCommunity).
ScoreCdf score_cdf(const std::vector<Post>& posts, const SourceIndex& sources,
                   const std::string& community);

struct Chi2Result {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

using ContingencyTable = std::vector<std::vector<double>>;

// Pearson test of independence without continuity correction. Throws
// Error(DegenerateTable) for tables smaller than 2x2, ragged rows, or any
// all-zero row or column.
Chi2Result chi2_test(const ContingencyTable& table);

enum class Chi2Layout { Pairwise, Joint, Both };

struct Chi2Row {
  std::string layout;  // "pairwise" or "joint"
  std::string communities;  // "a|b" for pairs, all names joined for joint
  Chi2Result result;
};

// Trust x community tables: 2x2 for every community pair, and/or one 2xK
// table over all communities. Pairs whose table is degenerate are skipped.
std::vector<Chi2Row> trust_chi2_tests(const std::vector<TrustShare>& shares, Chi2Layout layout);

}  // namespace storyflux
