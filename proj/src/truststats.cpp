#include "storyflux/truststats.h"

#include <map>

#include "storyflux/error.h"
#include "storyflux/special.h"

namespace storyflux {

namespace {

const NewsSource& source_of(const CanonicalUrl& url, const SourceIndex& sources) {
  const NewsSource* s = url.source_domain.empty() ? sources.match(url.host)
                                                  : sources.find_domain(url.source_domain);
  if (!s) throw Error(ErrorKind::InvalidArgument, "unmatched URL " + url.render());
  return *s;
}

}  // namespace

std::vector<TrustShare> community_trust_shares(const std::vector<Post>& posts,
                                               const SourceIndex& sources) {
  std::map<std::string, TrustShare> by_community;
  for (const auto& post : posts) {
    for (const auto& url : post.urls) {
      auto& share = by_community[post.community];
      share.community = post.community;
      if (source_of(url, sources).trustworthy) {
        ++share.n_trust;
      } else {
        ++share.n_untrust;
      }
    }
  }
  std::vector<TrustShare> out;
  for (auto& [name, share] : by_community) {
    share.share_untrust = static_cast<double>(share.n_untrust) /
                          static_cast<double>(share.n_trust + share.n_untrust);
    out.push_back(share);
  }
  return out;
}

ScoreCdf score_cdf(const std::vector<Post>& posts, const SourceIndex& sources,
                   const std::string& community) {
  std::vector<double> scores;
  for (const auto& post : posts) {
    if (post.community != community) continue;
    for (const auto& url : post.urls) scores.push_back(source_of(url, sources).score);
  }
  if (scores.empty()) throw Error(ErrorKind::EmptyCommunity, "no occurrences for " + community);
  return {community, empirical_cdf(std::move(scores))};
}

Chi2Result chi2_test(const ContingencyTable& table) {
  const std::size_t rows = table.size();
  if (rows < 2) throw Error(ErrorKind::DegenerateTable, "need at least two rows");
  const std::size_t cols = table.front().size();
  if (cols < 2) throw Error(ErrorKind::DegenerateTable, "need at least two columns");

  std::vector<double> row_totals(rows, 0.0), col_totals(cols, 0.0);
  double grand = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (table[r].size() != cols) throw Error(ErrorKind::DegenerateTable, "ragged table");
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = table[r][c];
      if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative count");
      row_totals[r] += v;
      col_totals[c] += v;
      grand += v;
    }
  }
  for (double t : row_totals) {
    if (t == 0.0) throw Error(ErrorKind::DegenerateTable, "zero row");
  }
  for (double t : col_totals) {
    if (t == 0.0) throw Error(ErrorKind::DegenerateTable, "zero column");
  }

  double statistic = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double expected = row_totals[r] * col_totals[c] / grand;
      const double diff = table[r][c] - expected;
      statistic += diff * diff / expected;
    }
  }
  Chi2Result result;
  result.statistic = statistic;
  result.dof = static_cast<int>((rows - 1) * (cols - 1));
  result.p_value = chi2_survival(statistic, result.dof);
  return result;
}

std::vector<Chi2Row> trust_chi2_tests(const std::vector<TrustShare>& shares, Chi2Layout layout) {
  std::vector<Chi2Row> out;
  if (layout == Chi2Layout::Pairwise || layout == Chi2Layout::Both) {
    for (std::size_t i = 0; i < shares.size(); ++i) {
      for (std::size_t j = i + 1; j < shares.size(); ++j) {
        const auto& a = shares[i];
        const auto& b = shares[j];
        ContingencyTable t = {{double(a.n_trust), double(b.n_trust)},
                              {double(a.n_untrust), double(b.n_untrust)}};
        try {
          out.push_back({"pairwise", a.community + "|" + b.community, chi2_test(t)});
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateTable) throw;
        }
      }
    }
  }
  if ((layout == Chi2Layout::Joint || layout == Chi2Layout::Both) && shares.size() >= 2) {
    ContingencyTable t(2);
    std::string names;
    for (const auto& s : shares) {
      t[0].push_back(double(s.n_trust));
      t[1].push_back(double(s.n_untrust));
      if (!names.empty()) names += "|";
      names += s.community;
    }
    try {
      out.push_back({"joint", names, chi2_test(t)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateTable) throw;
    }
  }
  return out;
}

}  // namespace storyflux
