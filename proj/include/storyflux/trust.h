#pragma once

namespace storyflux {

enum class Trust { Trustworthy, Untrustworthy };

inline constexpr double kDefaultTrustCutoff = 60.0;

// Scores at or above the cutoff are trustworthy. Throws
// Error(OutOfRangeScore) outside [0, 100].
Trust trust_label(double score, double cutoff = kDefaultTrustCutoff);

}  // namespace storyflux
