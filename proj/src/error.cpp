#include "storyflux/error.h"

namespace storyflux {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedUrl: return "malformed_url";
    case ErrorKind::EmptyHost: return "empty_host";
    case ErrorKind::ResolverTimeout: return "resolver_timeout";
    case ErrorKind::ResolverLoop: return "resolver_loop";
    case ErrorKind::UnreadableInput: return "unreadable_input";
    case ErrorKind::UnknownCommunity: return "unknown_community";
    case ErrorKind::InvalidCommunity: return "invalid_community";
    case ErrorKind::DuplicateSource: return "duplicate_source";
    case ErrorKind::OutOfRangeScore: return "out_of_range_score";
    case ErrorKind::EmptyCommunity: return "empty_community";
    case ErrorKind::DegenerateTable: return "degenerate_table";
    case ErrorKind::InconsistentTotal: return "inconsistent_total";
    case ErrorKind::EmptyGraph: return "empty_graph";
    case ErrorKind::UnassignedNode: return "unassigned_node";
    case ErrorKind::EmptySeries: return "empty_series";
    case ErrorKind::SupercriticalModel: return "supercritical_model";
    case ErrorKind::EventOutsideWindow: return "event_outside_window";
    case ErrorKind::EmptyEvents: return "empty_events";
    case ErrorKind::InvalidPriors: return "invalid_priors";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::MissingInput: return "missing_input";
    case ErrorKind::InvalidConfig: return "invalid_config";
    case ErrorKind::NoPopularStories: return "no_popular_stories";
    case ErrorKind::MissingArtifact: return "missing_artifact";
    case ErrorKind::InvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

}  // namespace storyflux
