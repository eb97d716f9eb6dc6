#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace storyflux {

enum class ErrorKind {
  MalformedUrl,
  EmptyHost,
  ResolverTimeout,
  ResolverLoop,
  UnreadableInput,
  UnknownCommunity,
  InvalidCommunity,
  DuplicateSource,
  OutOfRangeScore,
  EmptyCommunity,
  DegenerateTable,
  InconsistentTotal,
  EmptyGraph,
  UnassignedNode,
  EmptySeries,
  SupercriticalModel,
  EventOutsideWindow,
  EmptyEvents,
  InvalidPriors,
  InvalidArgument,
  MissingInput,
  InvalidConfig,
  NoPopularStories,
  MissingArtifact,
  InvariantViolation,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace storyflux
