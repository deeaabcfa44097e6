#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace normgraph {

enum class ErrorCode {
  MalformedUrn,
  InvalidArgument,
  UnknownEndpoint,
  IllegalEdgeKind,
  DuplicateUrn,
  EmptyComponentTree,
  InvalidScript,
  UnknownTarget,
  EffectiveDateNotAfterCurrent,
  DuplicateComponent,
  LanguageMismatch,
  NotYetEnacted,
  UnknownConcept,
  UnknownVersion,
  MissingLanguage,
  InvalidRange,
  ChecksumMismatch,
  OutOfOrderSeq,
  ReplayFailure,
  LogFormat,
  Io,
  InvalidGraph,
  TurtleParse,
  UnknownVocabularyTerm,
};

std::string_view to_string(ErrorCode code);

// All domain failures are reported through this type. The message is
// prefixed with the error code name so every failure renders distinctly.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

class MalformedUrn : public Error {
 public:
  MalformedUrn(std::size_t position, const std::string& reason);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace normgraph
