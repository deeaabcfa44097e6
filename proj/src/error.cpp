#include "normgraph/error.hpp"

namespace normgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedUrn: return "MalformedUrn";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::IllegalEdgeKind: return "IllegalEdgeKind";
    case ErrorCode::DuplicateUrn: return "DuplicateUrn";
    case ErrorCode::EmptyComponentTree: return "EmptyComponentTree";
    case ErrorCode::InvalidScript: return "InvalidScript";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::EffectiveDateNotAfterCurrent: return "EffectiveDateNotAfterCurrent";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::LanguageMismatch: return "LanguageMismatch";
    case ErrorCode::NotYetEnacted: return "NotYetEnacted";
    case ErrorCode::UnknownConcept: return "UnknownConcept";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::MissingLanguage: return "MissingLanguage";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::OutOfOrderSeq: return "OutOfOrderSeq";
    case ErrorCode::ReplayFailure: return "ReplayFailure";
    case ErrorCode::LogFormat: return "LogFormat";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::TurtleParse: return "TurtleParse";
    case ErrorCode::UnknownVocabularyTerm: return "UnknownVocabularyTerm";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

MalformedUrn::MalformedUrn(std::size_t position, const std::string& reason)
    : Error(ErrorCode::MalformedUrn, "at position " + std::to_string(position) + ": " + reason),
      position_(position) {}

}  // namespace normgraph
