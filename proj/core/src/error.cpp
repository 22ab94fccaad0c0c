#include "ifol/error.hpp"

namespace ifol {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownAttributeSort: return "UnknownAttributeSort";
    case ErrorKind::ZeroArityNonProposition: return "ZeroArityNonProposition";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownSort: return "UnknownSort";
    case ErrorKind::NestedSentenceSortHasNoElements: return "NestedSentenceSortHasNoElements";
    case ErrorKind::NotARelationalConcept: return "NotARelationalConcept";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::VariableCapture: return "VariableCapture";
    case ErrorKind::AlphaBetaOverlap: return "AlphaBetaOverlap";
    case ErrorKind::UncoveredFreeVariable: return "UncoveredFreeVariable";
    case ErrorKind::EmptyAlphaWithFreeVars: return "EmptyAlphaWithFreeVars";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ClosedFormula: return "ClosedFormula";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::DuplicatePhrase: return "DuplicatePhrase";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::FullAssignment: return "FullAssignment";
    case ErrorKind::EmptyAssignment: return "EmptyAssignment";
    case ErrorKind::SortViolation: return "SortViolation";
    case ErrorKind::UnregisteredPredicate: return "UnregisteredPredicate";
    case ErrorKind::InfiniteSortExtent: return "InfiniteSortExtent";
    case ErrorKind::IllSorted: return "IllSorted";
    case ErrorKind::MixedArity: return "MixedArity";
    case ErrorKind::EmptyParts: return "EmptyParts";
    case ErrorKind::InfiniteExtent: return "InfiniteExtent";
    case ErrorKind::ExplosionGuard: return "ExplosionGuard";
    case ErrorKind::FunctionUndefinedAt: return "FunctionUndefinedAt";
    case ErrorKind::InfiniteHiddenDomain: return "InfiniteHiddenDomain";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

}  // namespace ifol
