#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ifol {

enum class ErrorKind {
  // kernel
  DuplicateName,
  UnknownAttributeSort,
  ZeroArityNonProposition,
  CycleDetected,
  UnknownSort,
  NestedSentenceSortHasNoElements,
  NotARelationalConcept,
  // syntax
  SortMismatch,
  VariableCapture,
  AlphaBetaOverlap,
  UncoveredFreeVariable,
  EmptyAlphaWithFreeVars,
  UnboundVariable,
  // sorting
  UnknownSymbol,
  ClosedFormula,
  EvaluationFailure,
  // concepts
  DuplicatePhrase,
  ArityMismatch,
  FullAssignment,
  EmptyAssignment,
  SortViolation,
  UnregisteredPredicate,
  InfiniteSortExtent,
  IllSorted,
  MixedArity,
  EmptyParts,
  // semantics
  InfiniteExtent,
  ExplosionGuard,
  FunctionUndefinedAt,
  InfiniteHiddenDomain,
  // workspace files
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the "<Kind>: " prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace ifol
