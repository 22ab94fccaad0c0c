#pragma once

// Decidable evaluators for computed predicates and functions over numbers.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ifol {

struct BuiltinPredicate {
  std::string name;
  std::size_t arity = 0;
  std::function<bool(const std::vector<double>&)> eval;
};

struct BuiltinFunction {
  std::string name;
  std::size_t arity = 0;
  /// Throws EvaluationFailure outside the function's domain.
  std::function<double(const std::vector<double>&)> eval;
};

std::optional<BuiltinPredicate> find_builtin_predicate(std::string_view evaluator);
std::optional<BuiltinFunction> find_builtin_function(std::string_view evaluator);
std::vector<std::string> builtin_predicate_names();
std::vector<std::string> builtin_function_names();

/// Symbol used for an infix arithmetic operator ('+' gives "add").
std::optional<std::string> infix_symbol(char op);

}  // namespace ifol
