#include <algorithm>
#include <cmath>
#include <map>

#include "ifol/builtins.hpp"
#include "ifol/error.hpp"

namespace ifol {

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::EvaluationFailure, std::string(what) + " is undefined here");
  return v;
}

const std::map<std::string, BuiltinPredicate, std::less<>>& predicates() {
  static const std::map<std::string, BuiltinPredicate, std::less<>> table = [] {
    std::map<std::string, BuiltinPredicate, std::less<>> t;
    auto add = [&](const char* name, std::function<bool(double, double)> f) {
      t.emplace(name, BuiltinPredicate{name, 2, [f](const std::vector<double>& a) { return f(a[0], a[1]); }});
    };
    add("le", [](double a, double b) { return a <= b; });
    add("lt", [](double a, double b) { return a < b; });
    add("ge", [](double a, double b) { return a >= b; });
    add("gt", [](double a, double b) { return a > b; });
    add("eq", [](double a, double b) { return a == b; });
    add("ne", [](double a, double b) { return a != b; });
    return t;
  }();
  return table;
}

const std::map<std::string, BuiltinFunction, std::less<>>& functions() {
  static const std::map<std::string, BuiltinFunction, std::less<>> table = [] {
    std::map<std::string, BuiltinFunction, std::less<>> t;
    auto add2 = [&](const char* name, std::function<double(double, double)> f) {
      t.emplace(name, BuiltinFunction{name, 2, [f](const std::vector<double>& a) { return f(a[0], a[1]); }});
    };
    auto add1 = [&](const char* name, std::function<double(double)> f) {
      t.emplace(name, BuiltinFunction{name, 1, [f](const std::vector<double>& a) { return f(a[0]); }});
    };
    add2("add", [](double a, double b) { return checked(a + b, "add"); });
    add2("sub", [](double a, double b) { return checked(a - b, "sub"); });
    add2("mul", [](double a, double b) { return checked(a * b, "mul"); });
    add2("div", [](double a, double b) {
      if (b == 0) throw Error(ErrorKind::EvaluationFailure, "division by zero");
      return checked(a / b, "div");
    });
    add2("pow", [](double a, double b) { return checked(std::pow(a, b), "pow"); });
    add2("min", [](double a, double b) { return std::min(a, b); });
    add2("max", [](double a, double b) { return std::max(a, b); });
    add1("neg", [](double a) { return -a; });
    add1("abs", [](double a) { return std::fabs(a); });
    return t;
  }();
  return table;
}

}  // namespace

std::optional<BuiltinPredicate> find_builtin_predicate(std::string_view evaluator) {
  auto it = predicates().find(evaluator);
  if (it == predicates().end()) return std::nullopt;
  return it->second;
}

std::optional<BuiltinFunction> find_builtin_function(std::string_view evaluator) {
  auto it = functions().find(evaluator);
  if (it == functions().end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> builtin_predicate_names() {
  std::vector<std::string> out;
  for (const auto& [name, p] : predicates()) out.push_back(name);
  return out;
}

std::vector<std::string> builtin_function_names() {
  std::vector<std::string> out;
  for (const auto& [name, f] : functions()) out.push_back(name);
  return out;
}

std::optional<std::string> infix_symbol(char op) {
  switch (op) {
    case '+': return "add";
    case '-': return "sub";
    case '*': return "mul";
    case '/': return "div";
    case '^': return "pow";
    default: return std::nullopt;
  }
}

}  // namespace ifol
