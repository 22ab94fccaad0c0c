#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "ifol/error.hpp"
#include "ifol/kernel.hpp"
#include "ifol/syntax.hpp"

namespace ifol {

struct Term::Node {
  TermKind kind = TermKind::Const;
  Variable var;
  std::string symbol;
  std::vector<Term> args;
  std::optional<Formula> body;
  std::vector<Variable> alpha;
  std::vector<Variable> beta;
};

struct Formula::Node {
  FormulaKind kind = FormulaKind::Truth;
  std::string predicate;
  std::vector<Term> args;
  std::vector<Formula> children;
  Variable bound;
  std::size_t depth = 0;
};

// --- construction ----------------------------------------------------------

Term Term::var(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::constant(std::string symbol) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->symbol = std::move(symbol);
  return Term(std::move(n));
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::FnApp;
  n->symbol = std::move(symbol);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term make_abstracted_unchecked(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta) {
  auto n = std::make_shared<Term::Node>();
  n->kind = TermKind::Abstracted;
  n->body = std::move(body);
  n->alpha = std::move(alpha);
  n->beta = std::move(beta);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const Variable& Term::variable() const { return node_->var; }
const std::string& Term::symbol() const { return node_->symbol; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Formula& Term::body() const { return *node_->body; }
const std::vector<Variable>& Term::alpha() const { return node_->alpha; }
const std::vector<Variable>& Term::beta() const { return node_->beta; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: return a.variable() == b.variable();
    case TermKind::Const: return a.symbol() == b.symbol();
    case TermKind::FnApp: return a.symbol() == b.symbol() && a.args() == b.args();
    case TermKind::Abstracted:
      return a.alpha() == b.alpha() && a.beta() == b.beta() && a.body() == b.body();
  }
  return false;
}

Formula Formula::truth() {
  static const Formula t(std::make_shared<Node>());
  return t;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->predicate = std::move(predicate);
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->depth = f.depth() + 1;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->depth = std::max(a.depth(), b.depth()) + 1;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::exists(Variable v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Exists;
  n->bound = std::move(v);
  n->depth = body.depth() + 1;
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::predicate() const { return node_->predicate; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const Variable& Formula::bound() const { return node_->bound; }
std::size_t Formula::depth() const { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Truth: return true;
    case FormulaKind::Atom: return a.predicate() == b.predicate() && a.args() == b.args();
    case FormulaKind::Not: return a.operand() == b.operand();
    case FormulaKind::And: return a.left() == b.left() && a.right() == b.right();
    case FormulaKind::Exists: return a.bound() == b.bound() && a.operand() == b.operand();
  }
  return false;
}

Formula falsum() { return Formula::negation(Formula::truth()); }

Formula disjunction(Formula a, Formula b) {
  return Formula::negation(
      Formula::conjunction(Formula::negation(std::move(a)), Formula::negation(std::move(b))));
}

Formula implication(Formula a, Formula b) {
  return Formula::negation(Formula::conjunction(std::move(a), Formula::negation(std::move(b))));
}

Formula forall(Variable v, Formula body) {
  return Formula::negation(Formula::exists(std::move(v), Formula::negation(std::move(body))));
}

// --- variables -------------------------------------------------------------

namespace {

struct VarCollector {
  std::vector<Variable> out;
  std::set<std::string> seen;

  void add(const Variable& v) {
    if (seen.insert(v.name).second) out.push_back(v);
  }
};

void collect_free(const Term& t, const std::set<std::string>& bound, VarCollector& c);

void collect_free(const Formula& f, std::set<std::string>& bound, VarCollector& c) {
  switch (f.kind()) {
    case FormulaKind::Truth: return;
    case FormulaKind::Atom:
      for (const auto& a : f.args()) collect_free(a, bound, c);
      return;
    case FormulaKind::Not: collect_free(f.operand(), bound, c); return;
    case FormulaKind::And:
      collect_free(f.left(), bound, c);
      collect_free(f.right(), bound, c);
      return;
    case FormulaKind::Exists: {
      bool fresh = bound.insert(f.bound().name).second;
      collect_free(f.operand(), bound, c);
      if (fresh) bound.erase(f.bound().name);
      return;
    }
  }
}

void collect_free(const Term& t, const std::set<std::string>& bound, VarCollector& c) {
  switch (t.kind()) {
    case TermKind::Var:
      if (!bound.count(t.variable().name)) c.add(t.variable());
      return;
    case TermKind::Const: return;
    case TermKind::FnApp:
      for (const auto& a : t.args()) collect_free(a, bound, c);
      return;
    case TermKind::Abstracted:
      for (const auto& v : t.beta()) {
        if (!bound.count(v.name)) c.add(v);
      }
      return;
  }
}

void collect_all(const Term& t, VarCollector& c);

void collect_all(const Formula& f, VarCollector& c) {
  switch (f.kind()) {
    case FormulaKind::Truth: return;
    case FormulaKind::Atom:
      for (const auto& a : f.args()) collect_all(a, c);
      return;
    case FormulaKind::Not: collect_all(f.operand(), c); return;
    case FormulaKind::And:
      collect_all(f.left(), c);
      collect_all(f.right(), c);
      return;
    case FormulaKind::Exists:
      c.add(f.bound());
      collect_all(f.operand(), c);
      return;
  }
}

void collect_all(const Term& t, VarCollector& c) {
  switch (t.kind()) {
    case TermKind::Var: c.add(t.variable()); return;
    case TermKind::Const: return;
    case TermKind::FnApp:
      for (const auto& a : t.args()) collect_all(a, c);
      return;
    case TermKind::Abstracted: collect_all(t.body(), c); return;
  }
}

bool contains_name(const std::vector<Variable>& vs, const std::string& name) {
  return std::any_of(vs.begin(), vs.end(), [&](const Variable& v) { return v.name == name; });
}

// Keeps the variables named in `wanted`, in the order they appear in `order`.
std::vector<Variable> in_order(const std::vector<Variable>& order, const std::set<std::string>& wanted) {
  std::vector<Variable> out;
  for (const auto& v : order) {
    if (wanted.count(v.name)) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<Variable> free_vars(const Formula& f) {
  VarCollector c;
  std::set<std::string> bound;
  collect_free(f, bound, c);
  return c.out;
}

std::vector<Variable> free_vars(const Term& t) {
  VarCollector c;
  collect_free(t, {}, c);
  return c.out;
}

std::vector<Variable> all_vars(const Formula& f) {
  VarCollector c;
  collect_all(f, c);
  return c.out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

Term mk_abstracted(Formula body, std::vector<Variable> alpha, std::vector<Variable> beta) {
  std::set<std::string> a;
  std::set<std::string> b;
  for (const auto& v : alpha) a.insert(v.name);
  for (const auto& v : beta) {
    if (a.count(v.name)) throw Error(ErrorKind::AlphaBetaOverlap, "'" + v.name + "' is both hidden and visible");
    b.insert(v.name);
  }
  std::vector<Variable> fv = free_vars(body);
  if (a.empty() && b.empty() && !fv.empty()) {
    throw Error(ErrorKind::EmptyAlphaWithFreeVars,
                "abstraction of an open formula needs hidden or visible variables");
  }
  for (const auto& v : fv) {
    if (!a.count(v.name) && !b.count(v.name)) {
      throw Error(ErrorKind::UncoveredFreeVariable, "free variable '" + v.name + "' is neither hidden nor visible");
    }
  }
  for (const auto& name : a) {
    if (!contains_name(fv, name)) {
      throw Error(ErrorKind::UncoveredFreeVariable, "'" + name + "' is not free in the abstracted formula");
    }
  }
  for (const auto& name : b) {
    if (!contains_name(fv, name)) {
      throw Error(ErrorKind::UncoveredFreeVariable, "'" + name + "' is not free in the abstracted formula");
    }
  }
  auto ordered_alpha = in_order(fv, a);
  auto ordered_beta = in_order(fv, b);
  return make_abstracted_unchecked(std::move(body), std::move(ordered_alpha), std::move(ordered_beta));
}

// --- substitution ----------------------------------------------------------

Term substitute(const Term& s, const Variable& x, const Term& t) {
  switch (s.kind()) {
    case TermKind::Var: return s.variable().name == x.name ? t : s;
    case TermKind::Const: return s;
    case TermKind::FnApp: {
      std::vector<Term> args;
      args.reserve(s.args().size());
      for (const auto& a : s.args()) args.push_back(substitute(a, x, t));
      return Term::apply(s.symbol(), std::move(args));
    }
    case TermKind::Abstracted: {
      if (!contains_name(s.beta(), x.name)) return s;
      auto incoming = free_vars(t);
      for (const auto& v : incoming) {
        if (contains_name(s.alpha(), v.name)) {
          throw Error(ErrorKind::VariableCapture, "'" + v.name + "' would be captured as a hidden variable");
        }
      }
      Formula body = substitute(s.body(), x, t);
      std::set<std::string> beta;
      for (const auto& v : s.beta()) {
        if (v.name != x.name) beta.insert(v.name);
      }
      for (const auto& v : incoming) beta.insert(v.name);
      std::set<std::string> alpha;
      for (const auto& v : s.alpha()) alpha.insert(v.name);
      auto fv = free_vars(body);
      return make_abstracted_unchecked(body, in_order(fv, alpha), in_order(fv, beta));
    }
  }
  return s;
}

Formula substitute(const Formula& f, const Variable& x, const Term& t) {
  switch (f.kind()) {
    case FormulaKind::Truth: return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(substitute(a, x, t));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case FormulaKind::Not: return Formula::negation(substitute(f.operand(), x, t));
    case FormulaKind::And:
      return Formula::conjunction(substitute(f.left(), x, t), substitute(f.right(), x, t));
    case FormulaKind::Exists: {
      const Variable& y = f.bound();
      if (y.name == x.name) return f;
      if (!contains_name(free_vars(f.operand()), x.name)) return f;
      if (contains_name(free_vars(t), y.name)) {
        throw Error(ErrorKind::VariableCapture, "'" + y.name + "' would capture a variable of the substituted term");
      }
      return Formula::exists(y, substitute(f.operand(), x, t));
    }
  }
  return f;
}

Formula ground_instance(const Formula& f, const Grounding& g) {
  Formula out = f;
  for (const auto& v : free_vars(f)) {
    auto it = g.find(v.name);
    if (it == g.end()) throw Error(ErrorKind::UnboundVariable, "no value for '" + v.name + "'");
    out = substitute(out, v, Term::constant(it->second));
  }
  return out;
}

Formula bind_variables(const Formula& f, const Grounding& g) {
  Formula out = f;
  for (const auto& v : free_vars(f)) {
    if (auto it = g.find(v.name); it != g.end()) out = substitute(out, v, Term::constant(it->second));
  }
  return out;
}

Term ground_instance(const Term& t, const Grounding& g) {
  Term out = t;
  for (const auto& v : free_vars(t)) {
    auto it = g.find(v.name);
    if (it == g.end()) throw Error(ErrorKind::UnboundVariable, "no value for '" + v.name + "'");
    out = substitute(out, v, Term::constant(it->second));
  }
  return out;
}

// --- printing --------------------------------------------------------------

namespace {

const std::set<std::string, std::less<>> kKeywords = {"true", "false", "exists", "forall", "with"};

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || ch == '_' || ch == '\'';
  });
}

void print(const Term& t, bool annotate, std::string& out);
void print(const Formula& f, bool annotate, std::string& out);

void print_var_list(const std::vector<Variable>& vs, std::string& out) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += quote_name(vs[i].name);
  }
}

void print(const Term& t, bool annotate, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var:
      out += quote_name(t.variable().name);
      if (annotate) out += ":" + quote_name(t.variable().sort);
      return;
    case TermKind::Const: out += quote_name(t.symbol()); return;
    case TermKind::FnApp:
      out += quote_name(t.symbol());
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        print(t.args()[i], annotate, out);
      }
      out += ')';
      return;
    case TermKind::Abstracted:
      out += "<< ";
      print(t.body(), annotate, out);
      out += " >>";
      // An omitted list takes the remaining free variables, which is empty here.
      if (!t.alpha().empty()) {
        out += "|alpha:";
        print_var_list(t.alpha(), out);
      }
      if (!t.beta().empty()) {
        out += t.alpha().empty() ? "|beta:" : " |beta:";
        print_var_list(t.beta(), out);
      }
      return;
  }
}

void print_operand(const Formula& f, bool annotate, std::string& out, bool wrap_and) {
  bool wrap = f.kind() == FormulaKind::Exists || (wrap_and && f.kind() == FormulaKind::And);
  if (wrap) out += '(';
  print(f, annotate, out);
  if (wrap) out += ')';
}

void print(const Formula& f, bool annotate, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Truth: out += "true"; return;
    case FormulaKind::Atom:
      out += quote_name(f.predicate());
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ", ";
        print(f.args()[i], annotate, out);
      }
      out += ')';
      return;
    case FormulaKind::Not:
      out += '~';
      print_operand(f.operand(), annotate, out, true);
      return;
    case FormulaKind::And:
      print_operand(f.left(), annotate, out, false);
      out += " & ";
      print_operand(f.right(), annotate, out, true);
      return;
    case FormulaKind::Exists:
      out += "exists " + quote_name(f.bound().name) + ":" + quote_name(f.bound().sort) + " . ";
      print(f.operand(), annotate, out);
      return;
  }
}

}  // namespace

std::string quote_name(const std::string& name) {
  if (is_identifier(name) && !kKeywords.count(name)) return name;
  if (auto v = parse_number(name); v && canonical_number(*v) == name) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_string(const Term& t, bool annotate) {
  std::string out;
  print(t, annotate, out);
  return out;
}

std::string to_string(const Formula& f, bool annotate) {
  std::string out;
  print(f, annotate, out);
  return out;
}

}  // namespace ifol
