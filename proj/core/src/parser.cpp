#include "ifol/parser.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ifol/builtins.hpp"

namespace ifol {

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Check: return "check";
    case QueryKind::Eval: return "eval";
    case QueryKind::Consequence: return "consequence";
    case QueryKind::Intension: return "intension";
    case QueryKind::Concepts: return "concepts";
    case QueryKind::BealerMontague: return "bealer-montague";
  }
  return "unknown";
}

namespace {

std::string join_diagnostics(const std::string& source, const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += source + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
           std::string(to_string(d.kind)) + ": " + d.message;
  }
  return out;
}

}  // namespace

LoadFailure::LoadFailure(std::string source, std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? ErrorKind::ValidationError : diagnostics.front().kind,
            join_diagnostics(source, diagnostics)),
      source_(std::move(source)),
      diagnostics_(std::move(diagnostics)) {}

std::string format_diagnostics(const LoadFailure& failure) {
  return join_diagnostics(failure.source(), failure.diagnostics());
}

namespace {

// --- lexer -----------------------------------------------------------------

enum class Tok { Name, String, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

struct SyntaxFailure {
  std::size_t column;
  ErrorKind kind;
  std::string message;
};

[[noreturn]] void fail_at(std::size_t column, const std::string& message) {
  throw SyntaxFailure{column, ErrorKind::ParseError, message};
}

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  static const std::vector<std::pair<std::string_view, std::string_view>> kSymbols = {
      {"|alpha:", "|alpha:"}, {"|beta:", "|beta:"}, {"<<", "<<"}, {">>", ">>"}, {"->", "->"},
      {"⋖", "<<"},       {"⋗", ">>"},     {"¬", "~"},  {"∧", "&"},  {"∨", "|"},
      {"→", "->"},       {"(", "("},           {")", ")"},       {",", ","},       {"~", "~"},
      {"&", "&"},             {"|", "|"},           {".", "."},       {":", ":"},       {"+", "+"},
      {"-", "-"},             {"*", "*"},           {"/", "/"},       {"^", "^"},       {"{", "{"},
      {"}", "}"},             {"=", "="}};
  static const std::vector<std::pair<std::string_view, std::string_view>> kWords = {
      {"∃", "exists"}, {"∀", "forall"}, {"⊤", "true"}, {"⊥", "false"}};

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      std::string text;
      ++i;
      while (true) {
        if (i >= s.size()) fail_at(col, "unterminated quoted name");
        if (s[i] == '"') break;
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        text += s[i++];
      }
      ++i;
      out.push_back({Tok::String, text, col});
      continue;
    }
    if (name_start(c)) {
      std::size_t j = i;
      while (j < s.size() && name_char(s[j])) ++j;
      out.push_back({Tok::Name, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      if (j < s.size() && name_start(s[j])) fail_at(col, "malformed number");
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [spelling, word] : kWords) {
      if (s.substr(i, spelling.size()) == spelling) {
        out.push_back({Tok::Name, std::string(word), col});
        i += spelling.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const auto& [spelling, symbol] : kSymbols) {
      if (s.substr(i, spelling.size()) == spelling) {
        out.push_back({Tok::Punct, std::string(symbol), col});
        i += spelling.size();
        matched = true;
        break;
      }
    }
    if (!matched) fail_at(col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

bool is_name(const Token& t) { return t.kind == Tok::Name || t.kind == Tok::String; }
bool is_word(const Token& t, std::string_view w) { return t.kind == Tok::Name && t.text == w; }
bool is_punct(const Token& t, std::string_view p) { return t.kind == Tok::Punct && t.text == p; }

const std::set<std::string, std::less<>> kReserved = {"true", "false", "exists", "forall"};

// --- formulas --------------------------------------------------------------

class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& tokens, std::size_t pos) : toks_(tokens), pos_(pos) {
    collect_annotations();
  }

  Formula parse() { return implication_level(); }
  std::size_t position() const { return pos_; }
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

 private:
  void collect_annotations() {
    for (std::size_t i = pos_; i + 2 < toks_.size(); ++i) {
      if (!is_name(toks_[i]) || !is_punct(toks_[i + 1], ":") || !is_name(toks_[i + 2])) continue;
      if (i > 0 && (is_word(toks_[i - 1], "exists") || is_word(toks_[i - 1], "forall"))) continue;
      auto [it, fresh] = annotations_.emplace(toks_[i].text, toks_[i + 2].text);
      if (!fresh && it->second != toks_[i + 2].text) {
        fail_at(toks_[i].column, "variable '" + toks_[i].text + "' is annotated with both '" + it->second +
                                     "' and '" + toks_[i + 2].text + "'");
      }
    }
    for (const auto& t : toks_) {
      if (is_name(t)) names_.insert(t.text);
    }
  }

  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  void expect(std::string_view p) {
    if (!is_punct(peek(), p)) fail_at(peek().column, "expected '" + std::string(p) + "'");
    ++pos_;
  }

  std::string name(const char* what) {
    const Token& t = peek();
    if (!is_name(t) || (t.kind == Tok::Name && kReserved.count(t.text))) {
      fail_at(t.column, std::string("expected ") + what);
    }
    ++pos_;
    return t.text;
  }

  std::optional<Variable> resolve(const std::string& n) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == n) return it->second;
    }
    if (auto it = annotations_.find(n); it != annotations_.end()) return Variable{n, it->second};
    return std::nullopt;
  }

  std::string fresh_name(const std::string& base) {
    for (std::size_t k = 1;; ++k) {
      std::string candidate = base + "_" + std::to_string(k);
      if (!names_.count(candidate)) {
        names_.insert(candidate);
        return candidate;
      }
    }
  }

  Formula implication_level() {
    Formula lhs = disjunction_level();
    if (is_punct(peek(), "->")) {
      ++pos_;
      return implication(lhs, implication_level());
    }
    return lhs;
  }

  Formula disjunction_level() {
    Formula lhs = conjunction_level();
    while (is_punct(peek(), "|")) {
      ++pos_;
      lhs = disjunction(lhs, conjunction_level());
    }
    return lhs;
  }

  Formula conjunction_level() {
    Formula lhs = unary();
    while (is_punct(peek(), "&")) {
      ++pos_;
      lhs = Formula::conjunction(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    if (is_punct(t, "~")) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (is_word(t, "exists") || is_word(t, "forall")) return quantifier();
    if (is_word(t, "true")) {
      ++pos_;
      return Formula::truth();
    }
    if (is_word(t, "false")) {
      ++pos_;
      return falsum();
    }
    if (is_punct(t, "(")) {
      ++pos_;
      Formula f = implication_level();
      expect(")");
      return f;
    }
    if (is_name(t)) {
      std::string p = name("a predicate");
      std::vector<Term> args;
      if (is_punct(peek(), "(")) args = arguments();
      return Formula::atom(p, std::move(args));
    }
    fail_at(t.column, "expected a formula");
  }

  Formula quantifier() {
    bool universal = next().text == "forall";
    std::size_t col = peek().column;
    std::string source = name("a variable");
    std::string sort;
    if (is_punct(peek(), ":")) {
      ++pos_;
      sort = name("a sort");
    } else if (auto it = annotations_.find(source); it != annotations_.end()) {
      sort = it->second;
    } else {
      fail_at(col, "variable '" + source + "' needs a sort");
    }
    expect(".");
    std::string bound = source;
    bool shadows = std::any_of(scope_.begin(), scope_.end(), [&](const auto& e) { return e.first == source; });
    if (shadows) bound = fresh_name(source);
    Variable v{bound, sort};
    scope_.emplace_back(source, v);
    Formula body = implication_level();
    scope_.pop_back();
    return universal ? forall(v, body) : Formula::exists(v, body);
  }

  std::vector<Term> arguments() {
    expect("(");
    std::vector<Term> args;
    if (is_punct(peek(), ")")) {
      ++pos_;
      return args;
    }
    while (true) {
      args.push_back(term());
      if (is_punct(peek(), ")")) {
        ++pos_;
        return args;
      }
      expect(",");
    }
  }

  Term term() {
    Term lhs = product_level();
    while (is_punct(peek(), "+") || is_punct(peek(), "-")) {
      std::string op = *infix_symbol(next().text[0]);
      lhs = Term::apply(op, {lhs, product_level()});
    }
    return lhs;
  }

  Term product_level() {
    Term lhs = power_level();
    while (is_punct(peek(), "*") || is_punct(peek(), "/")) {
      std::string op = *infix_symbol(next().text[0]);
      lhs = Term::apply(op, {lhs, power_level()});
    }
    return lhs;
  }

  Term power_level() {
    Term base = primary_term();
    if (is_punct(peek(), "^")) {
      ++pos_;
      return Term::apply(*infix_symbol('^'), {base, power_level()});
    }
    return base;
  }

  static std::string numeral(const std::string& text, bool negative, std::size_t column) {
    auto v = parse_number((negative ? "-" : "") + text);
    if (!v) fail_at(column, "malformed number '" + text + "'");
    return canonical_number(*v);
  }

  Term primary_term() {
    const Token& t = peek();
    if (is_punct(t, "-")) {
      ++pos_;
      if (peek().kind != Tok::Number) fail_at(t.column, "'-' in front of a term needs a number");
      return Term::constant(numeral(next().text, true, t.column));
    }
    if (t.kind == Tok::Number) {
      ++pos_;
      return Term::constant(numeral(t.text, false, t.column));
    }
    if (is_punct(t, "(")) {
      ++pos_;
      Term inner = term();
      expect(")");
      return inner;
    }
    if (is_punct(t, "<<")) return abstraction();
    if (is_name(t)) {
      std::string n = name("a term");
      if (is_punct(peek(), "(")) return Term::apply(n, arguments());
      if (is_punct(peek(), ":")) {
        pos_ += 2;  // annotation, already collected
        return Term::var(*resolve(n));
      }
      if (auto v = resolve(n)) return Term::var(*v);
      return Term::constant(n);
    }
    fail_at(t.column, "expected a term");
  }

  // Longest run of `x, y, ...` naming unlisted free variables of the body.
  std::vector<Variable> variable_list(const std::vector<Variable>& free, std::set<std::string>& listed) {
    std::vector<Variable> out;
    auto candidate = [&](std::size_t ahead) -> std::optional<Variable> {
      const Token& t = peek(ahead);
      if (!is_name(t)) return std::nullopt;
      auto v = resolve(t.text);
      if (!v || listed.count(v->name)) return std::nullopt;
      if (std::find(free.begin(), free.end(), *v) == free.end()) return std::nullopt;
      return v;
    };
    auto first = candidate(0);
    if (!first) return out;
    ++pos_;
    out.push_back(*first);
    listed.insert(first->name);
    while (is_punct(peek(), ",")) {
      auto more = candidate(1);
      if (!more) break;
      pos_ += 2;
      out.push_back(*more);
      listed.insert(more->name);
    }
    return out;
  }

  Term abstraction() {
    std::size_t col = peek().column;
    expect("<<");
    Formula body = implication_level();
    expect(">>");
    auto free = free_vars(body);
    std::set<std::string> listed;
    std::optional<std::vector<Variable>> alpha;
    std::optional<std::vector<Variable>> beta;
    if (is_punct(peek(), "|alpha:")) {
      ++pos_;
      alpha = variable_list(free, listed);
    }
    if (is_punct(peek(), "|beta:")) {
      ++pos_;
      beta = variable_list(free, listed);
    }
    auto rest = [&]() {
      std::vector<Variable> out;
      for (const auto& v : free) {
        if (!listed.count(v.name)) out.push_back(v);
      }
      return out;
    };
    if (!alpha && !beta) {
      alpha = free;
      beta.emplace();
    } else if (!beta) {
      beta = rest();
    } else if (!alpha) {
      alpha = rest();
    }
    try {
      return mk_abstracted(body, *alpha, *beta);
    } catch (const Error& e) {
      throw SyntaxFailure{col, e.kind(), e.detail()};
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::map<std::string, std::string> annotations_;
  std::set<std::string> names_;
  std::vector<std::pair<std::string, Variable>> scope_;
};

// --- declarations ----------------------------------------------------------

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

struct SortLine {
  std::size_t line;
  std::string name;
  std::optional<std::string> super;
};
struct IsaLine {
  std::size_t line;
  std::string sub, super;
};
struct ConceptLine {
  std::size_t line;
  std::string phrase;
  std::size_t arity;
  std::vector<std::string> sorts;
  std::string predicate;
};
struct ParticularLine {
  std::size_t line;
  std::string lexeme, sort;
};
struct ExtentLine {
  std::size_t line;
  std::string sort;
  std::vector<std::string> lexemes;
};
struct FunctionLine {
  std::size_t line;
  std::string name;
  std::size_t arity;
  std::vector<std::string> args;
  std::string result;
  std::optional<std::string> evaluator;
};
struct BuiltinPredicateLine {
  std::size_t line;
  std::string name;
  std::size_t arity;
  std::vector<std::string> sorts;
  std::string evaluator;
};
struct AttributeLine {
  std::size_t line;
  std::string predicate, sort;
};
struct QueryLine {
  Query query;
  std::vector<std::pair<std::string, std::size_t>> with_columns;
};

struct Program {
  std::vector<SortLine> sorts;
  std::vector<IsaLine> isas;
  std::vector<ConceptLine> concepts;
  std::vector<ParticularLine> particulars;
  std::vector<ExtentLine> extents;
  std::vector<FunctionLine> functions;
  std::vector<BuiltinPredicateLine> builtin_predicates;
  std::vector<AttributeLine> attributes;
  std::vector<NamedFormula> axioms;
  std::vector<QueryLine> queries;
};

class LineParser {
 public:
  LineParser(const std::vector<Token>& toks, std::size_t line, Program& program)
      : toks_(toks), line_(line), program_(program) {}

  void parse() {
    const Token& head = toks_[0];
    if (head.kind != Tok::Name) fail_at(head.column, "expected a declaration keyword");
    ++pos_;
    const std::string& k = head.text;
    if (k == "sort") {
      SortLine s{line_, name("a sort name"), std::nullopt};
      if (is_word(peek(), "isa")) {
        ++pos_;
        s.super = name("a sort name");
      }
      program_.sorts.push_back(std::move(s));
    } else if (k == "isa") {
      IsaLine s{line_, name("a sort name"), ""};
      s.super = name("a sort name");
      program_.isas.push_back(std::move(s));
    } else if (k == "concept") {
      concept_line();
    } else if (k == "particular") {
      ParticularLine p{line_, lexeme(), ""};
      expect(":");
      p.sort = name("a sort name");
      program_.particulars.push_back(std::move(p));
    } else if (k == "extent") {
      extent_line();
    } else if (k == "function") {
      program_.functions.push_back(function_line());
    } else if (k == "builtin") {
      builtin_line();
    } else if (k == "attribute") {
      AttributeLine a{line_, name("a predicate"), ""};
      a.sort = name("a sort name");
      program_.attributes.push_back(std::move(a));
    } else if (k == "axiom") {
      FormulaParser fp(toks_, pos_);
      Formula f = fp.parse();
      pos_ = fp.position();
      std::string id = "A" + std::to_string(program_.axioms.size() + 1);
      program_.axioms.push_back({id, line_, f});
    } else if (k == "query") {
      query_line();
    } else {
      fail_at(head.column, "unknown declaration '" + k + "'");
    }
    if (peek().kind != Tok::End) fail_at(peek().column, "unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  void expect(std::string_view p) {
    if (!is_punct(peek(), p)) fail_at(peek().column, "expected '" + std::string(p) + "'");
    ++pos_;
  }

  void expect_word(std::string_view w) {
    if (!is_word(peek(), w)) fail_at(peek().column, "expected '" + std::string(w) + "'");
    ++pos_;
  }

  std::string name(const char* what) {
    if (!is_name(peek())) fail_at(peek().column, std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  std::size_t count() {
    const Token& t = peek();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      fail_at(t.column, "expected a natural number");
    }
    ++pos_;
    return std::stoul(t.text);
  }

  // Names, quoted names and (possibly negative) numerals.
  std::string lexeme() {
    const Token& t = peek();
    bool negative = is_punct(t, "-");
    if (negative) ++pos_;
    const Token& v = peek();
    if (v.kind == Tok::Number) {
      ++pos_;
      return canonical_number(*parse_number((negative ? "-" : "") + v.text));
    }
    if (negative) fail_at(t.column, "'-' must precede a number");
    return name("a lexeme");
  }

  std::vector<std::string> sort_product() {
    std::vector<std::string> out{name("a sort name")};
    while (is_word(peek(), "x")) {
      ++pos_;
      out.push_back(name("a sort name"));
    }
    return out;
  }

  void concept_line() {
    ConceptLine c{line_, name("a concept phrase"), 0, {}, ""};
    expect_word("arity");
    c.arity = count();
    expect_word("sorts");
    while (is_name(peek()) && !is_word(peek(), "predicate")) c.sorts.push_back(name("a sort name"));
    expect_word("predicate");
    c.predicate = name("a predicate");
    program_.concepts.push_back(std::move(c));
  }

  void extent_line() {
    ExtentLine e{line_, name("a sort name"), {}};
    expect("=");
    expect("{");
    if (!is_punct(peek(), "}")) {
      while (true) {
        e.lexemes.push_back(lexeme());
        if (is_punct(peek(), "}")) break;
        expect(",");
      }
    }
    expect("}");
    program_.extents.push_back(std::move(e));
  }

  FunctionLine function_line() {
    FunctionLine f{line_, name("a function name"), 0, {}, "", std::nullopt};
    expect("/");
    f.arity = count();
    expect(":");
    if (!is_punct(peek(), "->")) f.args = sort_product();
    expect("->");
    f.result = name("a sort name");
    return f;
  }

  void builtin_line() {
    if (is_word(peek(), "predicate")) {
      ++pos_;
      BuiltinPredicateLine p{line_, name("a predicate"), 0, {}, ""};
      expect("/");
      p.arity = count();
      expect(":");
      p.sorts = sort_product();
      expect("=");
      p.evaluator = name("an evaluator");
      program_.builtin_predicates.push_back(std::move(p));
    } else if (is_word(peek(), "function")) {
      ++pos_;
      FunctionLine f = function_line();
      expect("=");
      f.evaluator = name("an evaluator");
      program_.functions.push_back(std::move(f));
    } else {
      fail_at(peek().column, "expected 'predicate' or 'function'");
    }
  }

  void query_line() {
    QueryLine q;
    q.query.line = line_;
    q.query.id = "Q" + std::to_string(program_.queries.size() + 1);
    std::size_t col = peek().column;
    std::string kind = name("a query kind");
    if (kind == "bealer" && is_punct(peek(), "-") && is_word(peek(1), "montague")) {
      pos_ += 2;
      kind = "bealer-montague";
    }
    auto parse_formula_here = [&]() {
      FormulaParser fp(toks_, pos_);
      q.query.formula = fp.parse();
      pos_ = fp.position();
    };
    if (kind == "check") {
      q.query.kind = QueryKind::Check;
    } else if (kind == "consequence") {
      q.query.kind = QueryKind::Consequence;
      parse_formula_here();
    } else if (kind == "intension") {
      q.query.kind = QueryKind::Intension;
      parse_formula_here();
    } else if (kind == "bealer-montague") {
      q.query.kind = QueryKind::BealerMontague;
      parse_formula_here();
    } else if (kind == "concepts") {
      q.query.kind = QueryKind::Concepts;
      q.query.predicate = name("a predicate");
    } else if (kind == "eval") {
      q.query.kind = QueryKind::Eval;
      parse_formula_here();
      if (is_word(peek(), "with")) {
        ++pos_;
        while (true) {
          std::size_t at = peek().column;
          std::string var = name("a variable");
          expect("=");
          std::string value = lexeme();
          if (!q.query.with.emplace(var, value).second) fail_at(at, "'" + var + "' is given twice");
          q.with_columns.emplace_back(var, at);
          if (!is_punct(peek(), ",")) break;
          ++pos_;
        }
      }
    } else {
      fail_at(col, "unknown query kind '" + kind + "'");
    }
    program_.queries.push_back(std::move(q));
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  Program& program_;
};

// --- loading ---------------------------------------------------------------

class Loader {
 public:
  explicit Loader(Workspace& ws) : ws_(ws) {}

  std::vector<Diagnostic> load(const std::string& text) {
    Program program;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      try {
        auto toks = lex(raw);
        if (toks.size() == 1) continue;
        LineParser(toks, number, program).parse();
      } catch (const SyntaxFailure& f) {
        diagnostics_.push_back({number, f.column, f.kind, f.message});
      }
    }
    if (!diagnostics_.empty()) return diagnostics_;
    apply(program);
    std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    return diagnostics_;
  }

 private:
  template <typename Fn>
  void guarded(std::size_t line, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      diagnostics_.push_back({line, 1, e.kind(), e.detail()});
    }
  }

  void apply(Program& p) {
    Ontology& ont = ws_.ontology;
    for (const auto& s : p.sorts) guarded(s.line, [&] { ont.declare_sort(s.name, 1, {s.name}); });

    // Concepts may use each other as attribute sorts, in any order.
    std::vector<const ConceptLine*> pending;
    for (const auto& c : p.concepts) pending.push_back(&c);
    bool progress = true;
    while (!pending.empty() && progress) {
      progress = false;
      std::vector<const ConceptLine*> later;
      for (const ConceptLine* c : pending) {
        bool ready = std::all_of(c->sorts.begin(), c->sorts.end(), [&](const std::string& s) {
          return s == c->phrase || ont.has_sort(s);
        });
        if (!ready) {
          later.push_back(c);
          continue;
        }
        progress = true;
        guarded(c->line, [&] {
          if (c->arity != c->sorts.size()) {
            throw Error(ErrorKind::ArityMismatch, "concept '" + c->phrase + "' has arity " +
                                                      std::to_string(c->arity) + " but " +
                                                      std::to_string(c->sorts.size()) + " sorts");
          }
          ws_.registry.register_predicate_concept(c->predicate, c->phrase, c->sorts);
        });
      }
      pending = std::move(later);
    }
    for (const ConceptLine* c : pending) {
      for (const auto& s : c->sorts) {
        if (!ont.has_sort(s)) {
          diagnostics_.push_back({c->line, 1, ErrorKind::UnknownAttributeSort,
                                  "concept '" + c->phrase + "' uses unknown sort '" + s + "'"});
          break;
        }
      }
    }

    for (const auto& s : p.sorts) {
      if (s.super) guarded(s.line, [&] { ont.declare_isa(s.name, *s.super); });
    }
    for (const auto& s : p.isas) guarded(s.line, [&] { ont.declare_isa(s.sub, s.super); });
    for (const auto& a : p.attributes) guarded(a.line, [&] { ws_.registry.add_attribute_sort(a.predicate, a.sort); });
    for (const auto& d : p.particulars) guarded(d.line, [&] { ont.declare_particular(d.lexeme, d.sort); });
    declare_extent_members(p.extents);
    for (const auto& e : p.extents) guarded(e.line, [&] { ont.declare_extent(e.sort, e.lexemes); });

    for (const auto& f : p.functions) {
      guarded(f.line, [&] {
        if (f.arity != f.args.size()) {
          throw Error(ErrorKind::ArityMismatch, "function '" + f.name + "' is declared with arity " +
                                                    std::to_string(f.arity) + " but " +
                                                    std::to_string(f.args.size()) + " argument sorts");
        }
        if (ont.find_particular(f.name)) {
          throw Error(ErrorKind::DuplicateName, "'" + f.name + "' is already a particular");
        }
        std::optional<BuiltinFunction> builtin;
        if (f.evaluator) {
          builtin = find_builtin_function(*f.evaluator);
          if (!builtin) throw Error(ErrorKind::UnknownSymbol, "no computed function '" + *f.evaluator + "'");
          if (builtin->arity != f.arity) {
            throw Error(ErrorKind::ArityMismatch, "'" + *f.evaluator + "' takes " +
                                                      std::to_string(builtin->arity) + " arguments");
          }
        }
        ws_.signature.declare_function(f.name, f.args, f.result, builtin);
      });
    }
    for (const auto& b : p.builtin_predicates) {
      guarded(b.line, [&] {
        if (b.arity != b.sorts.size()) {
          throw Error(ErrorKind::ArityMismatch, "predicate '" + b.name + "' is declared with arity " +
                                                    std::to_string(b.arity) + " but " +
                                                    std::to_string(b.sorts.size()) + " sorts");
        }
        auto builtin = find_builtin_predicate(b.evaluator);
        if (!builtin) throw Error(ErrorKind::UnknownSymbol, "no computed predicate '" + b.evaluator + "'");
        if (builtin->arity != b.arity) {
          throw Error(ErrorKind::ArityMismatch, "'" + b.evaluator + "' takes " + std::to_string(builtin->arity) +
                                                    " arguments");
        }
        ws_.signature.declare_predicate(b.name, b.sorts, builtin);
      });
    }
    if (!diagnostics_.empty()) return;

    for (auto& a : p.axioms) {
      if (check(a.id, a.line, a.formula)) ws_.axioms.push_back(a);
    }
    for (auto& q : p.queries) {
      bool ok = true;
      if (q.query.formula) ok = check(q.query.id, q.query.line, *q.query.formula);
      if (q.query.kind == QueryKind::Concepts && !ws_.registry.concept_of(q.query.predicate)) {
        diagnostics_.push_back({q.query.line, 1, ErrorKind::UnregisteredPredicate,
                                "'" + q.query.predicate + "' has no concept"});
        ok = false;
      }
      if (q.query.kind == QueryKind::Eval && ok) ok = check_grounding(q);
      if (ok) ws_.queries.push_back(q.query);
    }
  }

  // A name listed in several extents gets the most specific of those sorts,
  // whatever the order of the extent lines.
  void declare_extent_members(const std::vector<ExtentLine>& extents) {
    Ontology& ont = ws_.ontology;
    std::map<std::string, std::vector<const ExtentLine*>> owners;
    std::vector<std::string> order;
    for (const auto& e : extents) {
      if (!ont.has_sort(e.sort)) continue;
      for (const auto& lex : e.lexemes) {
        if (parse_number(lex) || ont.find_particular(lex)) continue;
        auto& list = owners[lex];
        if (list.empty()) order.push_back(lex);
        list.push_back(&e);
      }
    }
    for (const auto& lex : order) {
      const auto& list = owners[lex];
      const ExtentLine* least = nullptr;
      for (const ExtentLine* candidate : list) {
        bool below_all = std::all_of(list.begin(), list.end(), [&](const ExtentLine* other) {
          return ont.is_subsort(candidate->sort, other->sort);
        });
        if (below_all) {
          least = candidate;
          break;
        }
      }
      if (least == nullptr) {
        diagnostics_.push_back({list.back()->line, 1, ErrorKind::SortViolation,
                                "'" + lex + "' is listed in extents of unrelated sorts"});
        continue;
      }
      guarded(least->line, [&] { ont.declare_particular(lex, least->sort); });
    }
  }

  bool check(const std::string& id, std::size_t line, const Formula& f) {
    auto errors = check_formula(f, ws_.signature, ws_.ontology);
    for (const auto& e : errors) {
      diagnostics_.push_back({line, 1, ErrorKind::ValidationError, format_sort_error(id, e)});
    }
    return errors.empty();
  }

  bool check_grounding(const QueryLine& q) {
    auto free = free_vars(*q.query.formula);
    bool ok = true;
    for (const auto& [var, column] : q.with_columns) {
      auto v = std::find_if(free.begin(), free.end(), [&](const Variable& x) { return x.name == var; });
      if (v == free.end()) {
        diagnostics_.push_back({q.query.line, column, ErrorKind::UnboundVariable,
                                "'" + var + "' is not a free variable of the formula"});
        ok = false;
        continue;
      }
      const std::string& value = q.query.with.at(var);
      std::string sort;
      if (auto id = ws_.ontology.find_particular(value)) {
        sort = ws_.ontology.dynamic_sort(*id);
      } else if (auto n = parse_number(value)) {
        sort = ws_.ontology.numeric_sort_for(*n);
      } else {
        diagnostics_.push_back({q.query.line, column, ErrorKind::UnknownSymbol, "unknown particular '" + value + "'"});
        ok = false;
        continue;
      }
      if (!ws_.ontology.is_subsort(sort, v->sort)) {
        diagnostics_.push_back({q.query.line, column, ErrorKind::SortMismatch,
                                "'" + value + "' has sort '" + sort + "', '" + var + "' needs '" + v->sort + "'"});
        ok = false;
      }
    }
    return ok;
  }

  Workspace& ws_;
  std::vector<Diagnostic> diagnostics_;
};

// Names in declaration lines: the formula quoting plus the declaration words.
std::string decl_name(const std::string& n) {
  static const std::set<std::string, std::less<>> kDeclWords = {"isa", "arity", "sorts", "predicate", "x"};
  if (kDeclWords.count(n)) return "\"" + n + "\"";
  return quote_name(n);
}

}  // namespace

std::unique_ptr<Workspace> load_workspace_text(const std::string& text, const std::string& source) {
  auto ws = std::make_unique<Workspace>();
  auto diagnostics = Loader(*ws).load(text);
  if (!diagnostics.empty()) throw LoadFailure(source, std::move(diagnostics));
  return ws;
}

std::unique_ptr<Workspace> load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadFailure(path, {{0, 0, ErrorKind::ParseError, "cannot open file"}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_workspace_text(buffer.str(), path);
}

Formula parse_formula(const std::string& text) {
  try {
    auto toks = lex(text);
    FormulaParser fp(toks, 0);
    Formula f = fp.parse();
    if (fp.peek().kind != Tok::End) fail_at(fp.peek().column, "unexpected '" + fp.peek().text + "'");
    return f;
  } catch (const SyntaxFailure& f) {
    throw Error(f.kind, "column " + std::to_string(f.column) + ": " + f.message);
  }
}

std::string render_workspace(const Workspace& ws) {
  const Ontology fresh;
  const Ontology& ont = ws.ontology;
  std::set<std::string> predefined(fresh.concept_names().begin(), fresh.concept_names().end());
  std::set<std::string> predefined_particulars;
  for (ElementId id : fresh.declared_elements()) predefined_particulars.insert(fresh.lexeme(id));

  std::ostringstream out;
  std::set<std::string> rendered;
  for (const auto& name : ont.concept_names()) {
    if (predefined.count(name)) continue;
    const Concept& c = ont.concept_named(name);
    if (auto p = ws.registry.predicate_of(name)) {
      out << "concept " << decl_name(name) << " arity " << c.arity() << " sorts";
      for (const auto& s : c.attribute_sorts) out << ' ' << decl_name(s);
      out << " predicate " << decl_name(*p) << '\n';
    } else if (c.arity() == 1 && c.attribute_sorts[0] == name) {
      out << "sort " << decl_name(name) << '\n';
    } else {
      continue;
    }
    rendered.insert(name);
  }
  for (const auto& [sub, super] : ont.lattice().edges()) {
    if (!rendered.count(sub) && !rendered.count(super)) continue;
    if (sub == kEmptySet || super == kEverything) continue;
    if ((!rendered.count(sub) && !predefined.count(sub)) || (!rendered.count(super) && !predefined.count(super))) {
      continue;
    }
    out << "isa " << decl_name(sub) << ' ' << decl_name(super) << '\n';
  }
  for (ElementId id : ont.declared_elements()) {
    const std::string& lex = ont.lexeme(id);
    if (predefined_particulars.count(lex)) continue;
    out << "particular " << decl_name(lex) << " : " << decl_name(ont.dynamic_sort(id)) << '\n';
  }
  for (const auto& [sort, members] : ont.declared_extents()) {
    if (fresh.declared_extent(sort)) continue;
    out << "extent " << decl_name(sort) << " = {";
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? ", " : "") << decl_name(ont.lexeme(members[i]));
    out << "}\n";
  }
  auto product = [&](const std::vector<std::string>& sorts) {
    std::string s;
    for (std::size_t i = 0; i < sorts.size(); ++i) s += (i ? " x " : "") + decl_name(sorts[i]);
    return s;
  };
  for (const auto& [name, f] : ws.signature.functions()) {
    out << (f.builtin ? "builtin function " : "function ") << decl_name(name) << '/' << f.arg_sorts.size() << " : ";
    if (!f.arg_sorts.empty()) out << product(f.arg_sorts) << ' ';
    out << "-> " << decl_name(f.result_sort);
    if (f.builtin) out << " = " << f.builtin->name;
    out << '\n';
  }
  for (const auto& [name, p] : ws.signature.predicates()) {
    if (!p.builtin) continue;
    out << "builtin predicate " << decl_name(name) << '/' << p.sorts.size() << " : " << product(p.sorts) << " = "
        << p.builtin->name << '\n';
  }
  for (const auto& a : ws.axioms) out << "axiom " << to_string(a.formula, true) << '\n';
  for (const auto& q : ws.queries) {
    out << "query " << to_string(q.kind);
    if (q.kind == QueryKind::Concepts) out << ' ' << decl_name(q.predicate);
    if (q.formula) out << ' ' << to_string(*q.formula, true);
    if (!q.with.empty()) {
      out << " with";
      bool first = true;
      for (const auto& [var, value] : q.with) {
        out << (first ? " " : ", ") << quote_name(var) << '=' << decl_name(value);
        first = false;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ifol
