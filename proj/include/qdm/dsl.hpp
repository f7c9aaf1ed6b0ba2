#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qdm/criteria.hpp"
#include "qdm/error.hpp"
#include "qdm/format.hpp"
#include "qdm/lottery.hpp"
#include "qdm/refined.hpp"
#include "qdm/scale.hpp"

// The .qdm problem format.
//
//   qdm 1
//   scale 0 0.1 0.5 1
//   consequences x1 x2 x3 best x1 worst x3
//   assign u { x1: <1, 0>, x2: <1, 0.1>, x3: <0, 1> }
//   assign v { x1: 1, x2: 0.5, x3: 0 }
//   lottery A = [1/x1, 0.5/x2]
//   lottery B = [1/A, (0.5,1)/x3]
//   query compare A B criterion rpu attitude pessimistic assignment u
//   query eval A criterion pu
//   query reduce B under RR
//
// Consequences are listed best first. A lottery whose targets are distinct
// consequences is simple; otherwise it is a compound lottery whose named
// targets must be declared earlier. Coefficients are levels or refined
// degrees written in nested parentheses.

namespace qdm {

enum class ParseErrorKind { Lexical, Syntax, UnknownReference, LevelNotInScale, DuplicateName, InvalidValue };

constexpr std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Lexical: return "lexical";
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::UnknownReference: return "unknown-reference";
    case ParseErrorKind::LevelNotInScale: return "level-not-in-scale";
    case ParseErrorKind::DuplicateName: return "duplicate-name";
    case ParseErrorKind::InvalidValue: return "invalid-value";
  }
  return "?";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, std::string expected, std::string offending,
             std::string message = {})
      : Error(format(kind, line, column, expected, offending, message)),
        kind_(kind), line_(line), column_(column), expected_(std::move(expected)), offending_(std::move(offending)) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& offending() const { return offending_; }

 private:
  static std::string format(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& expected,
                            const std::string& offending, const std::string& message) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + std::string(to_string(kind)) + ": ";
    if (!message.empty()) {
      out += message;
    } else {
      out += "expected " + expected + ", got " + (offending.empty() ? "end of input" : "'" + offending + "'");
    }
    return out;
  }

  ParseErrorKind kind_;
  std::size_t line_, column_;
  std::string expected_, offending_;
};

using Coefficient = std::variant<Level, WValue>;

struct LotteryEntry {
  Coefficient coefficient;
  /// A consequence or an earlier lottery.
  std::string target;

  friend bool operator==(const LotteryEntry&, const LotteryEntry&) = default;
};

struct LotteryDecl {
  std::string name;
  std::vector<LotteryEntry> entries;

  friend bool operator==(const LotteryDecl&, const LotteryDecl&) = default;
};

/// Indexed by outcome.
using Assignment = std::variant<UtilityAssignment, LevelAssignment>;

struct AssignmentDecl {
  std::string name;
  Assignment value;

  friend bool operator==(const AssignmentDecl&, const AssignmentDecl&) = default;
};

enum class QueryKind { Compare, Eval, Reduce };
enum class Reduction { R, RR };

constexpr std::string_view to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Compare: return "compare";
    case QueryKind::Eval: return "eval";
    case QueryKind::Reduce: return "reduce";
  }
  return "?";
}

constexpr std::string_view to_string(Reduction r) { return r == Reduction::R ? "R" : "RR"; }

struct Query {
  QueryKind kind = QueryKind::Eval;
  std::vector<std::string> lotteries;
  std::optional<Criterion> criterion;
  std::optional<Attitude> attitude;
  std::optional<std::string> assignment;
  Reduction under = Reduction::R;

  friend bool operator==(const Query&, const Query&) = default;
};

struct Problem {
  Scale scale;
  OutcomeSpace space;
  std::vector<AssignmentDecl> assignments;
  std::vector<LotteryDecl> lotteries;
  std::vector<Query> queries;

  const LotteryDecl* find_lottery(std::string_view name) const {
    for (const auto& l : lotteries) {
      if (l.name == name) return &l;
    }
    return nullptr;
  }

  const AssignmentDecl* find_assignment(std::string_view name) const {
    for (const auto& a : assignments) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  friend bool operator==(const Problem&, const Problem&) = default;
};

inline constexpr std::array<std::string_view, 15> kKeywords = {
    "qdm",   "scale",    "consequences", "best", "worst",     "assign",     "lottery", "query",
    "compare", "eval", "reduce", "criterion", "attitude", "assignment", "under",
};

inline bool is_keyword(std::string_view w) {
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

namespace dsl_detail {

enum class Tok { Word, LBracket, RBracket, LBrace, RBrace, LParen, RParen, LAngle, RAngle, Comma, Colon, Slash, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

constexpr bool is_punct(char c) {
  return c == '[' || c == ']' || c == '{' || c == '}' || c == '(' || c == ')' || c == '<' || c == '>' || c == ',' ||
         c == ':' || c == '/' || c == '=' || c == '#';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col;  // count code points, not UTF-8 continuation bytes
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(src[i++]);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(src[i++]);
      continue;
    }
    const auto uc = static_cast<unsigned char>(c);
    if (uc < 0x20 || uc == 0x7F) {
      throw ParseError(ParseErrorKind::Lexical, line, col, "a token", std::string(1, c),
                       "control character " + std::to_string(uc) + " is not allowed");
    }
    if (is_punct(c)) {
      Tok k = Tok::End;
      switch (c) {
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '<': k = Tok::LAngle; break;
        case '>': k = Tok::RAngle; break;
        case ',': k = Tok::Comma; break;
        case ':': k = Tok::Colon; break;
        case '/': k = Tok::Slash; break;
        default: k = Tok::Equals; break;
      }
      out.push_back({k, std::string(1, c), line, col});
      advance(src[i++]);
      continue;
    }
    const std::size_t l0 = line, c0 = col, start = i;
    while (i < src.size()) {
      const char d = src[i];
      const auto ud = static_cast<unsigned char>(d);
      if (d == ' ' || d == '\t' || d == '\n' || d == '\r' || is_punct(d) || ud < 0x20 || ud == 0x7F) break;
      advance(src[i++]);
    }
    out.push_back({Tok::Word, std::string(src.substr(start, i - start)), l0, c0});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Problem parse() {
    header();
    Scale scale = scale_decl();
    scale_ = &scale;
    OutcomeSpace space = consequences_decl();
    space_ = &space;
    std::vector<AssignmentDecl> assignments;
    std::vector<LotteryDecl> lotteries;
    std::vector<Query> queries;
    lotteries_ = &lotteries;
    assignments_ = &assignments;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_word(t, "assign")) {
        assignments.push_back(assign_decl());
      } else if (is_word(t, "lottery")) {
        lotteries.push_back(lottery_decl());
      } else if (is_word(t, "query")) {
        queries.push_back(query());
      } else {
        syntax("`assign`, `lottery` or `query`");
      }
    }
    return Problem{std::move(scale), std::move(space), std::move(assignments), std::move(lotteries), std::move(queries)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  static bool is_word(const Token& t, std::string_view w) { return t.kind == Tok::Word && t.text == w; }

  [[noreturn]] void syntax(std::string expected) const {
    throw ParseError(ParseErrorKind::Syntax, peek().line, peek().column, std::move(expected), peek().text);
  }

  [[noreturn]] static void fail_at(const Token& t, ParseErrorKind kind, std::string expected, std::string message) {
    throw ParseError(kind, t.line, t.column, std::move(expected), t.text, std::move(message));
  }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) syntax(std::string(what));
    next();
  }

  void keyword(std::string_view kw) {
    if (!is_word(peek(), kw)) syntax("`" + std::string(kw) + "`");
    next();
  }

  /// A non-keyword word.
  const Token& word(std::string_view what) {
    if (peek().kind != Tok::Word || is_keyword(peek().text)) syntax(std::string(what));
    return next();
  }

  void header() {
    const Token& t = peek();
    if (!is_word(t, "qdm") || t.line != 1) {
      if (t.kind == Tok::End) {
        // Blank or comment-only input counts as empty.
        throw ParseError(ParseErrorKind::Syntax, 1, 1, "`qdm 1` header and `scale` declaration", "");
      }
      syntax("`qdm 1` header on line one");
    }
    next();
    if (!is_word(peek(), "1")) syntax("format version `1`");
    next();
  }

  Scale scale_decl() {
    keyword("scale");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    while (peek().kind == Tok::Word && !is_keyword(peek().text)) {
      const Token& t = next();
      if (!seen.insert(t.text).second) {
        fail_at(t, ParseErrorKind::DuplicateName, "a new level label", "duplicate level label '" + t.text + "'");
      }
      labels.push_back(t.text);
    }
    if (labels.size() < 2) syntax(labels.empty() ? "level labels" : "at least two level labels");
    return Scale(std::move(labels));
  }

  OutcomeSpace consequences_decl() {
    keyword("consequences");
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (peek().kind == Tok::Word && !is_keyword(peek().text)) {
      const Token& t = next();
      if (!seen.insert(t.text).second) {
        fail_at(t, ParseErrorKind::DuplicateName, "a new consequence", "duplicate consequence '" + t.text + "'");
      }
      names.push_back(t.text);
    }
    if (names.size() < 2) syntax(names.empty() ? "consequence names" : "at least two consequences");
    keyword("best");
    const Token& best = word("best consequence");
    if (!seen.count(best.text)) {
      fail_at(best, ParseErrorKind::UnknownReference, "a declared consequence", "unknown consequence '" + best.text + "'");
    }
    if (best.text != names.front()) {
      fail_at(best, ParseErrorKind::InvalidValue, "the first consequence",
              "best consequence must be listed first, got '" + best.text + "'");
    }
    keyword("worst");
    const Token& worst = word("worst consequence");
    if (!seen.count(worst.text)) {
      fail_at(worst, ParseErrorKind::UnknownReference, "a declared consequence",
              "unknown consequence '" + worst.text + "'");
    }
    if (worst.text != names.back()) {
      fail_at(worst, ParseErrorKind::InvalidValue, "the last consequence",
              "worst consequence must be listed last, got '" + worst.text + "'");
    }
    return OutcomeSpace(std::move(names), best.text, worst.text);
  }

  Level level() {
    const Token& t = peek();
    if (t.kind != Tok::Word) syntax("a level label");
    next();
    auto l = scale_->find(t.text);
    if (!l) fail_at(t, ParseErrorKind::LevelNotInScale, "a level label", "level '" + t.text + "' is not in the scale");
    return *l;
  }

  AssignmentDecl assign_decl() {
    keyword("assign");
    const Token& name = word("assignment name");
    if (find(*assignments_, name.text)) {
      fail_at(name, ParseErrorKind::DuplicateName, "a new assignment name", "duplicate assignment '" + name.text + "'");
    }
    expect(Tok::LBrace, "`{`");
    std::vector<std::optional<BinaryUtility>> binary(space_->size());
    std::vector<std::optional<Level>> plain(space_->size());
    std::optional<bool> is_binary;
    while (peek().kind != Tok::RBrace) {
      const Token& cons = word("a consequence");
      auto x = space_->find(cons.text);
      if (!x) {
        fail_at(cons, ParseErrorKind::UnknownReference, "a declared consequence",
                "unknown consequence '" + cons.text + "'");
      }
      if (binary[x->index] || plain[x->index]) {
        fail_at(cons, ParseErrorKind::DuplicateName, "each consequence once",
                "consequence '" + cons.text + "' assigned twice");
      }
      expect(Tok::Colon, "`:`");
      const Token& at = peek();
      const bool pair = at.kind == Tok::LAngle;
      if (is_binary && *is_binary != pair) {
        fail_at(at, ParseErrorKind::InvalidValue, is_binary.value() ? "`<lam, mu>`" : "a level",
                "assignment mixes binary utilities and levels");
      }
      is_binary = pair;
      if (pair) {
        next();
        const Level lam = level();
        expect(Tok::Comma, "`,`");
        const Level mu = level();
        expect(Tok::RAngle, "`>`");
        auto u = BinaryUtility::try_make(lam, mu);
        if (!u) {
          fail_at(at, ParseErrorKind::InvalidValue, "a utility with one component at top",
                  "<" + scale_->label(lam) + ", " + scale_->label(mu) + "> is not a binary utility: neither component is " +
                      scale_->label(scale_->top()));
        }
        binary[x->index] = *u;
      } else {
        plain[x->index] = level();
      }
      if (peek().kind == Tok::Comma) next();
    }
    const Token& close = peek();
    next();
    if (!is_binary) fail_at(close, ParseErrorKind::InvalidValue, "assignment entries", "empty assignment");
    for (std::size_t i = 0; i < space_->size(); ++i) {
      if (!binary[i] && !plain[i]) {
        fail_at(close, ParseErrorKind::InvalidValue, "a value for every consequence",
                "assignment '" + name.text + "' has no value for '" + space_->name(Outcome{i}) + "'");
      }
    }
    if (*is_binary) {
      UtilityAssignment u;
      for (auto& b : binary) u.push_back(*b);
      return {name.text, u};
    }
    LevelAssignment v;
    for (auto& p : plain) v.push_back(*p);
    return {name.text, v};
  }

  IncreasingSeq sequence(const Token& at, std::vector<Level> levels) {
    for (std::size_t i = 1; i < levels.size(); ++i) {
      if (!(levels[i - 1] < levels[i])) {
        fail_at(at, ParseErrorKind::InvalidValue, "a strictly increasing sequence", "sequence is not strictly increasing");
      }
    }
    return IncreasingSeq(std::move(levels));
  }

  /// A level, or a refined degree "(e, ...)" whose elements are levels or
  /// parenthesized sequences. A list of bare levels that is strictly
  /// increasing is one sequence; otherwise each bare level is a singleton.
  Coefficient coefficient() {
    if (peek().kind != Tok::LParen) return level();
    const Token& open = next();
    std::vector<std::variant<Level, IncreasingSeq>> items;
    while (true) {
      if (peek().kind == Tok::LParen) {
        const Token& inner = next();
        std::vector<Level> ls{level()};
        while (peek().kind == Tok::Comma) {
          next();
          ls.push_back(level());
        }
        expect(Tok::RParen, "`)`");
        items.emplace_back(sequence(inner, std::move(ls)));
      } else {
        items.emplace_back(level());
      }
      if (peek().kind == Tok::RParen) break;
      expect(Tok::Comma, "`,` or `)`");
    }
    next();
    std::vector<IncreasingSeq> elems;
    const bool bare = std::all_of(items.begin(), items.end(), [](const auto& v) { return std::holds_alternative<Level>(v); });
    bool increasing = bare;
    for (std::size_t i = 1; bare && i < items.size(); ++i) {
      if (!(std::get<Level>(items[i - 1]) < std::get<Level>(items[i]))) increasing = false;
    }
    if (increasing) {
      std::vector<Level> ls;
      for (const auto& v : items) ls.push_back(std::get<Level>(v));
      elems.push_back(IncreasingSeq(std::move(ls)));
    } else {
      for (auto& v : items) {
        if (const auto* l = std::get_if<Level>(&v)) {
          elems.push_back(IncreasingSeq({*l}));
        } else {
          elems.push_back(std::get<IncreasingSeq>(std::move(v)));
        }
      }
    }
    WValue w;
    try {
      w = WValue(std::move(elems));
    } catch (const Error& e) {
      fail_at(open, ParseErrorKind::InvalidValue, "a refined degree", std::string("invalid refined degree: ") + e.what());
    }
    if (w.is_zero()) return scale_->bottom();
    if (w.size() == 1 && w.elems().front().size() == 1) return w.elems().front().front();
    return w;
  }

  LotteryDecl lottery_decl() {
    keyword("lottery");
    const Token& name = word("lottery name");
    if (find(*lotteries_, name.text) || space_->find(name.text)) {
      fail_at(name, ParseErrorKind::DuplicateName, "a new lottery name", "name '" + name.text + "' is already declared");
    }
    expect(Tok::Equals, "`=`");
    expect(Tok::LBracket, "`[`");
    LotteryDecl decl{name.text, {}};
    while (true) {
      Coefficient c = coefficient();
      expect(Tok::Slash, "`/`");
      const Token& target = word("a consequence or lottery name");
      if (!space_->find(target.text) && !find(*lotteries_, target.text)) {
        fail_at(target, ParseErrorKind::UnknownReference, "a consequence or earlier lottery",
                "unknown reference '" + target.text + "'");
      }
      decl.entries.push_back({std::move(c), target.text});
      if (peek().kind == Tok::RBracket) break;
      expect(Tok::Comma, "`,` or `]`");
    }
    next();
    return decl;
  }

  const Token& lottery_ref() {
    const Token& t = word("a lottery name");
    if (!find(*lotteries_, t.text)) {
      fail_at(t, ParseErrorKind::UnknownReference, "a declared lottery", "unknown lottery '" + t.text + "'");
    }
    return t;
  }

  Query query() {
    keyword("query");
    Query q;
    const Token& verb = peek();
    if (is_word(verb, "compare")) {
      q.kind = QueryKind::Compare;
    } else if (is_word(verb, "eval")) {
      q.kind = QueryKind::Eval;
    } else if (is_word(verb, "reduce")) {
      q.kind = QueryKind::Reduce;
    } else {
      syntax("`compare`, `eval` or `reduce`");
    }
    next();
    q.lotteries.push_back(lottery_ref().text);
    if (q.kind == QueryKind::Compare) q.lotteries.push_back(lottery_ref().text);
    if (q.kind == QueryKind::Reduce) {
      keyword("under");
      const Token& r = peek();
      if (is_word(r, "R")) {
        q.under = Reduction::R;
      } else if (is_word(r, "RR")) {
        q.under = Reduction::RR;
      } else {
        syntax("`R` or `RR`");
      }
      next();
      return q;
    }
    keyword("criterion");
    const Token& c = peek();
    if (c.kind != Tok::Word || !parse_criterion(c.text)) syntax("a criterion (pu, uopt, upess, lexpu, rpu)");
    q.criterion = parse_criterion(next().text);
    if (is_word(peek(), "attitude")) {
      next();
      const Token& a = peek();
      if (a.kind != Tok::Word || !parse_attitude(a.text)) syntax("an attitude (pessimistic, optimistic, neutral)");
      q.attitude = parse_attitude(next().text);
    }
    if (is_word(peek(), "assignment")) {
      next();
      const Token& a = word("an assignment name");
      if (!find(*assignments_, a.text)) {
        fail_at(a, ParseErrorKind::UnknownReference, "a declared assignment", "unknown assignment '" + a.text + "'");
      }
      q.assignment = a.text;
    }
    return q;
  }

  template <class T>
  static bool find(const std::vector<T>& v, const std::string& name) {
    return std::any_of(v.begin(), v.end(), [&](const T& d) { return d.name == name; });
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Scale* scale_ = nullptr;
  const OutcomeSpace* space_ = nullptr;
  std::vector<LotteryDecl>* lotteries_ = nullptr;
  std::vector<AssignmentDecl>* assignments_ = nullptr;
};

}  // namespace dsl_detail

/// Parses a whole problem; throws the first ParseError.
inline Problem parse(std::string_view text) { return dsl_detail::Parser(text).parse(); }

inline std::string render(const Scale& scale, const Coefficient& c) {
  return std::visit([&](const auto& v) { return render(scale, v); }, c);
}

inline std::string render(const Problem& p) {
  const auto& s = p.scale;
  std::string out = "qdm 1\nscale";
  for (const auto& l : s.labels()) out += " " + l;
  out += "\nconsequences";
  for (const auto& n : p.space.names()) out += " " + n;
  out += " best " + p.space.name(p.space.best()) + " worst " + p.space.name(p.space.worst()) + "\n";
  for (const auto& a : p.assignments) {
    out += "assign " + a.name + " { ";
    std::visit(
        [&](const auto& values) {
          for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out += ", ";
            out += p.space.name(Outcome{i}) + ": " + render(s, values[i]);
          }
        },
        a.value);
    out += " }\n";
  }
  for (const auto& l : p.lotteries) {
    out += "lottery " + l.name + " = [";
    for (std::size_t i = 0; i < l.entries.size(); ++i) {
      if (i) out += ", ";
      out += render(s, l.entries[i].coefficient) + "/" + l.entries[i].target;
    }
    out += "]\n";
  }
  for (const auto& q : p.queries) {
    out += "query " + std::string(to_string(q.kind));
    for (const auto& n : q.lotteries) out += " " + n;
    if (q.kind == QueryKind::Reduce) {
      out += " under " + std::string(to_string(q.under)) + "\n";
      continue;
    }
    if (q.criterion) out += " criterion " + std::string(to_string(*q.criterion));
    if (q.attitude) out += " attitude " + std::string(to_string(*q.attitude));
    if (q.assignment) out += " assignment " + *q.assignment;
    out += "\n";
  }
  return out;
}

// ---- resolution to lottery values --------------------------------------------

/// True when the lottery or anything it refers to carries a refined degree.
inline bool is_refined(const Problem& p, const LotteryDecl& l) {
  for (const auto& e : l.entries) {
    if (std::holds_alternative<WValue>(e.coefficient)) return true;
    if (const auto* sub = p.find_lottery(e.target); sub && is_refined(p, *sub)) return true;
  }
  return false;
}

/// Every target a distinct consequence.
inline bool is_simple(const Problem& p, const LotteryDecl& l) {
  std::set<std::string> seen;
  for (const auto& e : l.entries) {
    if (!p.space.find(e.target) || !seen.insert(e.target).second) return false;
  }
  return true;
}

inline const LotteryDecl& lottery_decl(const Problem& p, std::string_view name) {
  const auto* l = p.find_lottery(name);
  if (!l) throw InvalidArgument("unknown lottery '" + std::string(name) + "'");
  return *l;
}

namespace dsl_detail {

template <class Degree, class Convert>
Mixture<Degree> to_mixture(const Problem& p, const LotteryDecl& l, Degree zero, Convert convert);

template <class Degree, class Convert>
std::variant<Distribution<Degree>, Mixture<Degree>> to_value(const Problem& p, const LotteryDecl& l, Degree zero,
                                                             Convert convert) {
  if (is_simple(p, l)) {
    Distribution<Degree> d{std::vector<Degree>(p.space.size(), zero)};
    for (const auto& e : l.entries) d[p.space.at(e.target)] = convert(e.coefficient);
    return d;
  }
  return to_mixture(p, l, zero, convert);
}

template <class Degree, class Convert>
Mixture<Degree> to_mixture(const Problem& p, const LotteryDecl& l, Degree zero, Convert convert) {
  Mixture<Degree> m;
  for (const auto& e : l.entries) {
    MixtureBranch<Degree> b{convert(e.coefficient), Outcome{}};
    if (auto x = p.space.find(e.target)) {
      b.child = *x;
    } else {
      std::visit([&](auto&& v) { b.child = std::move(v); }, to_value(p, lottery_decl(p, e.target), zero, convert));
    }
    m.branches.push_back(std::move(b));
  }
  return m;
}

}  // namespace dsl_detail

using ClassicalValue = std::variant<SimpleLottery, CompoundLottery>;
using RefinedValue = std::variant<RefinedLottery, RefinedCompound>;

inline ClassicalValue classical_value(const Problem& p, std::string_view name) {
  const auto& l = lottery_decl(p, name);
  if (is_refined(p, l)) throw InvalidArgument("lottery '" + l.name + "' has refined degrees");
  return dsl_detail::to_value<Level>(p, l, p.scale.bottom(), [](const Coefficient& c) { return std::get<Level>(c); });
}

/// Levels are embedded as singleton degrees.
inline RefinedValue refined_value(const Problem& p, std::string_view name) {
  return dsl_detail::to_value<WValue>(p, lottery_decl(p, name), WValue{}, [](const Coefficient& c) {
    if (const auto* l = std::get_if<Level>(&c)) return embed_level(*l);
    return std::get<WValue>(c);
  });
}

inline std::string render(const Scale& scale, const OutcomeSpace& space, const ClassicalValue& v) {
  return std::visit([&](const auto& x) { return render(scale, space, x); }, v);
}

inline std::string render(const Scale& scale, const OutcomeSpace& space, const RefinedValue& v) {
  return std::visit([&](const auto& x) { return render(scale, space, x); }, v);
}

}  // namespace qdm
