#include "ctlstar2ltl/spec.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace ctlstar2ltl {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool Spec::is_input(std::string_view name) const {
  return std::find(inputs.begin(), inputs.end(), name) != inputs.end();
}

bool Spec::is_output(std::string_view name) const {
  return std::find(outputs.begin(), outputs.end(), name) != outputs.end();
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

enum class Tok {
  Ident,
  KwInputs,
  KwOutputs,
  KwFormula,
  KwTrue,
  KwFalse,
  Semi,
  Comma,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Globally,
  Finally,
  Exists,
  Forall,
  Until,
  Release,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos at{line_, col_};
      if (i_ >= text_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      const char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i_;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
          ++j;
        std::string word(text_.substr(i_, j - i_));
        advance(j - i_);
        out.push_back({keyword(word), word, at});
        continue;
      }
      auto sym = [&](std::string_view s, Tok t) {
        if (text_.substr(i_, s.size()) != s) return false;
        advance(s.size());
        out.push_back({t, std::string(s), at});
        return true;
      };
      if (sym("<->", Tok::Iff) || sym("->", Tok::Implies) || sym("&&", Tok::And) ||
          sym("||", Tok::Or) || sym("!", Tok::Not) || sym(";", Tok::Semi) || sym(",", Tok::Comma) ||
          sym("(", Tok::LParen) || sym(")", Tok::RParen))
        continue;
      throw ParseError(at.line, at.column, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "INPUTS") return Tok::KwInputs;
    if (w == "OUTPUTS") return Tok::KwOutputs;
    if (w == "FORMULA") return Tok::KwFormula;
    if (w == "true") return Tok::KwTrue;
    if (w == "false") return Tok::KwFalse;
    if (w == "X") return Tok::Next;
    if (w == "G") return Tok::Globally;
    if (w == "F") return Tok::Finally;
    if (w == "E") return Tok::Exists;
    if (w == "A") return Tok::Forall;
    if (w == "U") return Tok::Until;
    if (w == "R") return Tok::Release;
    return Tok::Ident;
  }

  void skip_space() {
    while (i_ < text_.size()) {
      const char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i_) {
      if (text_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(t.pos.line, t.pos.column,
                     msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
  }

  std::vector<std::string> idlist() {
    std::vector<std::string> ids;
    if (peek().kind == Tok::Semi) return ids;
    do {
      ids.push_back(expect(Tok::Ident, "identifier").text);
    } while (accept(Tok::Comma));
    return ids;
  }

  // Ascending precedence: <->, ->, ||, &&, unary, U/R.
  Formula iff() {
    Formula f = implication();
    while (accept(Tok::Iff)) f = Formula::iff(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (accept(Tok::Implies)) return Formula::implies(f, implication());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: ++pos_; return Formula::negation(unary());
      case Tok::Next: ++pos_; return Formula::next(unary());
      case Tok::Globally: ++pos_; return Formula::globally(unary());
      case Tok::Finally: ++pos_; return Formula::finally(unary());
      case Tok::Exists: ++pos_; return Formula::exists(unary());
      case Tok::Forall: ++pos_; return Formula::forall(unary());
      default: return temporal();
    }
  }

  Formula temporal() {
    Formula f = atom();
    if (accept(Tok::Until)) return Formula::until(f, temporal());
    if (accept(Tok::Release)) return Formula::release(f, temporal());
    return f;
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwTrue: ++pos_; return Formula::tt();
      case Tok::KwFalse: ++pos_; return Formula::ff();
      case Tok::Ident: ++pos_; return Formula::lit(t.text, true, t.pos);
      case Tok::LParen: {
        ++pos_;
        Formula f = iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      default: fail("expected formula");
    }
  }

  struct Header {
    std::vector<std::string> inputs, outputs;
    Formula formula;
  };

  Header spec() {
    Header h;
    expect(Tok::KwInputs, "INPUTS");
    h.inputs = idlist();
    expect(Tok::Semi, "';'");
    expect(Tok::KwOutputs, "OUTPUTS");
    h.outputs = idlist();
    expect(Tok::Semi, "';'");
    expect(Tok::KwFormula, "FORMULA");
    h.formula = iff();
    expect(Tok::Semi, "';'");
    expect(Tok::End, "end of input");
    return h;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_declarations(const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs) {
  std::set<std::string> seen;
  for (const auto* list : {&inputs, &outputs})
    for (const auto& n : *list)
      if (!seen.insert(n).second)
        throw ParseError(1, 1, "proposition '" + n + "' declared twice");
}

void check_declared(const Formula& f, const std::set<std::string>& declared) {
  if (f.is(Op::Lit) && !declared.count(f.name()))
    throw ParseError(f.pos().line, f.pos().column, "undeclared proposition '" + f.name() + "'");
  for (const auto& c : f.children()) check_declared(c, declared);
}

// Walks the boolean skeleton above the first path quantifier.
void check_state_level(const Formula& f, const std::set<std::string>& inputs) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Exists:
    case Op::Forall: return;
    case Op::Lit:
      if (inputs.count(f.name()))
        throw ParseError(f.pos().line, f.pos().column,
                         "input '" + f.name() + "' used as a state formula; wrap it in a path quantifier");
      return;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      for (const auto& c : f.children()) check_state_level(c, inputs);
      return;
    default: {
      // temporal operator outside a quantifier: report at its first literal
      SourcePos p{};
      for (const Formula* g = &f; !g->children().empty(); g = &g->child(0)) p = g->child(0).pos();
      throw ParseError(p.line, p.column, "temporal operator outside a path quantifier");
    }
  }
}

std::string join(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += ids[i];
  }
  return s;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(Lexer(text).run());
  Formula f = p.iff();
  p.expect(Tok::End, "end of input");
  return f;
}

Spec parse_spec(std::string_view text) {
  Parser p(Lexer(text).run());
  auto h = p.spec();
  check_declarations(h.inputs, h.outputs);
  std::set<std::string> declared(h.inputs.begin(), h.inputs.end());
  declared.insert(h.outputs.begin(), h.outputs.end());
  check_declared(h.formula, declared);
  check_state_level(h.formula, {h.inputs.begin(), h.inputs.end()});
  return Spec{std::move(h.inputs), std::move(h.outputs), to_pnf(h.formula)};
}

LtlSpec parse_ltl_spec(std::string_view text) {
  Parser p(Lexer(text).run());
  auto h = p.spec();
  check_declarations(h.inputs, h.outputs);
  std::set<std::string> declared(h.inputs.begin(), h.inputs.end());
  declared.insert(h.outputs.begin(), h.outputs.end());
  check_declared(h.formula, declared);
  if (has_quantifier(h.formula)) throw ParseError(1, 1, "LTL formula must not contain path quantifiers");
  return LtlSpec{std::move(h.inputs), std::move(h.outputs), to_pnf(h.formula)};
}

std::string print_spec(const Spec& spec) {
  return "INPUTS " + join(spec.inputs) + ";\nOUTPUTS " + join(spec.outputs) + ";\nFORMULA " +
         to_string(spec.formula) + ";\n";
}

std::string print_ltl_spec(const LtlSpec& spec) {
  return "INPUTS " + join(spec.inputs) + ";\nOUTPUTS " + join(spec.outputs) + ";\nFORMULA " +
         to_string(spec.formula) + ";\n";
}

}  // namespace ctlstar2ltl
