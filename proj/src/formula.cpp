#include "ctlstar2ltl/formula.hpp"

#include <cstdio>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>

namespace ctlstar2ltl {

namespace detail {

struct Node {
  Op op;
  bool positive = true;
  WitnessRel rel = WitnessRel::NonZero;
  unsigned value = 0;
  SourcePos pos;
  std::string name;
  std::vector<Formula> kids;
  std::string key;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

const char* op_tag(Op op) {
  switch (op) {
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return ">";
    case Op::Iff: return "=";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Globally: return "G";
    case Op::Finally: return "F";
    case Op::Exists: return "E";
    case Op::Forall: return "A";
    default: return "?";
  }
}

std::string witness_text(const detail::Node& n) {
  std::string s = "[" + n.name;
  switch (n.rel) {
    case WitnessRel::NonZero: s += "!=0"; break;
    case WitnessRel::Equals: s += "=" + std::to_string(n.value); break;
    case WitnessRel::AtMost: s += "<=" + std::to_string(n.value); break;
  }
  s += "]";
  return n.positive ? s : "!" + s;
}

}  // namespace

Formula::Formula() : Formula(tt()) {}

Formula::Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

Formula Formula::make(Op op, std::vector<Formula> kids) {
  auto n = std::make_shared<detail::Node>();
  n->op = op;
  n->kids = std::move(kids);
  std::string key = "(";
  key += op_tag(op);
  for (const auto& k : n->kids) {
    key += ' ';
    key += k.key();
  }
  key += ')';
  n->key = std::move(key);
  n->hash = std::hash<std::string>{}(n->key);
  return Formula(std::move(n));
}

Formula Formula::tt() {
  static const Formula t = [] {
    auto n = std::make_shared<detail::Node>();
    n->op = Op::True;
    n->key = "1";
    n->hash = std::hash<std::string>{}(n->key);
    return Formula(std::move(n));
  }();
  return t;
}

Formula Formula::ff() {
  static const Formula f = [] {
    auto n = std::make_shared<detail::Node>();
    n->op = Op::False;
    n->key = "0";
    n->hash = std::hash<std::string>{}(n->key);
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::constant(bool value) { return value ? tt() : ff(); }

Formula Formula::lit(std::string name, bool positive, SourcePos pos) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Lit;
  n->positive = positive;
  n->pos = pos;
  n->key = positive ? name : "!" + name;
  n->name = std::move(name);
  n->hash = std::hash<std::string>{}(n->key);
  return Formula(std::move(n));
}

Formula Formula::witness(std::string family, WitnessRel rel, unsigned value, bool positive) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Witness;
  n->name = std::move(family);
  n->rel = rel;
  n->value = rel == WitnessRel::NonZero ? 0 : value;
  n->positive = positive;
  n->key = witness_text(*n);
  n->hash = std::hash<std::string>{}(n->key);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) { return make(Op::Not, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {std::move(a), std::move(b)}); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, {std::move(a), std::move(b)}); }
Formula Formula::next(Formula f) { return make(Op::Next, {std::move(f)}); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {std::move(a), std::move(b)}); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, {std::move(a), std::move(b)}); }
Formula Formula::globally(Formula f) { return make(Op::Globally, {std::move(f)}); }
Formula Formula::finally(Formula f) { return make(Op::Finally, {std::move(f)}); }
Formula Formula::exists(Formula f) { return make(Op::Exists, {std::move(f)}); }
Formula Formula::forall(Formula f) { return make(Op::Forall, {std::move(f)}); }

Formula Formula::conj(std::span<const Formula> parts) {
  if (parts.empty()) return tt();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(parts[i], acc);
  return acc;
}

Formula Formula::disj(std::span<const Formula> parts) {
  if (parts.empty()) return ff();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = disj(parts[i], acc);
  return acc;
}

Formula Formula::with_children(std::vector<Formula> kids) const {
  if (node_->kids.empty()) return *this;
  return make(op(), std::move(kids));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
bool Formula::positive() const { return node_->positive; }
WitnessRel Formula::rel() const { return node_->rel; }
unsigned Formula::value() const { return node_->value; }
SourcePos Formula::pos() const { return node_->pos; }
std::span<const Formula> Formula::children() const { return node_->kids; }
const Formula& Formula::child(std::size_t i) const { return node_->kids.at(i); }
const std::string& Formula::key() const { return node_->key; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || (a.node_->hash == b.node_->hash && a.node_->key == b.node_->key);
}

namespace {

Formula pnf(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::True: return Formula::constant(!neg);
    case Op::False: return Formula::constant(neg);
    case Op::Lit: return neg ? Formula::lit(f.name(), !f.positive(), f.pos()) : f;
    case Op::Witness:
      return neg ? Formula::witness(f.name(), f.rel(), f.value(), !f.positive()) : f;
    case Op::Not: return pnf(f.child(0), !neg);
    case Op::And:
      return neg ? Formula::disj(pnf(f.lhs(), true), pnf(f.rhs(), true))
                 : Formula::conj(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case Op::Or:
      return neg ? Formula::conj(pnf(f.lhs(), true), pnf(f.rhs(), true))
                 : Formula::disj(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case Op::Implies:
      return neg ? Formula::conj(pnf(f.lhs(), false), pnf(f.rhs(), true))
                 : Formula::disj(pnf(f.lhs(), true), pnf(f.rhs(), false));
    case Op::Iff: {
      auto a = pnf(f.lhs(), false), na = pnf(f.lhs(), true);
      auto b = pnf(f.rhs(), false), nb = pnf(f.rhs(), true);
      return neg ? Formula::disj(Formula::conj(a, nb), Formula::conj(na, b))
                 : Formula::disj(Formula::conj(a, b), Formula::conj(na, nb));
    }
    case Op::Next: return Formula::next(pnf(f.child(0), neg));
    case Op::Until:
      return neg ? Formula::release(pnf(f.lhs(), true), pnf(f.rhs(), true))
                 : Formula::until(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case Op::Release:
      return neg ? Formula::until(pnf(f.lhs(), true), pnf(f.rhs(), true))
                 : Formula::release(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case Op::Globally:
      return neg ? Formula::until(Formula::tt(), pnf(f.child(0), true))
                 : Formula::release(Formula::ff(), pnf(f.child(0), false));
    case Op::Finally:
      return neg ? Formula::release(Formula::ff(), pnf(f.child(0), true))
                 : Formula::until(Formula::tt(), pnf(f.child(0), false));
    case Op::Exists:
      return neg ? Formula::forall(pnf(f.child(0), true)) : Formula::exists(pnf(f.child(0), false));
    case Op::Forall:
      return neg ? Formula::exists(pnf(f.child(0), true)) : Formula::forall(pnf(f.child(0), false));
  }
  throw std::logic_error("to_pnf: unknown node");
}

}  // namespace

Formula to_pnf(const Formula& f) { return pnf(f, false); }

bool is_pnf(const Formula& f) {
  switch (f.op()) {
    case Op::Not:
    case Op::Implies:
    case Op::Iff:
    case Op::Globally:
    case Op::Finally: return false;
    default: break;
  }
  for (const auto& c : f.children())
    if (!is_pnf(c)) return false;
  return true;
}

bool has_quantifier(const Formula& f) {
  if (f.is_quantifier()) return true;
  for (const auto& c : f.children())
    if (has_quantifier(c)) return true;
  return false;
}

Formula fold_constants(const Formula& f) {
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(fold_constants(c));
  auto is_t = [](const Formula& x) { return x.is(Op::True); };
  auto is_f = [](const Formula& x) { return x.is(Op::False); };
  switch (f.op()) {
    case Op::Not:
      if (is_t(kids[0])) return Formula::ff();
      if (is_f(kids[0])) return Formula::tt();
      break;
    case Op::And:
      if (is_f(kids[0]) || is_f(kids[1])) return Formula::ff();
      if (is_t(kids[0])) return kids[1];
      if (is_t(kids[1])) return kids[0];
      break;
    case Op::Or:
      if (is_t(kids[0]) || is_t(kids[1])) return Formula::tt();
      if (is_f(kids[0])) return kids[1];
      if (is_f(kids[1])) return kids[0];
      break;
    case Op::Implies:
      if (is_f(kids[0]) || is_t(kids[1])) return Formula::tt();
      if (is_t(kids[0])) return kids[1];
      break;
    case Op::Next:
    case Op::Globally:
    case Op::Finally:
      if (is_t(kids[0]) || is_f(kids[0])) return kids[0];
      break;
    case Op::Until:
      // a U true = true, a U false = false, false U b = b
      if (is_t(kids[1]) || is_f(kids[1])) return kids[1];
      if (is_f(kids[0])) return kids[1];
      break;
    case Op::Release:
      if (is_t(kids[1]) || is_f(kids[1])) return kids[1];
      if (is_t(kids[0])) return kids[1];
      break;
    default: break;
  }
  return f.with_children(std::move(kids));
}

std::size_t ast_size(const Formula& f) {
  if (f.is(Op::Release) && f.lhs().is(Op::False)) return 1 + ast_size(f.rhs());
  if (f.is(Op::Until) && f.lhs().is(Op::True)) return 1 + ast_size(f.rhs());
  std::size_t n = 1;
  for (const auto& c : f.children()) n += ast_size(c);
  return n;
}

namespace {

// Binding strength, loosest first; matches the parser's precedence table.
enum Level : int { kIff = 1, kImplies, kOr, kAnd, kUnary, kTemporal, kAtom };

bool sugared_g(const Formula& f) { return f.is(Op::Release) && f.lhs().is(Op::False); }
bool sugared_f(const Formula& f) { return f.is(Op::Until) && f.lhs().is(Op::True); }

int level(const Formula& f) {
  switch (f.op()) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImplies;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Not:
    case Op::Next:
    case Op::Globally:
    case Op::Finally:
    case Op::Exists:
    case Op::Forall: return kUnary;
    case Op::Until:
    case Op::Release: return sugared_g(f) || sugared_f(f) ? kUnary : kTemporal;
    case Op::Lit:
    case Op::Witness: return f.positive() ? kAtom : kUnary;
    default: return kAtom;
  }
}

void print(const Formula& f, std::string& out);

void print_at(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print_unary(const char* op, const Formula& c, std::string& out) {
  out += op;
  out += ' ';
  print_at(c, kUnary, out);
}

void print(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Lit:
      if (!f.positive()) out += '!';
      out += f.name();
      return;
    case Op::Witness: out += f.key(); return;
    case Op::Not: out += '!'; print_at(f.child(0), kUnary, out); return;
    case Op::Next: print_unary("X", f.child(0), out); return;
    case Op::Globally: print_unary("G", f.child(0), out); return;
    case Op::Finally: print_unary("F", f.child(0), out); return;
    case Op::Exists: print_unary("E", f.child(0), out); return;
    case Op::Forall: print_unary("A", f.child(0), out); return;
    case Op::And:
    case Op::Or:
    case Op::Iff: {
      const int own = level(f);
      print_at(f.lhs(), own, out);
      out += f.is(Op::And) ? " && " : f.is(Op::Or) ? " || " : " <-> ";
      print_at(f.rhs(), own + 1, out);
      return;
    }
    case Op::Implies:
      print_at(f.lhs(), kImplies + 1, out);
      out += " -> ";
      print_at(f.rhs(), kImplies, out);
      return;
    case Op::Until:
    case Op::Release:
      if (sugared_g(f)) return print_unary("G", f.rhs(), out);
      if (sugared_f(f)) return print_unary("F", f.rhs(), out);
      print_at(f.lhs(), kAtom, out);
      out += f.is(Op::Until) ? " U " : " R ";
      print_at(f.rhs(), kTemporal, out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string hash8(const Formula& f) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : f.key()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  const auto folded = static_cast<std::uint32_t>(h ^ (h >> 32));
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", folded);
  return buf;
}

std::vector<std::string> propositions(const Formula& f) {
  std::set<std::string> names;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Op::Lit)) names.insert(g.name());
    for (const auto& c : g.children()) walk(c);
  };
  walk(f);
  return {names.begin(), names.end()};
}

}  // namespace ctlstar2ltl
