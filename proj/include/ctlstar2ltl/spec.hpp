#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctlstar2ltl/formula.hpp"

namespace ctlstar2ltl {

enum class PropKind { Input, Output, FreshOutput };

struct Proposition {
  std::string name;
  PropKind kind = PropKind::Output;

  friend bool operator==(const Proposition&, const Proposition&) = default;
};

/// Raised for malformed spec or machine text. Carries a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A CTL* synthesis problem: inputs, outputs and a PNF state formula.
struct Spec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Formula formula;

  bool is_input(std::string_view name) const;
  bool is_output(std::string_view name) const;
};

/// An LTL synthesis problem; `formula` is quantifier-free PNF and implicitly
/// universally quantified.
struct LtlSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Formula formula;
};

/// Parses `INPUTS ...; OUTPUTS ...; FORMULA ...;` with a CTL* formula. The
/// result is desugared and in PNF. Input literals outside a path quantifier
/// are rejected.
Spec parse_spec(std::string_view text);

/// Same grammar, but the formula is read as a quantifier-free LTL formula.
LtlSpec parse_ltl_spec(std::string_view text);

/// Parses a bare formula (general syntax, not normalized).
Formula parse_formula(std::string_view text);

std::string print_spec(const Spec& spec);
std::string print_ltl_spec(const LtlSpec& spec);

bool is_identifier(std::string_view s);

}  // namespace ctlstar2ltl
