#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctlstar2ltl {

/// Set of true propositions, as a bitmask over an `Alphabet`.
struct Valuation {
  std::uint64_t bits = 0;

  bool test(unsigned i) const { return (bits >> i) & 1U; }
  void set(unsigned i, bool v = true) {
    if (v)
      bits |= std::uint64_t{1} << i;
    else
      bits &= ~(std::uint64_t{1} << i);
  }

  friend auto operator<=>(const Valuation&, const Valuation&) = default;
};

/// A conjunction of literals: the valuation must agree with `value` on `care`.
struct Cube {
  std::uint64_t care = 0;
  std::uint64_t value = 0;

  static Cube top() { return {}; }
  bool matches(Valuation v) const { return (v.bits & care) == value; }
  bool intersects(const Cube& o) const { return ((value ^ o.value) & care & o.care) == 0; }
  Cube meet(const Cube& o) const { return {care | o.care, value | o.value}; }

  friend bool operator==(const Cube&, const Cube&) = default;
};

/// Pairwise-disjoint cubes covering exactly the complement of the union.
std::vector<Cube> complement(const std::vector<Cube>& cubes);

/// Small cube cover of a set of valuations over the first `nbits` bits:
/// prime implicants chosen greedily, deterministic order.
std::vector<Cube> cover(std::vector<Valuation> minterms, std::size_t nbits);

/// Ordered proposition basis; index i is bit i of a `Valuation`. At most 64.
class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 64;

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(unsigned i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<unsigned> index_of(std::string_view name) const;
  unsigned require(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// `{a,b}` listing the true propositions in basis order.
  std::string format(Valuation v) const;
  std::string format(const Cube& c) const;

  /// Valuation with exactly the named propositions true; unknown names throw.
  Valuation make(const std::vector<std::string>& true_props) const;

  /// Reindexes `v` from `from` into this alphabet; propositions missing from
  /// `from` are false.
  Valuation translate(Valuation v, const Alphabet& from) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, unsigned> index_;
};

/// All 2^n valuations over the first n bits, in increasing numeric order.
std::vector<Valuation> all_valuations(std::size_t n);

}  // namespace ctlstar2ltl
