#pragma once

// Random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/formula.hpp"

namespace ctlstar2ltl::testing {

using Rng = std::mt19937_64;

inline unsigned pick(Rng& rng, unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

/// Random general-syntax LTL formula with at most `budget` nodes.
inline Formula random_ltl(Rng& rng, const std::vector<std::string>& props, int budget, bool general = true) {
  if (budget <= 1) {
    const unsigned r = pick(rng, 10);
    if (r == 0) return Formula::tt();
    if (r == 1) return Formula::ff();
    return Formula::lit(props[pick(rng, static_cast<unsigned>(props.size()))], general || pick(rng, 2));
  }
  const unsigned kinds = general ? 11 : 6;
  switch (pick(rng, kinds)) {
    case 0: return Formula::next(random_ltl(rng, props, budget - 1, general));
    case 1:
    case 2: {
      const int left = 1 + static_cast<int>(pick(rng, static_cast<unsigned>(budget - 1)));
      auto a = random_ltl(rng, props, left, general);
      auto b = random_ltl(rng, props, budget - left, general);
      return pick(rng, 2) ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case 3:
    case 4:
    case 5: {
      const int left = 1 + static_cast<int>(pick(rng, static_cast<unsigned>(budget - 1)));
      auto a = random_ltl(rng, props, left, general);
      auto b = random_ltl(rng, props, budget - left, general);
      return pick(rng, 2) ? Formula::until(a, b) : Formula::release(a, b);
    }
    case 6: return Formula::negation(random_ltl(rng, props, budget - 1, general));
    case 7: return Formula::globally(random_ltl(rng, props, budget - 1, general));
    case 8: return Formula::finally(random_ltl(rng, props, budget - 1, general));
    case 9: {
      auto a = random_ltl(rng, props, budget / 2, general);
      auto b = random_ltl(rng, props, budget - budget / 2, general);
      return Formula::implies(a, b);
    }
    default: {
      auto a = random_ltl(rng, props, budget / 2, general);
      auto b = random_ltl(rng, props, budget - budget / 2, general);
      return Formula::iff(a, b);
    }
  }
}

/// Random lasso over `nprops` propositions.
inline LassoWord random_lasso(Rng& rng, std::size_t nprops, unsigned max_stem, unsigned max_loop) {
  LassoWord w;
  const unsigned stem = pick(rng, max_stem + 1);
  const unsigned loop = 1 + pick(rng, max_loop);
  const unsigned letters = 1U << nprops;
  for (unsigned i = 0; i < stem; ++i) w.stem.push_back({pick(rng, letters)});
  for (unsigned i = 0; i < loop; ++i) w.loop.push_back({pick(rng, letters)});
  return w;
}

/// Random CTL* state formula (general syntax) with inputs only below a path
/// quantifier. `depth` bounds the nesting of operators.
inline Formula random_ctlstar(Rng& rng, const std::string& in, const std::string& out, int depth);

inline Formula random_path(Rng& rng, const std::string& in, const std::string& out, int depth) {
  if (depth <= 0) {
    switch (pick(rng, 4)) {
      case 0: return Formula::lit(in, pick(rng, 2));
      case 1: return Formula::lit(out, pick(rng, 2));
      case 2: return Formula::lit(out);
      default: return Formula::lit(in);
    }
  }
  switch (pick(rng, 10)) {
    case 0: return Formula::next(random_path(rng, in, out, depth - 1));
    case 1: return Formula::globally(random_path(rng, in, out, depth - 1));
    case 2: return Formula::finally(random_path(rng, in, out, depth - 1));
    case 3: return Formula::until(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 4: return Formula::release(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 5: return Formula::conj(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 6: return Formula::disj(random_path(rng, in, out, depth - 1), random_path(rng, in, out, depth - 1));
    case 7: return Formula::negation(random_path(rng, in, out, depth - 1));
    case 8: return random_ctlstar(rng, in, out, depth);
    default: return random_path(rng, in, out, 0);
  }
}

inline Formula random_ctlstar(Rng& rng, const std::string& in, const std::string& out, int depth) {
  if (depth <= 0) return Formula::lit(out, pick(rng, 2));
  switch (pick(rng, 6)) {
    case 0: return Formula::exists(random_path(rng, in, out, depth - 1));
    case 1: return Formula::forall(random_path(rng, in, out, depth - 1));
    case 2: return Formula::conj(random_ctlstar(rng, in, out, depth - 1), random_ctlstar(rng, in, out, depth - 1));
    case 3: return Formula::disj(random_ctlstar(rng, in, out, depth - 1), random_ctlstar(rng, in, out, depth - 1));
    case 4: return Formula::negation(random_ctlstar(rng, in, out, depth - 1));
    default: return Formula::exists(random_path(rng, in, out, depth - 1));
  }
}

}  // namespace ctlstar2ltl::testing
