#include "ctlstar2ltl/valuation.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ctlstar2ltl {

std::vector<Cube> complement(const std::vector<Cube>& cubes) {
  std::vector<Cube> rest{Cube::top()};
  for (const auto& c : cubes) {
    std::vector<Cube> next;
    for (const auto& r : rest) {
      if (!r.intersects(c)) {
        next.push_back(r);
        continue;
      }
      // r minus c: peel off one differing literal of c at a time
      Cube acc = r;
      for (unsigned b = 0; b < 64; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if (!(c.care & bit) || (r.care & bit)) continue;
        next.push_back({acc.care | bit, acc.value | (~c.value & bit)});
        acc = {acc.care | bit, acc.value | (c.value & bit)};
      }
    }
    rest = std::move(next);
    if (rest.empty()) break;
  }
  return rest;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxSize)
    throw std::length_error("alphabet of " + std::to_string(names_.size()) +
                            " propositions exceeds the 64-proposition limit");
  for (unsigned i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], i).second)
      throw std::invalid_argument("duplicate proposition '" + names_[i] + "' in alphabet");
}

std::optional<unsigned> Alphabet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

unsigned Alphabet::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw std::out_of_range("proposition '" + std::string(name) + "' not in alphabet");
  return *i;
}

std::string Alphabet::format(Valuation v) const {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < names_.size(); ++i) {
    if (!v.test(i)) continue;
    if (!first) s += ',';
    s += names_[i];
    first = false;
  }
  return s + "}";
}

std::string Alphabet::format(const Cube& c) const {
  if (c.care == 0) return "1";
  std::string s;
  for (unsigned i = 0; i < names_.size(); ++i) {
    if (!((c.care >> i) & 1U)) continue;
    if (!s.empty()) s += " & ";
    if (!((c.value >> i) & 1U)) s += '!';
    s += names_[i];
  }
  return s;
}

Valuation Alphabet::make(const std::vector<std::string>& true_props) const {
  Valuation v;
  for (const auto& p : true_props) v.set(require(p));
  return v;
}

Valuation Alphabet::translate(Valuation v, const Alphabet& from) const {
  Valuation out;
  for (unsigned i = 0; i < from.size(); ++i)
    if (v.test(i))
      if (auto j = index_of(from.name(i))) out.set(*j);
  return out;
}

std::vector<Cube> cover(std::vector<Valuation> minterms, std::size_t nbits) {
  std::sort(minterms.begin(), minterms.end());
  minterms.erase(std::unique(minterms.begin(), minterms.end()), minterms.end());
  if (minterms.empty()) return {};
  const std::uint64_t full = nbits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
  auto less = [](const Cube& a, const Cube& b) { return std::tie(a.care, a.value) < std::tie(b.care, b.value); };

  // Quine-McCluskey style: merge cubes differing in one cared bit.
  std::vector<Cube> level, primes;
  for (auto m : minterms) level.push_back({full, m.bits & full});
  while (!level.empty()) {
    std::vector<Cube> next;
    std::vector<bool> merged(level.size(), false);
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        if (level[i].care != level[j].care) continue;
        const std::uint64_t diff = level[i].value ^ level[j].value;
        if (!diff || (diff & (diff - 1))) continue;
        merged[i] = merged[j] = true;
        next.push_back({level[i].care & ~diff, level[i].value & ~diff});
      }
    for (std::size_t i = 0; i < level.size(); ++i)
      if (!merged[i]) primes.push_back(level[i]);
    std::sort(next.begin(), next.end(), less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  std::sort(primes.begin(), primes.end(), less);
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  std::vector<Cube> chosen;
  std::vector<bool> covered(minterms.size(), false);
  for (std::size_t i = 0; i < minterms.size(); ++i) {
    if (covered[i]) continue;
    const Cube* best = nullptr;
    std::size_t best_gain = 0;
    for (const auto& p : primes) {
      if (!p.matches(minterms[i])) continue;
      std::size_t gain = 0;
      for (std::size_t j = i; j < minterms.size(); ++j) gain += !covered[j] && p.matches(minterms[j]);
      if (gain > best_gain) {
        best = &p;
        best_gain = gain;
      }
    }
    chosen.push_back(*best);
    for (std::size_t j = i; j < minterms.size(); ++j) covered[j] = covered[j] || best->matches(minterms[j]);
  }
  return chosen;
}

std::vector<Valuation> all_valuations(std::size_t n) {
  if (n >= 32) throw std::length_error("refusing to enumerate 2^" + std::to_string(n) + " valuations");
  std::vector<Valuation> out(std::size_t{1} << n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].bits = i;
  return out;
}

}  // namespace ctlstar2ltl
