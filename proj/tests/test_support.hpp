#pragma once

// Test-only helpers: naive set-of-names oracles (kept independent of the
// bitmask implementation paths they check) and seeded random generators.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "consideration/core.hpp"

namespace oracle {

using NameSet = std::set<std::string>;

inline NameSet names_of(const consideration::Menu& menu) {
  auto v = menu.member_names();
  return NameSet(v.begin(), v.end());
}

inline NameSet intersect(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

inline bool is_subset(const NameSet& a, const NameSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Menus of a universe as name sets, independently of enumerate_menus: grows
// the collection one alternative at a time.
inline std::vector<NameSet> all_menus(const std::vector<std::string>& alternatives) {
  std::vector<NameSet> menus{NameSet{}};
  for (const auto& name : alternatives) {
    std::size_t count = menus.size();
    for (std::size_t i = 0; i < count; ++i) {
      NameSet extended = menus[i];
      extended.insert(name);
      menus.push_back(std::move(extended));
    }
  }
  return menus;
}

}  // namespace oracle

namespace gen {

using consideration::AltIndex;
using consideration::Filter;
using consideration::MenuBits;
using consideration::Preference;
using consideration::Universe;

using Rng = std::mt19937_64;

inline std::vector<std::string> numbered_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return names;
}

inline Universe numbered_universe(std::size_t n) { return Universe(numbered_names(n)); }

inline std::vector<AltIndex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<AltIndex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<AltIndex>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

inline Preference random_preference(const Universe& universe, Rng& rng) {
  return Preference(universe, random_permutation(universe.size(), rng));
}

// Uniform random subset of each menu, independently per menu.
inline Filter random_table_filter(const Universe& universe, Rng& rng) {
  std::vector<MenuBits> table(universe.menu_count());
  for (MenuBits menu = 0; menu < table.size(); ++menu) {
    table[menu] = static_cast<MenuBits>(rng()) & menu;
  }
  return Filter::from_table(universe, std::move(table));
}

inline Filter random_rule_filter(const Universe& universe, Rng& rng) {
  std::size_t n = universe.size();
  switch (rng() % 4) {
    case 0:
      return build_filter(universe,
                          consideration::FixedSetRule{static_cast<MenuBits>(rng()) &
                                                      universe.full_bits()});
    case 1: {
      std::vector<double> scores(n);
      for (auto& s : scores) s = static_cast<double>(rng() % 11);
      double cutoff = static_cast<double>(rng() % 11);
      return build_filter(universe, consideration::ThresholdRule{std::move(scores), cutoff});
    }
    case 2:
      return build_filter(universe, consideration::TopKRule{random_permutation(n, rng),
                                                            rng() % (n + 1)});
    default:
      return build_filter(universe,
                          consideration::SatisficingPrefixRule{random_permutation(n, rng),
                                                               rng() % (n + 1)});
  }
}

}  // namespace gen
