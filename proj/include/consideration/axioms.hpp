#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <variant>
#include <vector>

#include "consideration/core.hpp"

// Decision procedures for the consideration-filter properties: Sen's alpha,
// Sen's beta (literal and classical readings), Condition tau, Independence of
// Others, Dynamic Independence of Others, and Constant Number, plus an
// exhaustive verifier for the equivalence IO <=> (alpha and tau).
//
// Every checker scans menus in ascending canonical encoding and reports the
// first violation it meets, so witnesses are deterministic. A witness can be
// replayed against the defining implication via replay_witness.

namespace consideration::axioms {

enum class FilterProperty {
  SensAlpha,
  SensBetaLiteral,
  SensBetaClassical,
  ConditionTau,
  Io,
  Dio,
  ConstantNumber,
};

inline std::string_view to_string(FilterProperty p) {
  switch (p) {
    case FilterProperty::SensAlpha: return "sens-alpha";
    case FilterProperty::SensBetaLiteral: return "sens-beta-literal";
    case FilterProperty::SensBetaClassical: return "sens-beta-classical";
    case FilterProperty::ConditionTau: return "condition-tau";
    case FilterProperty::Io: return "io";
    case FilterProperty::Dio: return "dio";
    case FilterProperty::ConstantNumber: return "constant-number";
  }
  return "unknown";
}

/// x in Gamma(B), x in A, A subset of B, yet x not in Gamma(A).
struct AlphaWitness {
  AltIndex x = 0;
  MenuBits menu_a = 0;
  MenuBits menu_b = 0;
};

/// x1, x2 in A subset of B with x2 in Gamma(B) but x1 not in Gamma(B);
/// the classical variant additionally has x1, x2 in Gamma(A).
struct BetaWitness {
  AltIndex x1 = 0;
  AltIndex x2 = 0;
  MenuBits menu_a = 0;
  MenuBits menu_b = 0;
};

/// x in Gamma(A), A subset of B, yet x not in Gamma(B).
struct TauWitness {
  AltIndex x = 0;
  MenuBits menu_a = 0;
  MenuBits menu_b = 0;
};

/// x considered in one menu and dropped from another that contains it.
struct IoWitness {
  AltIndex x = 0;
  MenuBits considered_in = 0;
  MenuBits dropped_from = 0;
};

/// Two orderings of the same menu with different consideration sets.
struct DioWitness {
  std::vector<AltIndex> ordering_a;
  std::vector<AltIndex> ordering_b;
  MenuBits out_a = 0;
  MenuBits out_b = 0;
};

/// A menu with |A| >= n whose consideration set does not have exactly n elements.
struct CnWitness {
  MenuBits menu = 0;
  std::size_t cardinality = 0;
};

using PropertyWitness =
    std::variant<AlphaWitness, BetaWitness, TauWitness, IoWitness, DioWitness, CnWitness>;

struct PropertyReport {
  FilterProperty property = FilterProperty::SensAlpha;
  std::optional<std::size_t> cn_target;  // set for ConstantNumber(n)
  bool holds = true;
  std::optional<PropertyWitness> witness;
};

enum class BetaVariant { Literal, Classical };

/// Sen's alpha, the large-to-small condition:
/// x in Gamma(B) and x in A subset of B implies x in Gamma(A).
inline PropertyReport check_sens_alpha(const Filter& filter) {
  PropertyReport report{FilterProperty::SensAlpha, std::nullopt, true, std::nullopt};
  const MenuBits full = filter.universe().full_bits();
  for (MenuBits a = 0; a <= full; ++a) {
    MenuBits extra = static_cast<MenuBits>(full & ~a);
    bool done = false;
    detail::for_each_submask(extra, [&](MenuBits e) {
      if (done) return;
      MenuBits b = a | e;
      MenuBits escaped = filter.table_at(b) & a & ~filter.table_at(a);
      if (escaped != 0) {
        AltIndex x = static_cast<AltIndex>(std::countr_zero(escaped));
        report.holds = false;
        report.witness = AlphaWitness{x, a, b};
        done = true;
      }
    });
    if (done) break;
    if (a == full) break;
  }
  return report;
}

/// Sen's beta. The literal variant checks the printed definition:
/// x1, x2 in A subset of B and x2 in Gamma(B) implies x1 in Gamma(B). The
/// quantification over A reduces to A = {x1, x2}, which is the menu reported
/// in witnesses. The classical variant also requires x1, x2 in Gamma(A).
inline PropertyReport check_sens_beta(const Filter& filter, BetaVariant variant) {
  const bool literal = variant == BetaVariant::Literal;
  PropertyReport report{literal ? FilterProperty::SensBetaLiteral
                                : FilterProperty::SensBetaClassical,
                        std::nullopt, true, std::nullopt};
  const MenuBits full = filter.universe().full_bits();
  if (literal) {
    for (MenuBits b = 0; b <= full; ++b) {
      MenuBits gamma = filter.table_at(b);
      MenuBits left_out = b & ~gamma;
      if (gamma != 0 && left_out != 0) {
        AltIndex x1 = static_cast<AltIndex>(std::countr_zero(left_out));
        AltIndex x2 = static_cast<AltIndex>(std::countr_zero(gamma));
        MenuBits a = (MenuBits{1} << x1) | (MenuBits{1} << x2);
        report.holds = false;
        report.witness = BetaWitness{x1, x2, a, b};
        return report;
      }
      if (b == full) break;
    }
    return report;
  }
  // classical: for A subset of B, Gamma(A) meeting Gamma(B) forces
  // Gamma(A) subset of Gamma(B)
  for (MenuBits a = 0; a <= full; ++a) {
    MenuBits gamma_a = filter.table_at(a);
    if (gamma_a == 0) {
      if (a == full) break;
      continue;
    }
    MenuBits extra = static_cast<MenuBits>(full & ~a);
    bool done = false;
    detail::for_each_submask(extra, [&](MenuBits e) {
      if (done) return;
      MenuBits b = a | e;
      MenuBits gamma_b = filter.table_at(b);
      MenuBits shared = gamma_a & gamma_b;
      MenuBits escaped = gamma_a & ~gamma_b;
      if (shared != 0 && escaped != 0) {
        AltIndex x1 = static_cast<AltIndex>(std::countr_zero(escaped));
        AltIndex x2 = static_cast<AltIndex>(std::countr_zero(shared));
        report.holds = false;
        report.witness = BetaWitness{x1, x2, a, b};
        done = true;
      }
    });
    if (done || a == full) break;
  }
  return report;
}

/// Condition tau, the small-to-large condition:
/// x in Gamma(A) and A subset of B implies x in Gamma(B).
inline PropertyReport check_condition_tau(const Filter& filter) {
  PropertyReport report{FilterProperty::ConditionTau, std::nullopt, true, std::nullopt};
  const MenuBits full = filter.universe().full_bits();
  for (MenuBits a = 0; a <= full; ++a) {
    MenuBits gamma_a = filter.table_at(a);
    if (gamma_a != 0) {
      MenuBits extra = static_cast<MenuBits>(full & ~a);
      bool done = false;
      detail::for_each_submask(extra, [&](MenuBits e) {
        if (done) return;
        MenuBits b = a | e;
        MenuBits dropped = gamma_a & ~filter.table_at(b);
        if (dropped != 0) {
          AltIndex x = static_cast<AltIndex>(std::countr_zero(dropped));
          report.holds = false;
          report.witness = TauWitness{x, a, b};
          done = true;
        }
      });
      if (done) break;
    }
    if (a == full) break;
  }
  return report;
}

/// Independence of Others: every alternative is either considered in all
/// menus containing it, or considered in none.
inline PropertyReport check_io(const Filter& filter) {
  PropertyReport report{FilterProperty::Io, std::nullopt, true, std::nullopt};
  const Universe& universe = filter.universe();
  for (AltIndex x = 0; x < universe.size(); ++x) {
    std::optional<MenuBits> considered_in;
    std::optional<MenuBits> dropped_from;
    for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
      if (((menu >> x) & 1u) == 0) continue;
      if ((filter.table_at(menu) >> x) & 1u) {
        if (!considered_in) considered_in = menu;
      } else {
        if (!dropped_from) dropped_from = menu;
      }
      if (considered_in && dropped_from) break;
    }
    if (considered_in && dropped_from) {
      report.holds = false;
      report.witness = IoWitness{x, *considered_in, *dropped_from};
      return report;
    }
  }
  return report;
}

/// Dynamic Independence of Others on one menu: the rule output is identical
/// across all |A|! orderings. Orderings are enumerated lexicographically.
inline PropertyReport check_dio(const OrderedFilter& ofilter, const Menu& menu,
                                std::size_t factorial_cap = 8) {
  require_same_universe(ofilter.universe(), menu.universe(), "check_dio");
  if (menu.cardinality() > factorial_cap) {
    throw CapacityError("check_dio: menu of size " + std::to_string(menu.cardinality()) +
                        " exceeds the factorial cap " + std::to_string(factorial_cap));
  }
  PropertyReport report{FilterProperty::Dio, std::nullopt, true, std::nullopt};
  std::vector<AltIndex> ordering = menu.members();  // ascending = lexicographic first
  const std::vector<AltIndex> first_ordering = ordering;
  const MenuBits first_out = ofilter.apply(OrderedMenu(menu.universe(), ordering)).bits();
  while (std::next_permutation(ordering.begin(), ordering.end())) {
    MenuBits out = ofilter.apply(OrderedMenu(menu.universe(), ordering)).bits();
    if (out != first_out) {
      report.holds = false;
      report.witness = DioWitness{first_ordering, ordering, first_out, out};
      return report;
    }
  }
  return report;
}

/// Constant Number: |Gamma(A)| = n for every menu with |A| >= n. Menus with
/// fewer than n elements are unconstrained.
inline PropertyReport check_constant_number(const Filter& filter, std::size_t n) {
  PropertyReport report{FilterProperty::ConstantNumber, n, true, std::nullopt};
  for (MenuBits menu = 0; menu < filter.universe().menu_count(); ++menu) {
    if (detail::cardinality(menu) < n) continue;
    std::size_t considered = detail::cardinality(filter.table_at(menu));
    if (considered != n) {
      report.holds = false;
      report.witness = CnWitness{menu, considered};
      return report;
    }
  }
  return report;
}

/// Re-validates a reported witness against the property's defining clauses.
/// Returns true when the witness is a genuine violation of `filter`.
inline bool replay_witness(const Filter& filter, const PropertyReport& report) {
  if (!report.witness) return false;
  const MenuBits full = filter.universe().full_bits();
  switch (report.property) {
    case FilterProperty::SensAlpha: {
      const auto& w = std::get<AlphaWitness>(*report.witness);
      MenuBits xbit = MenuBits{1} << w.x;
      return (w.menu_a & ~w.menu_b) == 0 && (w.menu_b & ~full) == 0 &&
             (filter.table_at(w.menu_b) & xbit) != 0 && (w.menu_a & xbit) != 0 &&
             (filter.table_at(w.menu_a) & xbit) == 0;
    }
    case FilterProperty::SensBetaLiteral: {
      const auto& w = std::get<BetaWitness>(*report.witness);
      MenuBits x1 = MenuBits{1} << w.x1, x2 = MenuBits{1} << w.x2;
      return (w.menu_a & x1) != 0 && (w.menu_a & x2) != 0 && (w.menu_a & ~w.menu_b) == 0 &&
             (filter.table_at(w.menu_b) & x2) != 0 && (filter.table_at(w.menu_b) & x1) == 0;
    }
    case FilterProperty::SensBetaClassical: {
      const auto& w = std::get<BetaWitness>(*report.witness);
      MenuBits x1 = MenuBits{1} << w.x1, x2 = MenuBits{1} << w.x2;
      MenuBits gamma_a = filter.table_at(w.menu_a);
      return (gamma_a & x1) != 0 && (gamma_a & x2) != 0 && (w.menu_a & ~w.menu_b) == 0 &&
             (filter.table_at(w.menu_b) & x2) != 0 && (filter.table_at(w.menu_b) & x1) == 0;
    }
    case FilterProperty::ConditionTau: {
      const auto& w = std::get<TauWitness>(*report.witness);
      MenuBits xbit = MenuBits{1} << w.x;
      return (filter.table_at(w.menu_a) & xbit) != 0 && (w.menu_a & ~w.menu_b) == 0 &&
             (filter.table_at(w.menu_b) & xbit) == 0;
    }
    case FilterProperty::Io: {
      const auto& w = std::get<IoWitness>(*report.witness);
      MenuBits xbit = MenuBits{1} << w.x;
      return (w.considered_in & xbit) != 0 && (filter.table_at(w.considered_in) & xbit) != 0 &&
             (w.dropped_from & xbit) != 0 && (filter.table_at(w.dropped_from) & xbit) == 0;
    }
    case FilterProperty::ConstantNumber: {
      if (!report.cn_target) return false;
      const auto& w = std::get<CnWitness>(*report.witness);
      return detail::cardinality(w.menu) >= *report.cn_target &&
             detail::cardinality(filter.table_at(w.menu)) != *report.cn_target &&
             detail::cardinality(filter.table_at(w.menu)) == w.cardinality;
    }
    case FilterProperty::Dio:
      return false;  // DIO witnesses replay against an OrderedFilter
  }
  return false;
}

inline bool replay_witness(const OrderedFilter& ofilter, const PropertyReport& report) {
  if (report.property != FilterProperty::Dio || !report.witness) return false;
  const auto& w = std::get<DioWitness>(*report.witness);
  OrderedMenu a(ofilter.universe(), w.ordering_a);
  OrderedMenu b(ofilter.universe(), w.ordering_b);
  if (a.to_menu() != b.to_menu()) return false;
  MenuBits out_a = ofilter.apply(a).bits();
  MenuBits out_b = ofilter.apply(b).bits();
  return out_a == w.out_a && out_b == w.out_b && out_a != out_b;
}

// ---------------------------------------------------------------------------
// Theorem: a filter satisfies Sen's alpha and Condition tau iff it is IO.

struct Theorem1Report {
  std::size_t filters_checked = 0;
  std::size_t agreements = 0;
  struct Counterexample {
    std::vector<MenuBits> table;
    bool io = false;
    bool alpha = false;
    bool tau = false;
  };
  std::vector<Counterexample> counterexamples;
  bool holds() const { return counterexamples.empty(); }
};

namespace detail1 {

inline void check_equivalence(const Filter& filter, Theorem1Report& report) {
  bool io = check_io(filter).holds;
  bool alpha = check_sens_alpha(filter).holds;
  bool tau = check_condition_tau(filter).holds;
  ++report.filters_checked;
  if (io == (alpha && tau)) {
    ++report.agreements;
  } else {
    report.counterexamples.push_back({filter.table(), io, alpha, tau});
  }
}

}  // namespace detail1

/// Draws one rule-backed filter with random parameters; the rule kind cycles
/// through fixed-set, threshold, top-k and satisficing-prefix.
inline Filter random_rule_filter(const Universe& universe, std::mt19937_64& rng) {
  const std::size_t n = universe.size();
  auto random_order = [&] {
    std::vector<AltIndex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<AltIndex>(i);
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
    return order;
  };
  switch (rng() % 4) {
    case 0:
      return build_filter(universe,
                          FixedSetRule{static_cast<MenuBits>(rng()) & universe.full_bits()});
    case 1: {
      std::vector<double> scores(n);
      for (auto& s : scores) s = static_cast<double>(rng() % 16);
      return build_filter(universe, ThresholdRule{std::move(scores),
                                                  static_cast<double>(rng() % 16)});
    }
    case 2:
      return build_filter(universe, TopKRule{random_order(), rng() % (n + 1)});
    default:
      return build_filter(universe, SatisficingPrefixRule{random_order(), rng() % (n + 1)});
  }
}

/// Exhaustive mode enumerates the whole filter space, 2^(sum over menus of
/// |A|) filters, and needs |X| <= 3 (4096 filters). Sampled mode draws
/// uniform random tables and random rule-backed filters from a fixed seed.
inline Theorem1Report verify_theorem1(const Universe& universe, const VerifyMode& mode) {
  Theorem1Report report;
  if (std::holds_alternative<Exhaustive>(mode)) {
    if (universe.size() > 3) {
      throw CapacityError("verify_theorem1: exhaustive mode requires |X| <= 3");
    }
    // all submasks of each menu, ascending; a filter is one choice per menu
    std::vector<std::vector<MenuBits>> choices(universe.menu_count());
    std::uint64_t total = 1;
    for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
      detail::for_each_submask(menu, [&](MenuBits sub) { choices[menu].push_back(sub); });
      total *= choices[menu].size();
    }
    for (std::uint64_t index = 0; index < total; ++index) {
      std::uint64_t rest = index;
      std::vector<MenuBits> table(universe.menu_count());
      for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
        table[menu] = choices[menu][rest % choices[menu].size()];
        rest /= choices[menu].size();
      }
      detail1::check_equivalence(Filter::from_table(universe, std::move(table)), report);
    }
    return report;
  }
  const auto& sampled = std::get<Sampled>(mode);
  std::mt19937_64 rng(sampled.seed);
  for (std::size_t i = 0; i < sampled.count; ++i) {
    if (i % 2 == 0) {
      // uniform random table: independent uniform subset per menu
      std::vector<MenuBits> table(universe.menu_count());
      for (MenuBits menu = 0; menu < table.size(); ++menu) {
        table[menu] = static_cast<MenuBits>(rng()) & menu;
      }
      detail1::check_equivalence(Filter::from_table(universe, std::move(table)), report);
    } else {
      detail1::check_equivalence(random_rule_filter(universe, rng), report);
    }
  }
  return report;
}

}  // namespace consideration::axioms
