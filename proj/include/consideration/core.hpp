#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Ground types for finite choice universes: alternatives, menus encoded as
// bitmasks, consideration filters stored as total tables over the menu
// lattice, strict preferences, and observed choice data.

namespace consideration {

/// Index of an alternative within its universe (0-based, fixed at construction).
using AltIndex = std::uint32_t;

/// Canonical menu encoding: bit i set <=> alternative i is a member.
using MenuBits = std::uint32_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a configured enumeration cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Two values from different universes were combined.
class DomainMismatchError : public Error {
public:
  using Error::Error;
};

/// Malformed input: broken invariant, bad rule parameters, unparsable file.
class ValidationError : public Error {
public:
  using Error::Error;
};

namespace detail {

// Visits every submask of `mask` in increasing encoding order (0 first, mask last).
template <typename F>
void for_each_submask(MenuBits mask, F&& visit) {
  MenuBits sub = 0;
  while (true) {
    visit(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

inline std::size_t cardinality(MenuBits bits) {
  return static_cast<std::size_t>(std::popcount(bits));
}

}  // namespace detail

/// The finite ground set of alternatives. Identifiers are opaque tokens;
/// enumeration order is fixed at construction and defines the canonical
/// index (and therefore every menu encoding).
class Universe {
public:
  static constexpr std::size_t kDefaultCap = 16;
  static constexpr std::size_t kHardCap = 20;

  Universe() : data_(std::make_shared<const Data>()) {}

  explicit Universe(std::vector<std::string> alternatives, std::size_t cap = kDefaultCap) {
    if (cap > kHardCap) cap = kHardCap;
    if (alternatives.size() > cap) {
      throw CapacityError("universe has " + std::to_string(alternatives.size()) +
                          " alternatives, cap is " + std::to_string(cap));
    }
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
      for (std::size_t j = i + 1; j < alternatives.size(); ++j) {
        if (alternatives[i] == alternatives[j]) {
          throw ValidationError("duplicate alternative identifier: " + alternatives[i]);
        }
      }
    }
    data_ = std::make_shared<const Data>(Data{std::move(alternatives)});
  }

  std::size_t size() const { return data_->names.size(); }
  bool empty() const { return size() == 0; }

  /// Number of menus in the lattice, 2^|X|.
  std::size_t menu_count() const { return std::size_t{1} << size(); }

  /// Encoding of the full menu X.
  MenuBits full_bits() const {
    return size() == 0 ? 0 : static_cast<MenuBits>((std::uint64_t{1} << size()) - 1);
  }

  const std::string& name(AltIndex i) const { return data_->names.at(i); }
  const std::vector<std::string>& alternatives() const { return data_->names; }

  std::optional<AltIndex> index_of(std::string_view identifier) const {
    for (std::size_t i = 0; i < data_->names.size(); ++i) {
      if (data_->names[i] == identifier) return static_cast<AltIndex>(i);
    }
    return std::nullopt;
  }

  AltIndex require_index(std::string_view identifier) const {
    if (auto i = index_of(identifier)) return *i;
    throw ValidationError("unknown alternative: " + std::string(identifier));
  }

  /// Equality is extensional: same identifiers in the same order.
  friend bool operator==(const Universe& a, const Universe& b) {
    return a.data_ == b.data_ || a.data_->names == b.data_->names;
  }
  friend bool operator!=(const Universe& a, const Universe& b) { return !(a == b); }

private:
  struct Data {
    std::vector<std::string> names;
  };
  std::shared_ptr<const Data> data_;
};

inline void require_same_universe(const Universe& a, const Universe& b, const char* what) {
  if (a != b) throw DomainMismatchError(std::string(what) + ": values come from different universes");
}

/// A subset of a universe. Equality is extensional; the empty menu is valid.
class Menu {
public:
  Menu() = default;

  Menu(Universe universe, MenuBits bits) : universe_(std::move(universe)), bits_(bits) {
    if ((bits_ & ~universe_.full_bits()) != 0) {
      throw ValidationError("menu encoding " + std::to_string(bits_) +
                            " has members outside its universe");
    }
  }

  static Menu empty(Universe universe) { return Menu(std::move(universe), 0); }
  static Menu full(Universe universe) {
    MenuBits bits = universe.full_bits();
    return Menu(std::move(universe), bits);
  }

  /// Builds a menu from alternative identifiers; unknown names are validation errors.
  static Menu of(const Universe& universe, std::initializer_list<std::string_view> names) {
    MenuBits bits = 0;
    for (auto n : names) bits |= MenuBits{1} << universe.require_index(n);
    return Menu(universe, bits);
  }
  static Menu of(const Universe& universe, std::span<const std::string> names) {
    MenuBits bits = 0;
    for (const auto& n : names) bits |= MenuBits{1} << universe.require_index(n);
    return Menu(universe, bits);
  }

  const Universe& universe() const { return universe_; }
  MenuBits bits() const { return bits_; }
  std::size_t cardinality() const { return detail::cardinality(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains(AltIndex i) const { return (bits_ >> i) & 1u; }

  bool subset_of(const Menu& other) const {
    require_same_universe(universe_, other.universe_, "subset_of");
    return (bits_ & ~other.bits_) == 0;
  }

  Menu intersect(const Menu& other) const {
    require_same_universe(universe_, other.universe_, "intersect");
    return Menu(universe_, bits_ & other.bits_);
  }

  Menu unite(const Menu& other) const {
    require_same_universe(universe_, other.universe_, "unite");
    return Menu(universe_, bits_ | other.bits_);
  }

  /// Member indices in ascending canonical order.
  std::vector<AltIndex> members() const {
    std::vector<AltIndex> out;
    for (AltIndex i = 0; i < universe_.size(); ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  /// Member identifiers, sorted by canonical index.
  std::vector<std::string> member_names() const {
    std::vector<std::string> out;
    for (AltIndex i : members()) out.push_back(universe_.name(i));
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (AltIndex i : members()) {
      if (!first) os << ", ";
      os << universe_.name(i);
      first = false;
    }
    os << '}';
    return os.str();
  }

  friend bool operator==(const Menu& a, const Menu& b) {
    return a.universe_ == b.universe_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Menu& a, const Menu& b) { return !(a == b); }

private:
  Universe universe_;
  MenuBits bits_ = 0;
};

/// A strict total order over a universe's alternatives, stored best-first.
/// Complete and transitive by construction.
class Preference {
public:
  Preference(Universe universe, std::vector<AltIndex> best_first)
      : universe_(std::move(universe)), ranking_(std::move(best_first)) {
    validate_permutation(universe_, ranking_, "preference");
  }

  static Preference from_names(const Universe& universe, std::span<const std::string> best_first) {
    std::vector<AltIndex> ranking;
    ranking.reserve(best_first.size());
    for (const auto& n : best_first) ranking.push_back(universe.require_index(n));
    return Preference(universe, std::move(ranking));
  }

  /// The identity order: alternative 0 best, then 1, 2, ...
  static Preference canonical(Universe universe) {
    std::vector<AltIndex> ranking(universe.size());
    for (std::size_t i = 0; i < ranking.size(); ++i) ranking[i] = static_cast<AltIndex>(i);
    return Preference(std::move(universe), std::move(ranking));
  }

  const Universe& universe() const { return universe_; }
  const std::vector<AltIndex>& ranking() const { return ranking_; }

  /// 0 = most preferred.
  std::size_t rank_of(AltIndex i) const {
    for (std::size_t r = 0; r < ranking_.size(); ++r) {
      if (ranking_[r] == i) return r;
    }
    throw ValidationError("alternative index out of range for preference");
  }

  bool prefers(AltIndex a, AltIndex b) const { return rank_of(a) < rank_of(b); }

  static void validate_permutation(const Universe& universe, std::span<const AltIndex> order,
                                   const char* what) {
    if (order.size() != universe.size()) {
      throw ValidationError(std::string(what) + " must rank every alternative exactly once");
    }
    std::vector<bool> seen(universe.size(), false);
    for (AltIndex i : order) {
      if (i >= universe.size() || seen[i]) {
        throw ValidationError(std::string(what) + " is not a permutation of the universe");
      }
      seen[i] = true;
    }
  }

private:
  Universe universe_;
  std::vector<AltIndex> ranking_;
};

// Rule descriptors for rule-backed filters. The table is always materialized;
// the rule is kept as provenance.

/// Gamma(A) = A n Y for a fixed Y.
struct FixedSetRule {
  MenuBits members = 0;
};

/// Gamma(A) = {x in A : score(x) >= cutoff}.
struct ThresholdRule {
  std::vector<double> scores;
  double cutoff = 0.0;
};

/// Keeps the k best members of the menu under a fixed strict order (best first).
struct TopKRule {
  std::vector<AltIndex> order;
  std::size_t k = 0;
};

/// Keeps the first k members of the menu encountered along a fixed listing.
struct SatisficingPrefixRule {
  std::vector<AltIndex> listing;
  std::size_t k = 0;
};

/// No generating rule known (hand-written or composed table).
struct ExplicitTableRule {};

using FilterRule =
    std::variant<FixedSetRule, ThresholdRule, TopKRule, SatisficingPrefixRule, ExplicitTableRule>;

inline std::string_view rule_name(const FilterRule& rule) {
  struct Namer {
    std::string_view operator()(const FixedSetRule&) const { return "fixed-set"; }
    std::string_view operator()(const ThresholdRule&) const { return "threshold"; }
    std::string_view operator()(const TopKRule&) const { return "top-k-under-order"; }
    std::string_view operator()(const SatisficingPrefixRule&) const { return "satisficing-prefix"; }
    std::string_view operator()(const ExplicitTableRule&) const { return "explicit-table"; }
  };
  return std::visit(Namer{}, rule);
}

/// A consideration filter: a total, contractive mapping from menus to
/// sub-menus, stored extensionally over all 2^|X| menus. Immutable.
class Filter {
public:
  /// Validates totality and contractivity; provenance is explicit-table.
  static Filter from_table(Universe universe, std::vector<MenuBits> table) {
    return Filter(std::move(universe), std::move(table), ExplicitTableRule{});
  }

  static Filter identity(const Universe& universe);
  static Filter constant_empty(const Universe& universe);

  const Universe& universe() const { return universe_; }
  const std::vector<MenuBits>& table() const { return table_; }
  const FilterRule& rule() const { return rule_; }

  MenuBits table_at(MenuBits menu) const { return table_[menu]; }

  Menu apply(const Menu& menu) const {
    require_same_universe(universe_, menu.universe(), "apply_filter");
    return Menu(universe_, table_[menu.bits()]);
  }

  bool same_table(const Filter& other) const {
    require_same_universe(universe_, other.universe_, "same_table");
    return table_ == other.table_;
  }

private:
  friend Filter build_filter(const Universe&, const FilterRule&);

  Filter(Universe universe, std::vector<MenuBits> table, FilterRule rule)
      : universe_(std::move(universe)), table_(std::move(table)), rule_(std::move(rule)) {
    if (table_.size() != universe_.menu_count()) {
      throw ValidationError("filter table must cover all " +
                            std::to_string(universe_.menu_count()) + " menus, got " +
                            std::to_string(table_.size()));
    }
    for (MenuBits menu = 0; menu < table_.size(); ++menu) {
      if ((table_[menu] & ~menu) != 0) {
        throw ValidationError("filter is not contractive at menu encoding " +
                              std::to_string(menu));
      }
    }
  }

  Universe universe_;
  std::vector<MenuBits> table_;
  FilterRule rule_;
};

namespace detail {

inline MenuBits evaluate_rule(const FilterRule& rule, MenuBits menu) {
  struct Eval {
    MenuBits menu;
    MenuBits operator()(const FixedSetRule& r) const { return menu & r.members; }
    MenuBits operator()(const ThresholdRule& r) const {
      MenuBits out = 0;
      for (AltIndex i = 0; i < r.scores.size(); ++i) {
        if (((menu >> i) & 1u) && r.scores[i] >= r.cutoff) out |= MenuBits{1} << i;
      }
      return out;
    }
    MenuBits operator()(const TopKRule& r) const { return take_along(r.order, r.k, menu); }
    MenuBits operator()(const SatisficingPrefixRule& r) const {
      return take_along(r.listing, r.k, menu);
    }
    MenuBits operator()(const ExplicitTableRule&) const {
      throw ValidationError("explicit-table rule cannot be evaluated without a table");
    }
    static MenuBits take_along(std::span<const AltIndex> order, std::size_t k, MenuBits menu) {
      MenuBits out = 0;
      std::size_t taken = 0;
      for (AltIndex i : order) {
        if (taken == k) break;
        if ((menu >> i) & 1u) {
          out |= MenuBits{1} << i;
          ++taken;
        }
      }
      return out;
    }
  };
  return std::visit(Eval{menu}, rule);
}

inline void validate_rule(const Universe& universe, const FilterRule& rule) {
  struct Check {
    const Universe& universe;
    void operator()(const FixedSetRule& r) const {
      if ((r.members & ~universe.full_bits()) != 0) {
        throw ValidationError("fixed-set rule: members are not a subset of the universe");
      }
    }
    void operator()(const ThresholdRule& r) const {
      if (r.scores.size() != universe.size()) {
        throw ValidationError("threshold rule: scores must be total on the universe");
      }
      for (double s : r.scores) {
        if (!std::isfinite(s)) throw ValidationError("threshold rule: scores must be finite");
      }
      if (!std::isfinite(r.cutoff)) throw ValidationError("threshold rule: cutoff must be finite");
    }
    void operator()(const TopKRule& r) const {
      Preference::validate_permutation(universe, r.order, "top-k order");
    }
    void operator()(const SatisficingPrefixRule& r) const {
      Preference::validate_permutation(universe, r.listing, "satisficing-prefix listing");
    }
    void operator()(const ExplicitTableRule&) const {
      throw ValidationError("build_filter requires a generating rule, not explicit-table");
    }
  };
  std::visit(Check{universe}, rule);
}

}  // namespace detail

/// Materializes a rule-backed filter: the rule is evaluated on every menu and
/// kept as provenance.
inline Filter build_filter(const Universe& universe, const FilterRule& rule) {
  detail::validate_rule(universe, rule);
  std::vector<MenuBits> table(universe.menu_count());
  for (MenuBits menu = 0; menu < table.size(); ++menu) {
    table[menu] = detail::evaluate_rule(rule, menu);
  }
  return Filter(universe, std::move(table), rule);
}

inline Filter Filter::identity(const Universe& universe) {
  return build_filter(universe, FixedSetRule{universe.full_bits()});
}

inline Filter Filter::constant_empty(const Universe& universe) {
  return build_filter(universe, FixedSetRule{0});
}

/// A duplicate-free listing of alternatives: one menu plus a presentation order.
class OrderedMenu {
public:
  OrderedMenu(Universe universe, std::vector<AltIndex> sequence)
      : universe_(std::move(universe)), sequence_(std::move(sequence)) {
    std::vector<bool> seen(universe_.size(), false);
    for (AltIndex i : sequence_) {
      if (i >= universe_.size()) throw ValidationError("ordered menu: index out of range");
      if (seen[i]) throw ValidationError("ordered menu: duplicate alternative");
      seen[i] = true;
    }
  }

  static OrderedMenu from_names(const Universe& universe, std::span<const std::string> names) {
    std::vector<AltIndex> seq;
    seq.reserve(names.size());
    for (const auto& n : names) seq.push_back(universe.require_index(n));
    return OrderedMenu(universe, std::move(seq));
  }

  const Universe& universe() const { return universe_; }
  const std::vector<AltIndex>& sequence() const { return sequence_; }
  std::size_t length() const { return sequence_.size(); }

  Menu to_menu() const {
    MenuBits bits = 0;
    for (AltIndex i : sequence_) bits |= MenuBits{1} << i;
    return Menu(universe_, bits);
  }

private:
  Universe universe_;
  std::vector<AltIndex> sequence_;
};

/// Applies an order-insensitive filter to the underlying set.
struct OrderedLiftRule {
  Filter base;
};

/// Keeps the first k alternatives of the presentation sequence.
struct OrderedKeepFirstKRule {
  std::size_t k = 0;
};

/// Extensional listing of (sequence -> considered subset) entries.
struct OrderedExplicitRule {
  std::map<std::vector<AltIndex>, MenuBits> entries;
};

using OrderedRule = std::variant<OrderedLiftRule, OrderedKeepFirstKRule, OrderedExplicitRule>;

/// A consideration rule over presented (ordered) menus; rule(s) is a subset
/// of the alternatives in s.
class OrderedFilter {
public:
  OrderedFilter(Universe universe, OrderedRule rule)
      : universe_(std::move(universe)), rule_(std::move(rule)) {
    if (const auto* lift = std::get_if<OrderedLiftRule>(&rule_)) {
      require_same_universe(universe_, lift->base.universe(), "ordered filter lift");
    }
    if (const auto* explicit_rule = std::get_if<OrderedExplicitRule>(&rule_)) {
      for (const auto& [sequence, considered] : explicit_rule->entries) {
        OrderedMenu ordered(universe_, sequence);  // validates the key
        if ((considered & ~ordered.to_menu().bits()) != 0) {
          throw ValidationError("ordered filter entry is not contractive");
        }
      }
    }
  }

  static OrderedFilter lift(Filter base) {
    Universe universe = base.universe();
    return OrderedFilter(std::move(universe), OrderedLiftRule{std::move(base)});
  }

  const Universe& universe() const { return universe_; }
  const OrderedRule& rule() const { return rule_; }

  Menu apply(const OrderedMenu& ordered) const {
    require_same_universe(universe_, ordered.universe(), "ordered apply");
    struct Eval {
      const OrderedMenu& ordered;
      MenuBits operator()(const OrderedLiftRule& r) const {
        return r.base.table_at(ordered.to_menu().bits());
      }
      MenuBits operator()(const OrderedKeepFirstKRule& r) const {
        MenuBits out = 0;
        std::size_t taken = 0;
        for (AltIndex i : ordered.sequence()) {
          if (taken == r.k) break;
          out |= MenuBits{1} << i;
          ++taken;
        }
        return out;
      }
      MenuBits operator()(const OrderedExplicitRule& r) const {
        auto it = r.entries.find(ordered.sequence());
        if (it == r.entries.end()) {
          throw ValidationError("ordered filter has no entry for an ordering of this menu");
        }
        return it->second;
      }
    };
    return Menu(universe_, std::visit(Eval{ordered}, rule_));
  }

private:
  Universe universe_;
  OrderedRule rule_;
};

/// Observed choice records: a partial choice function menu -> alternative,
/// where std::nullopt records "no choice made".
class ChoiceDataset {
public:
  explicit ChoiceDataset(Universe universe) : universe_(std::move(universe)) {}

  const Universe& universe() const { return universe_; }

  void record(const Menu& menu, std::optional<AltIndex> choice) {
    require_same_universe(universe_, menu.universe(), "dataset record");
    if (choice && !menu.contains(*choice)) {
      throw ValidationError("recorded choice " + universe_.name(*choice) +
                            " is not a member of menu " + menu.to_string());
    }
    auto [it, inserted] = records_.emplace(menu.bits(), choice);
    if (!inserted) {
      throw ValidationError("menu " + menu.to_string() + " already has a record");
    }
  }

  bool has_record(MenuBits menu) const { return records_.count(menu) != 0; }

  /// Requires has_record(menu); nullopt means "no choice made".
  std::optional<AltIndex> choice_at(MenuBits menu) const { return records_.at(menu); }

  /// Ascending by menu encoding.
  const std::map<MenuBits, std::optional<AltIndex>>& records() const { return records_; }

  std::size_t record_count() const { return records_.size(); }

  /// True when every nonempty menu carries a recorded, non-none choice.
  bool is_full_domain() const {
    for (MenuBits menu = 1; menu < universe_.menu_count(); ++menu) {
      auto it = records_.find(menu);
      if (it == records_.end() || !it->second.has_value()) return false;
    }
    return true;
  }

  /// True when alternative x is the recorded choice of some menu.
  bool ever_chosen(AltIndex x) const {
    for (const auto& [menu, choice] : records_) {
      if (choice && *choice == x) return true;
    }
    return false;
  }

private:
  Universe universe_;
  std::map<MenuBits, std::optional<AltIndex>> records_;
};

// ---------------------------------------------------------------------------
// Operations

/// All 2^|X| menus, in ascending canonical encoding; includes {} and X.
inline std::vector<Menu> enumerate_menus(const Universe& universe) {
  std::vector<Menu> out;
  out.reserve(universe.menu_count());
  for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
    out.emplace_back(universe, menu);
  }
  return out;
}

inline Menu apply_filter(const Filter& filter, const Menu& menu) { return filter.apply(menu); }

/// The unique most-preferred member of the menu; nullopt iff the menu is empty.
inline std::optional<AltIndex> choose(const Preference& preference, const Menu& menu) {
  require_same_universe(preference.universe(), menu.universe(), "choose");
  for (AltIndex i : preference.ranking()) {
    if (menu.contains(i)) return i;
  }
  return std::nullopt;
}

/// One recorded choice that falls outside the filter's consideration set.
struct MembershipViolation {
  MenuBits menu = 0;
  AltIndex chosen = 0;
  MenuBits considered = 0;
};

/// Audits c(B) against Gamma(B) membership. Records with no choice are never
/// violations; empty consideration sets are legal.
inline std::vector<MembershipViolation> check_choice_membership(const ChoiceDataset& dataset,
                                                                const Filter& filter) {
  require_same_universe(dataset.universe(), filter.universe(), "check_choice_membership");
  std::vector<MembershipViolation> violations;
  for (const auto& [menu, choice] : dataset.records()) {
    if (!choice) continue;
    MenuBits considered = filter.table_at(menu);
    if (((considered >> *choice) & 1u) == 0) {
      violations.push_back({menu, *choice, considered});
    }
  }
  return violations;
}

inline bool replay_violation(const ChoiceDataset& dataset, const Filter& filter,
                             const MembershipViolation& violation) {
  if (!dataset.has_record(violation.menu)) return false;
  auto choice = dataset.choice_at(violation.menu);
  if (!choice || *choice != violation.chosen) return false;
  MenuBits considered = filter.table_at(violation.menu);
  return ((considered >> violation.chosen) & 1u) == 0;
}

// ---------------------------------------------------------------------------
// Verification modes shared by the theorem suites.

struct Exhaustive {};

struct Sampled {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
};

using VerifyMode = std::variant<Exhaustive, Sampled>;

}  // namespace consideration
