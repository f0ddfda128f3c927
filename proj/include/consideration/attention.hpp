#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "consideration/core.hpp"

// The rational-attention layer: numeric utility over filters
// (benefit of the eventual choice minus a cost in the consideration-set
// cardinality), the filter choice rule under the choice mandate, discrete
// convexity validation, the two boundary theorems, and the preference-for-
// flexibility probe.

namespace consideration::attention {

/// Benefit/cost model for evaluating filters on a menu. Benefit is read off
/// the alternative the preference picks from the consideration set;
/// benefit_none is the value of an empty consideration set and may not exceed
/// any alternative's benefit. Cost is a function of cardinality on 0..|X|.
class FilterUtilityModel {
public:
  FilterUtilityModel(Universe universe, std::vector<double> benefit, double benefit_none,
                     std::vector<double> cost, Preference preference)
      : universe_(std::move(universe)),
        benefit_(std::move(benefit)),
        benefit_none_(benefit_none),
        cost_(std::move(cost)),
        preference_(std::move(preference)) {
    require_same_universe(universe_, preference_.universe(), "utility model");
    if (benefit_.size() != universe_.size()) {
      throw ValidationError("utility model: benefit must be total on the universe");
    }
    if (cost_.size() != universe_.size() + 1) {
      throw ValidationError("utility model: cost must be defined on cardinalities 0..|X|");
    }
    for (double b : benefit_) {
      if (!std::isfinite(b)) throw ValidationError("utility model: benefits must be finite");
    }
    for (double c : cost_) {
      if (!std::isfinite(c)) throw ValidationError("utility model: costs must be finite");
    }
    if (!std::isfinite(benefit_none_)) {
      throw ValidationError("utility model: benefit of no choice must be finite");
    }
    for (double b : benefit_) {
      if (benefit_none_ > b) {
        throw ValidationError(
            "utility model: benefit of no choice may not exceed any alternative's benefit");
      }
    }
  }

  const Universe& universe() const { return universe_; }
  const std::vector<double>& benefit() const { return benefit_; }
  double benefit_none() const { return benefit_none_; }
  const std::vector<double>& cost() const { return cost_; }
  const Preference& preference() const { return preference_; }

  double benefit_of(std::optional<AltIndex> alternative) const {
    return alternative ? benefit_[*alternative] : benefit_none_;
  }
  double cost_of(std::size_t cardinality) const { return cost_.at(cardinality); }

  /// Same model with benefit and cost scaled by a common positive factor.
  FilterUtilityModel scaled(double factor) const {
    if (!(factor > 0.0)) throw ValidationError("scaling factor must be positive");
    std::vector<double> benefit = benefit_;
    std::vector<double> cost = cost_;
    for (double& b : benefit) b *= factor;
    for (double& c : cost) c *= factor;
    return FilterUtilityModel(universe_, std::move(benefit), benefit_none_ * factor,
                              std::move(cost), preference_);
  }

private:
  Universe universe_;
  std::vector<double> benefit_;
  double benefit_none_;
  std::vector<double> cost_;
  Preference preference_;
};

/// A nonempty collection of candidate filters over one universe, with
/// display labels for reporting.
class FilterSpace {
public:
  explicit FilterSpace(std::vector<Filter> filters, std::vector<std::string> labels = {})
      : filters_(std::move(filters)), labels_(std::move(labels)) {
    if (filters_.empty()) {
      throw ValidationError("filter space must be nonempty: there is always a filter to choose");
    }
    for (const Filter& f : filters_) {
      require_same_universe(filters_.front().universe(), f.universe(), "filter space");
    }
    if (labels_.empty()) {
      for (std::size_t i = 0; i < filters_.size(); ++i) {
        labels_.push_back("f" + std::to_string(i));
      }
    } else if (labels_.size() != filters_.size()) {
      throw ValidationError("filter space: one label per filter required");
    }
  }

  const Universe& universe() const { return filters_.front().universe(); }
  const std::vector<Filter>& filters() const { return filters_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return filters_.size(); }

private:
  std::vector<Filter> filters_;
  std::vector<std::string> labels_;
};

/// u = benefit(choice from Gamma(A)) - cost(|Gamma(A)|).
inline double evaluate_filter_utility(const FilterUtilityModel& model, const Filter& filter,
                                      const Menu& menu) {
  require_same_universe(model.universe(), filter.universe(), "evaluate_filter_utility");
  Menu considered = filter.apply(menu);
  std::optional<AltIndex> chosen = choose(model.preference(), considered);
  return model.benefit_of(chosen) - model.cost_of(considered.cardinality());
}

struct ConvexityReport {
  bool convex = true;
  std::optional<std::size_t> failing_k;
  std::string reason;
};

/// Discrete convexity of the cost function: first differences strictly
/// positive and strictly increasing over 0..|X|.
inline ConvexityReport check_convex_cost(const FilterUtilityModel& model) {
  const auto& cost = model.cost();
  for (std::size_t k = 0; k + 1 < cost.size(); ++k) {
    if (!(cost[k + 1] - cost[k] > 0.0)) {
      return {false, k, "first difference at k=" + std::to_string(k) + " is not positive"};
    }
  }
  for (std::size_t k = 0; k + 2 < cost.size(); ++k) {
    double d1 = cost[k + 1] - cost[k];
    double d2 = cost[k + 2] - cost[k + 1];
    if (!(d2 > d1)) {
      return {false, k, "second difference at k=" + std::to_string(k) + " is not positive"};
    }
  }
  return {};
}

struct FilterDiagnostic {
  std::size_t index = 0;
  double utility = 0.0;
  MenuBits consideration = 0;
  bool eligible = false;
};

struct FilterChoice {
  std::size_t chosen_index = 0;
  std::vector<FilterDiagnostic> diagnostics;
  /// True when every filter yields an empty consideration set, so the
  /// nonempty-choice part of the mandate could not bind.
  bool mandate_vacuous = false;
};

/// The filter choice rule: maximize utility over the space, restricted to
/// filters producing a nonempty consideration set whenever any filter does
/// (the choice mandate). Ties break to the lowest index.
inline FilterChoice choose_filter(const FilterUtilityModel& model, const FilterSpace& space,
                                  const Menu& menu) {
  require_same_universe(model.universe(), space.universe(), "choose_filter");
  require_same_universe(model.universe(), menu.universe(), "choose_filter");
  FilterChoice result;
  bool any_nonempty = false;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Filter& f = space.filters()[i];
    MenuBits considered = f.table_at(menu.bits());
    if (considered != 0) any_nonempty = true;
    result.diagnostics.push_back({i, evaluate_filter_utility(model, f, menu), considered, false});
  }
  result.mandate_vacuous = !any_nonempty;
  bool have_best = false;
  double best = -std::numeric_limits<double>::infinity();
  for (auto& diag : result.diagnostics) {
    diag.eligible = !any_nonempty || diag.consideration != 0;
    if (diag.eligible && (!have_best || diag.utility > best)) {
      have_best = true;
      best = diag.utility;
      result.chosen_index = diag.index;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Theorem: costless consideration implies full consideration.

struct Theorem4Report {
  std::vector<std::string> precondition_failures;
  struct MenuResult {
    MenuBits menu = 0;
    std::size_t chosen_index = 0;
    MenuBits chosen_set = 0;
    std::optional<AltIndex> chosen_alternative;
    std::optional<AltIndex> full_best;
    bool full_consideration_in_argmax = false;
    bool attains_full_best = false;
    bool degenerate = false;  // empty menu: all filters tie at benefit_none
  };
  std::vector<MenuResult> results;
  bool evaluated() const { return precondition_failures.empty(); }
  bool holds() const {
    if (!evaluated()) return false;
    for (const auto& r : results) {
      if (!r.degenerate && !(r.full_consideration_in_argmax && r.attains_full_best)) {
        return false;
      }
    }
    return true;
  }
};

/// Preconditions: cost identically zero, benefit weakly decreasing along the
/// preference ranking, and a full-consideration (identity) filter in the
/// space. Asserts that full consideration is always among the maximizers and
/// the chosen filter's eventual choice is worth as much as the menu's best.
inline Theorem4Report verify_costless_full_consideration(const FilterSpace& space,
                                                         const FilterUtilityModel& model,
                                                         std::span<const Menu> menus) {
  Theorem4Report report;
  for (double c : model.cost()) {
    if (c != 0.0) {
      report.precondition_failures.push_back("cost is not identically zero");
      break;
    }
  }
  const auto& ranking = model.preference().ranking();
  for (std::size_t r = 0; r + 1 < ranking.size(); ++r) {
    if (model.benefit()[ranking[r]] < model.benefit()[ranking[r + 1]]) {
      report.precondition_failures.push_back(
          "benefit is not non-decreasing in preference rank");
      break;
    }
  }
  std::optional<std::size_t> identity_index;
  for (std::size_t i = 0; i < space.size(); ++i) {
    bool is_identity = true;
    for (MenuBits m = 0; m < space.universe().menu_count(); ++m) {
      if (space.filters()[i].table_at(m) != m) {
        is_identity = false;
        break;
      }
    }
    if (is_identity) {
      identity_index = i;
      break;
    }
  }
  if (!identity_index) {
    report.precondition_failures.push_back("no full-consideration filter in the space");
  }
  if (!report.evaluated()) return report;

  for (const Menu& menu : menus) {
    FilterChoice choice = choose_filter(model, space, menu);
    Theorem4Report::MenuResult r;
    r.menu = menu.bits();
    r.chosen_index = choice.chosen_index;
    r.chosen_set = choice.diagnostics[choice.chosen_index].consideration;
    r.chosen_alternative =
        choose(model.preference(), Menu(space.universe(), r.chosen_set));
    r.full_best = choose(model.preference(), menu);
    r.degenerate = menu.is_empty();
    double best_utility = choice.diagnostics[choice.chosen_index].utility;
    r.full_consideration_in_argmax =
        choice.diagnostics[*identity_index].utility == best_utility;
    r.attains_full_best =
        model.benefit_of(r.chosen_alternative) == model.benefit_of(r.full_best);
    report.results.push_back(r);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Theorem: worthless consideration implies cost minimization.

struct Theorem5Report {
  std::vector<std::string> precondition_failures;
  struct MenuResult {
    MenuBits menu = 0;
    std::size_t chosen_index = 0;
    std::size_t chosen_cardinality = 0;
    std::size_t min_eligible_cardinality = 0;
    bool ok = false;
    std::string note;
  };
  std::vector<MenuResult> results;
  bool evaluated() const { return precondition_failures.empty(); }
  bool holds() const {
    if (!evaluated()) return false;
    for (const auto& r : results) {
      if (!r.ok) return false;
    }
    return true;
  }
};

/// Preconditions: benefit constant across alternatives and for no choice,
/// cost strictly increasing. Asserts the chosen filter minimizes |Gamma(A)|
/// among eligible filters on every tested menu.
inline Theorem5Report verify_worthless_consideration(const FilterSpace& space,
                                                     const FilterUtilityModel& model,
                                                     std::span<const Menu> menus) {
  Theorem5Report report;
  for (double b : model.benefit()) {
    if (b != model.benefit_none()) {
      report.precondition_failures.push_back(
          "benefit is not constant across alternatives and no-choice");
      break;
    }
  }
  for (std::size_t k = 0; k + 1 < model.cost().size(); ++k) {
    if (!(model.cost()[k + 1] > model.cost()[k])) {
      report.precondition_failures.push_back("cost is not strictly increasing");
      break;
    }
  }
  if (!report.evaluated()) return report;

  for (const Menu& menu : menus) {
    FilterChoice choice = choose_filter(model, space, menu);
    Theorem5Report::MenuResult r;
    r.menu = menu.bits();
    r.chosen_index = choice.chosen_index;
    r.chosen_cardinality =
        detail::cardinality(choice.diagnostics[choice.chosen_index].consideration);
    r.min_eligible_cardinality = space.universe().size() + 1;
    for (const auto& diag : choice.diagnostics) {
      if (diag.eligible) {
        r.min_eligible_cardinality =
            std::min(r.min_eligible_cardinality, detail::cardinality(diag.consideration));
      }
    }
    r.ok = r.chosen_cardinality == r.min_eligible_cardinality;
    if (choice.mandate_vacuous) {
      r.note = "every filter yields the empty set; the nonempty mandate cannot bind";
    } else if (r.min_eligible_cardinality > 1) {
      r.note = "no eligible filter attains cardinality 1 on this menu";
    }
    report.results.push_back(r);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Preference for flexibility (and its failure under convex cost).

struct FlexibilityReversal {
  std::size_t superset_index = 0;
  std::size_t subset_index = 0;
  MenuBits superset_set = 0;
  MenuBits subset_set = 0;
  double superset_utility = 0.0;
  double subset_utility = 0.0;
};

struct FlexibilityReport {
  MenuBits menu = 0;
  std::size_t pairs_compared = 0;
  std::vector<FlexibilityReversal> reversals;
  bool flexibility_holds() const { return reversals.empty(); }
};

/// Scans ordered pairs with Gamma_i(A) containing Gamma_j(A) and reports
/// every case where the superset filter is strictly worse. Under a strictly
/// convex cost such reversals are expected to exist.
inline FlexibilityReport check_preference_for_flexibility(const FilterSpace& space,
                                                          const FilterUtilityModel& model,
                                                          const Menu& menu) {
  require_same_universe(space.universe(), menu.universe(), "check_preference_for_flexibility");
  FlexibilityReport report;
  report.menu = menu.bits();
  std::vector<MenuBits> sets(space.size());
  std::vector<double> utilities(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    sets[i] = space.filters()[i].table_at(menu.bits());
    utilities[i] = evaluate_filter_utility(model, space.filters()[i], menu);
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (i == j) continue;
      if ((sets[j] & ~sets[i]) != 0) continue;  // need Gamma_i superset of Gamma_j
      ++report.pairs_compared;
      if (utilities[i] < utilities[j]) {
        report.reversals.push_back({i, j, sets[i], sets[j], utilities[i], utilities[j]});
      }
    }
  }
  return report;
}

inline bool replay_reversal(const FilterSpace& space, const FilterUtilityModel& model,
                            const Menu& menu, const FlexibilityReversal& reversal) {
  if (reversal.superset_index >= space.size() || reversal.subset_index >= space.size()) {
    return false;
  }
  MenuBits sup = space.filters()[reversal.superset_index].table_at(menu.bits());
  MenuBits sub = space.filters()[reversal.subset_index].table_at(menu.bits());
  if (sup != reversal.superset_set || sub != reversal.subset_set) return false;
  if ((sub & ~sup) != 0) return false;
  double u_sup = evaluate_filter_utility(model, space.filters()[reversal.superset_index], menu);
  double u_sub = evaluate_filter_utility(model, space.filters()[reversal.subset_index], menu);
  return u_sup < u_sub;
}

}  // namespace consideration::attention
