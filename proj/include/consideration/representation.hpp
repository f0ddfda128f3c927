#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "consideration/axioms.hpp"
#include "consideration/core.hpp"

// The bridge to utility representation: threshold representations of IO
// filters (score + cutoff), the two-stage threshold choice function, the
// WARP / WARP-CO / WARP-IO audits over observed choice data, and a
// brute-force rationalizability oracle used as ground truth.

namespace consideration::representation {

/// A per-alternative score u1 plus a real cutoff k*; realizes an IO filter
/// numerically via Gamma(A) = {x in A : u1(x) >= k*}.
class ThresholdRepresentation {
public:
  ThresholdRepresentation(Universe universe, std::vector<double> scores, double k_star)
      : universe_(std::move(universe)), scores_(std::move(scores)), k_star_(k_star) {
    if (scores_.size() != universe_.size()) {
      throw ValidationError("threshold representation: u1 must be total on the universe");
    }
    for (double s : scores_) {
      if (!std::isfinite(s)) {
        throw ValidationError("threshold representation: scores must be finite");
      }
    }
    if (!std::isfinite(k_star_)) {
      throw ValidationError("threshold representation: k* must be finite");
    }
  }

  const Universe& universe() const { return universe_; }
  const std::vector<double>& scores() const { return scores_; }
  double score_of(AltIndex i) const { return scores_.at(i); }
  double k_star() const { return k_star_; }

  bool meets_threshold(AltIndex i) const { return scores_.at(i) >= k_star_; }

private:
  Universe universe_;
  std::vector<double> scores_;
  double k_star_;
};

/// The multi-argument utility evaluated per alternative; ranks choices within
/// a consideration set (ties break to the lowest canonical index).
class AggregateUtility {
public:
  AggregateUtility(Universe universe, std::vector<double> values)
      : universe_(std::move(universe)), values_(std::move(values)) {
    if (values_.size() != universe_.size()) {
      throw ValidationError("aggregate utility: values must be total on the universe");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw ValidationError("aggregate utility: values must be finite");
    }
  }

  const Universe& universe() const { return universe_; }
  const std::vector<double>& values() const { return values_; }
  double value_of(AltIndex i) const { return values_.at(i); }

private:
  Universe universe_;
  std::vector<double> values_;
};

/// Thrown when a threshold representation is requested for a non-IO filter;
/// carries the IO counterexample witness.
class RepresentationError : public Error {
public:
  RepresentationError(const std::string& message, axioms::PropertyReport report)
      : Error(message), io_report(std::move(report)) {}
  axioms::PropertyReport io_report;
};

/// Builds the indicator representation of an IO filter: u1(x) = 1 when x is
/// considered somewhere, 0 otherwise, with k* = 1. The result regenerates
/// the filter exactly (see induced_filter).
inline ThresholdRepresentation construct_threshold_representation(const Filter& filter) {
  auto io = axioms::check_io(filter);
  if (!io.holds) {
    throw RepresentationError(
        "filter is not IO, so no threshold representation exists", std::move(io));
  }
  const Universe& universe = filter.universe();
  std::vector<double> scores(universe.size(), 0.0);
  for (AltIndex x = 0; x < universe.size(); ++x) {
    for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
      if ((filter.table_at(menu) >> x) & 1u) {
        scores[x] = 1.0;
        break;
      }
    }
  }
  return ThresholdRepresentation(universe, std::move(scores), 1.0);
}

/// The filter A -> {x in A : u1(x) >= k*}; always IO.
inline Filter induced_filter(const ThresholdRepresentation& rep, const Universe& universe) {
  require_same_universe(rep.universe(), universe, "induced_filter");
  return build_filter(universe, ThresholdRule{rep.scores(), rep.k_star()});
}

/// Screens the menu through the threshold, then picks the aggregate-maximal
/// survivor; nullopt iff no alternative meets the threshold.
inline std::optional<AltIndex> threshold_choice(const ThresholdRepresentation& rep,
                                                const AggregateUtility& agg, const Menu& menu) {
  require_same_universe(rep.universe(), agg.universe(), "threshold_choice");
  require_same_universe(rep.universe(), menu.universe(), "threshold_choice");
  std::optional<AltIndex> best;
  for (AltIndex x = 0; x < rep.universe().size(); ++x) {
    if (!menu.contains(x) || !rep.meets_threshold(x)) continue;
    if (!best || agg.value_of(x) > agg.value_of(*best)) best = x;
  }
  return best;
}

// ---------------------------------------------------------------------------
// WARP audits.

enum class WarpAxiom { Warp, WarpCo, WarpIo };

inline std::string_view to_string(WarpAxiom axiom) {
  switch (axiom) {
    case WarpAxiom::Warp: return "warp";
    case WarpAxiom::WarpCo: return "warp-co";
    case WarpAxiom::WarpIo: return "warp-io";
  }
  return "unknown";
}

/// Pairwise reversal: c(S) = x with y available in S, while c(T) = y with x
/// available in T.
struct ReversalViolation {
  MenuBits menu_s = 0;
  MenuBits menu_t = 0;
  AltIndex x = 0;
  AltIndex y = 0;
};

/// Why one candidate b* fails for menu S under WARP-CO: b* was abandoned in
/// T (c(T) landed in S elsewhere) despite being chosen in the larger T'.
struct CoBlocker {
  AltIndex b_star = 0;
  MenuBits t = 0;
  AltIndex chosen_t = 0;
  MenuBits t_prime = 0;
};

/// A menu S for which every member is blocked.
struct CoViolation {
  MenuBits s = 0;
  std::vector<CoBlocker> blockers;
};

/// Why one candidate b* fails for menu S under WARP-IO part 1. Either the
/// recorded c(S) pins b* elsewhere (choice_mismatch), or the biconditional
/// "c(T) = b* iff b* pairwise-beats every ever-chosen member of T" failed at
/// menu T, with failing_x the pairwise defeat when one exists.
struct IoPart1Blocker {
  AltIndex b_star = 0;
  bool choice_mismatch = false;
  MenuBits t = 0;
  std::optional<AltIndex> chosen_t;
  bool left = false;
  bool right = false;
  std::optional<AltIndex> failing_x;
};

struct IoPart1Violation {
  MenuBits s = 0;
  std::vector<IoPart1Blocker> blockers;
};

/// Part 2: b declined in its recorded singleton menu, yet chosen elsewhere.
struct IoPart2Violation {
  AltIndex b = 0;
  MenuBits chosen_from = 0;
};

using WarpViolation =
    std::variant<ReversalViolation, CoViolation, IoPart1Violation, IoPart2Violation>;

/// A menu the audit needed but the dataset does not record.
struct CoverageGap {
  std::string clause;
  MenuBits needed_menu = 0;
  MenuBits context_s = 0;
  std::optional<AltIndex> b_star;
  std::optional<AltIndex> x;
};

struct WarpReport {
  WarpAxiom axiom = WarpAxiom::Warp;
  bool satisfied = true;
  std::vector<WarpViolation> violations;
  std::optional<Preference> rationalizing_preference;
  std::vector<CoverageGap> coverage_gaps;
  std::vector<std::string> notes;
};

/// Some strict order reproducing every recorded non-none choice, or nullopt.
/// Deterministic: the first fitting order in lexicographic enumeration.
inline std::optional<Preference> rationalizability_oracle(const ChoiceDataset& dataset) {
  const Universe& universe = dataset.universe();
  if (universe.size() > 8) {
    throw CapacityError("rationalizability_oracle: |X| <= 8 required");
  }
  std::vector<AltIndex> ranking(universe.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) ranking[i] = static_cast<AltIndex>(i);
  do {
    bool fits = true;
    for (const auto& [menu, choice] : dataset.records()) {
      if (!choice) continue;
      for (AltIndex i : ranking) {
        if (((menu >> i) & 1u) == 0) continue;
        if (i != *choice) fits = false;
        break;
      }
      if (!fits) break;
    }
    if (fits) return Preference(universe, ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return std::nullopt;
}

/// Classical pairwise-reversal WARP. On a full-domain dataset the result is
/// cross-checked against the rationalizability oracle, whose order (when one
/// exists) is attached to the report.
inline WarpReport check_warp(const ChoiceDataset& dataset) {
  WarpReport report;
  report.axiom = WarpAxiom::Warp;
  const auto& records = dataset.records();
  for (auto it_s = records.begin(); it_s != records.end(); ++it_s) {
    if (!it_s->second) continue;
    for (auto it_t = std::next(it_s); it_t != records.end(); ++it_t) {
      if (!it_t->second) continue;
      AltIndex x = *it_s->second;
      AltIndex y = *it_t->second;
      if (x == y) continue;
      bool y_in_s = (it_s->first >> y) & 1u;
      bool x_in_t = (it_t->first >> x) & 1u;
      if (y_in_s && x_in_t) {
        report.violations.push_back(ReversalViolation{it_s->first, it_t->first, x, y});
      }
    }
  }
  report.satisfied = report.violations.empty();
  if (dataset.is_full_domain() && dataset.universe().size() <= 8) {
    report.rationalizing_preference = rationalizability_oracle(dataset);
    bool rationalizable = report.rationalizing_preference.has_value();
    report.notes.push_back(rationalizable == report.satisfied
                               ? "full-domain cross-check: oracle agrees"
                               : "full-domain cross-check: oracle DISAGREES");
  }
  return report;
}

/// WARP-CO: for every nonempty S some b* in S survives every recorded chain
/// T strictly inside T': whenever c(T) lands in S and b* = c(T') for a
/// recorded T' strictly above T, c(T) must already be b*.
inline WarpReport check_warp_co(const ChoiceDataset& dataset) {
  WarpReport report;
  report.axiom = WarpAxiom::WarpCo;
  const Universe& universe = dataset.universe();
  const auto& records = dataset.records();
  for (MenuBits s = 1; s < universe.menu_count(); ++s) {
    bool viable_found = false;
    std::vector<CoBlocker> blockers;
    for (AltIndex b = 0; b < universe.size() && !viable_found; ++b) {
      if (((s >> b) & 1u) == 0) continue;
      std::optional<CoBlocker> blocker;
      for (const auto& [t, choice_t] : records) {
        if (!choice_t || ((t >> b) & 1u) == 0) continue;
        if (((s >> *choice_t) & 1u) == 0) continue;  // clause 1: c(T) in S
        if (*choice_t == b) continue;                // conclusion already holds
        for (const auto& [t_prime, choice_tp] : records) {
          bool strict_superset = (t & ~t_prime) == 0 && t != t_prime;
          if (strict_superset && choice_tp && *choice_tp == b) {
            blocker = CoBlocker{b, t, *choice_t, t_prime};
            break;
          }
        }
        if (blocker) break;
      }
      if (blocker) {
        blockers.push_back(*blocker);
      } else {
        viable_found = true;
      }
    }
    if (!viable_found) {
      report.violations.push_back(CoViolation{s, std::move(blockers)});
    }
  }
  report.satisfied = report.violations.empty();
  return report;
}

namespace detail_warp {

struct Part1Evaluation {
  std::optional<IoPart1Blocker> blocker;
};

// Evaluates one candidate b* for menu s. The biconditional at each recorded
// T is: c(T) = b* iff c({b*, x}) = b* for every x in T that is ever chosen.
// Unrecorded pair menus are reported as coverage gaps; a candidate is only
// blocked on definite evidence.
template <typename AddGap>
inline Part1Evaluation evaluate_part1_candidate(const ChoiceDataset& dataset, MenuBits s,
                                                AltIndex b, const std::vector<bool>& ever_chosen,
                                                AddGap&& add_gap) {
  for (const auto& [t, choice_t] : dataset.records()) {
    if (!choice_t || ((t >> b) & 1u) == 0) continue;
    if (((s >> *choice_t) & 1u) == 0) continue;
    bool left = *choice_t == b;
    bool right = true;
    bool had_gaps = false;
    std::optional<AltIndex> failing_x;
    for (AltIndex x = 0; x < dataset.universe().size(); ++x) {
      if (((t >> x) & 1u) == 0 || !ever_chosen[x]) continue;
      MenuBits pair_menu = (MenuBits{1} << b) | (MenuBits{1} << x);
      if (!dataset.has_record(pair_menu)) {
        add_gap(pair_menu, s, b, x);
        had_gaps = true;
        continue;
      }
      auto pair_choice = dataset.choice_at(pair_menu);
      if (!pair_choice || *pair_choice != b) {
        right = false;
        failing_x = x;
        break;
      }
    }
    bool definite_failure = (left && !right) || (!left && right && !had_gaps);
    if (definite_failure) {
      return {IoPart1Blocker{b, false, t, choice_t, left, right, failing_x}};
    }
  }
  return {};
}

}  // namespace detail_warp

/// WARP-IO, both parts. Part 1 requires, for every nonempty S, a b* (pinned
/// to the recorded c(S) when S is recorded with an actual choice) whose
/// biconditional holds at every recorded T. Part 2 requires that an
/// alternative declined in its recorded singleton menu is chosen nowhere.
/// Menus with a recorded "no choice" impose no part-1 requirement.
inline WarpReport check_warp_io(const ChoiceDataset& dataset) {
  WarpReport report;
  report.axiom = WarpAxiom::WarpIo;
  const Universe& universe = dataset.universe();

  std::vector<bool> ever_chosen(universe.size(), false);
  for (const auto& [menu, choice] : dataset.records()) {
    if (choice) ever_chosen[*choice] = true;
  }

  std::set<std::pair<std::string, MenuBits>> gaps_seen;
  auto add_gap = [&](const std::string& clause, MenuBits needed, MenuBits context_s,
                     std::optional<AltIndex> b_star, std::optional<AltIndex> x) {
    if (gaps_seen.emplace(clause, needed).second) {
      report.coverage_gaps.push_back({clause, needed, context_s, b_star, x});
    }
  };

  // part 1
  for (MenuBits s = 1; s < universe.menu_count(); ++s) {
    std::vector<AltIndex> candidates;
    std::vector<IoPart1Blocker> blockers;
    if (dataset.has_record(s)) {
      auto choice_s = dataset.choice_at(s);
      if (!choice_s) continue;
      candidates.push_back(*choice_s);
      for (AltIndex x = 0; x < universe.size(); ++x) {
        if (((s >> x) & 1u) && x != *choice_s) {
          blockers.push_back(IoPart1Blocker{x, true, s, choice_s, false, false, std::nullopt});
        }
      }
    } else {
      for (AltIndex x = 0; x < universe.size(); ++x) {
        if ((s >> x) & 1u) candidates.push_back(x);
      }
    }
    bool viable = false;
    for (AltIndex b : candidates) {
      auto eval = detail_warp::evaluate_part1_candidate(
          dataset, s, b, ever_chosen,
          [&](MenuBits needed, MenuBits context_s, AltIndex b_star, AltIndex x) {
            add_gap("warp-io part 1 needs the pair menu {b*, x}", needed, context_s, b_star, x);
          });
      if (!eval.blocker) {
        viable = true;
        break;
      }
      blockers.push_back(*eval.blocker);
    }
    if (!viable) {
      report.violations.push_back(IoPart1Violation{s, std::move(blockers)});
    }
  }

  // part 2
  for (AltIndex b = 0; b < universe.size(); ++b) {
    MenuBits singleton = MenuBits{1} << b;
    if (!dataset.has_record(singleton)) {
      if (ever_chosen[b]) {
        add_gap("warp-io part 2 needs the singleton menu {b}", singleton, singleton, b,
                std::nullopt);
      }
      continue;
    }
    if (dataset.choice_at(singleton).has_value()) continue;  // chosen from {b}
    for (const auto& [menu, choice] : dataset.records()) {
      if (choice && *choice == b) {
        report.violations.push_back(IoPart2Violation{b, menu});
      }
    }
  }

  report.satisfied = report.violations.empty();
  return report;
}

inline WarpReport check_warp_axiom(const ChoiceDataset& dataset, WarpAxiom axiom) {
  switch (axiom) {
    case WarpAxiom::Warp: return check_warp(dataset);
    case WarpAxiom::WarpCo: return check_warp_co(dataset);
    case WarpAxiom::WarpIo: return check_warp_io(dataset);
  }
  throw ValidationError("unknown WARP axiom");
}

/// Re-validates one violation record against the dataset.
inline bool replay_violation(const ChoiceDataset& dataset, const WarpViolation& violation) {
  const Universe& universe = dataset.universe();
  struct Replayer {
    const ChoiceDataset& dataset;
    const Universe& universe;

    std::optional<AltIndex> recorded(MenuBits menu) const {
      if (!dataset.has_record(menu)) return std::nullopt;
      return dataset.choice_at(menu);
    }

    bool operator()(const ReversalViolation& v) const {
      auto cs = recorded(v.menu_s);
      auto ct = recorded(v.menu_t);
      return cs && ct && *cs == v.x && *ct == v.y && v.x != v.y &&
             ((v.menu_s >> v.y) & 1u) != 0 && ((v.menu_t >> v.x) & 1u) != 0;
    }

    bool operator()(const CoViolation& v) const {
      MenuBits covered = 0;
      for (const auto& blocker : v.blockers) {
        if (((v.s >> blocker.b_star) & 1u) == 0) return false;
        auto ct = recorded(blocker.t);
        auto ctp = recorded(blocker.t_prime);
        bool ok = ct && *ct == blocker.chosen_t && blocker.chosen_t != blocker.b_star &&
                  ((blocker.t >> blocker.b_star) & 1u) != 0 &&
                  ((v.s >> blocker.chosen_t) & 1u) != 0 &&
                  (blocker.t & ~blocker.t_prime) == 0 && blocker.t != blocker.t_prime &&
                  ctp && *ctp == blocker.b_star;
        if (!ok) return false;
        covered |= MenuBits{1} << blocker.b_star;
      }
      return covered == v.s;  // every member of S is blocked
    }

    bool operator()(const IoPart1Violation& v) const {
      if (v.blockers.empty()) return false;
      std::vector<bool> ever_chosen(universe.size(), false);
      for (const auto& [menu, choice] : dataset.records()) {
        if (choice) ever_chosen[*choice] = true;
      }
      MenuBits covered = 0;
      for (const auto& blocker : v.blockers) {
        if (((v.s >> blocker.b_star) & 1u) == 0) return false;
        covered |= MenuBits{1} << blocker.b_star;
        if (blocker.choice_mismatch) {
          auto cs = recorded(v.s);
          if (!cs || *cs == blocker.b_star) return false;
          continue;
        }
        auto ct = recorded(blocker.t);
        if (!ct || ((blocker.t >> blocker.b_star) & 1u) == 0) return false;
        if (((v.s >> *ct) & 1u) == 0) return false;
        bool left = *ct == blocker.b_star;
        bool right = true;
        bool had_gaps = false;
        for (AltIndex x = 0; x < universe.size(); ++x) {
          if (((blocker.t >> x) & 1u) == 0 || !ever_chosen[x]) continue;
          MenuBits pair_menu = (MenuBits{1} << blocker.b_star) | (MenuBits{1} << x);
          auto pair_choice = recorded(pair_menu);
          if (!dataset.has_record(pair_menu)) {
            had_gaps = true;
            continue;
          }
          if (!pair_choice || *pair_choice != blocker.b_star) {
            right = false;
            break;
          }
        }
        bool definite = (left && !right) || (!left && right && !had_gaps);
        if (!definite) return false;
      }
      return covered == v.s;
    }

    bool operator()(const IoPart2Violation& v) const {
      MenuBits singleton = MenuBits{1} << v.b;
      if (!dataset.has_record(singleton)) return false;
      if (dataset.choice_at(singleton).has_value()) return false;
      auto chosen = recorded(v.chosen_from);
      return chosen && *chosen == v.b;
    }
  };
  return std::visit(Replayer{dataset, universe}, violation);
}

}  // namespace consideration::representation
