#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "consideration/axioms.hpp"
#include "consideration/core.hpp"

// Sequential consideration: 2-step and n-step filter composition, the
// commutativity oracles, and executable probes of the two commutativity
// theorems. Composition order follows the reduced left-to-right notation:
// in compose2(f1, f2), f1 is applied first.

namespace consideration::sequential {

inline Filter compose2(const Filter& first, const Filter& second) {
  require_same_universe(first.universe(), second.universe(), "compose2");
  std::vector<MenuBits> table(first.universe().menu_count());
  for (MenuBits menu = 0; menu < table.size(); ++menu) {
    table[menu] = second.table_at(first.table_at(menu));
  }
  return Filter::from_table(first.universe(), std::move(table));
}

/// Left fold of compose2; the sequence must be nonempty.
inline Filter compose_n(std::span<const Filter> sequence) {
  if (sequence.empty()) throw ValidationError("compose_n: the filter sequence is empty");
  Filter out = sequence.front();
  for (std::size_t i = 1; i < sequence.size(); ++i) out = compose2(out, sequence[i]);
  return out;
}

/// Two application orders of the same filters disagreeing on one menu.
struct CommutativityWitness {
  std::vector<std::size_t> order_a;
  std::vector<std::size_t> order_b;
  MenuBits menu = 0;
  MenuBits out_a = 0;
  MenuBits out_b = 0;
};

struct CommutativityReport {
  bool commutative = true;
  std::optional<CommutativityWitness> witness;
  std::vector<bool> io_status;  // per input filter, in given order
};

namespace detail_seq {

inline MenuBits fold_at(std::span<const Filter> filters, std::span<const std::size_t> order,
                        MenuBits menu) {
  MenuBits current = menu;
  for (std::size_t i : order) current = filters[i].table_at(current);
  return current;
}

}  // namespace detail_seq

inline CommutativityReport check_commutative2(const Filter& f1, const Filter& f2) {
  require_same_universe(f1.universe(), f2.universe(), "check_commutative2");
  CommutativityReport report;
  report.io_status = {axioms::check_io(f1).holds, axioms::check_io(f2).holds};
  Filter forward = compose2(f1, f2);
  Filter backward = compose2(f2, f1);
  for (MenuBits menu = 0; menu < f1.universe().menu_count(); ++menu) {
    if (forward.table_at(menu) != backward.table_at(menu)) {
      report.commutative = false;
      report.witness = CommutativityWitness{
          {0, 1}, {1, 0}, menu, forward.table_at(menu), backward.table_at(menu)};
      break;
    }
  }
  return report;
}

/// Compares the fold of every permutation of the sequence against the
/// identity ordering; full-table equality on all menus.
inline CommutativityReport check_commutative_n(std::span<const Filter> sequence,
                                               std::size_t permutation_cap = 6) {
  if (sequence.empty()) throw ValidationError("check_commutative_n: empty sequence");
  if (sequence.size() > permutation_cap) {
    throw CapacityError("check_commutative_n: sequence of length " +
                        std::to_string(sequence.size()) + " exceeds the permutation cap " +
                        std::to_string(permutation_cap));
  }
  const Universe& universe = sequence.front().universe();
  for (const Filter& f : sequence) {
    require_same_universe(universe, f.universe(), "check_commutative_n");
  }
  CommutativityReport report;
  for (const Filter& f : sequence) report.io_status.push_back(axioms::check_io(f).holds);

  std::vector<std::size_t> base(sequence.size());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = i;
  std::vector<MenuBits> reference(universe.menu_count());
  for (MenuBits menu = 0; menu < reference.size(); ++menu) {
    reference[menu] = detail_seq::fold_at(sequence, base, menu);
  }
  std::vector<std::size_t> perm = base;
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (MenuBits menu = 0; menu < reference.size(); ++menu) {
      MenuBits out = detail_seq::fold_at(sequence, perm, menu);
      if (out != reference[menu]) {
        report.commutative = false;
        report.witness = CommutativityWitness{base, perm, menu, reference[menu], out};
        return report;
      }
    }
  }
  return report;
}

/// Re-evaluates both recorded orderings at the witness menu.
inline bool replay_witness(std::span<const Filter> filters, const CommutativityReport& report) {
  if (!report.witness) return false;
  const auto& w = *report.witness;
  for (std::size_t i : w.order_a) {
    if (i >= filters.size()) return false;
  }
  for (std::size_t i : w.order_b) {
    if (i >= filters.size()) return false;
  }
  MenuBits out_a = detail_seq::fold_at(filters, w.order_a, w.menu);
  MenuBits out_b = detail_seq::fold_at(filters, w.order_b, w.menu);
  return out_a == w.out_a && out_b == w.out_b && out_a != out_b;
}

// ---------------------------------------------------------------------------
// Theorem probes.

enum class Theorem2Direction { If, OnlyIf };

struct Theorem2Report {
  Theorem2Direction direction = Theorem2Direction::If;
  std::size_t pairs_checked = 0;

  // if-direction: IO pairs that failed to commute (expected none)
  struct IfFailure {
    MenuBits y1 = 0;
    MenuBits y2 = 0;
    CommutativityWitness witness;
  };
  std::vector<IfFailure> failures;

  // only-if probe: commutative pairs in which at least one member fails IO.
  // These are counterexample candidates to the printed only-if claim.
  struct OnlyIfCandidate {
    std::vector<MenuBits> table1;
    std::vector<MenuBits> table2;
    bool io1 = false;
    bool io2 = false;
  };
  std::vector<OnlyIfCandidate> candidates;

  bool if_direction_holds() const { return failures.empty(); }
};

/// If-direction: both filters IO implies commutative. Exhaustive over all
/// ordered IO pairs when |X| <= 3, sampled otherwise. Only-if direction:
/// exhaustive scan of every filter pair (|X| <= 2 required), collecting
/// commutative pairs that are not both IO.
inline Theorem2Report verify_theorem2(const Universe& universe, Theorem2Direction direction,
                                      Sampled fallback = {1000, 0}) {
  Theorem2Report report;
  report.direction = direction;
  if (direction == Theorem2Direction::If) {
    auto check_pair = [&](MenuBits y1, MenuBits y2) {
      Filter f1 = build_filter(universe, FixedSetRule{y1});
      Filter f2 = build_filter(universe, FixedSetRule{y2});
      auto result = check_commutative2(f1, f2);
      ++report.pairs_checked;
      if (!result.commutative) report.failures.push_back({y1, y2, *result.witness});
    };
    if (universe.size() <= 3) {
      for (MenuBits y1 = 0; y1 <= universe.full_bits(); ++y1) {
        for (MenuBits y2 = 0; y2 <= universe.full_bits(); ++y2) {
          check_pair(y1, y2);
          if (y2 == universe.full_bits()) break;
        }
        if (y1 == universe.full_bits()) break;
      }
    } else {
      std::mt19937_64 rng(fallback.seed);
      for (std::size_t i = 0; i < fallback.count; ++i) {
        check_pair(static_cast<MenuBits>(rng()) & universe.full_bits(),
                   static_cast<MenuBits>(rng()) & universe.full_bits());
      }
    }
    return report;
  }
  // only-if: the whole filter space is needed, which caps |X| at 2
  if (universe.size() > 2) {
    throw CapacityError("verify_theorem2: only-if direction requires |X| <= 2");
  }
  std::vector<std::vector<MenuBits>> choices(universe.menu_count());
  std::uint64_t total = 1;
  for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
    detail::for_each_submask(menu, [&](MenuBits sub) { choices[menu].push_back(sub); });
    total *= choices[menu].size();
  }
  auto filter_at = [&](std::uint64_t index) {
    std::vector<MenuBits> table(universe.menu_count());
    for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
      table[menu] = choices[menu][index % choices[menu].size()];
      index /= choices[menu].size();
    }
    return Filter::from_table(universe, std::move(table));
  };
  for (std::uint64_t i = 0; i < total; ++i) {
    Filter f1 = filter_at(i);
    for (std::uint64_t j = 0; j < total; ++j) {
      Filter f2 = filter_at(j);
      auto result = check_commutative2(f1, f2);
      ++report.pairs_checked;
      if (result.commutative && !(result.io_status[0] && result.io_status[1])) {
        report.candidates.push_back(
            {f1.table(), f2.table(), result.io_status[0], result.io_status[1]});
      }
    }
  }
  return report;
}

struct Theorem3Report {
  std::size_t tuples_checked = 0;
  struct Failure {
    std::vector<MenuBits> ys;
    std::optional<CommutativityWitness> witness;     // non-commutative tuple
    std::optional<MenuBits> collapse_mismatch_menu;  // composite != A n (intersection of Ys)
  };
  std::vector<Failure> failures;
  bool holds() const { return failures.empty(); }
};

/// Asserts n-commutativity of IO tuples and the collapse identity: the
/// composite of fixed-set filters is the fixed-set filter of the intersected
/// Ys. Exhaustive mode enumerates all (2^|X|)^n tuples.
inline Theorem3Report verify_theorem3(const Universe& universe, std::size_t n,
                                      const VerifyMode& mode, std::size_t permutation_cap = 6) {
  if (n == 0) throw ValidationError("verify_theorem3: n must be positive");
  if (n > permutation_cap) {
    throw CapacityError("verify_theorem3: n exceeds the permutation cap");
  }
  Theorem3Report report;
  auto check_tuple = [&](const std::vector<MenuBits>& ys) {
    std::vector<Filter> tuple;
    tuple.reserve(ys.size());
    for (MenuBits y : ys) tuple.push_back(build_filter(universe, FixedSetRule{y}));
    ++report.tuples_checked;
    auto result = check_commutative_n(tuple, permutation_cap);
    if (!result.commutative) {
      report.failures.push_back({ys, result.witness, std::nullopt});
      return;
    }
    Filter composite = compose_n(tuple);
    MenuBits intersection = universe.full_bits();
    for (const Filter& f : tuple) intersection &= f.table_at(universe.full_bits());
    for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
      if (composite.table_at(menu) != (menu & intersection)) {
        report.failures.push_back({ys, std::nullopt, menu});
        return;
      }
    }
  };
  if (std::holds_alternative<Exhaustive>(mode)) {
    double tuple_count = std::pow(static_cast<double>(universe.menu_count()),
                                  static_cast<double>(n));
    if (tuple_count > 1e6) {
      throw CapacityError("verify_theorem3: exhaustive tuple space is too large");
    }
    std::vector<MenuBits> ys(n, 0);
    while (true) {
      check_tuple(ys);
      std::size_t pos = 0;
      while (pos < n) {
        if (ys[pos] < universe.full_bits()) {
          ++ys[pos];
          for (std::size_t r = 0; r < pos; ++r) ys[r] = 0;
          break;
        }
        ++pos;
      }
      if (pos == n) break;
    }
  } else {
    const auto& sampled = std::get<Sampled>(mode);
    std::mt19937_64 rng(sampled.seed);
    for (std::size_t i = 0; i < sampled.count; ++i) {
      std::vector<MenuBits> ys(n);
      for (auto& y : ys) y = static_cast<MenuBits>(rng()) & universe.full_bits();
      check_tuple(ys);
    }
  }
  return report;
}

}  // namespace consideration::sequential
