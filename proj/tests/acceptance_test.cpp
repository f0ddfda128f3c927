// Acceptance suite: desk-scale, exhaustive-where-stated checks of every
// headline claim, with hard time limits. Prints one line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "consideration/attention.hpp"
#include "consideration/axioms.hpp"
#include "consideration/cli.hpp"
#include "consideration/core.hpp"
#include "consideration/json_io.hpp"
#include "consideration/representation.hpp"
#include "consideration/sequential.hpp"

using namespace consideration;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;

  void expect(bool condition, const std::string& message) {
    if (!condition) {
      pass = false;
      failures.push_back(message);
    }
  }
};

Universe numbered(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Universe(std::move(names));
}

std::string scratch_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "consideration_acceptance";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

// ---------------------------------------------------------------------------

void criterion1_theorem1_exhaustive(Outcome& outcome) {
  auto report = axioms::verify_theorem1(numbered(3), Exhaustive{});
  outcome.expect(report.filters_checked == 4096, "expected 4096 filters");
  outcome.expect(report.agreements == 4096, "expected agreement on every filter");
  outcome.expect(report.counterexamples.empty(), "IO <=> (alpha and tau) had counterexamples");
}

void criterion2_theorem2_if(Outcome& outcome) {
  auto report = sequential::verify_theorem2(numbered(3), sequential::Theorem2Direction::If);
  outcome.expect(report.pairs_checked == 64, "expected 64 ordered IO pairs");
  outcome.expect(report.failures.empty(), "an IO pair failed to commute");
}

void criterion3_theorem2_only_if_probe(Outcome& outcome) {
  std::string text;
  int code = run_cli({"verify", "--theorem", "2", "--direction", "only-if", "--size", "2",
                      "--format", "machine"},
                     &text);
  outcome.expect(code == 1, "probe should exit 1 when candidates are found");
  auto report = cli::Json::parse(text);
  outcome.expect(report.at("result").at("pairs_checked") == 256, "expected 256 pairs");
  outcome.expect(!report.at("result").at("counterexample_candidates").empty(),
                 "expected at least one commutative pair that is not jointly IO");
  std::string note = report.at("result").at("note").get<std::string>();
  outcome.expect(note.find("contradict the printed only-if claim") != std::string::npos,
                 "candidates must be labeled as contradicting the printed claim");
  // the identity pairing with a non-IO filter is among the candidates
  Universe u = numbered(2);
  Filter prefix = build_filter(u, SatisficingPrefixRule{{0, 1}, 1});
  Filter identity = Filter::identity(u);
  auto result = sequential::check_commutative2(prefix, identity);
  outcome.expect(result.commutative && !result.io_status[0],
                 "identity pairing with a non-IO filter should commute");
}

void criterion4_theorem3_triples(Outcome& outcome) {
  auto report = sequential::verify_theorem3(numbered(3), 3, Exhaustive{});
  outcome.expect(report.tuples_checked == 512, "expected 512 IO triples");
  outcome.expect(report.holds(), "a triple failed commutativity or the collapse identity");
}

void criterion5_theorem6_roundtrip(Outcome& outcome) {
  Universe u4 = numbered(4);
  for (MenuBits y = 0; y < u4.menu_count(); ++y) {
    Filter original = build_filter(u4, FixedSetRule{y});
    Filter regenerated = representation::induced_filter(
        representation::construct_threshold_representation(original), u4);
    for (MenuBits menu = 0; menu < u4.menu_count(); ++menu) {
      outcome.expect(regenerated.table_at(menu) == original.table_at(menu),
                     "roundtrip mismatch at Y=" + std::to_string(y));
      if (!outcome.pass) return;
    }
  }
  Universe u6 = numbered(6);
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> scores(6);
    for (auto& s : scores) s = static_cast<double>(rng() % 16);
    representation::ThresholdRepresentation rep(u6, scores, static_cast<double>(rng() % 16));
    if (!axioms::check_io(representation::induced_filter(rep, u6)).holds) {
      outcome.expect(false, "an induced filter failed the IO check");
      return;
    }
  }
}

void criterion6_theorem4_full_consideration(Outcome& outcome) {
  Universe u = numbered(4);
  std::vector<Filter> filters;
  std::vector<std::string> labels;
  for (MenuBits y = 0; y < u.menu_count(); ++y) {
    filters.push_back(build_filter(u, FixedSetRule{y}));
    labels.push_back("Y=" + Menu(u, y).to_string());
  }
  filters.push_back(Filter::identity(u));
  labels.push_back("identity");
  attention::FilterSpace space(std::move(filters), std::move(labels));
  Preference preference = Preference::canonical(u);
  std::vector<double> benefit(u.size());
  for (std::size_t r = 0; r < u.size(); ++r) {
    benefit[preference.ranking()[r]] = static_cast<double>(u.size() - r);
  }
  attention::FilterUtilityModel model(u, benefit, 0.0, std::vector<double>(5, 0.0), preference);
  auto menus = enumerate_menus(u);
  auto report = attention::verify_costless_full_consideration(space, model, menus);
  outcome.expect(report.evaluated(), "theorem 4 preconditions failed");
  outcome.expect(report.results.size() == 16, "expected 16 menus");
  for (const auto& r : report.results) {
    outcome.expect(r.chosen_alternative == r.full_best,
                   "chosen filter missed the full menu's best alternative");
  }
  outcome.expect(report.holds(), "full consideration was not always among the maximizers");
}

void criterion7_theorem5_cost_minimization(Outcome& outcome) {
  Universe u = numbered(4);
  std::vector<Filter> filters;
  for (MenuBits y = 0; y < u.menu_count(); ++y) {
    filters.push_back(build_filter(u, FixedSetRule{y}));
  }
  attention::FilterSpace space(std::move(filters));
  std::vector<double> cost(5);
  for (std::size_t k = 0; k <= 4; ++k) cost[k] = static_cast<double>(k * k);
  attention::FilterUtilityModel model(u, std::vector<double>(4, 5.0), 5.0, cost,
                                      Preference::canonical(u));
  auto menus = enumerate_menus(u);
  auto report = attention::verify_worthless_consideration(space, model, menus);
  outcome.expect(report.evaluated(), "theorem 5 preconditions failed");
  outcome.expect(report.results.size() == 16, "expected 16 menus");
  for (const auto& r : report.results) {
    outcome.expect(r.chosen_cardinality == r.min_eligible_cardinality,
                   "chosen filter did not minimize consideration-set cardinality");
  }
  outcome.expect(report.holds(), "theorem 5 assertion failed");
}

void criterion8_remark1_flexibility_reversal(Outcome& outcome) {
  Universe u = numbered(3);
  attention::FilterSpace space(
      {Filter::identity(u), build_filter(u, FixedSetRule{Menu::of(u, {"1"}).bits()})},
      {"identity", "singleton"});
  std::vector<double> cost{0, 1, 4, 9};
  attention::FilterUtilityModel model(u, std::vector<double>(3, 5.0), 5.0, cost,
                                      Preference::canonical(u));
  outcome.expect(attention::check_convex_cost(model).convex, "cost should be convex");
  auto report = attention::check_preference_for_flexibility(space, model, Menu::full(u));
  outcome.expect(!report.reversals.empty(),
                 "expected a superset-dominated reversal under convex cost");
  for (const auto& reversal : report.reversals) {
    outcome.expect(attention::replay_reversal(space, model, Menu::full(u), reversal),
                   "a flexibility reversal failed to replay");
  }
}

ChoiceDataset cycle_dataset(const Universe& u) {
  ChoiceDataset data(u);
  data.record(Menu::of(u, {"1", "2"}), u.index_of("1"));
  data.record(Menu::of(u, {"2", "3"}), u.index_of("2"));
  data.record(Menu::of(u, {"1", "3"}), u.index_of("3"));
  data.record(Menu::of(u, {"1", "2", "3"}), u.index_of("1"));
  return data;
}

void criterion9_warp_vs_rationalizability(Outcome& outcome) {
  Universe u = numbered(4);
  std::vector<AltIndex> ranking{0, 1, 2, 3};
  std::size_t preferences = 0;
  do {
    Preference p(u, ranking);
    ChoiceDataset data(u);
    for (MenuBits m = 1; m < u.menu_count(); ++m) {
      Menu menu(u, m);
      data.record(menu, choose(p, menu));
    }
    auto report = representation::check_warp(data);
    outcome.expect(report.satisfied, "rational data must satisfy WARP");
    auto order = representation::rationalizability_oracle(data);
    outcome.expect(order.has_value(), "rational data must be rationalizable");
    if (order) {
      for (const auto& [menu, choice] : data.records()) {
        outcome.expect(choose(*order, Menu(u, menu)) == choice,
                       "oracle order disagrees with a record");
      }
    }
    ++preferences;
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  outcome.expect(preferences == 24, "expected all 24 preferences on four alternatives");

  ChoiceDataset cycle = cycle_dataset(numbered(3));
  outcome.expect(!representation::rationalizability_oracle(cycle).has_value(),
                 "cyclic data must not be rationalizable");
  auto report = representation::check_warp(cycle);
  outcome.expect(!report.satisfied, "cyclic data must violate WARP");
  outcome.expect(!report.violations.empty(), "a WARP violation must be reported");
}

void criterion10_generate_and_audit(Outcome& outcome) {
  std::size_t gap_reports = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    cli::detail_cli::GenerateOptions options;
    options.kind = "io-choice-dataset";
    options.size = 1 + static_cast<std::size_t>(seed % 6);
    options.seed = seed;
    cli::Json artifact = cli::detail_cli::generate_artifact(options);
    ChoiceDataset dataset = io::dataset_from_json(artifact);
    auto report = representation::check_warp_io(dataset);
    outcome.expect(report.satisfied && report.violations.empty(),
                   "io-choice-dataset with seed " + std::to_string(seed) +
                       " violated WARP-IO");
    gap_reports += report.coverage_gaps.size();
    if (!outcome.pass) return;
  }
  // full-domain generated data leaves nothing unrecorded
  outcome.expect(gap_reports == 0, "full-domain datasets should have no coverage gaps");
}

void criterion11_witness_replay(Outcome& outcome) {
  std::size_t witnesses = 0;
  auto replayed = [&](bool ok) {
    ++witnesses;
    outcome.expect(ok, "a witness failed to replay");
  };

  {  // Sen's alpha
    Universe u = numbered(2);
    Filter f = Filter::from_table(u, {0, 0, 2, 1});
    auto report = axioms::check_sens_alpha(f);
    replayed(!report.holds && axioms::replay_witness(f, report));
  }
  {  // Sen's beta, both variants
    Universe u2 = numbered(2);
    Filter fixed2 = build_filter(u2, FixedSetRule{Menu::of(u2, {"2"}).bits()});
    auto literal = axioms::check_sens_beta(fixed2, axioms::BetaVariant::Literal);
    replayed(!literal.holds && axioms::replay_witness(fixed2, literal));

    Universe u3 = numbered(3);
    std::vector<MenuBits> table(8);
    for (MenuBits m = 0; m < 8; ++m) table[m] = m;
    table[0b111] = 0b110;
    Filter drops_one = Filter::from_table(u3, table);
    auto classical = axioms::check_sens_beta(drops_one, axioms::BetaVariant::Classical);
    replayed(!classical.holds && axioms::replay_witness(drops_one, classical));
  }
  {  // Condition tau
    Universe u = numbered(2);
    Filter top1 = build_filter(u, TopKRule{{1, 0}, 1});
    auto report = axioms::check_condition_tau(top1);
    replayed(!report.holds && axioms::replay_witness(top1, report));
  }
  {  // IO
    Universe u = numbered(2);
    Filter prefix = build_filter(u, SatisficingPrefixRule{{0, 1}, 1});
    auto report = axioms::check_io(prefix);
    replayed(!report.holds && axioms::replay_witness(prefix, report));
  }
  {  // DIO
    Universe u = numbered(3);
    OrderedFilter keep2(u, OrderedKeepFirstKRule{2});
    auto report = axioms::check_dio(keep2, Menu::full(u));
    replayed(!report.holds && axioms::replay_witness(keep2, report));
  }
  {  // Constant Number
    Universe u = numbered(2);
    Filter id = Filter::identity(u);
    auto report = axioms::check_constant_number(id, 1);
    replayed(!report.holds && axioms::replay_witness(id, report));
  }
  {  // two-filter and n-filter commutativity
    Universe u = numbered(2);
    std::vector<Filter> pair{build_filter(u, TopKRule{{0, 1}, 1}),
                             build_filter(u, TopKRule{{1, 0}, 1})};
    auto two = sequential::check_commutative2(pair[0], pair[1]);
    replayed(!two.commutative && sequential::replay_witness(pair, two));
    std::vector<Filter> triple{pair[0], pair[1], Filter::identity(u)};
    auto many = sequential::check_commutative_n(triple);
    replayed(!many.commutative && sequential::replay_witness(triple, many));
  }
  {  // theorem 2 only-if candidates re-validate
    auto probe =
        sequential::verify_theorem2(numbered(2), sequential::Theorem2Direction::OnlyIf);
    Universe u = numbered(2);
    for (const auto& candidate : probe.candidates) {
      Filter f1 = Filter::from_table(u, candidate.table1);
      Filter f2 = Filter::from_table(u, candidate.table2);
      auto result = sequential::check_commutative2(f1, f2);
      replayed(result.commutative && !(result.io_status[0] && result.io_status[1]));
    }
  }
  {  // representation refusal carries the IO witness
    Universe u = numbered(2);
    Filter prefix = build_filter(u, SatisficingPrefixRule{{0, 1}, 1});
    try {
      representation::construct_threshold_representation(prefix);
      replayed(false);
    } catch (const representation::RepresentationError& e) {
      replayed(axioms::replay_witness(prefix, e.io_report));
    }
  }
  {  // WARP reversal on the cyclic dataset
    ChoiceDataset cycle = cycle_dataset(numbered(3));
    auto report = representation::check_warp(cycle);
    for (const auto& violation : report.violations) {
      replayed(representation::replay_violation(cycle, violation));
    }
  }
  {  // WARP-CO violation on four alternatives
    Universe u = numbered(4);
    ChoiceDataset data(u);
    data.record(Menu::of(u, {"1", "2"}), u.index_of("2"));
    data.record(Menu::of(u, {"1", "2", "3"}), u.index_of("1"));
    data.record(Menu::of(u, {"1", "2", "3", "4"}), u.index_of("2"));
    auto report = representation::check_warp_co(data);
    replayed(!report.satisfied);
    for (const auto& violation : report.violations) {
      replayed(representation::replay_violation(data, violation));
    }
  }
  {  // WARP-IO violations, both parts
    Universe p2(std::vector<std::string>{"a", "b"});
    ChoiceDataset part2(p2);
    part2.record(Menu::of(p2, {"b"}), std::nullopt);
    part2.record(Menu::of(p2, {"a", "b"}), p2.index_of("b"));
    auto part2_report = representation::check_warp_io(part2);
    replayed(!part2_report.satisfied);
    for (const auto& violation : part2_report.violations) {
      replayed(representation::replay_violation(part2, violation));
    }

    Universe p1(std::vector<std::string>{"a", "b", "c"});
    ChoiceDataset part1(p1);
    part1.record(Menu::of(p1, {"a", "b", "c"}), p1.index_of("a"));
    part1.record(Menu::of(p1, {"a", "b"}), p1.index_of("a"));
    part1.record(Menu::of(p1, {"a", "c"}), p1.index_of("c"));
    part1.record(Menu::of(p1, {"a"}), p1.index_of("a"));
    part1.record(Menu::of(p1, {"b"}), p1.index_of("b"));
    part1.record(Menu::of(p1, {"c"}), p1.index_of("c"));
    auto part1_report = representation::check_warp_io(part1);
    replayed(!part1_report.satisfied);
    for (const auto& violation : part1_report.violations) {
      replayed(representation::replay_violation(part1, violation));
    }
  }
  {  // choice-membership audit
    Universe u = numbered(3);
    Filter f = build_filter(u, FixedSetRule{Menu::of(u, {"2", "3"}).bits()});
    ChoiceDataset data(u);
    data.record(Menu::full(u), u.index_of("1"));
    auto violations = check_choice_membership(data, f);
    replayed(violations.size() == 1 && replay_violation(data, f, violations[0]));
  }
  outcome.expect(witnesses >= 20, "expected a substantial battery of replayed witnesses");
}

void criterion12_deterministic_reports(Outcome& outcome) {
  struct Case {
    std::string name;
    std::vector<std::string> args;
  };
  std::vector<Case> cases{
      {"verify-sampled", {"verify", "--theorem", "1", "--size", "4", "--samples", "200",
                          "--seed", "11", "--format", "machine"}},
      {"generate-io-dataset",
       {"generate", "--kind", "io-choice-dataset", "--size", "5", "--seed", "13"}},
      {"audit-warp", {"audit", "--property", "warp", "--format", "machine"}},
  };
  // the audit case needs an input file
  std::string dataset_path = scratch_path("determinism_dataset.json");
  if (run_cli({"generate", "--kind", "rational-choice-dataset", "--size", "4", "--seed", "3",
               "--out", dataset_path}) != 0) {
    outcome.expect(false, "failed to generate the audit input");
    return;
  }
  cases[2].args.push_back("--in");
  cases[2].args.push_back(dataset_path);

  for (const auto& test_case : cases) {
    std::string first = scratch_path(test_case.name + "_a.json");
    std::string second = scratch_path(test_case.name + "_b.json");
    for (const auto& path : {first, second}) {
      std::vector<std::string> args = test_case.args;
      args.push_back("--out");
      args.push_back(path);
      run_cli(args);
    }
    outcome.expect(slurp(first) == slurp(second),
                   test_case.name + ": repeated runs differ byte for byte");
    outcome.expect(!slurp(first).empty(), test_case.name + ": empty report");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string description;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "theorem 1 exhaustive: 4096 filters on |X|=3, IO <=> (alpha and tau)", 5.0,
       criterion1_theorem1_exhaustive},
      {2, "theorem 2 if-direction: all 64 IO pairs on |X|=3 commute", 1.0,
       criterion2_theorem2_if},
      {3, "theorem 2 only-if probe: 256 pairs on |X|=2, candidates reported", 5.0,
       criterion3_theorem2_only_if_probe},
      {4, "theorem 3: all 512 IO triples on |X|=3 commute and collapse", 10.0,
       criterion4_theorem3_triples},
      {5, "theorem 6 roundtrip: 16 IO filters on |X|=4 exact; 1000 induced filters IO", 5.0,
       criterion5_theorem6_roundtrip},
      {6, "theorem 4: costless consideration attains the full menu's best", 1.0,
       criterion6_theorem4_full_consideration},
      {7, "theorem 5: worthless consideration minimizes cardinality", 1.0,
       criterion7_theorem5_cost_minimization},
      {8, "remark 1: convex cost produces a superset-dominated reversal", 1.0,
       criterion8_remark1_flexibility_reversal},
      {9, "WARP <=> rationalizability on 24 preferences; cycle rejected", 5.0,
       criterion9_warp_vs_rationalizability},
      {10, "generate-and-audit: 200 seeded io-choice-datasets pass WARP-IO", 30.0,
       criterion10_generate_and_audit},
      {11, "witness replay: every emitted witness re-validates", 30.0,
       criterion11_witness_replay},
      {12, "determinism: same seed gives byte-identical machine reports", 30.0,
       criterion12_deterministic_reports},
  };

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(outcome);
    } catch (const std::exception& e) {
      outcome.expect(false, std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.expect(elapsed < criterion.limit_seconds,
                   "time limit exceeded: " + std::to_string(elapsed) + "s of " +
                       std::to_string(criterion.limit_seconds) + "s");
    std::printf("criterion %2d: %s (%.3fs) - %s\n", criterion.id,
                outcome.pass ? "PASS" : "FAIL", elapsed, criterion.description.c_str());
    for (const auto& failure : outcome.failures) {
      std::printf("              %s\n", failure.c_str());
    }
    all_pass = all_pass && outcome.pass;
  }
  std::printf("acceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
