#include "consideration/sequential.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace consideration;
using namespace consideration::sequential;

TEST_SUITE_BEGIN("sequential");

TEST_CASE("compose2") {
  SUBCASE("two fixed-set filters compose to the intersection, menu by menu") {
    Universe u = gen::numbered_universe(5);
    Filter f1 = build_filter(u, FixedSetRule{Menu::of(u, {"1", "2", "3"}).bits()});
    Filter f2 = build_filter(u, FixedSetRule{Menu::of(u, {"2", "3", "4"}).bits()});
    Filter composed = compose2(f1, f2);
    oracle::NameSet y{"2", "3"};
    for (const auto& menu_names : oracle::all_menus(u.alternatives())) {
      Menu menu = Menu::of(u, std::vector<std::string>(menu_names.begin(), menu_names.end()));
      CHECK(oracle::names_of(composed.apply(menu)) == oracle::intersect(menu_names, y));
    }
  }
  SUBCASE("identity is a two-sided unit") {
    Universe u = gen::numbered_universe(4);
    Filter id = Filter::identity(u);
    gen::Rng rng(13);
    for (int i = 0; i < 10; ++i) {
      Filter f = gen::random_table_filter(u, rng);
      CHECK(compose2(id, f).same_table(f));
      CHECK(compose2(f, id).same_table(f));
    }
  }
  SUBCASE("top-1 then a disjoint fixed set yields the empty set") {
    Universe u = gen::numbered_universe(2);
    Filter top1 = build_filter(u, TopKRule{{1, 0}, 1});  // 2 > 1
    Filter keep1 = build_filter(u, FixedSetRule{Menu::of(u, {"1"}).bits()});
    CHECK(compose2(top1, keep1).apply(Menu::full(u)).is_empty());
  }
  SUBCASE("universe mismatch is rejected") {
    Filter a = Filter::identity(gen::numbered_universe(2));
    Filter b = Filter::identity(gen::numbered_universe(3));
    CHECK_THROWS_AS(compose2(a, b), DomainMismatchError);
  }
}

TEST_CASE("compose_n") {
  Universe u = gen::numbered_universe(4);

  SUBCASE("fold of three fixed sets is the triple intersection") {
    MenuBits y1 = 0b0111, y2 = 0b1110, y3 = 0b0110;
    std::vector<Filter> seq{build_filter(u, FixedSetRule{y1}),
                            build_filter(u, FixedSetRule{y2}),
                            build_filter(u, FixedSetRule{y3})};
    Filter composed = compose_n(seq);
    for (MenuBits m = 0; m < u.menu_count(); ++m) {
      CHECK(composed.table_at(m) == (m & y1 & y2 & y3));
    }
  }
  SUBCASE("singleton sequence folds to itself") {
    gen::Rng rng(1);
    Filter f = gen::random_table_filter(u, rng);
    std::vector<Filter> seq{f};
    CHECK(compose_n(seq).same_table(f));
  }
  SUBCASE("the always-empty filter absorbs any sequence") {
    gen::Rng rng(2);
    std::vector<Filter> seq{gen::random_table_filter(u, rng), Filter::constant_empty(u),
                            gen::random_table_filter(u, rng)};
    Filter composed = compose_n(seq);
    for (MenuBits m = 0; m < u.menu_count(); ++m) CHECK(composed.table_at(m) == 0);
  }
  SUBCASE("empty sequence is rejected") {
    CHECK_THROWS_AS(compose_n(std::vector<Filter>{}), ValidationError);
  }
  SUBCASE("the cascade is contractive: cardinality weakly decreases per step") {
    gen::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Filter> seq;
      for (int i = 0; i < 1 + trial % 4; ++i) {
        seq.push_back(gen::random_table_filter(u, rng));
      }
      for (MenuBits m = 0; m < u.menu_count(); ++m) {
        MenuBits current = m;
        std::size_t previous = consideration::detail::cardinality(m);
        for (const Filter& f : seq) {
          current = f.table_at(current);
          std::size_t card = consideration::detail::cardinality(current);
          CHECK(card <= previous);
          previous = card;
        }
      }
    }
  }
}

TEST_CASE("two-filter commutativity") {
  SUBCASE("fixed-set filters commute") {
    Universe u = gen::numbered_universe(4);
    gen::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
      Filter f1 = build_filter(u, FixedSetRule{static_cast<MenuBits>(rng()) & u.full_bits()});
      Filter f2 = build_filter(u, FixedSetRule{static_cast<MenuBits>(rng()) & u.full_bits()});
      auto report = check_commutative2(f1, f2);
      CHECK(report.commutative);
      CHECK(report.io_status == std::vector<bool>{true, true});
    }
  }
  SUBCASE("opposing top-1 filters do not commute; the witness replays") {
    Universe u = gen::numbered_universe(2);
    Filter f1 = build_filter(u, TopKRule{{0, 1}, 1});  // 1 > 2
    Filter f2 = build_filter(u, TopKRule{{1, 0}, 1});  // 2 > 1
    auto report = check_commutative2(f1, f2);
    REQUIRE(!report.commutative);
    const auto& w = *report.witness;
    CHECK(w.menu == 0b11);
    CHECK(w.out_a == 0b01);  // f1 first keeps 1
    CHECK(w.out_b == 0b10);  // f2 first keeps 2
    std::vector<Filter> pair{f1, f2};
    CHECK(replay_witness(pair, report));
  }
  SUBCASE("every filter commutes with itself") {
    Universe u = gen::numbered_universe(3);
    gen::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      Filter f = gen::random_table_filter(u, rng);
      CHECK(check_commutative2(f, f).commutative);
    }
  }
  SUBCASE("any pair agrees on the empty menu") {
    Universe u = gen::numbered_universe(3);
    gen::Rng rng(6);
    for (int i = 0; i < 20; ++i) {
      Filter f1 = gen::random_table_filter(u, rng);
      Filter f2 = gen::random_table_filter(u, rng);
      CHECK(compose2(f1, f2).table_at(0) == 0);
      CHECK(compose2(f2, f1).table_at(0) == 0);
    }
  }
}

TEST_CASE("n-filter commutativity") {
  SUBCASE("five fixed-set filters commute across all 120 orderings") {
    Universe u = gen::numbered_universe(3);
    std::vector<Filter> seq;
    for (MenuBits y : {0b111u, 0b011u, 0b110u, 0b101u, 0b111u}) {
      seq.push_back(build_filter(u, FixedSetRule{y}));
    }
    CHECK(check_commutative_n(seq).commutative);
  }
  SUBCASE("a single filter is trivially commutative") {
    Universe u = gen::numbered_universe(3);
    gen::Rng rng(7);
    std::vector<Filter> seq{gen::random_table_filter(u, rng)};
    CHECK(check_commutative_n(seq).commutative);
  }
  SUBCASE("the two-filter counterexample is inherited by longer sequences") {
    Universe u = gen::numbered_universe(2);
    std::vector<Filter> seq{build_filter(u, TopKRule{{0, 1}, 1}),
                            build_filter(u, TopKRule{{1, 0}, 1}), Filter::identity(u)};
    auto report = check_commutative_n(seq);
    REQUIRE(!report.commutative);
    CHECK(report.io_status == std::vector<bool>{false, false, true});
    CHECK(replay_witness(seq, report));
  }
  SUBCASE("the permutation cap is enforced") {
    Universe u = gen::numbered_universe(2);
    std::vector<Filter> seq(7, Filter::identity(u));
    CHECK_THROWS_AS(check_commutative_n(seq), CapacityError);
    CHECK(check_commutative_n(seq, 7).commutative);
  }
}

TEST_CASE("theorem: two IO filters always commute") {
  SUBCASE("exhaustive over the 64 ordered IO pairs at |X| = 3") {
    auto report = verify_theorem2(gen::numbered_universe(3), Theorem2Direction::If);
    CHECK(report.pairs_checked == 64);
    CHECK(report.if_direction_holds());
  }
  SUBCASE("sampled pairs beyond the exhaustive cap") {
    auto report =
        verify_theorem2(gen::numbered_universe(5), Theorem2Direction::If, Sampled{500, 11});
    CHECK(report.pairs_checked == 500);
    CHECK(report.if_direction_holds());
  }
  SUBCASE("composition of IO filters is IO, with Y intersected") {
    Universe u = gen::numbered_universe(4);
    for (MenuBits y1 = 0; y1 <= u.full_bits(); ++y1) {
      for (MenuBits y2 = 0; y2 <= u.full_bits(); ++y2) {
        Filter composed = compose2(build_filter(u, FixedSetRule{y1}),
                                   build_filter(u, FixedSetRule{y2}));
        CHECK(axioms::check_io(composed).holds);
        CHECK(composed.table_at(u.full_bits()) == (y1 & y2));
        if (y2 == u.full_bits()) break;
      }
      if (y1 == u.full_bits()) break;
    }
  }
}

TEST_CASE("theorem probe: commutativity without joint IO exists") {
  Universe u = gen::numbered_universe(2);
  auto report = verify_theorem2(u, Theorem2Direction::OnlyIf);
  CHECK(report.pairs_checked == 256);
  REQUIRE(!report.candidates.empty());

  // the satisficing-prefix filter paired with identity commutes yet fails IO
  Filter prefix = build_filter(u, SatisficingPrefixRule{{0, 1}, 1});
  Filter id = Filter::identity(u);
  bool found_identity_pairing = false;
  bool found_self_pairing = false;
  for (const auto& candidate : report.candidates) {
    if (candidate.table1 == prefix.table() && candidate.table2 == id.table()) {
      found_identity_pairing = true;
      CHECK(!candidate.io1);
      CHECK(candidate.io2);
    }
    if (candidate.table1 == prefix.table() && candidate.table2 == prefix.table()) {
      found_self_pairing = true;
    }
  }
  CHECK(found_identity_pairing);
  CHECK(found_self_pairing);
  // every candidate replays: commutative on all menus, not both IO
  for (const auto& candidate : report.candidates) {
    Filter f1 = Filter::from_table(u, candidate.table1);
    Filter f2 = Filter::from_table(u, candidate.table2);
    auto result = check_commutative2(f1, f2);
    CHECK(result.commutative);
    CHECK(!(result.io_status[0] && result.io_status[1]));
  }
  CHECK_THROWS_AS(verify_theorem2(gen::numbered_universe(3), Theorem2Direction::OnlyIf),
                  CapacityError);
}

TEST_CASE("theorem: n IO filters always commute and collapse to one filter") {
  SUBCASE("exhaustive triples at |X| = 3") {
    auto report = verify_theorem3(gen::numbered_universe(3), 3, Exhaustive{});
    CHECK(report.tuples_checked == 512);
    CHECK(report.holds());
  }
  SUBCASE("the degenerate n = 2 case agrees with the two-filter theorem") {
    auto pairs = verify_theorem3(gen::numbered_universe(3), 2, Exhaustive{});
    CHECK(pairs.tuples_checked == 64);
    CHECK(pairs.holds());
    CHECK(verify_theorem2(gen::numbered_universe(3), Theorem2Direction::If)
              .if_direction_holds());
  }
  SUBCASE("sampled four-tuples on six alternatives") {
    auto report = verify_theorem3(gen::numbered_universe(6), 4, Sampled{1000, 21});
    CHECK(report.tuples_checked == 1000);
    CHECK(report.holds());
  }
  SUBCASE("caps and validation") {
    CHECK_THROWS_AS(verify_theorem3(gen::numbered_universe(2), 7, Exhaustive{}), CapacityError);
    CHECK_THROWS_AS(verify_theorem3(gen::numbered_universe(2), 0, Exhaustive{}),
                    ValidationError);
  }
}

TEST_SUITE_END();
