#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "consideration/cli_common.hpp"

// The generate command: reproducible input files from a seed. Random draws
// use integer arithmetic on a fixed-seed engine only, so the same seed gives
// byte-identical files everywhere. Generated datasets record their
// generating model in a provenance field.

namespace consideration::cli {
namespace detail_cli {

struct GenerateOptions {
  CommonOptions common;
  std::string kind;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string rule;
  std::string members;
  std::string scores;
  double k_star = 1.0;
  std::string order;
  std::size_t k = 0;
};

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t begin = token.find_first_not_of(" \t");
    std::size_t end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) throw ValidationError("empty item in comma-separated list");
    out.push_back(token.substr(begin, end - begin + 1));
  }
  return out;
}

inline std::vector<AltIndex> permutation_from_rng(std::size_t n, std::mt19937_64& rng) {
  std::vector<AltIndex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<AltIndex>(i);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

inline Universe generate_universe(const GenerateOptions& options) {
  if (options.size > 0) return numbered_universe(options.size, options.common.universe_cap);
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (inputs.universe) return *inputs.universe;
  throw ValidationError("generate needs --size K or a universe input file");
}

inline Json generate_artifact(const GenerateOptions& options) {
  Universe u = generate_universe(options);
  std::mt19937_64 rng(options.seed);

  if (options.kind == "random-filter-table") {
    std::vector<MenuBits> table(u.menu_count());
    for (MenuBits menu = 0; menu < table.size(); ++menu) {
      table[menu] = static_cast<MenuBits>(rng()) & menu;
    }
    return io::filter_to_json(Filter::from_table(u, std::move(table)));
  }

  if (options.kind == "rule-filter") {
    if (options.rule.empty()) throw ValidationError("generate --kind rule-filter needs --rule");
    FilterRule rule;
    if (options.rule == "fixed-set") {
      MenuBits members = 0;
      for (const auto& name : split_csv(options.members)) {
        members |= MenuBits{1} << u.require_index(name);
      }
      rule = FixedSetRule{members};
    } else if (options.rule == "threshold") {
      std::vector<double> scores;
      for (const auto& item : split_csv(options.scores)) {
        try {
          scores.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ValidationError("--scores: \"" + item + "\" is not a number");
        }
      }
      rule = ThresholdRule{std::move(scores), options.k_star};
    } else {
      std::vector<AltIndex> order;
      for (const auto& name : split_csv(options.order)) {
        order.push_back(u.require_index(name));
      }
      if (options.rule == "top-k") {
        rule = TopKRule{std::move(order), options.k};
      } else {
        rule = SatisficingPrefixRule{std::move(order), options.k};
      }
    }
    return io::filter_to_json(build_filter(u, rule));
  }

  if (options.kind == "rational-choice-dataset") {
    Preference preference(u, permutation_from_rng(u.size(), rng));
    ChoiceDataset dataset(u);
    for (MenuBits m = 1; m < u.menu_count(); ++m) {
      Menu menu(u, m);
      dataset.record(menu, choose(preference, menu));
    }
    Json order = Json::array();
    for (AltIndex i : preference.ranking()) order.push_back(u.name(i));
    return io::dataset_to_json(dataset, Json{{"generator", "rational-choice-dataset"},
                                             {"seed", options.seed},
                                             {"preference", order}});
  }

  if (options.kind == "io-choice-dataset") {
    std::vector<double> scores(u.size());
    for (auto& s : scores) s = static_cast<double>(rng() % 8);
    double cutoff = static_cast<double>(rng() % 8);
    representation::ThresholdRepresentation rep(u, scores, cutoff);
    std::vector<double> values(u.size());
    for (auto& v : values) v = static_cast<double>(rng() % 32);
    representation::AggregateUtility agg(u, values);
    ChoiceDataset dataset(u);
    for (MenuBits m = 1; m < u.menu_count(); ++m) {
      Menu menu(u, m);
      dataset.record(menu, representation::threshold_choice(rep, agg, menu));
    }
    Json u1 = Json::object();
    Json aggregate = Json::object();
    for (AltIndex i = 0; i < u.size(); ++i) {
      u1[u.name(i)] = scores[i];
      aggregate[u.name(i)] = values[i];
    }
    return io::dataset_to_json(dataset, Json{{"generator", "io-choice-dataset"},
                                             {"seed", options.seed},
                                             {"u1", u1},
                                             {"k_star", cutoff},
                                             {"aggregate", aggregate}});
  }

  throw ValidationError("unknown generate kind \"" + options.kind + "\"");
}

inline int run_generate(const GenerateOptions& options, std::ostream& out) {
  Json artifact = generate_artifact(options);
  if (!options.common.out_path.empty()) {
    io::write_text_file(options.common.out_path, io::render(artifact));
    out << "wrote " << options.common.out_path << "\n";
  } else {
    out << io::render(artifact);
  }
  return 0;
}

}  // namespace detail_cli
}  // namespace consideration::cli
