#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "consideration/attention.hpp"
#include "consideration/core.hpp"
#include "consideration/representation.hpp"

// JSON file formats. Every input file carries schema_version and a kind tag
// in {universe, filter, ordered-filter, utility-model, choice-dataset,
// filter-space}. Menus serialize as alternative lists sorted by canonical
// index; filter tables serialize extensionally as [menu encoding, subset
// encoding] pairs, ascending, with the generating rule kept alongside.

namespace consideration::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// -------------------------------------------------------------- serialization

inline Json universe_to_json(const Universe& universe) {
  return Json{{"alternatives", universe.alternatives()}};
}

inline Json menu_to_json(const Universe& universe, MenuBits bits) {
  Json names = Json::array();
  for (AltIndex i = 0; i < universe.size(); ++i) {
    if ((bits >> i) & 1u) names.push_back(universe.name(i));
  }
  return names;
}

inline Json rule_to_json(const Universe& universe, const FilterRule& rule) {
  struct Writer {
    const Universe& universe;
    Json operator()(const FixedSetRule& r) const {
      return Json{{"type", "fixed-set"}, {"members", menu_to_json(universe, r.members)}};
    }
    Json operator()(const ThresholdRule& r) const {
      Json scores = Json::object();
      for (AltIndex i = 0; i < universe.size(); ++i) scores[universe.name(i)] = r.scores[i];
      return Json{{"type", "threshold"}, {"scores", scores}, {"k_star", r.cutoff}};
    }
    Json operator()(const TopKRule& r) const {
      Json order = Json::array();
      for (AltIndex i : r.order) order.push_back(universe.name(i));
      return Json{{"type", "top-k-under-order"}, {"order", order}, {"k", r.k}};
    }
    Json operator()(const SatisficingPrefixRule& r) const {
      Json listing = Json::array();
      for (AltIndex i : r.listing) listing.push_back(universe.name(i));
      return Json{{"type", "satisficing-prefix"}, {"listing", listing}, {"k", r.k}};
    }
    Json operator()(const ExplicitTableRule&) const {
      return Json{{"type", "explicit-table"}};
    }
  };
  return std::visit(Writer{universe}, rule);
}

inline Json filter_body_to_json(const Filter& filter) {
  Json body = Json::object();
  Json table = Json::array();
  for (MenuBits menu = 0; menu < filter.table().size(); ++menu) {
    table.push_back(Json::array({menu, filter.table_at(menu)}));
  }
  body["table"] = std::move(table);
  if (!std::holds_alternative<ExplicitTableRule>(filter.rule())) {
    body["rule"] = rule_to_json(filter.universe(), filter.rule());
  }
  return body;
}

inline Json filter_to_json(const Filter& filter) {
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "filter"},
         {"universe", universe_to_json(filter.universe())}};
  j.update(filter_body_to_json(filter));
  return j;
}

inline Json universe_file_to_json(const Universe& universe) {
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "universe"},
              {"universe", universe_to_json(universe)}};
}

inline Json ordered_filter_to_json(const OrderedFilter& ofilter) {
  const Universe& universe = ofilter.universe();
  Json rule;
  struct Writer {
    const Universe& universe;
    Json operator()(const OrderedLiftRule& r) const {
      return Json{{"type", "lift"}, {"filter", filter_to_json(r.base)}};
    }
    Json operator()(const OrderedKeepFirstKRule& r) const {
      return Json{{"type", "keep-first-k"}, {"k", r.k}};
    }
    Json operator()(const OrderedExplicitRule& r) const {
      Json entries = Json::array();
      for (const auto& [sequence, considered] : r.entries) {
        Json seq = Json::array();
        for (AltIndex i : sequence) seq.push_back(universe.name(i));
        entries.push_back(
            Json{{"sequence", seq}, {"considered", menu_to_json(universe, considered)}});
      }
      return Json{{"type", "explicit"}, {"entries", entries}};
    }
  };
  rule = std::visit(Writer{universe}, ofilter.rule());
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "ordered-filter"},
              {"universe", universe_to_json(universe)},
              {"rule", rule}};
}

inline Json dataset_to_json(const ChoiceDataset& dataset, Json provenance = {}) {
  const Universe& universe = dataset.universe();
  Json records = Json::array();
  for (const auto& [menu, choice] : dataset.records()) {
    Json record{{"menu", menu_to_json(universe, menu)}};
    record["choice"] = choice ? Json(universe.name(*choice)) : Json(nullptr);
    records.push_back(std::move(record));
  }
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "choice-dataset"},
         {"universe", universe_to_json(universe)},
         {"records", std::move(records)}};
  if (!provenance.is_null() && !provenance.empty()) j["provenance"] = std::move(provenance);
  return j;
}

inline Json model_to_json(const attention::FilterUtilityModel& model) {
  const Universe& universe = model.universe();
  Json benefit = Json::object();
  for (AltIndex i = 0; i < universe.size(); ++i) {
    benefit[universe.name(i)] = model.benefit()[i];
  }
  Json preference = Json::array();
  for (AltIndex i : model.preference().ranking()) preference.push_back(universe.name(i));
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "utility-model"},
              {"universe", universe_to_json(universe)},
              {"benefit", std::move(benefit)},
              {"benefit_none", model.benefit_none()},
              {"cost", model.cost()},
              {"preference", std::move(preference)}};
}

inline Json space_to_json(const attention::FilterSpace& space) {
  Json filters = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json entry{{"label", space.labels()[i]}};
    entry.update(filter_body_to_json(space.filters()[i]));
    filters.push_back(std::move(entry));
  }
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "filter-space"},
              {"universe", universe_to_json(space.universe())},
              {"filters", std::move(filters)}};
}

// --------------------------------------------------------------------- parsing

inline std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("input is missing the top-level \"kind\" field");
  }
  return j.at("kind").get<std::string>();
}

namespace detail_io {

[[noreturn]] inline void fail(const std::string& context, const std::string& what) {
  throw ValidationError(context + ": " + what);
}

inline std::vector<std::string> string_list(const Json& j, const std::string& context) {
  if (!j.is_array()) fail(context, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) fail(context, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline MenuBits menu_bits(const Json& j, const Universe& universe, const std::string& context) {
  MenuBits bits = 0;
  for (const auto& name : string_list(j, context)) {
    auto index = universe.index_of(name);
    if (!index) fail(context, "unknown alternative \"" + name + "\"");
    bits |= MenuBits{1} << *index;
  }
  return bits;
}

inline std::vector<AltIndex> index_list(const Json& j, const Universe& universe,
                                        const std::string& context) {
  std::vector<AltIndex> out;
  for (const auto& name : string_list(j, context)) {
    auto index = universe.index_of(name);
    if (!index) fail(context, "unknown alternative \"" + name + "\"");
    out.push_back(*index);
  }
  return out;
}

inline double number(const Json& j, const std::string& context) {
  if (!j.is_number()) fail(context, "expected a number");
  return j.get<double>();
}

inline std::vector<double> scores_by_name(const Json& j, const Universe& universe,
                                          const std::string& context) {
  if (!j.is_object()) fail(context, "expected an object keyed by alternative");
  std::vector<double> out(universe.size(), 0.0);
  std::vector<bool> seen(universe.size(), false);
  for (const auto& [name, value] : j.items()) {
    auto index = universe.index_of(name);
    if (!index) fail(context, "unknown alternative \"" + name + "\"");
    out[*index] = number(value, context + "[" + name + "]");
    seen[*index] = true;
  }
  for (AltIndex i = 0; i < universe.size(); ++i) {
    if (!seen[i]) fail(context, "missing value for alternative \"" + universe.name(i) + "\"");
  }
  return out;
}

}  // namespace detail_io

inline Universe universe_from_json(const Json& j, std::size_t cap = Universe::kDefaultCap) {
  if (!j.is_object() || !j.contains("alternatives")) {
    detail_io::fail("universe", "expected an object with an \"alternatives\" array");
  }
  return Universe(detail_io::string_list(j.at("alternatives"), "universe.alternatives"), cap);
}

inline Universe universe_file_from_json(const Json& j,
                                        std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("universe file", "missing \"universe\"");
  return universe_from_json(j.at("universe"), cap);
}

inline FilterRule rule_from_json(const Json& j, const Universe& universe) {
  if (!j.is_object() || !j.contains("type")) {
    detail_io::fail("rule", "expected an object with a \"type\" field");
  }
  std::string type = j.at("type").get<std::string>();
  if (type == "fixed-set") {
    return FixedSetRule{detail_io::menu_bits(j.at("members"), universe, "rule.members")};
  }
  if (type == "threshold") {
    return ThresholdRule{detail_io::scores_by_name(j.at("scores"), universe, "rule.scores"),
                         detail_io::number(j.at("k_star"), "rule.k_star")};
  }
  if (type == "top-k-under-order") {
    return TopKRule{detail_io::index_list(j.at("order"), universe, "rule.order"),
                    j.at("k").get<std::size_t>()};
  }
  if (type == "satisficing-prefix") {
    return SatisficingPrefixRule{detail_io::index_list(j.at("listing"), universe, "rule.listing"),
                                 j.at("k").get<std::size_t>()};
  }
  if (type == "explicit-table") return ExplicitTableRule{};
  detail_io::fail("rule", "unknown rule type \"" + type + "\"");
}

/// Parses a filter body holding a table, a rule, or both. When both are
/// present the materialized rule must reproduce the table exactly.
inline Filter filter_from_body(const Json& j, const Universe& universe) {
  std::optional<Filter> from_rule;
  if (j.contains("rule")) {
    FilterRule rule = rule_from_json(j.at("rule"), universe);
    if (!std::holds_alternative<ExplicitTableRule>(rule)) {
      from_rule = build_filter(universe, rule);
    }
  }
  if (!j.contains("table")) {
    if (from_rule) return *std::move(from_rule);
    detail_io::fail("filter", "needs a \"table\", a generating \"rule\", or both");
  }
  const Json& table_json = j.at("table");
  if (!table_json.is_array()) detail_io::fail("filter.table", "expected an array of pairs");
  std::vector<MenuBits> table(universe.menu_count(), 0);
  std::vector<bool> seen(universe.menu_count(), false);
  for (const auto& pair : table_json) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
        !pair[1].is_number_unsigned()) {
      detail_io::fail("filter.table", "each entry must be [menu encoding, subset encoding]");
    }
    std::uint64_t menu = pair[0].get<std::uint64_t>();
    std::uint64_t subset = pair[1].get<std::uint64_t>();
    if (menu >= universe.menu_count()) {
      detail_io::fail("filter.table", "menu encoding " + std::to_string(menu) + " out of range");
    }
    if (seen[menu]) {
      detail_io::fail("filter.table", "duplicate entry for menu " + std::to_string(menu));
    }
    seen[menu] = true;
    table[menu] = static_cast<MenuBits>(subset);
  }
  for (MenuBits menu = 0; menu < universe.menu_count(); ++menu) {
    if (!seen[menu]) {
      detail_io::fail("filter.table", "missing entry for menu " + std::to_string(menu));
    }
  }
  Filter parsed = Filter::from_table(universe, std::move(table));
  if (from_rule) {
    if (!parsed.same_table(*from_rule)) {
      detail_io::fail("filter", "table disagrees with the declared rule");
    }
    return *std::move(from_rule);  // keep the rule as provenance
  }
  return parsed;
}

inline Filter filter_from_json(const Json& j, std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("filter", "missing \"universe\"");
  Universe universe = universe_from_json(j.at("universe"), cap);
  return filter_from_body(j, universe);
}

inline OrderedFilter ordered_filter_from_json(const Json& j,
                                              std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("ordered-filter", "missing \"universe\"");
  Universe universe = universe_from_json(j.at("universe"), cap);
  if (!j.contains("rule")) detail_io::fail("ordered-filter", "missing \"rule\"");
  const Json& rule = j.at("rule");
  std::string type = rule.at("type").get<std::string>();
  if (type == "lift") {
    Filter base = filter_from_json(rule.at("filter"), cap);
    require_same_universe(universe, base.universe(), "ordered-filter lift");
    return OrderedFilter(universe, OrderedLiftRule{std::move(base)});
  }
  if (type == "keep-first-k") {
    return OrderedFilter(universe, OrderedKeepFirstKRule{rule.at("k").get<std::size_t>()});
  }
  if (type == "explicit") {
    OrderedExplicitRule explicit_rule;
    for (const auto& entry : rule.at("entries")) {
      auto sequence =
          detail_io::index_list(entry.at("sequence"), universe, "ordered-filter.sequence");
      MenuBits considered =
          detail_io::menu_bits(entry.at("considered"), universe, "ordered-filter.considered");
      if (!explicit_rule.entries.emplace(std::move(sequence), considered).second) {
        detail_io::fail("ordered-filter", "duplicate sequence entry");
      }
    }
    return OrderedFilter(universe, std::move(explicit_rule));
  }
  detail_io::fail("ordered-filter", "unknown rule type \"" + type + "\"");
}

inline ChoiceDataset dataset_from_json(const Json& j,
                                       std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("choice-dataset", "missing \"universe\"");
  Universe universe = universe_from_json(j.at("universe"), cap);
  ChoiceDataset dataset(universe);
  if (!j.contains("records") || !j.at("records").is_array()) {
    detail_io::fail("choice-dataset", "missing \"records\" array");
  }
  for (const auto& record : j.at("records")) {
    Menu menu(universe, detail_io::menu_bits(record.at("menu"), universe, "record.menu"));
    std::optional<AltIndex> choice;
    if (record.contains("choice") && !record.at("choice").is_null()) {
      const auto& c = record.at("choice");
      if (!c.is_string()) detail_io::fail("record.choice", "expected a string or null");
      auto index = universe.index_of(c.get<std::string>());
      if (!index) {
        detail_io::fail("record.choice", "unknown alternative \"" + c.get<std::string>() + "\"");
      }
      choice = *index;
    }
    dataset.record(menu, choice);
  }
  return dataset;
}

inline attention::FilterUtilityModel model_from_json(const Json& j,
                                                     std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("utility-model", "missing \"universe\"");
  Universe universe = universe_from_json(j.at("universe"), cap);
  std::vector<double> benefit =
      detail_io::scores_by_name(j.at("benefit"), universe, "utility-model.benefit");
  double benefit_none = j.contains("benefit_none")
                            ? detail_io::number(j.at("benefit_none"), "benefit_none")
                            : 0.0;
  if (!j.contains("cost") || !j.at("cost").is_array()) {
    detail_io::fail("utility-model", "missing \"cost\" array");
  }
  std::vector<double> cost;
  for (const auto& c : j.at("cost")) cost.push_back(detail_io::number(c, "utility-model.cost"));
  Preference preference(
      universe, detail_io::index_list(j.at("preference"), universe, "utility-model.preference"));
  return attention::FilterUtilityModel(universe, std::move(benefit), benefit_none,
                                       std::move(cost), std::move(preference));
}

inline attention::FilterSpace space_from_json(const Json& j,
                                              std::size_t cap = Universe::kDefaultCap) {
  if (!j.contains("universe")) detail_io::fail("filter-space", "missing \"universe\"");
  Universe universe = universe_from_json(j.at("universe"), cap);
  if (!j.contains("filters") || !j.at("filters").is_array()) {
    detail_io::fail("filter-space", "missing \"filters\" array");
  }
  std::vector<Filter> filters;
  std::vector<std::string> labels;
  for (const auto& entry : j.at("filters")) {
    filters.push_back(filter_from_body(entry, universe));
    labels.push_back(entry.contains("label") ? entry.at("label").get<std::string>()
                                             : "f" + std::to_string(labels.size()));
  }
  return attention::FilterSpace(std::move(filters), std::move(labels));
}

// ----------------------------------------------------------------- file access

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
  if (!out) throw ValidationError("failed writing output file: " + path);
}

/// Canonical on-disk rendering: two-space indent plus a trailing newline.
inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace consideration::io
