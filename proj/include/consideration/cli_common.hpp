#pragma once

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "consideration/attention.hpp"
#include "consideration/axioms.hpp"
#include "consideration/core.hpp"
#include "consideration/json_io.hpp"
#include "consideration/representation.hpp"
#include "consideration/sequential.hpp"

// Shared plumbing for the command implementations: witness rendering with
// the defining clauses instantiated, input-file loading keyed by kind, and
// deterministic report emission.

namespace consideration::cli {

using io::Json;

namespace detail_cli {

inline Json menu_json(const Universe& u, MenuBits bits) { return io::menu_to_json(u, bits); }

inline Json alt_json(const Universe& u, std::optional<AltIndex> alt) {
  return alt ? Json(u.name(*alt)) : Json(nullptr);
}

inline Json table_json(const std::vector<MenuBits>& table) {
  Json out = Json::array();
  for (MenuBits menu = 0; menu < table.size(); ++menu) {
    out.push_back(Json::array({menu, table[menu]}));
  }
  return out;
}

inline Json property_witness_json(const Filter& filter, const axioms::PropertyReport& report) {
  const Universe& u = filter.universe();
  struct Writer {
    const Filter& filter;
    const Universe& u;
    Json operator()(const axioms::AlphaWitness& w) const {
      return Json{{"x", u.name(w.x)},
                  {"menu_a", menu_json(u, w.menu_a)},
                  {"menu_b", menu_json(u, w.menu_b)},
                  {"gamma_a", menu_json(u, filter.table_at(w.menu_a))},
                  {"gamma_b", menu_json(u, filter.table_at(w.menu_b))},
                  {"clause", "x in Gamma(B) and x in A, A subset of B, but x not in Gamma(A)"}};
    }
    Json operator()(const axioms::BetaWitness& w) const {
      return Json{{"x1", u.name(w.x1)},
                  {"x2", u.name(w.x2)},
                  {"menu_a", menu_json(u, w.menu_a)},
                  {"menu_b", menu_json(u, w.menu_b)},
                  {"gamma_a", menu_json(u, filter.table_at(w.menu_a))},
                  {"gamma_b", menu_json(u, filter.table_at(w.menu_b))},
                  {"clause", "x2 in Gamma(B) but x1 not in Gamma(B)"}};
    }
    Json operator()(const axioms::TauWitness& w) const {
      return Json{{"x", u.name(w.x)},
                  {"menu_a", menu_json(u, w.menu_a)},
                  {"menu_b", menu_json(u, w.menu_b)},
                  {"gamma_a", menu_json(u, filter.table_at(w.menu_a))},
                  {"gamma_b", menu_json(u, filter.table_at(w.menu_b))},
                  {"clause", "x in Gamma(A) and A subset of B, but x not in Gamma(B)"}};
    }
    Json operator()(const axioms::IoWitness& w) const {
      return Json{{"x", u.name(w.x)},
                  {"considered_in", menu_json(u, w.considered_in)},
                  {"dropped_from", menu_json(u, w.dropped_from)},
                  {"gamma_considered", menu_json(u, filter.table_at(w.considered_in))},
                  {"gamma_dropped", menu_json(u, filter.table_at(w.dropped_from))},
                  {"clause", "x is considered in one menu and dropped from another"}};
    }
    Json operator()(const axioms::DioWitness&) const { return Json(); }
    Json operator()(const axioms::CnWitness& w) const {
      return Json{{"menu", menu_json(u, w.menu)},
                  {"gamma", menu_json(u, filter.table_at(w.menu))},
                  {"cardinality", w.cardinality},
                  {"clause", "|A| >= n but |Gamma(A)| != n"}};
    }
  };
  return std::visit(Writer{filter, u}, *report.witness);
}

inline Json dio_witness_json(const Universe& u, const axioms::DioWitness& w) {
  auto names = [&](const std::vector<AltIndex>& seq) {
    Json arr = Json::array();
    for (AltIndex i : seq) arr.push_back(u.name(i));
    return arr;
  };
  return Json{{"ordering_a", names(w.ordering_a)},
              {"ordering_b", names(w.ordering_b)},
              {"gamma_a", menu_json(u, w.out_a)},
              {"gamma_b", menu_json(u, w.out_b)},
              {"clause", "two orderings of one menu give different consideration sets"}};
}

inline Json property_report_json(const Filter& filter, const axioms::PropertyReport& report) {
  Json j{{"property", std::string(axioms::to_string(report.property))},
         {"holds", report.holds}};
  if (report.cn_target) j["n"] = *report.cn_target;
  if (report.property == axioms::FilterProperty::Io && report.holds) {
    j["always_considered"] =
        menu_json(filter.universe(), filter.table_at(filter.universe().full_bits()));
  }
  j["witness"] = report.witness ? property_witness_json(filter, report) : Json(nullptr);
  return j;
}

inline Json commutativity_witness_json(const Universe& u,
                                       const sequential::CommutativityWitness& w) {
  return Json{{"order_a", w.order_a},
              {"order_b", w.order_b},
              {"menu", menu_json(u, w.menu)},
              {"gamma_order_a", menu_json(u, w.out_a)},
              {"gamma_order_b", menu_json(u, w.out_b)},
              {"clause", "the two application orders disagree on this menu"}};
}

inline Json warp_violation_json(const Universe& u,
                                const representation::WarpViolation& violation) {
  struct Writer {
    const Universe& u;
    Json operator()(const representation::ReversalViolation& v) const {
      return Json{{"type", "reversal"},
                  {"menu_s", menu_json(u, v.menu_s)},
                  {"choice_s", u.name(v.x)},
                  {"menu_t", menu_json(u, v.menu_t)},
                  {"choice_t", u.name(v.y)},
                  {"clause", "x chosen over y in S, y chosen over x in T"}};
    }
    Json operator()(const representation::CoViolation& v) const {
      Json blockers = Json::array();
      for (const auto& b : v.blockers) {
        blockers.push_back(Json{{"b_star", u.name(b.b_star)},
                                {"t", menu_json(u, b.t)},
                                {"choice_t", u.name(b.chosen_t)},
                                {"t_prime", menu_json(u, b.t_prime)}});
      }
      return Json{{"type", "choice-overload"},
                  {"s", menu_json(u, v.s)},
                  {"blockers", blockers},
                  {"clause", "no b* in S survives: each is abandoned in some T below a "
                             "recorded T' that chooses it"}};
    }
    Json operator()(const representation::IoPart1Violation& v) const {
      Json blockers = Json::array();
      for (const auto& b : v.blockers) {
        Json entry{{"b_star", u.name(b.b_star)}};
        if (b.choice_mismatch) {
          entry["kind"] = "choice-mismatch";
        } else {
          entry["kind"] = "biconditional";
          entry["t"] = menu_json(u, b.t);
          entry["choice_t"] = alt_json(u, b.chosen_t);
          entry["chosen_here"] = b.left;
          entry["pairwise_beats_all"] = b.right;
          entry["failing_x"] = alt_json(u, b.failing_x);
        }
        blockers.push_back(std::move(entry));
      }
      return Json{
          {"type", "warp-io-part-1"}, {"s", menu_json(u, v.s)}, {"blockers", blockers}};
    }
    Json operator()(const representation::IoPart2Violation& v) const {
      return Json{{"type", "warp-io-part-2"},
                  {"b", u.name(v.b)},
                  {"chosen_from", menu_json(u, v.chosen_from)},
                  {"clause", "b declined in its singleton menu yet chosen elsewhere"}};
    }
  };
  return std::visit(Writer{u}, violation);
}

inline Json warp_report_json(const Universe& u, const representation::WarpReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(warp_violation_json(u, v));
  Json gaps = Json::array();
  for (const auto& gap : report.coverage_gaps) {
    gaps.push_back(Json{{"clause", gap.clause},
                        {"needed_menu", menu_json(u, gap.needed_menu)},
                        {"context_s", menu_json(u, gap.context_s)},
                        {"b_star", alt_json(u, gap.b_star)},
                        {"x", alt_json(u, gap.x)}});
  }
  Json j{{"axiom", std::string(representation::to_string(report.axiom))},
         {"satisfied", report.satisfied},
         {"violations", violations},
         {"coverage_gaps", gaps},
         {"notes", report.notes}};
  if (report.rationalizing_preference) {
    Json order = Json::array();
    for (AltIndex i : report.rationalizing_preference->ranking()) order.push_back(u.name(i));
    j["rationalizing_preference"] = order;
  } else {
    j["rationalizing_preference"] = Json(nullptr);
  }
  return j;
}

// --------------------------------------------------------------- input files

struct Inputs {
  std::optional<Universe> universe;
  std::vector<Filter> filters;  // in command-line order
  std::optional<OrderedFilter> ordered_filter;
  std::optional<ChoiceDataset> dataset;
  std::optional<attention::FilterUtilityModel> model;
  std::optional<attention::FilterSpace> space;
};

inline Inputs load_inputs(const std::vector<std::string>& paths, std::size_t cap) {
  Inputs inputs;
  for (const auto& path : paths) {
    Json j = io::read_json_file(path);
    try {
      std::string kind = io::kind_of(j);
      if (kind == "universe") {
        inputs.universe = io::universe_file_from_json(j, cap);
      } else if (kind == "filter") {
        inputs.filters.push_back(io::filter_from_json(j, cap));
      } else if (kind == "ordered-filter") {
        inputs.ordered_filter = io::ordered_filter_from_json(j, cap);
      } else if (kind == "choice-dataset") {
        inputs.dataset = io::dataset_from_json(j, cap);
      } else if (kind == "utility-model") {
        inputs.model = io::model_from_json(j, cap);
      } else if (kind == "filter-space") {
        inputs.space = io::space_from_json(j, cap);
      } else {
        throw ValidationError("unsupported kind \"" + kind + "\"");
      }
    } catch (const Error& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return inputs;
}

inline Menu parse_menu_option(const Universe& universe, const std::string& text) {
  if (text.empty() || text == "{}") return Menu::empty(universe);
  MenuBits bits = 0;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    std::size_t begin = token.find_first_not_of(" \t");
    std::size_t end = token.find_last_not_of(" \t");
    if (begin == std::string::npos) throw ValidationError("--menu: empty alternative name");
    bits |= MenuBits{1} << universe.require_index(token.substr(begin, end - begin + 1));
  }
  return Menu(universe, bits);
}

inline Universe numbered_universe(std::size_t n, std::size_t cap) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Universe(std::move(names), cap);
}

// ------------------------------------------------------------- report output

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string out_path;
  std::string format = "human";
  std::size_t universe_cap = Universe::kDefaultCap;
};

struct ReportSink {
  std::string out_path;  // empty: print to the stream
  bool machine = false;
  std::ostream& out;

  int emit(const Json& report, int exit_code) const {
    Json full = report;
    full["exit_code"] = exit_code;
    if (!out_path.empty()) {
      io::write_text_file(out_path, machine ? io::render(full) : human_text(full));
      out << (exit_code == 0 ? "pass" : "fail") << " (report written to " << out_path << ")\n";
    } else {
      out << (machine ? io::render(full) : human_text(full));
    }
    return exit_code;
  }

  static std::string human_text(const Json& report) {
    std::ostringstream os;
    os << "command: " << report.value("command", std::string("?")) << "\n";
    os << "status: " << report.value("status", std::string("?")) << "\n";
    for (const auto& [key, value] : report.items()) {
      if (key == "command" || key == "status" || key == "schema_version" || key == "kind" ||
          key == "exit_code") {
        continue;
      }
      if (value.is_structured()) {
        os << key << ":\n";
        std::istringstream lines(value.dump(2));
        std::string line;
        while (std::getline(lines, line)) os << "  " << line << "\n";
      } else {
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
      }
    }
    return os.str();
  }
};

inline ReportSink sink_for(const CommonOptions& common, std::ostream& out) {
  return ReportSink{common.out_path, common.format == "machine", out};
}

inline Json report_skeleton(const std::string& command, bool pass) {
  return Json{{"schema_version", io::kSchemaVersion},
              {"kind", "report"},
              {"command", command},
              {"status", pass ? "pass" : "fail"}};
}

}  // namespace detail_cli
}  // namespace consideration::cli
