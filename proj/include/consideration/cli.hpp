#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "consideration/cli_common.hpp"
#include "consideration/cli_generate.hpp"
#include "consideration/cli_verify.hpp"

// Batch front door. Commands: check, compose, commute, choose-filter,
// represent, audit, verify, generate. Inputs are JSON files tagged by kind;
// reports are human text or machine JSON. Exit codes: 0 the property holds
// or the task succeeded, 1 the property fails or counterexamples were found
// (with witnesses in the report), 2 input or validation error.

namespace consideration::cli {
namespace detail_cli {

struct CheckOptions {
  CommonOptions common;
  std::string property;
  std::size_t n = 0;
  std::size_t factorial_cap = 8;
  std::string menu_text;
  bool menu_given = false;
};

inline int run_check(const CheckOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  ReportSink sink = sink_for(options.common, out);
  const std::string& property = options.property;

  if (property == "dio") {
    if (!inputs.ordered_filter) {
      throw ValidationError("check --property dio needs an ordered-filter input");
    }
    if (!options.menu_given) throw ValidationError("check --property dio needs --menu");
    const OrderedFilter& ofilter = *inputs.ordered_filter;
    Menu menu = parse_menu_option(ofilter.universe(), options.menu_text);
    auto report = axioms::check_dio(ofilter, menu, options.factorial_cap);
    Json j = report_skeleton("check", report.holds);
    j["result"] =
        Json{{"property", "dio"},
             {"menu", menu_json(ofilter.universe(), menu.bits())},
             {"holds", report.holds},
             {"witness",
              report.witness
                  ? dio_witness_json(ofilter.universe(),
                                     std::get<axioms::DioWitness>(*report.witness))
                  : Json(nullptr)}};
    return sink.emit(j, report.holds ? 0 : 1);
  }

  if (property == "convex-cost") {
    if (!inputs.model) {
      throw ValidationError("check --property convex-cost needs a utility-model input");
    }
    auto report = attention::check_convex_cost(*inputs.model);
    Json j = report_skeleton("check", report.convex);
    j["result"] = Json{{"property", "convex-cost"},
                       {"convex", report.convex},
                       {"failing_k", report.failing_k ? Json(*report.failing_k) : Json(nullptr)},
                       {"reason", report.reason}};
    return sink.emit(j, report.convex ? 0 : 1);
  }

  if (property == "flexibility") {
    if (!inputs.space || !inputs.model) {
      throw ValidationError(
          "check --property flexibility needs filter-space and utility-model inputs");
    }
    if (!options.menu_given) throw ValidationError("check --property flexibility needs --menu");
    const Universe& u = inputs.space->universe();
    Menu menu = parse_menu_option(u, options.menu_text);
    auto report = attention::check_preference_for_flexibility(*inputs.space, *inputs.model, menu);
    Json reversals = Json::array();
    for (const auto& r : report.reversals) {
      reversals.push_back(Json{{"superset_filter", inputs.space->labels()[r.superset_index]},
                               {"subset_filter", inputs.space->labels()[r.subset_index]},
                               {"superset_consideration", menu_json(u, r.superset_set)},
                               {"subset_consideration", menu_json(u, r.subset_set)},
                               {"superset_utility", r.superset_utility},
                               {"subset_utility", r.subset_utility}});
    }
    Json j = report_skeleton("check", report.flexibility_holds());
    j["result"] = Json{{"property", "flexibility"},
                       {"menu", menu_json(u, report.menu)},
                       {"flexibility_holds", report.flexibility_holds()},
                       {"pairs_compared", report.pairs_compared},
                       {"reversals", reversals}};
    return sink.emit(j, report.flexibility_holds() ? 0 : 1);
  }

  if (inputs.filters.empty()) {
    throw ValidationError("check --property " + property + " needs a filter input");
  }
  const Filter& filter = inputs.filters.front();
  std::vector<axioms::PropertyReport> reports;
  if (property == "sens-alpha") {
    reports.push_back(axioms::check_sens_alpha(filter));
  } else if (property == "sens-beta") {
    reports.push_back(axioms::check_sens_beta(filter, axioms::BetaVariant::Literal));
    reports.push_back(axioms::check_sens_beta(filter, axioms::BetaVariant::Classical));
  } else if (property == "sens-beta-literal") {
    reports.push_back(axioms::check_sens_beta(filter, axioms::BetaVariant::Literal));
  } else if (property == "sens-beta-classical") {
    reports.push_back(axioms::check_sens_beta(filter, axioms::BetaVariant::Classical));
  } else if (property == "condition-tau") {
    reports.push_back(axioms::check_condition_tau(filter));
  } else if (property == "io") {
    reports.push_back(axioms::check_io(filter));
  } else if (property == "constant-number") {
    reports.push_back(axioms::check_constant_number(filter, options.n));
  } else {
    throw ValidationError("unknown property \"" + property + "\"");
  }
  bool all_hold = true;
  Json results = Json::array();
  for (const auto& report : reports) {
    all_hold = all_hold && report.holds;
    results.push_back(property_report_json(filter, report));
  }
  Json j = report_skeleton("check", all_hold);
  j["result"] = results.size() == 1 ? results[0] : Json{{"variants", results}};
  return sink.emit(j, all_hold ? 0 : 1);
}

struct ComposeOptions {
  CommonOptions common;
  std::string filter_out;
};

inline int run_compose(const ComposeOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (inputs.filters.empty()) throw ValidationError("compose needs at least one filter input");
  Filter composed = sequential::compose_n(inputs.filters);
  Json filter_json = io::filter_to_json(composed);
  if (!options.filter_out.empty()) {
    io::write_text_file(options.filter_out, io::render(filter_json));
  }
  Json j = report_skeleton("compose", true);
  j["result"] = Json{{"filters_composed", inputs.filters.size()},
                     {"filter_written",
                      options.filter_out.empty() ? Json(nullptr) : Json(options.filter_out)},
                     {"filter", options.filter_out.empty() ? filter_json : Json(nullptr)}};
  return sink_for(options.common, out).emit(j, 0);
}

struct CommuteOptions {
  CommonOptions common;
  std::size_t permutation_cap = 6;
};

inline int run_commute(const CommuteOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (inputs.filters.size() < 2) throw ValidationError("commute needs at least two filters");
  auto report = inputs.filters.size() == 2
                    ? sequential::check_commutative2(inputs.filters[0], inputs.filters[1])
                    : sequential::check_commutative_n(inputs.filters, options.permutation_cap);
  Json j = report_skeleton("commute", report.commutative);
  j["result"] = Json{
      {"filters", inputs.filters.size()},
      {"commutative", report.commutative},
      {"io_status", report.io_status},
      {"witness", report.witness ? commutativity_witness_json(
                                       inputs.filters.front().universe(), *report.witness)
                                 : Json(nullptr)}};
  return sink_for(options.common, out).emit(j, report.commutative ? 0 : 1);
}

struct ChooseFilterOptions {
  CommonOptions common;
  std::string menu_text;
  bool menu_given = false;
};

inline int run_choose_filter(const ChooseFilterOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (!inputs.space || !inputs.model) {
    throw ValidationError("choose-filter needs filter-space and utility-model inputs");
  }
  if (!options.menu_given) throw ValidationError("choose-filter needs --menu");
  const Universe& u = inputs.space->universe();
  Menu menu = parse_menu_option(u, options.menu_text);
  auto choice = attention::choose_filter(*inputs.model, *inputs.space, menu);
  Json diagnostics = Json::array();
  for (const auto& diag : choice.diagnostics) {
    diagnostics.push_back(Json{{"label", inputs.space->labels()[diag.index]},
                               {"utility", diag.utility},
                               {"consideration", menu_json(u, diag.consideration)},
                               {"eligible", diag.eligible}});
  }
  Json j = report_skeleton("choose-filter", true);
  j["result"] = Json{{"menu", menu_json(u, menu.bits())},
                     {"chosen_index", choice.chosen_index},
                     {"chosen_label", inputs.space->labels()[choice.chosen_index]},
                     {"mandate_vacuous", choice.mandate_vacuous},
                     {"diagnostics", diagnostics}};
  return sink_for(options.common, out).emit(j, 0);
}

struct RepresentOptions {
  CommonOptions common;
  std::string filter_out;
};

inline int run_represent(const RepresentOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (inputs.filters.empty()) throw ValidationError("represent needs a filter input");
  const Filter& filter = inputs.filters.front();
  const Universe& u = filter.universe();
  try {
    auto rep = representation::construct_threshold_representation(filter);
    Filter induced = representation::induced_filter(rep, u);
    Json filter_json = io::filter_to_json(induced);
    if (!options.filter_out.empty()) {
      io::write_text_file(options.filter_out, io::render(filter_json));
    }
    Json scores = Json::object();
    for (AltIndex i = 0; i < u.size(); ++i) scores[u.name(i)] = rep.scores()[i];
    Json j = report_skeleton("represent", true);
    j["result"] = Json{{"io", true},
                       {"u1", scores},
                       {"k_star", rep.k_star()},
                       {"roundtrip_exact", induced.same_table(filter)},
                       {"filter_written", options.filter_out.empty()
                                              ? Json(nullptr)
                                              : Json(options.filter_out)}};
    return sink_for(options.common, out).emit(j, 0);
  } catch (const representation::RepresentationError& e) {
    Json j = report_skeleton("represent", false);
    j["result"] = Json{{"io", false},
                       {"error", e.what()},
                       {"witness", property_witness_json(filter, e.io_report)}};
    return sink_for(options.common, out).emit(j, 1);
  }
}

struct AuditOptions {
  CommonOptions common;
  std::string axiom = "warp";
};

inline int run_audit(const AuditOptions& options, std::ostream& out) {
  Inputs inputs = load_inputs(options.common.inputs, options.common.universe_cap);
  if (!inputs.dataset) throw ValidationError("audit needs a choice-dataset input");
  representation::WarpAxiom axiom;
  if (options.axiom == "warp") {
    axiom = representation::WarpAxiom::Warp;
  } else if (options.axiom == "warp-co") {
    axiom = representation::WarpAxiom::WarpCo;
  } else if (options.axiom == "warp-io") {
    axiom = representation::WarpAxiom::WarpIo;
  } else {
    throw ValidationError("unknown audit property \"" + options.axiom + "\"");
  }
  auto report = representation::check_warp_axiom(*inputs.dataset, axiom);
  Json j = report_skeleton("audit", report.satisfied);
  j["result"] = warp_report_json(inputs.dataset->universe(), report);
  return sink_for(options.common, out).emit(j, report.satisfied ? 0 : 1);
}

}  // namespace detail_cli

/// Library entry point for the command line; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-model toolkit for consideration filters and choice data"};
  app.name("consideration");
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, detail_cli::CommonOptions& common) {
    sub->add_option("--in", common.inputs, "input JSON file (repeatable)");
    sub->add_option("--out", common.out_path, "write the report (or artifact) to this file");
    sub->add_option("--format", common.format, "report format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    sub->add_option("--universe-cap", common.universe_cap,
                    "maximum universe size accepted from inputs")
        ->capture_default_str();
  };

  detail_cli::CheckOptions check;
  CLI::App* check_cmd = app.add_subcommand("check", "check one filter property");
  add_common(check_cmd, check.common);
  check_cmd->add_option("--property", check.property, "property to check")
      ->required()
      ->check(CLI::IsMember({"sens-alpha", "sens-beta", "sens-beta-literal",
                             "sens-beta-classical", "condition-tau", "io", "dio",
                             "constant-number", "convex-cost", "flexibility"}));
  check_cmd->add_option("--n", check.n, "target cardinality for constant-number");
  check_cmd->add_option("--factorial-cap", check.factorial_cap,
                        "largest menu size for DIO ordering enumeration")
      ->capture_default_str();
  check_cmd->add_option("--menu", check.menu_text, "menu as comma-separated alternatives")
      ->each([&check](const std::string&) { check.menu_given = true; });

  detail_cli::ComposeOptions compose;
  CLI::App* compose_cmd =
      app.add_subcommand("compose", "compose filters left to right into one filter");
  add_common(compose_cmd, compose.common);
  compose_cmd->add_option("--filter-out", compose.filter_out,
                          "write the composed filter to this file");

  detail_cli::CommuteOptions commute;
  CLI::App* commute_cmd =
      app.add_subcommand("commute", "test whether filters commute under every ordering");
  add_common(commute_cmd, commute.common);
  commute_cmd->add_option("--permutation-cap", commute.permutation_cap,
                          "largest sequence length to permute")
      ->capture_default_str();

  detail_cli::ChooseFilterOptions choose_filter;
  CLI::App* choose_cmd =
      app.add_subcommand("choose-filter", "apply the filter choice rule to a menu");
  add_common(choose_cmd, choose_filter.common);
  choose_cmd->add_option("--menu", choose_filter.menu_text, "menu as comma-separated names")
      ->each([&choose_filter](const std::string&) { choose_filter.menu_given = true; });

  detail_cli::RepresentOptions represent;
  CLI::App* represent_cmd =
      app.add_subcommand("represent", "construct the threshold representation of an IO filter");
  add_common(represent_cmd, represent.common);
  represent_cmd->add_option("--filter-out", represent.filter_out,
                            "write the induced threshold filter to this file");

  detail_cli::AuditOptions audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "audit choice data against a WARP variant");
  add_common(audit_cmd, audit.common);
  audit_cmd->add_option("--property", audit.axiom, "warp, warp-co, or warp-io")
      ->check(CLI::IsMember({"warp", "warp-co", "warp-io"}))
      ->capture_default_str();

  detail_cli::VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run an executable theorem suite");
  add_common(verify_cmd, verify.common);
  verify_cmd->add_option("--theorem", verify.theorem, "theorem number 1..6")->required();
  verify_cmd->add_option("--direction", verify.direction, "theorem 2 direction: if | only-if")
      ->check(CLI::IsMember({"if", "only-if"}));
  verify_cmd->add_option("--n", verify.tuple_length, "tuple length for theorem 3")
      ->capture_default_str();
  verify_cmd->add_flag("--exhaustive", verify.exhaustive, "enumerate exhaustively");
  verify_cmd->add_option("--samples", verify.samples, "sample count for sampled modes");
  verify_cmd->add_option("--seed", verify.seed, "random seed")->capture_default_str();
  verify_cmd->add_option("--size", verify.size, "synthesize a universe of this size");
  verify_cmd->add_option("--permutation-cap", verify.permutation_cap,
                         "largest tuple length to permute")
      ->capture_default_str();

  detail_cli::GenerateOptions generate;
  CLI::App* generate_cmd = app.add_subcommand("generate", "write reproducible input files");
  add_common(generate_cmd, generate.common);
  generate_cmd->add_option("--kind", generate.kind, "artifact kind")
      ->required()
      ->check(CLI::IsMember({"random-filter-table", "rule-filter", "rational-choice-dataset",
                             "io-choice-dataset"}));
  generate_cmd->add_option("--size", generate.size, "synthesize a universe of this size");
  generate_cmd->add_option("--seed", generate.seed, "random seed")->capture_default_str();
  generate_cmd->add_option("--rule", generate.rule, "rule kind for rule-filter generation")
      ->check(CLI::IsMember({"fixed-set", "threshold", "top-k", "satisficing-prefix"}));
  generate_cmd->add_option("--members", generate.members, "fixed-set members, comma-separated");
  generate_cmd->add_option("--scores", generate.scores,
                           "threshold scores, comma-separated, in universe order");
  generate_cmd->add_option("--kstar", generate.k_star, "threshold cutoff");
  generate_cmd->add_option("--order", generate.order,
                           "permutation for top-k / satisficing-prefix, comma-separated");
  generate_cmd->add_option("--k", generate.k, "count for top-k / satisficing-prefix");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("consideration");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check_cmd->parsed()) return detail_cli::run_check(check, out);
    if (compose_cmd->parsed()) return detail_cli::run_compose(compose, out);
    if (commute_cmd->parsed()) return detail_cli::run_commute(commute, out);
    if (choose_cmd->parsed()) return detail_cli::run_choose_filter(choose_filter, out);
    if (represent_cmd->parsed()) return detail_cli::run_represent(represent, out);
    if (audit_cmd->parsed()) return detail_cli::run_audit(audit, out);
    if (verify_cmd->parsed()) return detail_cli::run_verify(verify, out);
    if (generate_cmd->parsed()) return detail_cli::run_generate(generate, out);
    err << "error: no command given\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace consideration::cli
