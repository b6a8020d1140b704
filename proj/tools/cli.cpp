#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "msc/axioms.hpp"
#include "msc/cycles.hpp"
#include "msc/io.hpp"
#include "msc/manipulate.hpp"
#include "msc/markov.hpp"
#include "msc/rationalize.hpp"

namespace msc::cli {

namespace {

using json = nlohmann::json;

/// Report numbers are rounded to 1e-12 so that documents stay byte-stable across platforms.
double stable(double v) {
  if (!std::isfinite(v)) return v;
  double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

json number_or_null(double v) { return std::isfinite(v) ? json(stable(v)) : json(nullptr); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) {
    while (!token.empty() && token.front() == ' ') token.erase(token.begin());
    while (!token.empty() && token.back() == ' ') token.pop_back();
    out.push_back(token);
  }
  return out;
}

json pair_json(const AltPair& p, const Universe& u) { return json::array({u.name(p.first), u.name(p.second)}); }

json menu_json(const Menu& m, const Universe& u) {
  json out = json::array();
  for (Index alt : m) out.push_back(u.name(alt));
  return out;
}

json distribution_json(const Distribution& rho, const Menu& menu, const Universe& u) {
  json out = json::object();
  for (std::size_t k = 0; k < menu.size(); ++k) out[u.name(menu[k])] = stable(rho[static_cast<Eigen::Index>(k)]);
  return out;
}

std::string distribution_text(const Distribution& rho, const Menu& menu, const Universe& u) {
  std::ostringstream out;
  out << std::setprecision(12);
  for (std::size_t k = 0; k < menu.size(); ++k) {
    out << (k ? "  " : "") << u.name(menu[k]) << "=" << stable(rho[static_cast<Eigen::Index>(k)]);
  }
  return out.str();
}

std::string pairs_text(const std::vector<AltPair>& pairs, const Universe& u) {
  std::string out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out += (k ? " " : "") + std::string("(") + u.name(pairs[k].first) + "," + u.name(pairs[k].second) + ")";
  }
  return out.empty() ? "-" : out;
}

/// Input and condition errors raised while running a command.
struct InputError : Error {
  using Error::Error;
};

ChoiceDataset load_valid_dataset(const std::string& path) {
  ChoiceDataset data = load_dataset(path);
  ValidationReport report = validate_dataset(data);
  if (!report.ok()) throw InputError(path + ": " + report.violations.front().message);
  return data;
}

Menu resolve_menu(const std::string& csv, const Universe& u) { return parse_menu(csv, u); }

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"text", "json"}));
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& path, const Common& c, std::ostream& out) {
  std::string text = read_text(path);
  if (detect_document(text, path) == DocumentKind::dataset) {
    ChoiceDataset data = parse_dataset(text, path);
    ValidationReport report = validate_dataset(data);
    if (c.json()) {
      json v = json::array();
      for (const auto& item : report.violations) {
        v.push_back({{"kind", item.kind},
                     {"menu", item.menu ? menu_json(*item.menu, data.universe()) : json(nullptr)},
                     {"message", item.message}});
      }
      out << json{{"command", "validate"}, {"document", "dataset"}, {"valid", report.ok()}, {"violations", v}}.dump(2)
          << "\n";
    } else {
      out << "dataset " << path << ": " << data.entries().size() << " menus, "
          << (report.ok() ? "valid" : "invalid") << "\n";
      for (const auto& item : report.violations) out << "  " << item.kind << ": " << item.message << "\n";
    }
    return report.ok() ? kSuccess : kConditionFails;
  }

  MscModel model = parse_model(text, path);
  AssumptionReport report = validate_model(model);
  const Universe& u = model.universe();
  if (c.json()) {
    json failures = json::array();
    for (const auto& f : report.failures) {
      failures.push_back({{"assumption", std::string(to_string(f.assumption))},
                          {"menu", menu_json(f.menu, u)},
                          {"pair", json::array({u.name(f.from), u.name(f.to)})},
                          {"detail", f.detail}});
    }
    json stochastic = json::array();
    for (const auto& item : report.stochastic) {
      stochastic.push_back({{"kind", item.kind}, {"menu", menu_json(*item.menu, u)}, {"message", item.message}});
    }
    json unchecked = json::array();
    for (const auto& [menu, pair] : report.ratio_unchecked) {
      unchecked.push_back({{"menu", menu_json(menu, u)}, {"pair", pair_json(pair, u)}});
    }
    out << json{{"command", "validate"},
                {"document", "model"},
                {"valid", report.ok()},
                {"prolonged_consideration", report.prolonged_consideration},
                {"binary_comparability", report.binary_comparability},
                {"transition_ratio_iia", report.transition_ratio_iia},
                {"failures", failures},
                {"stochastic", stochastic},
                {"ratio_unchecked", unchecked}}
               .dump(2)
        << "\n";
  } else {
    out << "model " << path << ": " << model.blocks().size() << " blocks, " << (report.ok() ? "valid" : "invalid")
        << "\n"
        << "  prolonged consideration: " << (report.prolonged_consideration ? "pass" : "FAIL") << "\n"
        << "  binary comparability:    " << (report.binary_comparability ? "pass" : "FAIL") << "\n"
        << "  transition-ratio IIA:    " << (report.transition_ratio_iia ? "pass" : "FAIL") << "\n";
    for (const auto& f : report.failures) {
      out << "  " << to_string(f.assumption) << " on " << to_string(f.menu, u) << ": " << f.detail << "\n";
    }
    for (const auto& item : report.stochastic) out << "  " << item.kind << ": " << item.message << "\n";
    if (!report.ratio_unchecked.empty()) {
      out << "  " << report.ratio_unchecked.size() << " pair(s) without a binary block (ratio not checked)\n";
    }
  }
  return report.ok() ? kSuccess : kConditionFails;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string model, menu, pi;
  double alpha = 0.0;
  bool limit = false;
};

int cmd_generate(const GenerateArgs& a, const Common& c, std::ostream& out) {
  MscModel model = load_model(a.model);
  const Universe& u = model.universe();
  Menu menu = resolve_menu(a.menu, u);
  const ModelBlock& block = model.block(menu);
  Distribution pi = block.pi;
  if (!a.pi.empty()) {
    // Listed in the order the menu was given on the command line.
    auto names = split(a.menu, ',');
    auto values = split(a.pi, ',');
    if (values.size() != names.size()) throw InputError("--pi needs one value per menu member");
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (!is_decimal_literal(values[k])) throw InputError("--pi value '" + values[k] + "' is not a number");
      pi[static_cast<Eigen::Index>(menu.position(u.index(names[k])))] = to_double(parse_decimal(values[k]));
    }
    if (!(pi.minCoeff() >= 0.0) || std::abs(pi.sum() - 1.0) > 1e-12) {
      throw InputError("--pi must be a probability distribution");
    }
  }
  Distribution rho = a.limit ? generate_limiting(block.q, pi) : generate_finite(block.q, pi, a.alpha);
  if (c.json()) {
    out << json{{"command", "generate"},
                {"menu", menu_json(menu, u)},
                {"alpha", a.limit ? json(nullptr) : json(a.alpha)},
                {"choice", distribution_json(rho, menu, u)}}
               .dump(2)
        << "\n";
  } else {
    out << "menu " << to_string(menu, u) << (a.limit ? " (limit alpha -> 0)" : "") << "\n"
        << "  " << distribution_text(rho, menu, u) << "\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------
// classify

json classification_json(const ClassificationReport& r, const Universe& u) {
  json edges = json::array();
  for (const auto& [p, value] : r.graph.edges) {
    edges.push_back({{"from", u.name(p.first)}, {"to", u.name(p.second)}, {"delta", stable(value)}});
  }
  json zeros = json::array();
  for (const auto& p : r.graph.zero_pairs) zeros.push_back(pair_json(p, u));
  auto pairs = [&](const std::vector<AltPair>& list) {
    json a = json::array();
    for (const auto& p : list) a.push_back(pair_json(p, u));
    return a;
  };
  json witnesses = json::array();
  for (const auto& [alt, menu] : r.positivity.witnesses) {
    witnesses.push_back({{"alternative", u.name(alt)}, {"menu", menu_json(menu, u)}});
  }
  return {
      {"menu", menu_json(r.menu, u)},
      {"flags",
       {{"rationalizable_always", r.rationalizable_always},
        {"reversible_only", r.reversible_only},
        {"pairwise", r.pairwise},
        {"fully", r.fully},
        {"irreducible", r.irreducible},
        {"luce", r.luce}}},
      {"delta_edges", edges},
      {"zero_pairs", zeros},
      {"margin", number_or_null(r.graph.margin)},
      {"positive_cycle", r.positive_cycle ? pairs(*r.positive_cycle) : json(nullptr)},
      {"unbounded_pairs", pairs(r.unbounded_pairs)},
      {"covering_walk", r.covering.holds ? pairs(r.covering.walk) : json(nullptr)},
      {"blocking_pair", r.covering.blocking_pair ? pair_json(*r.covering.blocking_pair, u) : json(nullptr)},
      {"null_alternative", r.covering.null_alternative ? json(u.name(*r.covering.null_alternative)) : json(nullptr)},
      {"positivity_witnesses", witnesses},
      {"iia_max_violation", stable(r.iia.max_violation)},
  };
}

void classification_text(const ClassificationReport& r, const Universe& u, std::ostream& out) {
  auto flag = [](bool b) { return b ? "yes" : "no"; };
  out << "menu " << to_string(r.menu, u) << "\n"
      << "  rationalizable (some model):  yes\n"
      << "  only reversible models:       " << flag(r.reversible_only) << "\n"
      << "  pairwise comparable:          " << flag(r.pairwise) << "\n"
      << "  fully comparable:             " << flag(r.fully) << "\n"
      << "  irreducible:                  " << flag(r.irreducible) << "\n"
      << "  Luce (positive and IIA):      " << flag(r.luce) << "\n";
  std::vector<AltPair> edges;
  for (const auto& [p, v] : r.graph.edges) edges.push_back(p);
  out << "  Delta-positive pairs: " << pairs_text(edges, u) << "\n";
  if (r.positive_cycle) out << "  positive cycle: " << pairs_text(*r.positive_cycle, u) << "\n";
  if (!r.unbounded_pairs.empty()) out << "  unbounded pairs: " << pairs_text(r.unbounded_pairs, u) << "\n";
  if (r.covering.holds && !r.covering.walk.empty()) out << "  covering walk: " << pairs_text(r.covering.walk, u) << "\n";
  if (r.covering.blocking_pair) out << "  blocking pair: " << pairs_text({*r.covering.blocking_pair}, u) << "\n";
  if (r.covering.null_alternative) {
    out << "  zero-probability alternative: " << u.name(*r.covering.null_alternative) << "\n";
  }
  if (std::isfinite(r.graph.margin)) out << "  margin min|Delta|: " << stable(r.graph.margin) << "\n";
}

int cmd_classify(const std::string& path, const std::string& menu_csv, bool all, const Common& c,
                 std::ostream& out) {
  ChoiceDataset data = load_valid_dataset(path);
  const Universe& u = data.universe();
  std::vector<Menu> menus;
  if (all) {
    for (const auto& [menu, entry] : data.entries()) {
      if (menu.size() >= 3) menus.push_back(menu);
    }
  } else {
    menus.push_back(resolve_menu(menu_csv, u));
    data.entry(menus.back());
  }
  json reports = json::array();
  for (const Menu& menu : menus) {
    ClassificationReport r = classify(data, menu);
    if (c.json()) {
      reports.push_back(classification_json(r, u));
    } else {
      classification_text(r, u, out);
    }
  }
  if (c.json()) out << json{{"command", "classify"}, {"reports", reports}}.dump(2) << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------
// rationalize

int cmd_rationalize(const std::string& path, const std::string& menu_csv, const std::string& cls_name,
                    const std::string& out_path, const Common& c, std::ostream& out) {
  ChoiceDataset data = load_valid_dataset(path);
  const Universe& u = data.universe();
  Menu menu = resolve_menu(menu_csv, u);
  data.entry(menu);
  ModelClass cls = *parse_model_class(cls_name);
  RationalizeOutcome result = rationalize(data, menu, cls);

  if (result.ok()) {
    std::vector<Menu> menus{menu};
    RationalizeCheck check = verify_rationalizes(*result.model, data, menus);
    result.model->provenance = "rationalizes " + to_string(menu, u) + " of " + path;
    if (!out_path.empty()) save_model(*result.model, out_path);
    if (c.json()) {
      json doc{{"command", "rationalize"},
               {"class", cls_name},
               {"feasible", true},
               {"max_deviation", stable(check.max_deviation)}};
      if (out_path.empty()) {
        doc["model"] = json::parse(dump_model(*result.model));
      } else {
        doc["model_file"] = out_path;
      }
      out << doc.dump(2) << "\n";
    } else if (out_path.empty()) {
      out << dump_model(*result.model);
    } else {
      out << "class " << cls_name << " on " << to_string(menu, u) << ": model written to " << out_path
          << " (max deviation " << stable(check.max_deviation) << ")\n";
    }
    return kSuccess;
  }

  json doc{{"command", "rationalize"}, {"class", cls_name}, {"feasible", false}, {"reason", result.reason}};
  doc["blocking_pair"] = result.blocking_pair ? pair_json(*result.blocking_pair, u) : json(nullptr);
  doc["null_alternative"] = result.null_alternative ? json(u.name(*result.null_alternative)) : json(nullptr);
  if (result.infeasibility) {
    const FeasibilityResult& f = *result.infeasibility;
    DesignSystem sys = build_design_system(data, menu);
    json z = json::object();
    for (std::size_t k = 0; k < menu.size(); ++k) z[u.name(menu[k])] = f.certificate[k].str();
    json image = json::array();
    auto zd = certificate_image(sys, f.certificate);
    for (std::size_t b = 0; b < sys.g.size(); ++b) {
      image.push_back({{"pair", pair_json(sys.g[b], u)}, {"value", zd[b].str()}});
    }
    doc["status"] = std::string(to_string(f.status));
    doc["certificate"] = z;
    doc["certificate_image"] = image;
  }
  if (c.json()) {
    out << doc.dump(2) << "\n";
  } else {
    out << "class " << cls_name << " on " << to_string(menu, u) << ": not attainable\n  reason: " << result.reason
        << "\n";
    if (result.blocking_pair) out << "  blocking pair: " << pairs_text({*result.blocking_pair}, u) << "\n";
    if (result.null_alternative) out << "  zero-probability alternative: " << u.name(*result.null_alternative) << "\n";
    if (result.infeasibility) {
      out << "  status: " << doc["status"].get<std::string>() << "\n  certificate z:";
      for (auto& [name, value] : doc["certificate"].items()) out << " " << name << "=" << value.get<std::string>();
      out << "\n";
    }
  }
  return kConditionFails;
}

// ---------------------------------------------------------------------------
// restrict

struct RestrictArgs {
  std::string model, menu, weak;
  std::vector<std::string> zero;
  double c = 1.0;
};

AltPair parse_pair(const std::string& text, const Universe& u) {
  auto names = split(text, ',');
  if (names.size() != 2) throw InputError("a pair is written as 'a,b', got '" + text + "'");
  Index a = u.index(names[0]), b = u.index(names[1]);
  if (a == b) throw InputError("a pair needs two distinct alternatives");
  return {std::min(a, b), std::max(a, b)};
}

int cmd_restrict(const RestrictArgs& a, const Common& c, std::ostream& out) {
  MscModel model = load_model(a.model);
  const Universe& u = model.universe();
  Menu menu = resolve_menu(a.menu, u);
  const ModelBlock& block = model.block(menu);

  Restriction r;
  for (const auto& z : a.zero) r.zeroed.insert(parse_pair(z, u));
  if (!a.weak.empty()) {
    r.kind = RestrictionKind::weak;
    for (const auto& item : split(a.weak, ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("weak factors are written 'a,b=f;c,d=g'");
      std::string value = item.substr(eq + 1);
      if (!is_decimal_literal(value)) throw InputError("weak factor '" + value + "' is not a number");
      r.factors[parse_pair(item.substr(0, eq), u)] = to_double(parse_decimal(value));
    }
  } else {
    r.c = a.c;
  }
  for (const auto& p : r.zeroed) {
    if (!menu.contains(p.first) || !menu.contains(p.second)) throw InputError("restricted pair outside the menu");
  }
  for (const auto& [p, f] : r.factors) {
    if (!menu.contains(p.first) || !menu.contains(p.second)) throw InputError("restricted pair outside the menu");
  }

  RestrictionOutcome outcome = apply_restriction(block, menu, r);
  Distribution before = generate_limiting(block.q, block.pi);
  std::optional<Distribution> after;
  double change = 0.0;
  if (outcome.ok()) {
    after = generate_limiting(outcome.block->q, outcome.block->pi);
    change = (before - *after).cwiseAbs().maxCoeff();
  }
  bool unchanged = outcome.ok() && change <= 1e-9;

  if (c.json()) {
    out << json{{"command", "restrict"},
                {"menu", menu_json(menu, u)},
                {"restriction", describe(r, u)},
                {"valid", outcome.ok()},
                {"rejection", outcome.ok() ? json(nullptr) : json(outcome.reason)},
                {"before", distribution_json(before, menu, u)},
                {"after", after ? distribution_json(*after, menu, u) : json(nullptr)},
                {"max_change", stable(change)},
                {"unchanged", unchanged}}
               .dump(2)
        << "\n";
  } else {
    out << "restriction " << describe(r, u) << " on " << to_string(menu, u) << "\n";
    if (!outcome.ok()) {
      out << "  rejected: " << outcome.reason << "\n";
    } else {
      out << "  before: " << distribution_text(before, menu, u) << "\n"
          << "  after:  " << distribution_text(*after, menu, u) << "\n"
          << "  " << (unchanged ? "unchanged" : "changed") << " (max change " << stable(change) << ")\n";
    }
  }
  return unchanged ? kSuccess : kConditionFails;
}

// ---------------------------------------------------------------------------
// decoy

int cmd_decoy(const std::string& path, const std::string& triple, const Common& c, std::ostream& out) {
  MscModel model = load_model(path);
  const Universe& u = model.universe();
  auto names = split(triple, ',');
  if (names.size() != 3) throw InputError("--triple takes target,competitor,decoy");
  Index i = u.index(names[0]), j = u.index(names[1]), k = u.index(names[2]);
  DecoyReport r = decoy_analysis(model, i, j, k);
  bool consistent = r.relative_ratio_increase && r.absolute_increase == r.condition_q_ki_gt_q_ji;
  if (c.json()) {
    out << json{{"command", "decoy"},
                {"target", names[0]},
                {"competitor", names[1]},
                {"decoy", names[2]},
                {"pair_target", stable(r.pair_target)},
                {"pair_competitor", stable(r.pair_competitor)},
                {"triple_target", stable(r.triple_target)},
                {"triple_competitor", stable(r.triple_competitor)},
                {"triple_decoy", stable(r.triple_decoy)},
                {"relative_ratio_increase", r.relative_ratio_increase},
                {"absolute_increase", r.absolute_increase},
                {"condition_q_ki_gt_q_ji", r.condition_q_ki_gt_q_ji}}
               .dump(2)
        << "\n";
  } else {
    out << "target " << names[0] << ", competitor " << names[1] << ", decoy " << names[2] << "\n"
        << "  pair:   " << names[0] << "=" << stable(r.pair_target) << "  " << names[1] << "="
        << stable(r.pair_competitor) << "\n"
        << "  triple: " << names[0] << "=" << stable(r.triple_target) << "  " << names[1] << "="
        << stable(r.triple_competitor) << "  " << names[2] << "=" << stable(r.triple_decoy) << "\n"
        << "  relative increase: " << (r.relative_ratio_increase ? "yes" : "no") << "\n"
        << "  absolute increase: " << (r.absolute_increase ? "yes" : "no") << "\n"
        << "  decoy leads to target more often than competitor: " << (r.condition_q_ki_gt_q_ji ? "yes" : "no")
        << "\n";
  }
  return consistent ? kSuccess : kConditionFails;
}

// ---------------------------------------------------------------------------
// nudge

int cmd_nudge(const std::string& path, const std::string& menu_csv, double alpha, const std::string& target,
              const Common& c, std::ostream& out) {
  MscModel model = load_model(path);
  const Universe& u = model.universe();
  Menu menu = resolve_menu(menu_csv, u);
  Index t = u.index(target);
  if (!menu.contains(t)) throw InputError("--target must be a member of the menu");
  NudgeReport r = nudge_initial_finite(model.block(menu), menu, alpha, t);
  if (c.json()) {
    json rows = json::array();
    for (std::size_t k = 0; k < r.starts.size(); ++k) {
      rows.push_back({{"start", u.name(r.starts[k])}, {"choice", distribution_json(r.choices[k], menu, u)}});
    }
    out << json{{"command", "nudge"},
                {"menu", menu_json(menu, u)},
                {"alpha", alpha},
                {"target", target},
                {"table", rows},
                {"strict_maximum", r.strict_maximum}}
               .dump(2)
        << "\n";
  } else {
    out << "alpha " << alpha << ", target " << target << " on " << to_string(menu, u) << "\n";
    for (std::size_t k = 0; k < r.starts.size(); ++k) {
      out << "  start " << u.name(r.starts[k]) << ": " << distribution_text(r.choices[k], menu, u) << "\n";
    }
    out << "  fixating on " << target << " first maximises its choice probability: "
        << (r.strict_maximum ? "yes" : "no") << "\n";
  }
  return r.strict_maximum ? kSuccess : kConditionFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov stochastic choice: generate, classify, rationalize, intervene", "msc"};
  app.require_subcommand(1, 1);
  Common common;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check a dataset or model file");
  std::string validate_path;
  validate->add_option("file", validate_path, "Dataset or model JSON")->required();
  add_format(validate, common);
  validate->callback([&] { action = [&] { return cmd_validate(validate_path, common, out); }; });

  auto* generate = app.add_subcommand("generate", "Choice probabilities generated by a model block");
  GenerateArgs gen;
  generate->add_option("--model", gen.model, "Model JSON")->required();
  generate->add_option("--menu", gen.menu, "Menu, e.g. i,j,k")->required();
  auto* alpha_opt = generate->add_option("--alpha", gen.alpha, "Stopping probability in (0,1)");
  auto* limit_flag = generate->add_flag("--limit", gen.limit, "Limit as alpha -> 0");
  alpha_opt->excludes(limit_flag);
  generate->add_option("--pi", gen.pi, "Initial distribution, listed in --menu order");
  add_format(generate, common);
  generate->callback([&] {
    if (!gen.limit && alpha_opt->count() == 0) throw CLI::RequiredError("--alpha or --limit");
    action = [&] { return cmd_generate(gen, common, out); };
  });

  auto* classify_cmd = app.add_subcommand("classify", "Which model classes can rationalize the data");
  std::string cls_data, cls_menu;
  bool all_menus = false;
  classify_cmd->add_option("--data", cls_data, "Dataset JSON")->required();
  auto* menu_opt = classify_cmd->add_option("--menu", cls_menu, "Menu, e.g. i,j,k,l");
  auto* all_flag = classify_cmd->add_flag("--all-menus", all_menus, "Every stored menu with 3+ members");
  menu_opt->excludes(all_flag);
  add_format(classify_cmd, common);
  classify_cmd->callback([&] {
    if (!all_menus && menu_opt->count() == 0) throw CLI::RequiredError("--menu or --all-menus");
    action = [&] { return cmd_classify(cls_data, cls_menu, all_menus, common, out); };
  });

  auto* rat = app.add_subcommand("rationalize", "Construct a rationalizing model of a class");
  std::string rat_data, rat_menu, rat_class = "any", rat_out;
  rat->add_option("--data", rat_data, "Dataset JSON")->required();
  rat->add_option("--menu", rat_menu, "Menu")->required();
  rat->add_option("--class", rat_class, "Model class")
      ->check(CLI::IsMember({"any", "reversible", "pairwise", "fully", "irreducible"}));
  rat->add_option("--out", rat_out, "Write the model here instead of stdout");
  add_format(rat, common);
  rat->callback([&] { action = [&] { return cmd_rationalize(rat_data, rat_menu, rat_class, rat_out, common, out); }; });

  auto* restrict_cmd = app.add_subcommand("restrict", "Apply a comparability restriction");
  RestrictArgs ra;
  restrict_cmd->add_option("--model", ra.model, "Model JSON")->required();
  restrict_cmd->add_option("--menu", ra.menu, "Menu")->required();
  restrict_cmd->add_option("--zero", ra.zero, "Pair to zero, e.g. i,l (repeatable)");
  auto* c_opt = restrict_cmd->add_option("--c", ra.c, "Factor for the other pairs (strict)");
  auto* weak_opt = restrict_cmd->add_option("--weak", ra.weak, "Per-pair factors, e.g. 'i,j=2;k,l=0.5'");
  c_opt->excludes(weak_opt);
  add_format(restrict_cmd, common);
  restrict_cmd->callback([&] { action = [&] { return cmd_restrict(ra, common, out); }; });

  auto* decoy = app.add_subcommand("decoy", "Attraction effect on a target,competitor,decoy triple");
  std::string decoy_model, decoy_triple;
  decoy->add_option("--model", decoy_model, "Model JSON")->required();
  decoy->add_option("--triple", decoy_triple, "target,competitor,decoy")->required();
  add_format(decoy, common);
  decoy->callback([&] { action = [&] { return cmd_decoy(decoy_model, decoy_triple, common, out); }; });

  auto* nudge = app.add_subcommand("nudge", "Effect of the first fixation at a finite alpha");
  std::string nudge_model, nudge_menu, nudge_target;
  double nudge_alpha = 0.5;
  nudge->add_option("--model", nudge_model, "Model JSON")->required();
  nudge->add_option("--menu", nudge_menu, "Menu")->required();
  nudge->add_option("--alpha", nudge_alpha, "Stopping probability in (0,1)")->required();
  nudge->add_option("--target", nudge_target, "Alternative to nudge")->required();
  add_format(nudge, common);
  nudge->callback([&] { action = [&] { return cmd_nudge(nudge_model, nudge_menu, nudge_alpha, nudge_target, common, out); }; });

  std::vector<const char*> argv{"msc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'msc --help' for usage\n";
    return kInputError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace msc::cli
