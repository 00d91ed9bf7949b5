#include "taam/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "taam/constraints.hpp"
#include "taam/model_file.hpp"
#include "taam/semantics.hpp"

namespace taam::cli {

namespace {

using nlohmann::json;

struct Settings {
  bool machine = false;
  std::size_t max_themes = 12;
};

// Signals a reportable failure with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

template <class Ids>
std::vector<std::string> strs(const Ids& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

ThemeSet theme_set(const std::vector<std::string>& names) { return ThemeSet(names.begin(), names.end()); }

ModelDocument load(const std::string& path) {
  auto doc = read_model_document(path);
  auto issues = validate_wellformed(doc.model);
  if (doc.interpretation) {
    auto more = validate_interpretation(doc.model, *doc.interpretation);
    issues.insert(issues.end(), more.begin(), more.end());
  }
  if (!issues.empty()) {
    std::string msg = path + " is not well-formed:";
    for (const auto& i : issues) msg += "\n  " + i.subject + ": " + i.message;
    throw UsageError(msg);
  }
  return doc;
}

const Interpretation& need_interpretation(const ModelDocument& doc, const std::string& path) {
  if (!doc.interpretation) throw UsageError(path + " has no interpretation");
  return *doc.interpretation;
}

void check_themes(const Model& model, const ThemeSet& themes) {
  for (const auto& t : themes)
    if (!model.has_theme(t)) throw UsageError("unknown theme '" + t.str() + "'");
}

std::string describe(const Witness& w, const FormulaBook& book) {
  std::string out;
  if (w.themes) out += " " + to_string(*w.themes);
  if (w.other_themes) out += " vs " + to_string(*w.other_themes);
  if (w.relation) out += " (" + w.relation->from.str() + "," + w.relation->to.str() + ")";
  const bool endpoints_only = w.relation && w.statements == std::vector<StatementId>{w.relation->from, w.relation->to};
  if (!w.statements.empty() && !endpoints_only) out += " " + join(strs(w.statements), ",");
  if (!w.group.empty()) out += " in " + join(strs(w.group), ">");
  if (!w.elements.empty()) {
    std::vector<std::string> es;
    for (const auto& e : w.elements) es.push_back(format_element(e, &book));
    out += " [" + join(es, "; ") + "]";
  }
  if (!w.detail.empty()) out += ": " + w.detail;
  return out;
}

json witness_json(const Witness& w, const FormulaBook& book) {
  json j = json::object();
  if (w.themes) j["themes"] = strs(*w.themes);
  if (w.other_themes) j["other_themes"] = strs(*w.other_themes);
  if (w.relation) j["relation"] = {{"from", w.relation->from.str()}, {"to", w.relation->to.str()}};
  j["statements"] = strs(w.statements);
  if (!w.group.empty()) j["group"] = strs(w.group);
  j["elements"] = json::array();
  for (const auto& e : w.elements) j["elements"].push_back(format_element(e, &book));
  j["detail"] = w.detail;
  return j;
}

void sort_violations(std::vector<Violation>& vs) {
  auto key = [](const Violation& v) {
    const auto& w = v.witness;
    return std::make_tuple(v.constraint, w.themes.value_or(ThemeSet{}), w.other_themes.value_or(ThemeSet{}),
                           w.relation.value_or(RelationRef{}), w.statements, w.group, w.detail);
  };
  std::stable_sort(vs.begin(), vs.end(), [&](const Violation& a, const Violation& b) { return key(a) < key(b); });
}

int cmd_validate(const std::string& path, const Settings& s, std::ostream& out) {
  auto doc = load(path);
  if (s.machine) {
    out << json{{"command", "validate"}, {"path", path}, {"valid", true}}.dump(2) << "\n";
  } else {
    out << path << ": ok (" << doc.model.statements().size() << " statements, " << doc.model.relations().size()
        << " relations" << (doc.interpretation ? ", with interpretation" : "") << ")\n";
  }
  return kOk;
}

int cmd_check(const std::string& path, const std::vector<std::string>& alpha_names, const Settings& s,
              std::ostream& out) {
  std::set<ConstraintGroup> alpha;
  for (const auto& name : alpha_names) {
    auto g = parse_constraint_group(name);
    if (!g) throw UsageError("unknown constraint set '" + name + "' (expected core, E, das, nwci, F)");
    alpha.insert(*g);
  }
  if (!alpha.contains(ConstraintGroup::core)) throw UsageError("--alpha must include core");
  auto doc = load(path);
  const auto& interp = need_interpretation(doc, path);

  // nss belongs with the constraint sets beyond Core.
  const bool extended = alpha.size() > 1;
  std::vector<Violation> graphic;
  for (auto& v : check_graphic(doc.model))
    if (v.constraint != ConstraintId::nss || extended) graphic.push_back(std::move(v));
  CheckOptions opts;
  opts.max_themes = s.max_themes;
  auto verdict = classify_normal_form(doc.model, interp, alpha, opts);
  sort_violations(graphic);
  sort_violations(verdict.violations);
  const bool normal = graphic.empty() && verdict.violations.empty();

  std::vector<std::string> alpha_str;
  for (auto g : alpha) alpha_str.push_back(to_string(g));
  if (s.machine) {
    json j{{"command", "check"}, {"path", path}, {"alpha", alpha_str}, {"normal", normal}};
    j["graphic"] = json::array();
    for (const auto& v : graphic) {
      auto w = witness_json(v.witness, doc.formulas);
      w["constraint"] = to_string(v.constraint);
      j["graphic"].push_back(std::move(w));
    }
    j["violations"] = json::array();
    for (const auto& v : verdict.violations) {
      auto w = witness_json(v.witness, doc.formulas);
      w["constraint"] = to_string(v.constraint);
      j["violations"].push_back(std::move(w));
    }
    out << j.dump(2) << "\n";
  } else {
    out << "alpha {" << join(alpha_str, ", ") << "}: " << (normal ? "normal" : "fallacy") << "\n";
    if (!graphic.empty()) {
      out << "graphic constraints:\n";
      for (const auto& v : graphic) out << "  " << to_string(v.constraint) << describe(v.witness, doc.formulas) << "\n";
    }
    if (!verdict.violations.empty()) {
      out << "violations:\n";
      for (const auto& v : verdict.violations)
        out << "  " << to_string(v.constraint) << describe(v.witness, doc.formulas) << "\n";
    }
  }
  return normal ? kOk : kFallacy;
}

int cmd_conclude(const std::string& path, const std::vector<std::string>& theme_names,
                 const std::string& sem_name, bool scan, const Settings& s, std::ostream& out) {
  auto sem = parse_semantics(sem_name);
  if (!sem) throw UsageError("unknown semantics '" + sem_name + "'");
  if (theme_names.empty() && !scan) throw UsageError("give --themes, --scan-logical or both");
  auto doc = load(path);
  const auto& interp = need_interpretation(doc, path);
  const auto themes = theme_set(theme_names);
  check_themes(doc.model, themes);

  json j{{"command", "conclude"}, {"path", path}, {"semantics", to_string(*sem)}};
  bool fallacy = false;
  if (!theme_names.empty()) {
    j["themes"] = theme_names;
    auto sm = sub_model(doc.model, themes);
    if (!sm) {
      j["defined"] = false;
      if (!s.machine) out << "themes " << to_string(themes) << ": no conclusion (sub-model undefined)\n";
    } else {
      j["defined"] = true;
      auto exts = extensions(sm->model, *sem);
      auto c = logico_rhetorical_conclusion(doc.model, interp, themes, *sem);
      fallacy = c && c->is_bottom();
      j["extensions"] = json::array();
      for (const auto& e : exts) j["extensions"].push_back(strs(e));
      j["conclusion"] = c ? json(format_element(*c, &doc.formulas)) : json(nullptr);
      if (!s.machine) {
        out << "themes " << to_string(themes) << ", " << to_string(*sem) << " extensions:\n";
        for (const auto& e : exts) out << "  {" << join(strs(e), ", ") << "}\n";
        if (c)
          out << "conclusion: " << format_element(*c, &doc.formulas) << "\n";
        else
          out << "conclusion: none (no non-empty extension)\n";
      }
    }
  }
  if (scan) {
    auto v = detect_logical_fallacy(doc.model, interp, *sem, s.max_themes);
    fallacy = fallacy || v.fallacy;
    j["logical_fallacy"] = v.fallacy;
    j["witnesses"] = json::array();
    for (const auto& w : v.witnesses) j["witnesses"].push_back(strs(w));
    if (!s.machine) {
      if (v.fallacy) {
        out << "logical fallacy: yes, conclusion 0 under";
        for (const auto& w : v.witnesses) out << " " << to_string(w);
        out << "\n";
      } else {
        out << "logical fallacy: no\n";
      }
    }
  }
  if (s.machine) out << j.dump(2) << "\n";
  return fallacy ? kFallacy : kOk;
}

int cmd_classify(const std::string& path, const std::vector<std::string>& theme_names, const Settings& s,
                 std::ostream& out) {
  auto doc = load(path);
  const auto& interp = need_interpretation(doc, path);
  const auto given = theme_set(theme_names);
  check_themes(doc.model, given);

  json rows = json::array();
  for (const auto& r : doc.model.relations()) {
    std::vector<ThemeSet> subsets;
    if (!given.empty()) {
      subsets.push_back(given);
    } else {
      std::vector<ThemeId> ts(r.themes.begin(), r.themes.end());
      if (ts.size() > s.max_themes) throw CapExceeded("relation carries more themes than --max-themes");
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ts.size()); ++mask) {
        ThemeSet sub;
        for (std::size_t i = 0; i < ts.size(); ++i)
          if ((mask >> i) & 1U) sub.insert(ts[i]);
        subsets.push_back(std::move(sub));
      }
      std::stable_sort(subsets.begin(), subsets.end(), [](const ThemeSet& a, const ThemeSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
    }
    for (const auto& ts : subsets) {
      std::vector<std::string> labels;
      for (auto l : classify_relation(doc.model, interp, ts, r)) labels.push_back(to_string(l));
      std::vector<std::string> types;
      if (r.types.attack) types.push_back("attack");
      if (r.types.support) types.push_back("support");
      rows.push_back({{"from", r.from.str()}, {"to", r.to.str()}, {"types", types}, {"themes", strs(ts)},
                      {"labels", labels}});
      if (!s.machine)
        out << "(" << r.from.str() << "," << r.to.str() << ") " << join(types, "+") << " " << to_string(ts) << ": "
            << (labels.empty() ? "none" : join(labels, ", ")) << "\n";
    }
  }
  if (s.machine) out << json{{"command", "classify"}, {"path", path}, {"relations", rows}}.dump(2) << "\n";
  return kOk;
}

int cmd_synthesize(const std::string& path, const std::string& output, const Settings& s, std::ostream& out) {
  auto doc = load(path);
  SynthesisOptions opts;
  auto w = synthesize_core_witness(doc.model, opts);
  auto text = write_model_document(doc.model, &w.interpretation, w.formulas);
  if (output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(output);
  if (!f || !(f << text)) throw UsageError("cannot write " + output);
  if (s.machine)
    out << json{{"command", "synthesize"}, {"path", path}, {"output", output},
                {"props", w.algebra.prop_count()}}
               .dump(2)
        << "\n";
  else
    out << "wrote " << output << " (" << w.algebra.prop_count() << " props)\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theme aspect argumentation models: constraint checks and conclusions", "taam"};
  app.require_subcommand(1);
  Settings settings;
  std::string format = "human";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--max-themes", settings.max_themes, "Cap on themes for subset enumeration")
      ->check(CLI::Range(1, 30));

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check the file's schema and well-formedness");
  validate->add_option("path", path)->required();

  std::vector<std::string> alpha{"core"};
  auto* check = app.add_subcommand("check", "Check alpha-normality");
  check->add_option("path", path)->required();
  check->add_option("--alpha", alpha, "Constraint sets: core[,E][,das][,nwci][,F]")->delimiter(',');

  std::vector<std::string> themes;
  std::string semantics = "grounded";
  bool scan = false;
  auto* conclude = app.add_subcommand("conclude", "Extensions and logico-rhetorical conclusions");
  conclude->add_option("path", path)->required();
  conclude->add_option("--themes", themes)->delimiter(',');
  conclude->add_option("--semantics", semantics)
      ->check(CLI::IsMember({"grounded", "complete", "preferred", "stable", "naive"}));
  conclude->add_flag("--scan-logical", scan, "Search theme sets for a conclusion equal to 0");

  auto* classify = app.add_subcommand("classify", "Label each relation by how its aspects compare");
  classify->add_option("path", path)->required();
  classify->add_option("--themes", themes)->delimiter(',');

  std::string output;
  auto* synthesize = app.add_subcommand("synthesize", "Build an interpretation satisfying Core");
  synthesize->add_option("path", path)->required();
  synthesize->add_option("-o,--output", output, "Write the completed model here instead of stdout");

  for (auto* sub : {validate, check, conclude, classify, synthesize}) sub->fallthrough();

  std::vector<const char*> argv{"taam"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }
  settings.machine = format == "machine";

  try {
    if (*validate) return cmd_validate(path, settings, out);
    if (*check) return cmd_check(path, alpha, settings, out);
    if (*conclude) return cmd_conclude(path, themes, semantics, scan, settings, out);
    if (*classify) return cmd_classify(path, themes, settings, out);
    if (*synthesize) return cmd_synthesize(path, output, settings, out);
  } catch (const SynthesisError& e) {
    err << "taam: cannot synthesize: " << e.what() << "\n";
    return kError;
  } catch (const CapExceeded& e) {
    err << "taam: cap exceeded: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "taam: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace taam::cli
