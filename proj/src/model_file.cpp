#include "taam/model_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace taam {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSummaryTarget = "@summary";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ModelFileError(where + ": " + what);
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(where, "unknown key '" + key + "'");
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  if (!obj[key].is_string()) fail(where, std::string("'") + key + "' must be a string");
  return obj[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  const auto& arr = obj[key];
  if (!arr.is_array()) fail(where, std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) fail(where, std::string("'") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

ThemeSet get_themes(const json& obj, const std::string& where) {
  auto names = get_strings(obj, "themes", where);
  return ThemeSet(names.begin(), names.end());
}

Element parse_formula(const std::string& text, const Algebra& algebra, FormulaBook& book,
                      const std::string& where) {
  try {
    auto e = eval(parse(text), algebra);
    book.add(e, text);
    return e;
  } catch (const ParseError& err) {
    fail(where, "formula '" + text + "': " + err.what());
  } catch (const AlgebraError& err) {
    fail(where, "formula '" + text + "': " + err.what());
  }
}

ElementSet parse_formulas(const std::vector<std::string>& texts, const Algebra& algebra,
                          FormulaBook& book, const std::string& where) {
  ElementSet out;
  for (const auto& t : texts) out.insert(parse_formula(t, algebra, book, where));
  return out;
}

AspectSpace parse_theme_aspects(const json& entry, const Algebra& algebra, FormulaBook& book,
                                const std::string& where) {
  if (entry.contains("generated_by")) {
    if (entry.contains("aspects")) fail(where, "give either 'aspects' or 'generated_by'");
    return AspectSpace::generated(
        algebra, parse_formulas(get_strings(entry, "generated_by", where), algebra, book, where));
  }
  if (!entry.contains("aspects")) fail(where, "missing 'aspects'");
  if (entry["aspects"].is_string()) {
    if (entry["aspects"].get<std::string>() != "ALL") fail(where, "'aspects' must be a list or \"ALL\"");
    return AspectSpace::all(algebra);
  }
  return AspectSpace::listed(parse_formulas(get_strings(entry, "aspects", where), algebra, book, where));
}

}  // namespace

ModelDocument parse_model_document(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelFileError(std::string("invalid JSON: ") + e.what());
  }
  only_keys(root, {"name", "description", "themes", "props", "statements", "relations", "interpretation"},
            "model");

  ModelDocument doc;
  for (const auto& t : get_strings(root, "themes", "model")) doc.model.add_theme(t);

  if (!root.contains("statements") || !root["statements"].is_array()) fail("model", "missing 'statements' array");
  for (const auto& s : root["statements"]) {
    only_keys(s, {"id", "kind", "theme", "target", "themes", "text"}, "statement");
    const auto id = get_string(s, "id", "statement");
    const auto where = "statement " + id;
    const auto kind = s.contains("kind") ? get_string(s, "kind", where) : std::string("ordinary");
    StatementKind k = Ordinary{};
    if (kind == "pointer") {
      const auto theme = get_string(s, "theme", where);
      const auto target = get_string(s, "target", where);
      if (target == kSummaryTarget)
        k = SummaryPointer{theme};
      else
        k = StatementPointer{theme, target};
    } else if (kind != "ordinary") {
      fail(where, "kind must be \"ordinary\" or \"pointer\"");
    } else if (s.contains("theme") || s.contains("target")) {
      fail(where, "only pointers take 'theme' and 'target'");
    }
    doc.model.add_statement({id, k}, get_themes(s, where));
  }

  if (root.contains("relations")) {
    if (!root["relations"].is_array()) fail("model", "'relations' must be an array");
    for (const auto& r : root["relations"]) {
      only_keys(r, {"from", "to", "types", "themes"}, "relation");
      const auto from = get_string(r, "from", "relation");
      const auto to = get_string(r, "to", "relation");
      const auto where = "relation (" + from + "," + to + ")";
      RelationTypes types;
      for (const auto& t : get_strings(r, "types", where)) {
        if (t == "attack")
          types.attack = true;
        else if (t == "support")
          types.support = true;
        else
          fail(where, "unknown relation type '" + t + "'");
      }
      doc.model.add_relation({from, to, types, get_themes(r, where)});
    }
  }

  if (root.contains("interpretation")) {
    const auto& in = root["interpretation"];
    only_keys(in, {"default", "theme_aspects", "statement_aspects"}, "interpretation");
    std::vector<std::string> props;
    if (root.contains("props")) props = get_strings(root, "props", "model");
    std::optional<Algebra> algebra;
    try {
      algebra.emplace(props);
    } catch (const AlgebraError& e) {
      fail("props", e.what());
    }
    auto mode = DefaultMode::union_of_singletons;
    if (in.contains("default")) {
      const auto d = get_string(in, "default", "interpretation");
      if (d == "empty")
        mode = DefaultMode::empty;
      else if (d != "union")
        fail("interpretation", "default must be \"union\" or \"empty\"");
    }
    Interpretation interp(*algebra, mode);
    std::set<ThemeSet> seen_omega;
    std::set<std::pair<ThemeSet, StatementId>> seen_stmt;
    if (in.contains("theme_aspects")) {
      for (const auto& e : in["theme_aspects"]) {
        only_keys(e, {"themes", "aspects", "generated_by"}, "theme_aspects");
        auto ts = get_themes(e, "theme_aspects");
        const auto where = "theme_aspects " + to_string(ts);
        if (!seen_omega.insert(ts).second) fail(where, "duplicate entry");
        interp.set_theme_aspects(ts, parse_theme_aspects(e, *algebra, doc.formulas, where));
      }
    }
    if (in.contains("statement_aspects")) {
      for (const auto& e : in["statement_aspects"]) {
        only_keys(e, {"themes", "statement", "aspects", "generated_by"}, "statement_aspects");
        auto ts = get_themes(e, "statement_aspects");
        const auto stmt = get_string(e, "statement", "statement_aspects");
        const auto where = "statement_aspects " + to_string(ts) + " " + stmt;
        if (stmt == kOmegaId) {
          if (!seen_omega.insert(ts).second) fail(where, "duplicate entry");
          interp.set_theme_aspects(ts, parse_theme_aspects(e, *algebra, doc.formulas, where));
          continue;
        }
        if (!seen_stmt.insert({ts, stmt}).second) fail(where, "duplicate entry");
        interp.set_statement_aspects(
            ts, stmt, parse_formulas(get_strings(e, "aspects", where), *algebra, doc.formulas, where));
      }
    }
    doc.interpretation.emplace(std::move(interp));
  }
  return doc;
}

ModelDocument read_model_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFileError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_document(buf.str());
}

std::string write_model_document(const Model& model, const Interpretation* interp,
                                 const FormulaBook& formulas) {
  auto themes_ordered_json = [](const ThemeSet& ts) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts) arr.push_back(t.str());
    return arr;
  };
  ordered_json root;
  root["themes"] = ordered_json::array();
  for (const auto& t : model.themes()) root["themes"].push_back(t.str());
  if (interp) root["props"] = interp->algebra().props();

  root["statements"] = ordered_json::array();
  for (const auto& s : model.statements()) {
    ordered_json js{{"id", s.id.str()}};
    if (auto* p = std::get_if<StatementPointer>(&s.kind)) {
      js["kind"] = "pointer";
      js["theme"] = p->theme.str();
      js["target"] = p->target.str();
    } else if (auto* c = std::get_if<SummaryPointer>(&s.kind)) {
      js["kind"] = "pointer";
      js["theme"] = c->theme.str();
      js["target"] = kSummaryTarget;
    } else {
      js["kind"] = "ordinary";
    }
    js["themes"] = themes_ordered_json(model.themes_of(s.id));
    root["statements"].push_back(std::move(js));
  }

  root["relations"] = ordered_json::array();
  for (const auto& r : model.relations()) {
    ordered_json types = ordered_json::array();
    if (r.types.attack) types.push_back("attack");
    if (r.types.support) types.push_back("support");
    root["relations"].push_back(
        {{"from", r.from.str()}, {"to", r.to.str()}, {"types", types}, {"themes", themes_ordered_json(r.themes)}});
  }

  if (interp) {
    auto formulas_ordered_json = [&](const ElementSet& xs) {
      ordered_json arr = ordered_json::array();
      for (const auto& x : xs) arr.push_back(format_element(x, &formulas));
      return arr;
    };
    ordered_json in;
    in["default"] = interp->default_mode() == DefaultMode::empty ? "empty" : "union";
    in["theme_aspects"] = ordered_json::array();
    for (const auto& [ts, space] : interp->theme_entries()) {
      ordered_json e{{"themes", themes_ordered_json(ts)}};
      if (space.is_generated()) {
        if (space.block_count() == interp->algebra().minterm_count())
          e["aspects"] = "ALL";
        else
          e["generated_by"] = formulas_ordered_json(space.generators());
      } else {
        e["aspects"] = formulas_ordered_json(space.members());
      }
      in["theme_aspects"].push_back(std::move(e));
    }
    in["statement_aspects"] = ordered_json::array();
    for (const auto& [key, xs] : interp->statement_entries())
      in["statement_aspects"].push_back(
          {{"themes", themes_ordered_json(key.first)}, {"statement", key.second.str()}, {"aspects", formulas_ordered_json(xs)}});
    root["interpretation"] = std::move(in);
  }
  return root.dump(2) + "\n";
}

}  // namespace taam
