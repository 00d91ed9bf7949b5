#include "taam/model.hpp"

#include <algorithm>

namespace taam {

std::optional<ThemeId> Statement::pointer_theme() const {
  if (auto* p = std::get_if<StatementPointer>(&kind)) return p->theme;
  if (auto* c = std::get_if<SummaryPointer>(&kind)) return c->theme;
  return std::nullopt;
}

const char* to_string(RelationType t) { return t == RelationType::attack ? "attack" : "support"; }

void Model::add_theme(ThemeId theme) {
  if (!has_theme(theme)) themes_.push_back(std::move(theme));
}

void Model::add_statement(Statement statement, ThemeSet themes) {
  statement_themes_[statement.id] = std::move(themes);
  statements_.push_back(std::move(statement));
}

void Model::add_relation(Relation relation) {
  for (auto& r : relations_) {
    if (r.from == relation.from && r.to == relation.to) {
      r.types.attack = r.types.attack || relation.types.attack;
      r.types.support = r.types.support || relation.types.support;
      r.themes.insert(relation.themes.begin(), relation.themes.end());
      return;
    }
  }
  relations_.push_back(std::move(relation));
}

bool Model::has_theme(const ThemeId& t) const { return theme_index(t).has_value(); }

std::optional<std::size_t> Model::theme_index(const ThemeId& t) const {
  auto it = std::find(themes_.begin(), themes_.end(), t);
  if (it == themes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - themes_.begin());
}

const Statement* Model::find(const StatementId& id) const {
  auto i = statement_index(id);
  return i ? &statements_[*i] : nullptr;
}

std::optional<std::size_t> Model::statement_index(const StatementId& id) const {
  for (std::size_t i = 0; i < statements_.size(); ++i)
    if (statements_[i].id == id) return i;
  return std::nullopt;
}

const Relation* Model::find_relation(const StatementId& from, const StatementId& to) const {
  for (const auto& r : relations_)
    if (r.from == from && r.to == to) return &r;
  return nullptr;
}

const ThemeSet& Model::themes_of(const StatementId& id) const {
  static const ThemeSet kNone;
  auto it = statement_themes_.find(id);
  return it == statement_themes_.end() ? kNone : it->second;
}

ThemeSet Model::used_themes() const {
  ThemeSet out;
  for (const auto& [id, ts] : statement_themes_) out.insert(ts.begin(), ts.end());
  for (const auto& r : relations_) out.insert(r.themes.begin(), r.themes.end());
  return out;
}

std::vector<StatementId> Model::ordinary_statements() const {
  std::vector<StatementId> out;
  for (const auto& s : statements_)
    if (s.is_ordinary()) out.push_back(s.id);
  return out;
}

std::vector<Issue> validate_wellformed(const Model& model) {
  std::vector<Issue> issues;
  std::set<ThemeId> seen_themes;
  for (const auto& t : model.themes()) {
    if (t.str().empty()) issues.push_back({"theme", "empty theme id"});
    if (!seen_themes.insert(t).second) issues.push_back({t.str(), "duplicate theme"});
  }

  std::set<StatementId> seen;
  std::set<std::pair<ThemeId, StatementId>> statement_pointers;
  std::set<ThemeId> summary_pointers;
  for (const auto& s : model.statements()) {
    const auto& id = s.id.str();
    if (id.empty()) issues.push_back({"statement", "empty statement id"});
    if (!id.empty() && id[0] == '@') issues.push_back({id, "statement id uses reserved prefix '@'"});
    if (!seen.insert(s.id).second) issues.push_back({id, "duplicate statement"});

    const auto& ts = model.themes_of(s.id);
    if (ts.empty()) issues.push_back({id, "statement untyped"});
    for (const auto& t : ts)
      if (!model.has_theme(t)) issues.push_back({id, "unknown theme '" + t.str() + "'"});

    if (auto pt = s.pointer_theme(); pt && !model.has_theme(*pt))
      issues.push_back({id, "pointer to unknown theme '" + pt->str() + "'"});
    if (auto* p = std::get_if<StatementPointer>(&s.kind)) {
      if (const auto* target = model.find(p->target); target && !target->is_ordinary())
        issues.push_back({id, "pointer target '" + p->target.str() + "' is not ordinary"});
      if (p->target.str().empty() || p->target.str()[0] == '@')
        issues.push_back({id, "invalid pointer target"});
      if (!statement_pointers.insert({p->theme, p->target}).second)
        issues.push_back({id, "duplicate pointer " + p->theme.str() + "." + p->target.str()});
    }
    if (auto* c = std::get_if<SummaryPointer>(&s.kind)) {
      if (!summary_pointers.insert(c->theme).second)
        issues.push_back({id, "duplicate summary pointer for theme " + c->theme.str()});
    }
  }

  for (const auto& r : model.relations()) {
    const auto subject = "(" + r.from.str() + "," + r.to.str() + ")";
    const bool ends = model.find(r.from) && model.find(r.to);
    if (!model.find(r.from)) issues.push_back({subject, "unknown source '" + r.from.str() + "'"});
    if (!model.find(r.to)) issues.push_back({subject, "unknown target '" + r.to.str() + "'"});
    if (r.types.empty()) issues.push_back({subject, "relation has no attack/support type"});
    if (r.themes.empty()) issues.push_back({subject, "relation has no theme"});
    const auto& a = model.themes_of(r.from);
    const auto& b = model.themes_of(r.to);
    for (const auto& t : r.themes) {
      if (!model.has_theme(t)) issues.push_back({subject, "unknown theme '" + t.str() + "'"});
      if (ends && !a.contains(t) && !b.contains(t))
        issues.push_back({subject, "relation theme '" + t.str() + "' on neither endpoint"});
    }
  }
  return issues;
}

void Interpretation::set_theme_aspects(ThemeSet themes, AspectSpace aspects) {
  for (const auto& e : aspects.members())
    if (!(e.algebra() == algebra_)) throw AlgebraError("algebra mismatch");
  theme_aspects_.insert_or_assign(std::move(themes), std::move(aspects));
}

void Interpretation::set_statement_aspects(ThemeSet themes, StatementId statement,
                                           ElementSet aspects) {
  for (const auto& e : aspects)
    if (!(e.algebra() == algebra_)) throw AlgebraError("algebra mismatch");
  statement_aspects_.insert_or_assign({std::move(themes), std::move(statement)},
                                      std::move(aspects));
}

const AspectSpace* Interpretation::explicit_theme_aspects(const ThemeSet& themes) const {
  auto it = theme_aspects_.find(themes);
  return it == theme_aspects_.end() ? nullptr : &it->second;
}

const ElementSet* Interpretation::explicit_statement_aspects(const ThemeSet& themes,
                                                             const StatementId& statement) const {
  auto it = statement_aspects_.find({themes, statement});
  return it == statement_aspects_.end() ? nullptr : &it->second;
}

std::vector<Issue> validate_interpretation(const Model& model, const Interpretation& interp) {
  std::vector<Issue> issues;
  auto check_themes = [&](const ThemeSet& ts, const std::string& subject) {
    for (const auto& t : ts)
      if (!model.has_theme(t)) issues.push_back({subject, "unknown theme '" + t.str() + "'"});
  };
  for (const auto& [ts, space] : interp.theme_entries()) check_themes(ts, kOmegaId);
  for (const auto& [key, aspects] : interp.statement_entries()) {
    check_themes(key.first, key.second.str());
    if (!model.find(key.second)) issues.push_back({key.second.str(), "unknown statement"});
  }
  return issues;
}

namespace {

void require_known(const Model& model, const ThemeSet& themes) {
  for (const auto& t : themes)
    if (!model.has_theme(t)) throw UnknownId("unknown theme '" + t.str() + "'");
}

}  // namespace

ElementSet lookup(const Model& model, const Interpretation& interp, const ThemeSet& themes,
                  const StatementId& statement) {
  require_known(model, themes);
  const auto* s = model.find(statement);
  if (!s) throw UnknownId("unknown statement '" + statement.str() + "'");
  if (const auto* e = interp.explicit_statement_aspects(themes, statement)) return *e;
  if (themes.size() < 2 || interp.default_mode() == DefaultMode::empty || s->is_summary_pointer())
    return {};
  ElementSet out;
  for (const auto& t : themes)
    if (const auto* e = interp.explicit_statement_aspects({t}, statement))
      out.insert(e->begin(), e->end());
  return out;
}

const AspectSpace& theme_aspects(const Model& model, const Interpretation& interp,
                                 const ThemeSet& themes) {
  static const AspectSpace kEmpty;
  require_known(model, themes);
  const auto* e = interp.explicit_theme_aspects(themes);
  return e ? *e : kEmpty;
}

EffectiveAspect effective_aspect(const Algebra& algebra, const ElementSet& aspects) {
  if (aspects.empty()) return std::nullopt;
  return inf_set(algebra, aspects);
}

EffectiveAspect effective_aspect(const Model& model, const Interpretation& interp,
                                 const ThemeSet& themes, const StatementId& statement) {
  return effective_aspect(interp.algebra(), lookup(model, interp, themes, statement));
}

std::string to_string(const ThemeSet& themes) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : themes) {
    if (!first) out += ",";
    out += t.str();
    first = false;
  }
  return out + "}";
}

}  // namespace taam
