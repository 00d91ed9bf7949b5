#include "taam/constraints.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace taam {

namespace {

struct ConstraintName {
  ConstraintId id;
  const char* name;
};

constexpr ConstraintName kConstraintNames[] = {
    {ConstraintId::tr, "tr"},       {ConstraintId::nnp, "nnp"},   {ConstraintId::nsa, "nsa"},
    {ConstraintId::kos, "kos"},     {ConstraintId::nss, "nss"},   {ConstraintId::aass, "aass"},
    {ConstraintId::i, "i"},         {ConstraintId::vi, "vi"},     {ConstraintId::bat, "bat"},
    {ConstraintId::pr, "pr"},       {ConstraintId::mat, "mat"},   {ConstraintId::manss, "manss"},
    {ConstraintId::ss, "ss"},       {ConstraintId::esr, "esr"},   {ConstraintId::ensr, "ensr"},
    {ConstraintId::eos, "eos"},     {ConstraintId::das, "das"},   {ConstraintId::nwci, "nwci"},
    {ConstraintId::faD, "faD"},     {ConstraintId::faW, "faW"},
};

}  // namespace

const char* to_string(ConstraintId id) {
  for (const auto& c : kConstraintNames)
    if (c.id == id) return c.name;
  return "?";
}

std::optional<ConstraintId> parse_constraint_id(std::string_view name) {
  for (const auto& c : kConstraintNames)
    if (name == c.name) return c.id;
  return std::nullopt;
}

const char* to_string(ConstraintGroup g) {
  switch (g) {
    case ConstraintGroup::core:
      return "Core";
    case ConstraintGroup::e:
      return "E";
    case ConstraintGroup::das:
      return "das";
    case ConstraintGroup::nwci:
      return "nwci";
    case ConstraintGroup::f:
      return "F";
  }
  return "?";
}

std::optional<ConstraintGroup> parse_constraint_group(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "core") return ConstraintGroup::core;
  if (lower == "e") return ConstraintGroup::e;
  if (lower == "das") return ConstraintGroup::das;
  if (lower == "nwci") return ConstraintGroup::nwci;
  if (lower == "f") return ConstraintGroup::f;
  return std::nullopt;
}

std::vector<ConstraintId> constraints_in(ConstraintGroup g) {
  using C = ConstraintId;
  switch (g) {
    case ConstraintGroup::core:
      return {C::aass, C::i, C::vi, C::bat, C::pr, C::mat, C::manss, C::ss};
    case ConstraintGroup::e:
      return {C::esr, C::ensr, C::eos};
    case ConstraintGroup::das:
      return {C::das};
    case ConstraintGroup::nwci:
      return {C::nwci};
    case ConstraintGroup::f:
      return {C::faD, C::faW};
  }
  return {};
}

const char* to_string(RelationLabel l) {
  switch (l) {
    case RelationLabel::affirmation:
      return "affirmation";
    case RelationLabel::strengthening:
      return "strengthening";
    case RelationLabel::weakening:
      return "weakening";
    case RelationLabel::contrary:
      return "contrary";
    case RelationLabel::weakened_contradiction:
      return "weakened_contradiction";
    case RelationLabel::incomparable_alternative:
      return "incomparable_alternative";
    case RelationLabel::undefined:
      return "undefined";
  }
  return "?";
}

namespace {

using Mask = std::uint32_t;

bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// Memoised I(T, s) and I(T, omega) over theme-set bitmasks.
class Table {
 public:
  Table(const Model& model, const Interpretation& interp, const CheckOptions& options)
      : model_(model), interp_(interp) {
    const auto m = model.themes().size();
    if (m > options.max_themes || m > 24)
      throw CapExceeded("theme-subset enumeration needs at most " +
                        std::to_string(std::min<std::size_t>(options.max_themes, 24)) +
                        " themes, model has " + std::to_string(m));
    subsets_ = Mask{1} << m;
    const auto n = model.statements().size();
    aspects_.resize(n * subsets_);
    effective_.resize(n * subsets_);
    omega_.resize(subsets_);
    for (const auto& s : model.statements()) stmt_masks_.push_back(mask_of(model.themes_of(s.id)));
  }

  Mask subsets() const { return subsets_; }
  Mask full() const { return subsets_ - 1; }
  const Model& model() const { return model_; }
  const Algebra& algebra() const { return interp_.algebra(); }

  Mask bit(const ThemeId& t) const {
    auto i = model_.theme_index(t);
    return i ? Mask{1} << *i : 0;
  }

  Mask mask_of(const ThemeSet& ts) const {
    Mask out = 0;
    for (const auto& t : ts) out |= bit(t);
    return out;
  }

  ThemeSet set_of(Mask mask) const {
    ThemeSet out;
    for (std::size_t i = 0; i < model_.themes().size(); ++i)
      if ((mask >> i) & 1U) out.insert(model_.themes()[i]);
    return out;
  }

  Mask statement_mask(std::size_t si) const { return stmt_masks_[si]; }

  const ElementSet& aspects(std::size_t si, Mask t) {
    auto& slot = aspects_[si * subsets_ + t];
    if (!slot) slot = lookup(model_, interp_, set_of(t), model_.statements()[si].id);
    return *slot;
  }

  /// Statements outside the model carry no aspects.
  const ElementSet& aspects_of(const StatementId& id, Mask t) {
    static const ElementSet kNone;
    auto si = model_.statement_index(id);
    return si ? aspects(*si, t) : kNone;
  }

  const EffectiveAspect& effective(std::size_t si, Mask t) {
    auto& slot = effective_[si * subsets_ + t];
    if (!slot) slot = effective_aspect(algebra(), aspects(si, t));
    return *slot;
  }

  const AspectSpace& omega(Mask t) {
    auto& slot = omega_[t];
    if (!slot) slot = &theme_aspects(model_, interp_, set_of(t));
    return **slot;
  }

 private:
  const Model& model_;
  const Interpretation& interp_;
  Mask subsets_ = 1;
  std::vector<Mask> stmt_masks_;
  std::vector<std::optional<ElementSet>> aspects_;
  std::vector<std::optional<EffectiveAspect>> effective_;
  std::vector<std::optional<const AspectSpace*>> omega_;
};

std::vector<Element> difference(const ElementSet& a, const ElementSet& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool shares_theme(const ThemeSet& a, const ThemeSet& b) {
  return std::any_of(a.begin(), a.end(), [&](const ThemeId& t) { return b.contains(t); });
}

ThemeSet common(const ThemeSet& a, const ThemeSet& b) {
  ThemeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

Violation relation_violation(ConstraintId c, const Relation& r, std::string detail) {
  Violation v{c, {}};
  v.witness.relation = RelationRef{r.from, r.to};
  v.witness.statements = {r.from, r.to};
  v.witness.detail = std::move(detail);
  return v;
}

// Bounds for pr: the theme set and statement whose aspects I(T, s) must stay within.
std::pair<Mask, StatementId> pr_bound(const Table& table, const Statement& s, Mask t,
                                      Mask own) {
  if (auto* p = std::get_if<StatementPointer>(&s.kind))
    return {t & (own | table.bit(p->theme)), p->target};
  if (auto* c = std::get_if<SummaryPointer>(&s.kind)) return {t & (own | table.bit(c->theme)), s.id};
  return {t & own, s.id};
}

std::optional<std::string> aass_failure(const Relation& r, const EffectiveAspect& u,
                                        const EffectiveAspect& v) {
  if (!u || !v) {
    std::string missing = !u ? r.from.str() : r.to.str();
    return "no aspect for " + missing;
  }
  if (r.types.attack && *u == *v) return "attack between equal effective aspects";
  if (r.types.support && !comparable(*u, *v)) return "support between incomparable effective aspects";
  return std::nullopt;
}

std::optional<std::string> das_failure(const Relation& r, const Element& u, const Element& v) {
  if (r.types.attack && comparable(u, v)) return "attack between comparable aspects";
  if (r.types.support && !(u == v)) return "support between different aspects";
  return std::nullopt;
}

std::optional<std::string> nwci_failure(const Element& u, const Element& v) {
  auto nv = complement(v);
  if (less(nv, u)) return "weakened contradiction";
  if (!comparable(u, v) && !comparable(u, nv)) return "incomparable alternative";
  return std::nullopt;
}

template <class F>
void for_relation_subsets(Table& table, F&& f) {
  const auto& rels = table.model().relations();
  for (std::size_t ri = 0; ri < rels.size(); ++ri) {
    const auto& r = rels[ri];
    auto from = table.model().statement_index(r.from);
    auto to = table.model().statement_index(r.to);
    if (!from || !to) continue;
    const Mask rmask = table.mask_of(r.themes);
    for (Mask t = 1; t < table.subsets(); ++t)
      if (is_subset(t, rmask)) f(r, *from, *to, t);
  }
}

}  // namespace

std::vector<Violation> check_graphic(const Model& model) {
  std::vector<Violation> out;
  for (const auto& r : model.relations()) {
    const auto& a = model.themes_of(r.from);
    const auto& b = model.themes_of(r.to);
    bool typed = std::any_of(r.themes.begin(), r.themes.end(), [&](const ThemeId& t) {
      return model.has_theme(t) && a.contains(t) && b.contains(t);
    });
    if (!typed)
      out.push_back(relation_violation(ConstraintId::tr, r, "no relation theme shared by both endpoints"));
  }

  for (const auto& s : model.statements()) {
    if (auto* c = std::get_if<SummaryPointer>(&s.kind)) {
      bool found = std::any_of(model.statements().begin(), model.statements().end(),
                               [&](const Statement& o) { return model.themes_of(o.id).contains(c->theme); });
      if (!found) {
        Violation v{ConstraintId::nnp, {}};
        v.witness.statements = {s.id};
        v.witness.themes = ThemeSet{c->theme};
        v.witness.detail = "no statement carries theme " + c->theme.str();
        out.push_back(std::move(v));
      }
    }
    if (auto* p = std::get_if<StatementPointer>(&s.kind)) {
      const auto* target = model.find(p->target);
      if (!target || !model.themes_of(p->target).contains(p->theme)) {
        Violation v{ConstraintId::nnp, {}};
        v.witness.statements = {s.id, p->target};
        v.witness.themes = ThemeSet{p->theme};
        v.witness.detail = target ? p->target.str() + " does not carry theme " + p->theme.str()
                                  : p->target.str() + " is not in the graph";
        out.push_back(std::move(v));
      }
    }
  }

  for (const auto& r : model.relations())
    if (r.from == r.to && r.types.attack && !r.themes.empty())
      out.push_back(relation_violation(ConstraintId::nsa, r, "statement attacks itself"));

  for (const auto& s : model.statements()) {
    auto* p = std::get_if<StatementPointer>(&s.kind);
    if (!p || !model.find(p->target)) continue;
    ThemeSet extra;
    for (const auto& t : model.themes_of(s.id))
      if (!model.themes_of(p->target).contains(t)) extra.insert(t);
    if (!extra.empty()) {
      Violation v{ConstraintId::kos, {}};
      v.witness.statements = {s.id, p->target};
      v.witness.themes = extra;
      v.witness.detail = "pointer carries themes its target lacks";
      out.push_back(std::move(v));
    }
  }

  auto support_themes = [&](const StatementId& from, const StatementId& to) -> const ThemeSet* {
    const auto* r = model.find_relation(from, to);
    return r && r->types.support ? &r->themes : nullptr;
  };
  for (const auto& r : model.relations()) {
    if (!r.types.attack) continue;
    if (r.types.support)
      out.push_back(relation_violation(ConstraintId::nss, r, "attack also typed support"));
    for (const auto& s : model.statements()) {
      const auto* a = support_themes(s.id, r.from);
      const auto* b = support_themes(s.id, r.to);
      if (a && b && shares_theme(*a, *b)) {
        auto v = relation_violation(ConstraintId::nss, r, s.id.str() + " supports both endpoints");
        v.witness.statements.push_back(s.id);
        v.witness.themes = common(*a, *b);
        out.push_back(std::move(v));
      }
      const auto* c = support_themes(r.from, s.id);
      const auto* d = support_themes(r.to, s.id);
      if (c && d && shares_theme(*c, *d)) {
        auto v = relation_violation(ConstraintId::nss, r, "both endpoints support " + s.id.str());
        v.witness.statements.push_back(s.id);
        v.witness.themes = common(*c, *d);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

std::vector<Violation> check_core(const Model& model, const Interpretation& interp,
                                  const CheckOptions& options) {
  Table table(model, interp, options);
  std::vector<Violation> out;
  const auto& stmts = model.statements();

  for_relation_subsets(table, [&](const Relation& r, std::size_t from, std::size_t to, Mask t) {
    const auto& u = table.effective(from, t);
    const auto& v = table.effective(to, t);
    if (auto why = aass_failure(r, u, v)) {
      auto viol = relation_violation(ConstraintId::aass, r, *why);
      viol.witness.themes = table.set_of(t);
      if (u) viol.witness.elements.push_back(*u);
      if (v) viol.witness.elements.push_back(*v);
      out.push_back(std::move(viol));
    }
  });

  for (std::size_t si = 0; si < stmts.size(); ++si) {
    for (Mask t = 0; t < table.subsets(); ++t) {
      std::vector<Element> bad;
      for (const auto& x : table.aspects(si, t))
        if (!table.omega(t).contains(x)) bad.push_back(x);
      if (!bad.empty())
        out.push_back({ConstraintId::i,
                       {table.set_of(t), {}, {stmts[si].id}, {}, bad, {}, "aspects outside I(T, omega)"}});
    }
  }

  for (std::size_t si = 0; si < stmts.size(); ++si) {
    const auto& xs = table.aspects(si, 0);
    if (!xs.empty())
      out.push_back({ConstraintId::vi,
                     {ThemeSet{}, {}, {stmts[si].id}, {}, {xs.begin(), xs.end()}, {}, "aspects under no theme"}});
  }

  for (Mask t = 0; t < table.subsets(); ++t) {
    const auto& space = table.omega(t);
    if (space.empty()) continue;
    if (auto defect = space.subalgebra_defect())
      out.push_back({ConstraintId::bat, {table.set_of(t), {}, {}, {}, defect->elements, {}, defect->reason}});
  }

  for (std::size_t si = 0; si < stmts.size(); ++si) {
    const Mask own = table.statement_mask(si);
    for (Mask t = 0; t < table.subsets(); ++t) {
      auto [bound, target] = pr_bound(table, stmts[si], t, own);
      if (bound == t && target == stmts[si].id) continue;
      auto bad = difference(table.aspects(si, t), table.aspects_of(target, bound));
      if (!bad.empty())
        out.push_back({ConstraintId::pr,
                       {table.set_of(t), table.set_of(bound), {stmts[si].id, target}, {}, bad, {},
                        "aspects not inherited from I(" + to_string(table.set_of(bound)) + ", " +
                            target.str() + ")"}});
    }
  }

  // Monotonicity fails on some pair iff it fails on a pair T, T + {t}.
  for (Mask t = 0; t < table.subsets(); ++t) {
    for (Mask b = 1; b < table.subsets(); b <<= 1) {
      if (t & b) continue;
      if (auto x = table.omega(t).missing_from(table.omega(t | b)))
        out.push_back({ConstraintId::mat,
                       {table.set_of(t), table.set_of(t | b), {}, {}, {*x}, {}, "I(T, omega) shrinks"}});
    }
  }

  for (std::size_t si = 0; si < stmts.size(); ++si) {
    if (stmts[si].is_summary_pointer()) continue;
    for (Mask t = 0; t < table.subsets(); ++t) {
      for (Mask b = 1; b < table.subsets(); b <<= 1) {
        if (t & b) continue;
        auto bad = difference(table.aspects(si, t), table.aspects(si, t | b));
        if (!bad.empty())
          out.push_back({ConstraintId::manss,
                         {table.set_of(t), table.set_of(t | b), {stmts[si].id}, {}, bad, {},
                          "aspects lost on a larger theme set"}});
      }
    }
  }

  for (std::size_t si = 0; si < stmts.size(); ++si) {
    const Mask own = table.statement_mask(si);
    for (Mask t = 0; t < table.subsets(); ++t) {
      if (!is_subset(t, own)) continue;
      const auto& e = table.effective(si, t);
      if (e && (e->is_bottom() || e->is_top()))
        out.push_back({ConstraintId::ss,
                       {table.set_of(t), {}, {stmts[si].id}, {}, {*e}, {},
                        e->is_bottom() ? "effective aspect is 0" : "effective aspect is 1"}});
    }
  }
  return out;
}

std::vector<Violation> check_E(const Model& model, const Interpretation& interp,
                               const CheckOptions& options) {
  Table table(model, interp, options);
  std::vector<Violation> out;
  const auto& stmts = model.statements();
  for (Mask t1 = 0; t1 < table.subsets(); ++t1) {
    if (table.omega(t1).empty()) continue;
    for (Mask t2 = t1 + 1; t2 < table.subsets(); ++t2) {
      if (table.omega(t2).empty()) continue;
      auto in_common = [&](const Element& x) {
        return table.omega(t1).contains(x) && table.omega(t2).contains(x);
      };
      for (std::size_t si = 0; si < stmts.size(); ++si) {
        ElementSet a, b;
        for (const auto& x : table.aspects(si, t1))
          if (in_common(x)) a.insert(x);
        for (const auto& x : table.aspects(si, t2))
          if (in_common(x)) b.insert(x);
        if (a == b) continue;
        auto bad = difference(a, b);
        auto more = difference(b, a);
        bad.insert(bad.end(), more.begin(), more.end());
        const auto c = stmts[si].is_summary_pointer()     ? ConstraintId::esr
                       : stmts[si].is_statement_pointer() ? ConstraintId::ensr
                                                          : ConstraintId::eos;
        out.push_back({c,
                       {table.set_of(t1), table.set_of(t2), {stmts[si].id}, {}, bad, {},
                        "views disagree on the shared aspects"}});
      }
    }
  }
  return out;
}

std::vector<Violation> check_das(const Model& model, const Interpretation& interp,
                                 const CheckOptions& options) {
  Table table(model, interp, options);
  std::vector<Violation> out;
  for_relation_subsets(table, [&](const Relation& r, std::size_t from, std::size_t to, Mask t) {
    const auto& u = table.effective(from, t);
    const auto& v = table.effective(to, t);
    if (!u || !v) return;  // absence is reported by aass
    if (auto why = das_failure(r, *u, *v)) {
      auto viol = relation_violation(ConstraintId::das, r, *why);
      viol.witness.themes = table.set_of(t);
      viol.witness.elements = {*u, *v};
      out.push_back(std::move(viol));
    }
  });
  return out;
}

std::vector<Violation> check_nwci(const Model& model, const Interpretation& interp,
                                  const CheckOptions& options) {
  Table table(model, interp, options);
  std::vector<Violation> out;
  for_relation_subsets(table, [&](const Relation& r, std::size_t from, std::size_t to, Mask t) {
    if (!r.types.attack) return;
    const auto& u = table.effective(from, t);
    const auto& v = table.effective(to, t);
    if (!u || !v) return;
    if (auto why = nwci_failure(*u, *v)) {
      auto viol = relation_violation(ConstraintId::nwci, r, *why);
      viol.witness.themes = table.set_of(t);
      viol.witness.elements = {*u, *v};
      out.push_back(std::move(viol));
    }
  });
  return out;
}

// Statements-sets

namespace {

std::vector<std::size_t> predecessors(const Model& model, std::size_t si, const ThemeId& theme,
                                      RelationType rel) {
  std::vector<std::size_t> out;
  const auto& id = model.statements()[si].id;
  for (const auto& r : model.relations()) {
    if (!(r.to == id) || r.from == id || !r.has(rel) || !r.themes.contains(theme)) continue;
    if (!model.themes_of(r.from).contains(theme)) continue;
    if (auto from = model.statement_index(r.from)) out.push_back(*from);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void collect_paths(const Model& model, const ThemeId& theme, RelationType rel,
                   std::vector<std::size_t>& path, std::vector<bool>& on_path,
                   std::map<std::vector<std::size_t>, std::vector<std::size_t>>& found) {
  auto key = path;
  std::sort(key.begin(), key.end());
  found.try_emplace(std::move(key), path);
  for (auto p : predecessors(model, path.back(), theme, rel)) {
    if (on_path[p]) continue;
    on_path[p] = true;
    path.push_back(p);
    collect_paths(model, theme, rel, path, on_path, found);
    path.pop_back();
    on_path[p] = false;
  }
}

}  // namespace

std::vector<StatementsSet> statements_sets(const Model& model, const StatementId& anchor,
                                           const ThemeId& theme, RelationType rel,
                                           StatementsSetKind kind) {
  auto si = model.statement_index(anchor);
  if (!si) throw UnknownId("unknown statement '" + anchor.str() + "'");
  StatementsSet single{kind, anchor, theme, rel, {anchor}, {anchor}};
  if (!model.themes_of(anchor).contains(theme)) return {single};

  const auto& stmts = model.statements();
  if (kind == StatementsSetKind::width) {
    for (auto p : predecessors(model, *si, theme, rel)) single.members.insert(stmts[p].id);
    single.path.assign(single.members.begin(), single.members.end());
    return {single};
  }

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> found;
  std::vector<std::size_t> path{*si};
  std::vector<bool> on_path(stmts.size(), false);
  on_path[*si] = true;
  collect_paths(model, theme, rel, path, on_path, found);

  std::vector<StatementsSet> out;
  for (const auto& [members, witness] : found) {
    bool dominated = std::any_of(found.begin(), found.end(), [&](const auto& other) {
      return other.first.size() > members.size() &&
             std::includes(other.first.begin(), other.first.end(), members.begin(), members.end());
    });
    if (dominated) continue;
    StatementsSet s{kind, anchor, theme, rel, {}, {}};
    for (auto m : members) s.members.insert(stmts[m].id);
    for (auto it = witness.rbegin(); it != witness.rend(); ++it) s.path.push_back(stmts[*it].id);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const StatementsSet& a, const StatementsSet& b) { return a.members < b.members; });
  return out;
}

std::vector<ElementSet> minimal_representations(const Algebra& algebra, const ElementSet& aspects,
                                                std::size_t cap) {
  if (aspects.empty()) return {};
  if (aspects.size() > cap || aspects.size() > 24)
    throw CapExceeded("minimal representations need at most " + std::to_string(cap) + " aspects");
  const std::vector<Element> xs(aspects.begin(), aspects.end());
  const auto n = static_cast<unsigned>(xs.size());
  const auto target = inf_set(algebra, aspects);
  std::vector<std::uint32_t> minimal;
  for (unsigned k = 1; k <= n; ++k) {
    // Gosper's hack: all n-bit masks with k bits set, ascending.
    for (std::uint32_t mask = (1U << k) - 1; mask < (1U << n);) {
      bool covers = std::any_of(minimal.begin(), minimal.end(),
                                [&](std::uint32_t f) { return (f & mask) == f; });
      if (!covers) {
        auto acc = algebra.top();
        for (unsigned i = 0; i < n; ++i)
          if ((mask >> i) & 1U) acc = meet(acc, xs[i]);
        if (acc == target) minimal.push_back(mask);
      }
      const std::uint32_t c = mask & -mask;
      const std::uint32_t r = mask + c;
      if (r == 0) break;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  std::vector<ElementSet> out;
  for (auto mask : minimal) {
    ElementSet s;
    for (unsigned i = 0; i < n; ++i)
      if ((mask >> i) & 1U) s.insert(xs[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementSet> minimal_representations(const Model& model, const Interpretation& interp,
                                                const ThemeSet& themes, const StatementId& s,
                                                std::size_t cap) {
  return minimal_representations(interp.algebra(), lookup(model, interp, themes, s), cap);
}

std::optional<Redundancy> find_redundancy(const Model& model, const Interpretation& interp,
                                          const ThemeId& theme,
                                          const std::set<StatementId>& members, std::size_t cap) {
  std::vector<std::pair<StatementId, std::vector<ElementSet>>> reps;
  for (const auto& s : members)
    reps.emplace_back(s, minimal_representations(model, interp, {theme}, s, cap));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      for (const auto& d : reps[a].second) {
        if (std::find(reps[b].second.begin(), reps[b].second.end(), d) != reps[b].second.end())
          return Redundancy{reps[a].first, reps[b].first, d};
      }
    }
  }
  return std::nullopt;
}

std::vector<Violation> check_F(const Model& model, const Interpretation& interp,
                               const CheckOptions& options) {
  std::vector<Violation> out;
  for (const auto kind : {StatementsSetKind::depth, StatementsSetKind::width}) {
    const auto id = kind == StatementsSetKind::depth ? ConstraintId::faD : ConstraintId::faW;
    const char* label = kind == StatementsSetKind::depth ? "depth" : "width";
    for (const auto& s : model.statements()) {
      for (const auto& t : model.themes()) {
        if (!model.themes_of(s.id).contains(t)) continue;
        for (const auto rel : {RelationType::attack, RelationType::support}) {
          for (const auto& set : statements_sets(model, s.id, t, rel, kind)) {
            if (set.members.size() < 2) continue;
            auto red = find_redundancy(model, interp, t, set.members, options.max_representation_size);
            if (!red) continue;
            Violation v{id, {}};
            v.witness.themes = ThemeSet{t};
            v.witness.statements = {red->first, red->second};
            v.witness.group = set.path;
            v.witness.elements.assign(red->shared.begin(), red->shared.end());
            v.witness.detail = std::string(label) + " set of " + s.id.str() + " (" + to_string(rel) +
                               ") repeats a minimal representation";
            out.push_back(std::move(v));
          }
        }
      }
    }
  }
  return out;
}

std::set<RelationLabel> classify_aspects(const EffectiveAspect& u, const EffectiveAspect& v) {
  if (!u || !v) return {RelationLabel::undefined};
  std::set<RelationLabel> out;
  const auto nv = complement(*v);
  if (*u == *v) out.insert(RelationLabel::affirmation);
  if (less(*u, *v)) out.insert(RelationLabel::strengthening);
  if (less(*v, *u)) out.insert(RelationLabel::weakening);
  if (leq(*u, nv)) out.insert(RelationLabel::contrary);
  if (less(nv, *u)) out.insert(RelationLabel::weakened_contradiction);
  if (!comparable(*u, *v) && !comparable(*u, nv)) out.insert(RelationLabel::incomparable_alternative);
  return out;
}

std::set<RelationLabel> classify_relation(const Model& model, const Interpretation& interp,
                                          const ThemeSet& themes, const Relation& relation) {
  return classify_aspects(effective_aspect(model, interp, themes, relation.from),
                          effective_aspect(model, interp, themes, relation.to));
}

NormalFormVerdict classify_normal_form(const Model& model, const Interpretation& interp,
                                       const std::set<ConstraintGroup>& alpha,
                                       const CheckOptions& options) {
  if (!alpha.contains(ConstraintGroup::core))
    throw std::invalid_argument("constraint selection must include Core");
  NormalFormVerdict verdict{alpha, true, {}};
  auto append = [&](std::vector<Violation> vs) {
    for (auto& v : vs) verdict.violations.push_back(std::move(v));
  };
  for (auto g : alpha) {
    switch (g) {
      case ConstraintGroup::core:
        append(check_core(model, interp, options));
        break;
      case ConstraintGroup::e:
        append(check_E(model, interp, options));
        break;
      case ConstraintGroup::das:
        append(check_das(model, interp, options));
        break;
      case ConstraintGroup::nwci:
        append(check_nwci(model, interp, options));
        break;
      case ConstraintGroup::f:
        append(check_F(model, interp, options));
        break;
    }
  }
  std::stable_sort(verdict.violations.begin(), verdict.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.constraint < b.constraint; });
  verdict.normal = verdict.violations.empty();
  return verdict;
}

// Reconfirmation goes through the public lookup functions rather than Table.

namespace {

ElementSet aspects_or_empty(const Model& model, const Interpretation& interp, const ThemeSet& ts,
                            const StatementId& s) {
  return model.find(s) ? lookup(model, interp, ts, s) : ElementSet{};
}

bool all_in(const std::vector<Element>& xs, const ElementSet& s) {
  return std::all_of(xs.begin(), xs.end(), [&](const Element& x) { return s.contains(x); });
}

}  // namespace

bool reconfirm(const Model& model, const Interpretation& interp, const Violation& v) {
  const auto& w = v.witness;
  const Relation* rel = w.relation ? model.find_relation(w.relation->from, w.relation->to) : nullptr;
  auto graphic_still_fails = [&] {
    for (const auto& g : check_graphic(model))
      if (g.constraint == v.constraint && g.witness.statements == w.statements &&
          g.witness.relation == w.relation)
        return true;
    return false;
  };
  switch (v.constraint) {
    case ConstraintId::tr:
    case ConstraintId::nnp:
    case ConstraintId::nsa:
    case ConstraintId::kos:
    case ConstraintId::nss:
      return graphic_still_fails();
    case ConstraintId::aass: {
      if (!rel || !w.themes) return false;
      return aass_failure(*rel, effective_aspect(model, interp, *w.themes, rel->from),
                          effective_aspect(model, interp, *w.themes, rel->to))
          .has_value();
    }
    case ConstraintId::das:
    case ConstraintId::nwci: {
      if (!rel || !w.themes) return false;
      auto u = effective_aspect(model, interp, *w.themes, rel->from);
      auto x = effective_aspect(model, interp, *w.themes, rel->to);
      if (!u || !x) return false;
      return v.constraint == ConstraintId::das ? das_failure(*rel, *u, *x).has_value()
                                               : rel->types.attack && nwci_failure(*u, *x).has_value();
    }
    case ConstraintId::i: {
      if (!w.themes || w.statements.empty() || w.elements.empty()) return false;
      const auto& space = theme_aspects(model, interp, *w.themes);
      return all_in(w.elements, lookup(model, interp, *w.themes, w.statements[0])) &&
             std::none_of(w.elements.begin(), w.elements.end(),
                          [&](const Element& x) { return space.contains(x); });
    }
    case ConstraintId::vi:
      return !w.statements.empty() && !lookup(model, interp, {}, w.statements[0]).empty();
    case ConstraintId::bat: {
      if (!w.themes) return false;
      const auto& space = theme_aspects(model, interp, *w.themes);
      return !space.empty() && !space.is_subalgebra();
    }
    case ConstraintId::pr: {
      if (!w.themes || !w.other_themes || w.statements.size() < 2 || w.elements.empty()) return false;
      auto bound = aspects_or_empty(model, interp, *w.other_themes, w.statements[1]);
      return all_in(w.elements, lookup(model, interp, *w.themes, w.statements[0])) &&
             std::none_of(w.elements.begin(), w.elements.end(),
                          [&](const Element& x) { return bound.contains(x); });
    }
    case ConstraintId::mat: {
      if (!w.themes || !w.other_themes || w.elements.empty()) return false;
      if (!std::includes(w.other_themes->begin(), w.other_themes->end(), w.themes->begin(),
                         w.themes->end()))
        return false;
      return theme_aspects(model, interp, *w.themes).contains(w.elements[0]) &&
             !theme_aspects(model, interp, *w.other_themes).contains(w.elements[0]);
    }
    case ConstraintId::manss: {
      if (!w.themes || !w.other_themes || w.statements.empty() || w.elements.empty()) return false;
      auto small = lookup(model, interp, *w.themes, w.statements[0]);
      auto large = lookup(model, interp, *w.other_themes, w.statements[0]);
      return all_in(w.elements, small) &&
             std::none_of(w.elements.begin(), w.elements.end(),
                          [&](const Element& x) { return large.contains(x); });
    }
    case ConstraintId::ss: {
      if (!w.themes || w.statements.empty()) return false;
      const auto& own = model.themes_of(w.statements[0]);
      if (!std::includes(own.begin(), own.end(), w.themes->begin(), w.themes->end())) return false;
      auto e = effective_aspect(model, interp, *w.themes, w.statements[0]);
      return e && (e->is_bottom() || e->is_top());
    }
    case ConstraintId::esr:
    case ConstraintId::ensr:
    case ConstraintId::eos: {
      if (!w.themes || !w.other_themes || w.statements.empty()) return false;
      const auto& o1 = theme_aspects(model, interp, *w.themes);
      const auto& o2 = theme_aspects(model, interp, *w.other_themes);
      auto view = [&](const ThemeSet& ts) {
        ElementSet out;
        for (const auto& x : lookup(model, interp, ts, w.statements[0]))
          if (o1.contains(x) && o2.contains(x)) out.insert(x);
        return out;
      };
      return view(*w.themes) != view(*w.other_themes);
    }
    case ConstraintId::faD:
    case ConstraintId::faW: {
      if (!w.themes || w.themes->size() != 1 || w.statements.size() != 2) return false;
      const ElementSet shared(w.elements.begin(), w.elements.end());
      for (const auto& s : w.statements) {
        auto reps = minimal_representations(model, interp, *w.themes, s);
        if (std::find(reps.begin(), reps.end(), shared) == reps.end()) return false;
      }
      return true;
    }
  }
  return false;
}

// Witness synthesis

CoreWitness synthesize_core_witness(const Model& model, const SynthesisOptions& options) {
  if (auto issues = validate_wellformed(model); !issues.empty())
    throw SynthesisError(SynthesisError::Kind::precondition,
                         "model not well-formed: " + issues.front().subject + ": " + issues.front().message);
  std::vector<Violation> blocking;
  for (auto& v : check_graphic(model))
    if (v.constraint != ConstraintId::nss) blocking.push_back(std::move(v));
  if (!blocking.empty())
    throw SynthesisError(SynthesisError::Kind::precondition,
                         std::string(to_string(blocking.front().constraint)) + " violated", blocking);

  const auto& themes = model.themes();
  const std::size_t m = themes.size();
  const auto ordinary = model.ordinary_statements();
  const std::size_t n = ordinary.size();
  const std::size_t chain = n + n * m + m;
  const std::size_t props_needed = m * chain;
  if (props_needed > options.max_props)
    throw SynthesisError(SynthesisError::Kind::cap, "witness needs " + std::to_string(props_needed) +
                                                        " props, cap is " + std::to_string(options.max_props));

  std::vector<std::string> props;
  auto prop_name = [](std::size_t j, std::size_t i) {
    return "w" + std::to_string(j + 1) + "_" + std::to_string(i + 1);
  };
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < chain; ++i) props.push_back(prop_name(j, i));
  Algebra algebra(props, AlgebraOptions{.max_props = std::max(options.max_props, props.size())});
  CoreWitness w{algebra, Interpretation(algebra, DefaultMode::union_of_singletons), {}};

  // x(j, i) = w_{j,i} & ... & w_{j,L}: a strict chain 0 < x(j,0) < ... < x(j,L-1) < 1.
  std::vector<std::vector<Element>> x(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto acc = algebra.top();
    std::vector<std::string> names;
    x[j].resize(chain, algebra.top());
    for (std::size_t i = chain; i-- > 0;) {
      acc = meet(acc, algebra.prop(j * chain + i));
      names.insert(names.begin(), prop_name(j, i));
      x[j][i] = acc;
      std::string text;
      for (const auto& nm : names) text += (text.empty() ? "" : " & ") + nm;
      w.formulas.add(acc, text);
    }
  }
  auto tail = [&](std::size_t j, std::size_t from) {
    return ElementSet(x[j].begin() + static_cast<std::ptrdiff_t>(from), x[j].end());
  };

  auto ordinary_index = [&](const StatementId& id) -> std::optional<std::size_t> {
    auto it = std::find(ordinary.begin(), ordinary.end(), id);
    if (it == ordinary.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ordinary.begin());
  };

  std::map<StatementId, std::vector<ElementSet>> singles;
  for (const auto& s : model.statements()) {
    const auto& own = model.themes_of(s.id);
    auto& per_theme = singles[s.id];
    per_theme.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& tj = themes[j];
      if (s.is_ordinary()) {
        if (own.contains(tj)) per_theme[j] = tail(j, *ordinary_index(s.id));
      } else if (auto* p = std::get_if<StatementPointer>(&s.kind)) {
        const auto i = *ordinary_index(p->target);
        const auto l = *model.theme_index(p->theme);
        if (model.themes_of(p->target).contains(tj) && (tj == p->theme || own.contains(tj)))
          per_theme[j] = tail(j, n + l * n + i);
      } else if (auto* c = std::get_if<SummaryPointer>(&s.kind)) {
        const auto l = *model.theme_index(c->theme);
        if (tj == c->theme || own.contains(tj)) per_theme[j] = {x[j][n + n * m + l]};
      }
      if (!per_theme[j].empty()) w.interpretation.set_statement_aspects({tj}, s.id, per_theme[j]);
    }
  }

  const std::uint32_t subsets = std::uint32_t{1} << m;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    ThemeSet ts;
    ElementSet gens;
    for (std::size_t j = 0; j < m; ++j) {
      if (!((mask >> j) & 1U)) continue;
      ts.insert(themes[j]);
      for (std::size_t i = 0; i < chain; ++i) gens.insert(algebra.prop(j * chain + i));
    }
    w.interpretation.set_theme_aspects(ts, AspectSpace::generated(algebra, gens));
    // Summary pointers are not defaulted, so their unions are written out.
    if (std::popcount(mask) < 2) continue;
    for (const auto& s : model.statements()) {
      if (!s.is_summary_pointer()) continue;
      ElementSet all;
      for (std::size_t j = 0; j < m; ++j)
        if ((mask >> j) & 1U) all.insert(singles[s.id][j].begin(), singles[s.id][j].end());
      if (!all.empty()) w.interpretation.set_statement_aspects(ts, s.id, all);
    }
  }

  CheckOptions check;
  check.max_themes = std::max<std::size_t>(check.max_themes, m);
  auto violations = check_core(model, w.interpretation, check);
  if (!violations.empty())
    throw SynthesisError(SynthesisError::Kind::verification,
                         std::string("construction fails ") + to_string(violations.front().constraint) +
                             " on this graph",
                         violations);
  return w;
}

}  // namespace taam
