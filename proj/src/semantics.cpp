#include "taam/semantics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace taam {

std::optional<SubModel> sub_model(const Model& model, const ThemeSet& themes) {
  for (const auto& t : themes)
    if (!model.has_theme(t)) throw UnknownId("unknown theme '" + t.str() + "'");

  auto restrict = [&](const ThemeSet& ts) {
    ThemeSet out;
    for (const auto& t : ts)
      if (themes.contains(t)) out.insert(t);
    return out;
  };

  SubModel sm;
  sm.themes = themes;
  for (const auto& t : model.themes())
    if (themes.contains(t)) sm.model.add_theme(t);

  bool defined = false;
  std::set<StatementId> kept;
  for (const auto& s : model.statements()) {
    auto ts = restrict(model.themes_of(s.id));
    if (ts.empty()) continue;
    defined = true;
    kept.insert(s.id);
    sm.model.add_statement(s, std::move(ts));
  }
  for (const auto& r : model.relations()) {
    auto ts = restrict(r.themes);
    if (ts.empty()) continue;
    defined = true;
    if (!kept.contains(r.from) || !kept.contains(r.to)) continue;
    sm.model.add_relation({r.from, r.to, r.types, std::move(ts)});
  }
  if (!defined) return std::nullopt;
  return sm;
}

const char* to_string(SemanticsId s) {
  switch (s) {
    case SemanticsId::grounded: return "grounded";
    case SemanticsId::complete: return "complete";
    case SemanticsId::preferred: return "preferred";
    case SemanticsId::stable: return "stable";
    case SemanticsId::naive: return "naive";
  }
  return "?";
}

std::optional<SemanticsId> parse_semantics(std::string_view name) {
  for (auto s : {SemanticsId::grounded, SemanticsId::complete, SemanticsId::preferred, SemanticsId::stable,
                 SemanticsId::naive})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

namespace {

using Mask = std::uint64_t;

struct AttackGraph {
  std::vector<StatementId> args;
  std::vector<Mask> attackers;  // attackers[i]: who attacks i
  std::vector<Mask> attacks;    // attacks[i]: whom i attacks

  Mask attacked_by(Mask s) const {
    Mask out = 0;
    for (Mask rest = s; rest; rest &= rest - 1) out |= attacks[std::countr_zero(rest)];
    return out;
  }
  // Arguments all of whose attackers are attacked by s.
  Mask defended_by(Mask s) const {
    const Mask hit = attacked_by(s);
    Mask out = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
      if ((attackers[i] & ~hit) == 0) out |= Mask{1} << i;
    return out;
  }
  Extension to_extension(Mask s) const {
    Extension out;
    for (Mask rest = s; rest; rest &= rest - 1) out.insert(args[std::countr_zero(rest)]);
    return out;
  }
};

AttackGraph attack_graph(const Model& model) {
  AttackGraph g;
  for (const auto& s : model.statements()) g.args.push_back(s.id);
  if (g.args.size() > 64) throw CapExceeded("more than 64 statements");
  g.attackers.assign(g.args.size(), 0);
  g.attacks.assign(g.args.size(), 0);
  for (const auto& r : model.relations()) {
    if (!r.types.attack) continue;
    auto a = model.statement_index(r.from);
    auto b = model.statement_index(r.to);
    if (!a || !b) continue;
    g.attackers[*b] |= Mask{1} << *a;
    g.attacks[*a] |= Mask{1} << *b;
  }
  return g;
}

void conflict_free_sets(const AttackGraph& g, std::size_t i, Mask current, std::vector<Mask>& out) {
  if (i == g.args.size()) {
    out.push_back(current);
    return;
  }
  conflict_free_sets(g, i + 1, current, out);
  const Mask bit = Mask{1} << i;
  const Mask with = current | bit;
  if (((g.attackers[i] | g.attacks[i]) & with) == 0) conflict_free_sets(g, i + 1, with, out);
}

std::vector<Mask> maximal(std::vector<Mask> sets) {
  std::vector<Mask> out;
  for (Mask s : sets) {
    bool dominated = std::any_of(sets.begin(), sets.end(), [&](Mask o) { return o != s && (s & ~o) == 0; });
    if (!dominated) out.push_back(s);
  }
  return out;
}

}  // namespace

std::vector<Extension> extensions(const Model& model, SemanticsId sem) {
  const auto g = attack_graph(model);
  std::vector<Mask> chosen;
  if (sem == SemanticsId::grounded) {
    Mask s = 0;
    for (Mask next = g.defended_by(s); next != s; next = g.defended_by(s)) s = next;
    chosen.push_back(s);
  } else {
    if (g.args.size() > kMaxArguments)
      throw CapExceeded(std::string(to_string(sem)) + " semantics limited to " +
                                 std::to_string(kMaxArguments) + " statements");
    std::vector<Mask> cf;
    conflict_free_sets(g, 0, 0, cf);
    auto admissible = [&](Mask s) { return (s & ~g.defended_by(s)) == 0; };
    switch (sem) {
      case SemanticsId::complete:
        for (Mask s : cf)
          if (g.defended_by(s) == s) chosen.push_back(s);
        break;
      case SemanticsId::preferred: {
        std::vector<Mask> adm;
        for (Mask s : cf)
          if (admissible(s)) adm.push_back(s);
        chosen = maximal(std::move(adm));
        break;
      }
      case SemanticsId::stable: {
        const Mask all = g.args.size() == 64 ? ~Mask{0} : (Mask{1} << g.args.size()) - 1;
        for (Mask s : cf)
          if ((s | g.attacked_by(s)) == all) chosen.push_back(s);
        break;
      }
      case SemanticsId::naive:
        chosen = maximal(std::move(cf));
        break;
      case SemanticsId::grounded:
        break;
    }
  }
  std::vector<Extension> out;
  for (Mask s : chosen) out.push_back(g.to_extension(s));
  std::sort(out.begin(), out.end());
  return out;
}

EffectiveAspect logico_rhetorical_conclusion(const Model& model, const Interpretation& interp,
                                             const ThemeSet& themes, SemanticsId sem) {
  auto sm = sub_model(model, themes);
  if (!sm) return std::nullopt;
  auto exts = extensions(sm->model, sem);
  if (std::none_of(exts.begin(), exts.end(), [](const Extension& e) { return !e.empty(); })) return std::nullopt;
  const auto& alg = interp.algebra();
  Element result = alg.bottom();
  for (const auto& ext : exts) {
    Element m = alg.top();
    for (const auto& s : ext)
      if (auto u = effective_aspect(model, interp, themes, s)) m = meet(m, *u);
    result = join(result, m);
  }
  return result;
}

LogicalFallacyVerdict detect_logical_fallacy(const Model& model, const Interpretation& interp,
                                             SemanticsId sem, std::size_t max_themes) {
  const auto used = model.used_themes();
  std::vector<ThemeId> themes;
  for (const auto& t : used)
    if (model.has_theme(t)) themes.push_back(t);
  if (themes.size() > max_themes)
    throw CapExceeded(std::to_string(themes.size()) + " themes exceed the limit of " +
                               std::to_string(max_themes));
  std::vector<ThemeSet> subsets;
  for (Mask mask = 1; mask < (Mask{1} << themes.size()); ++mask) {
    ThemeSet ts;
    for (std::size_t i = 0; i < themes.size(); ++i)
      if ((mask >> i) & 1U) ts.insert(themes[i]);
    subsets.push_back(std::move(ts));
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const ThemeSet& a, const ThemeSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  LogicalFallacyVerdict verdict;
  for (const auto& ts : subsets) {
    auto c = logico_rhetorical_conclusion(model, interp, ts, sem);
    if (c && c->is_bottom()) verdict.witnesses.push_back(ts);
  }
  verdict.fallacy = !verdict.witnesses.empty();
  return verdict;
}

}  // namespace taam
