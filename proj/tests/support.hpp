// Shared fixtures and brute-force oracles for the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taam/constraints.hpp"
#include "taam/model.hpp"
#include "taam/model_file.hpp"

namespace taam::testing {

inline ModelDocument corpus(const std::string& name) {
  return read_model_document(std::string(TAAM_CORPUS_DIR) + "/" + name + ".json");
}

inline std::set<ConstraintId> ids_of(const std::vector<Violation>& vs) {
  std::set<ConstraintId> out;
  for (const auto& v : vs) out.insert(v.constraint);
  return out;
}

inline bool edge_ok(const Model& m, const StatementId& from, const StatementId& to, const ThemeId& t,
                    RelationType rel) {
  const auto* r = m.find_relation(from, to);
  return r && r->has(rel) && r->themes.contains(t);
}

inline bool node_ok(const Model& m, const StatementId& s, const ThemeId& t) {
  return m.themes_of(s).contains(t);
}

/// Attack chain s1 > s4 > s6 on t2, support chains s2 > s5 > s6 and s3 > s6 on t1.
inline Model reference_graph() {
  Model m;
  m.add_theme("t1");
  m.add_theme("t2");
  for (const auto* s : {"s1", "s4"}) m.add_statement({s, Ordinary{}}, {"t2"});
  for (const auto* s : {"s2", "s3", "s5"}) m.add_statement({s, Ordinary{}}, {"t1"});
  m.add_statement({"s6", Ordinary{}}, {"t1", "t2"});
  m.add_relation({"s1", "s4", {.attack = true}, {"t2"}});
  m.add_relation({"s4", "s6", {.attack = true}, {"t2"}});
  m.add_relation({"s2", "s5", {.support = true}, {"t1"}});
  m.add_relation({"s5", "s6", {.support = true}, {"t1"}});
  m.add_relation({"s3", "s6", {.support = true}, {"t1"}});
  return m;
}

/// Every subset containing the anchor, kept if some ordering of it is a
/// valid path ending at the anchor; then the inclusion-maximal ones.
inline std::set<std::set<StatementId>> brute_depth(const Model& m, const StatementId& anchor,
                                                   const ThemeId& t, RelationType rel) {
  std::vector<StatementId> others;
  for (const auto& s : m.statements())
    if (!(s.id == anchor)) others.push_back(s.id);
  std::vector<std::set<StatementId>> valid;
  for (std::uint32_t mask = 0; mask < (1U << others.size()); ++mask) {
    std::vector<StatementId> chosen;
    for (std::size_t i = 0; i < others.size(); ++i)
      if ((mask >> i) & 1U) chosen.push_back(others[i]);
    std::sort(chosen.begin(), chosen.end());
    bool ok = false;
    do {
      std::vector<StatementId> seq = chosen;
      seq.push_back(anchor);
      bool good = std::all_of(seq.begin(), seq.end(), [&](const StatementId& s) { return node_ok(m, s, t); });
      for (std::size_t i = 0; good && i + 1 < seq.size(); ++i)
        good = edge_ok(m, seq[i], seq[i + 1], t, rel);
      ok = good;
    } while (!ok && std::next_permutation(chosen.begin(), chosen.end()));
    if (ok) {
      std::set<StatementId> s(chosen.begin(), chosen.end());
      s.insert(anchor);
      valid.push_back(std::move(s));
    }
  }
  std::set<std::set<StatementId>> out;
  for (const auto& s : valid) {
    bool dominated = std::any_of(valid.begin(), valid.end(), [&](const auto& o) {
      return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
    });
    if (!dominated) out.insert(s);
  }
  return out;
}

/// Largest set with the anchor in which every other member has an edge to the
/// anchor; checked by scanning all subsets.
inline std::set<std::set<StatementId>> brute_width(const Model& m, const StatementId& anchor,
                                                   const ThemeId& t, RelationType rel) {
  if (!node_ok(m, anchor, t)) return {{anchor}};
  std::vector<StatementId> others;
  for (const auto& s : m.statements())
    if (!(s.id == anchor)) others.push_back(s.id);
  std::vector<std::set<StatementId>> valid;
  for (std::uint32_t mask = 0; mask < (1U << others.size()); ++mask) {
    std::set<StatementId> s{anchor};
    bool ok = true;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (!((mask >> i) & 1U)) continue;
      s.insert(others[i]);
      ok = ok && node_ok(m, others[i], t) && edge_ok(m, others[i], anchor, t, rel);
    }
    if (ok) valid.push_back(std::move(s));
  }
  std::set<std::set<StatementId>> out;
  for (const auto& s : valid) {
    bool dominated = std::any_of(valid.begin(), valid.end(), [&](const auto& o) {
      return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
    });
    if (!dominated) out.insert(s);
  }
  return out;
}

/// Random graph over up to `max_nodes` ordinary statements and themes t1, t2.
inline Model random_graph(std::mt19937_64& rng, std::size_t max_nodes, double edge_p = 0.35) {
  Model m;
  m.add_theme("t1");
  m.add_theme("t2");
  const std::size_t n = 1 + rng() % max_nodes;
  std::bernoulli_distribution coin(0.5), edge(edge_p);
  for (std::size_t i = 0; i < n; ++i) {
    ThemeSet ts;
    if (coin(rng)) ts.insert("t1");
    if (coin(rng) || ts.empty()) ts.insert("t2");
    m.add_statement({"s" + std::to_string(i + 1), Ordinary{}}, ts);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!edge(rng)) continue;
      RelationTypes types{coin(rng), false};
      types.support = !types.attack || coin(rng);
      ThemeSet ts;
      if (coin(rng)) ts.insert("t1");
      if (coin(rng) || ts.empty()) ts.insert("t2");
      m.add_relation({"s" + std::to_string(a + 1), "s" + std::to_string(b + 1), types, ts});
    }
  }
  return m;
}

}  // namespace taam::testing

namespace taam::testing {

/// Dung semantics straight from the definitions, over std::set and a full
/// subset scan. Independent of the bitmask code in the library.
inline std::vector<std::set<StatementId>> brute_extensions(const Model& m, const std::string& sem) {
  using S = std::set<StatementId>;
  std::vector<StatementId> args;
  for (const auto& s : m.statements()) args.push_back(s.id);
  auto attacks = [&](const StatementId& a, const StatementId& b) {
    const auto* r = m.find_relation(a, b);
    return r && r->types.attack;
  };
  auto conflict_free = [&](const S& s) {
    for (const auto& a : s)
      for (const auto& b : s)
        if (attacks(a, b)) return false;
    return true;
  };
  auto defends = [&](const S& s, const StatementId& a) {
    for (const auto& b : args) {
      if (!attacks(b, a)) continue;
      bool countered = false;
      for (const auto& c : s) countered = countered || attacks(c, b);
      if (!countered) return false;
    }
    return true;
  };
  auto admissible = [&](const S& s) {
    if (!conflict_free(s)) return false;
    for (const auto& a : s)
      if (!defends(s, a)) return false;
    return true;
  };
  auto complete = [&](const S& s) {
    if (!admissible(s)) return false;
    for (const auto& a : args)
      if (defends(s, a) && !s.contains(a)) return false;
    return true;
  };
  auto stable = [&](const S& s) {
    if (!conflict_free(s)) return false;
    for (const auto& a : args) {
      if (s.contains(a)) continue;
      bool hit = false;
      for (const auto& c : s) hit = hit || attacks(c, a);
      if (!hit) return false;
    }
    return true;
  };
  std::vector<S> all;
  for (std::uint32_t mask = 0; mask < (1U << args.size()); ++mask) {
    S s;
    for (std::size_t i = 0; i < args.size(); ++i)
      if ((mask >> i) & 1U) s.insert(args[i]);
    all.push_back(std::move(s));
  }
  auto filter = [&](auto pred) {
    std::vector<S> out;
    for (const auto& s : all)
      if (pred(s)) out.push_back(s);
    return out;
  };
  auto maximal = [](const std::vector<S>& xs) {
    std::vector<S> out;
    for (const auto& s : xs) {
      bool dominated = std::any_of(xs.begin(), xs.end(), [&](const S& o) {
        return o.size() > s.size() && std::includes(o.begin(), o.end(), s.begin(), s.end());
      });
      if (!dominated) out.push_back(s);
    }
    return out;
  };
  std::vector<S> out;
  if (sem == "complete") out = filter(complete);
  if (sem == "preferred") out = maximal(filter(admissible));
  if (sem == "stable") out = filter(stable);
  if (sem == "naive") out = maximal(filter(conflict_free));
  if (sem == "grounded") {
    // Least complete extension: the intersection of all complete extensions.
    auto cs = filter(complete);
    S g = cs.front();
    for (const auto& c : cs) {
      S keep;
      std::set_intersection(g.begin(), g.end(), c.begin(), c.end(), std::inserter(keep, keep.end()));
      g = keep;
    }
    out = {g};
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random attack graph over `n` statements, all typed {t}.
inline Model random_attack_graph(std::mt19937_64& rng, std::size_t n, double p) {
  Model m;
  m.add_theme("t");
  for (std::size_t i = 0; i < n; ++i) m.add_statement({"a" + std::to_string(i), Ordinary{}}, {"t"});
  std::bernoulli_distribution edge(p);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (edge(rng)) m.add_relation({"a" + std::to_string(a), "a" + std::to_string(b), {.attack = true}, {"t"}});
  return m;
}

}  // namespace taam::testing
