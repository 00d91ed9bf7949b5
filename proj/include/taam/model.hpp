#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "taam/algebra.hpp"

namespace taam {

/// String identifier that cannot be confused with identifiers of another kind.
template <class Tag>
class Id {
 public:
  Id() = default;
  Id(std::string value) : value_(std::move(value)) {}  // NOLINT: implicit on purpose
  Id(const char* value) : value_(value) {}             // NOLINT
  const std::string& str() const { return value_; }
  auto operator<=>(const Id&) const = default;

 private:
  std::string value_;
};

using ThemeId = Id<struct ThemeTag>;
using StatementId = Id<struct StatementTag>;
using ThemeSet = std::set<ThemeId>;

/// Identifier of the summary aspect collection in files.
inline constexpr const char* kOmegaId = "@omega";

class UnknownId : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ordinary {
  auto operator<=>(const Ordinary&) const = default;
};
/// The statement t.a: what statement `target` says about theme `theme`.
struct StatementPointer {
  ThemeId theme;
  StatementId target;
  auto operator<=>(const StatementPointer&) const = default;
};
/// The statement t.C: a summary of everything said about `theme`.
struct SummaryPointer {
  ThemeId theme;
  auto operator<=>(const SummaryPointer&) const = default;
};
using StatementKind = std::variant<Ordinary, StatementPointer, SummaryPointer>;

struct Statement {
  StatementId id;
  StatementKind kind;

  bool is_ordinary() const { return std::holds_alternative<Ordinary>(kind); }
  bool is_statement_pointer() const { return std::holds_alternative<StatementPointer>(kind); }
  bool is_summary_pointer() const { return std::holds_alternative<SummaryPointer>(kind); }
  std::optional<ThemeId> pointer_theme() const;
};

struct RelationTypes {
  bool attack = false;
  bool support = false;
  bool empty() const { return !attack && !support; }
  auto operator<=>(const RelationTypes&) const = default;
};

enum class RelationType { attack, support };
const char* to_string(RelationType t);

struct Relation {
  StatementId from;
  StatementId to;
  RelationTypes types;
  ThemeSet themes;

  bool has(RelationType t) const { return t == RelationType::attack ? types.attack : types.support; }
};

/// Argument graph with theme typing. Mutators accept invalid data on purpose;
/// validate_wellformed reports what is wrong.
class Model {
 public:
  void add_theme(ThemeId theme);
  void add_statement(Statement statement, ThemeSet themes);
  /// A relation over an existing (from, to) pair is merged into it.
  void add_relation(Relation relation);

  const std::vector<ThemeId>& themes() const { return themes_; }
  const std::vector<Statement>& statements() const { return statements_; }
  const std::vector<Relation>& relations() const { return relations_; }

  bool has_theme(const ThemeId& t) const;
  std::optional<std::size_t> theme_index(const ThemeId& t) const;
  const Statement* find(const StatementId& id) const;
  std::optional<std::size_t> statement_index(const StatementId& id) const;
  const Relation* find_relation(const StatementId& from, const StatementId& to) const;
  /// Empty for unknown ids.
  const ThemeSet& themes_of(const StatementId& id) const;
  /// Themes carried by some statement or relation.
  ThemeSet used_themes() const;
  std::vector<StatementId> ordinary_statements() const;

 private:
  std::vector<ThemeId> themes_;
  std::vector<Statement> statements_;
  std::map<StatementId, ThemeSet> statement_themes_;
  std::vector<Relation> relations_;
};

struct Issue {
  std::string subject;
  std::string message;
};

std::vector<Issue> validate_wellformed(const Model& model);

enum class DefaultMode { union_of_singletons, empty };

/// Aspect assignment for a model: I(T, omega) per theme set and I(T, s) per
/// (theme set, statement). Missing entries are filled by lookup().
class Interpretation {
 public:
  explicit Interpretation(Algebra algebra, DefaultMode mode = DefaultMode::union_of_singletons)
      : algebra_(std::move(algebra)), mode_(mode) {}

  const Algebra& algebra() const { return algebra_; }
  DefaultMode default_mode() const { return mode_; }

  void set_theme_aspects(ThemeSet themes, AspectSpace aspects);
  void set_statement_aspects(ThemeSet themes, StatementId statement, ElementSet aspects);

  const AspectSpace* explicit_theme_aspects(const ThemeSet& themes) const;
  const ElementSet* explicit_statement_aspects(const ThemeSet& themes,
                                               const StatementId& statement) const;

  const std::map<ThemeSet, AspectSpace>& theme_entries() const { return theme_aspects_; }
  const std::map<std::pair<ThemeSet, StatementId>, ElementSet>& statement_entries() const {
    return statement_aspects_;
  }

 private:
  Algebra algebra_;
  DefaultMode mode_;
  std::map<ThemeSet, AspectSpace> theme_aspects_;
  std::map<std::pair<ThemeSet, StatementId>, ElementSet> statement_aspects_;
};

std::vector<Issue> validate_interpretation(const Model& model, const Interpretation& interp);

/// I(T, s). An explicit entry wins. Otherwise, in union mode and for anything
/// but a summary pointer, the union of the singleton entries over T. The empty
/// theme set is never defaulted. Throws UnknownId for unknown themes or statements.
ElementSet lookup(const Model& model, const Interpretation& interp, const ThemeSet& themes,
                  const StatementId& statement);

/// I(T, omega); never defaulted, so a missing entry is the empty collection.
const AspectSpace& theme_aspects(const Model& model, const Interpretation& interp,
                                 const ThemeSet& themes);

/// Meet of the aspects, or nullopt when there are none.
using EffectiveAspect = std::optional<Element>;

EffectiveAspect effective_aspect(const Algebra& algebra, const ElementSet& aspects);
EffectiveAspect effective_aspect(const Model& model, const Interpretation& interp,
                                 const ThemeSet& themes, const StatementId& statement);

std::string to_string(const ThemeSet& themes);

}  // namespace taam
