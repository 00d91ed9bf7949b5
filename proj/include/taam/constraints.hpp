#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "taam/algebra.hpp"
#include "taam/aspect_lang.hpp"
#include "taam/model.hpp"

namespace taam {

enum class ConstraintId {
  // graphic
  tr, nnp, nsa, kos, nss,
  // Core
  aass, i, vi, bat, pr, mat, manss, ss,
  // E
  esr, ensr, eos,
  das, nwci,
  // F
  faD, faW,
};

const char* to_string(ConstraintId id);
std::optional<ConstraintId> parse_constraint_id(std::string_view name);

enum class ConstraintGroup { core, e, das, nwci, f };
const char* to_string(ConstraintGroup g);
std::optional<ConstraintGroup> parse_constraint_group(std::string_view name);
std::vector<ConstraintId> constraints_in(ConstraintGroup g);

struct RelationRef {
  StatementId from;
  StatementId to;
  auto operator<=>(const RelationRef&) const = default;
};

/// Enough coordinates to re-evaluate one failing instance of a constraint.
struct Witness {
  std::optional<ThemeSet> themes;
  // Second theme set for constraints over pairs of theme sets.
  std::optional<ThemeSet> other_themes;
  std::vector<StatementId> statements;
  std::optional<RelationRef> relation;
  std::vector<Element> elements;
  // Members of the statements-set a redundancy was found in.
  std::vector<StatementId> group;
  std::string detail;
};

struct Violation {
  ConstraintId constraint;
  Witness witness;
};

struct CheckOptions {
  // Theme subsets are enumerated exhaustively, so this bounds 2^m work.
  std::size_t max_themes = 12;
  std::size_t max_representation_size = 16;
};

std::vector<Violation> check_graphic(const Model& model);
std::vector<Violation> check_core(const Model& model, const Interpretation& interp,
                                  const CheckOptions& options = {});
std::vector<Violation> check_E(const Model& model, const Interpretation& interp,
                               const CheckOptions& options = {});
std::vector<Violation> check_das(const Model& model, const Interpretation& interp,
                                 const CheckOptions& options = {});
std::vector<Violation> check_nwci(const Model& model, const Interpretation& interp,
                                  const CheckOptions& options = {});
std::vector<Violation> check_F(const Model& model, const Interpretation& interp,
                               const CheckOptions& options = {});

/// Re-evaluates the single instance named by the witness; true when it still fails.
bool reconfirm(const Model& model, const Interpretation& interp, const Violation& v);

enum class StatementsSetKind { width, depth };

struct StatementsSet {
  StatementsSetKind kind;
  StatementId anchor;
  ThemeId theme;
  RelationType rel;
  std::set<StatementId> members;
  // For depth sets, one witnessing path ending at the anchor.
  std::vector<StatementId> path;
};

/// Maximal width or depth sets anchored at `anchor`. Requires theme in the
/// anchor's themes; otherwise only the singleton anchor set is returned.
std::vector<StatementsSet> statements_sets(const Model& model, const StatementId& anchor,
                                           const ThemeId& theme, RelationType rel,
                                           StatementsSetKind kind);

/// Minimal non-empty subsets with the same meet as `aspects`.
std::vector<ElementSet> minimal_representations(const Algebra& algebra, const ElementSet& aspects,
                                                std::size_t cap = 16);
std::vector<ElementSet> minimal_representations(const Model& model, const Interpretation& interp,
                                                const ThemeSet& themes, const StatementId& s,
                                                std::size_t cap = 16);

struct Redundancy {
  StatementId first;
  StatementId second;
  ElementSet shared;
};

/// A pair in `members` sharing a minimal representation of their aspects under {theme}.
std::optional<Redundancy> find_redundancy(const Model& model, const Interpretation& interp,
                                          const ThemeId& theme,
                                          const std::set<StatementId>& members,
                                          std::size_t cap = 16);

enum class RelationLabel {
  affirmation,
  strengthening,
  weakening,
  contrary,
  weakened_contradiction,
  incomparable_alternative,
  undefined,
};
const char* to_string(RelationLabel l);

std::set<RelationLabel> classify_aspects(const EffectiveAspect& u, const EffectiveAspect& v);
std::set<RelationLabel> classify_relation(const Model& model, const Interpretation& interp,
                                          const ThemeSet& themes, const Relation& relation);

struct NormalFormVerdict {
  std::set<ConstraintGroup> alpha;
  bool normal = true;
  std::vector<Violation> violations;
};

/// Core must be in alpha.
NormalFormVerdict classify_normal_form(const Model& model, const Interpretation& interp,
                                       const std::set<ConstraintGroup>& alpha,
                                       const CheckOptions& options = {});

class SynthesisError : public std::runtime_error {
 public:
  enum class Kind { precondition, cap, verification };
  SynthesisError(Kind kind, const std::string& message, std::vector<Violation> violations = {})
      : std::runtime_error(message), kind_(kind), violations_(std::move(violations)) {}
  Kind kind() const { return kind_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  Kind kind_;
  std::vector<Violation> violations_;
};

struct CoreWitness {
  Algebra algebra;
  Interpretation interpretation;
  // Authored text of every element the construction uses.
  FormulaBook formulas;
};

struct SynthesisOptions {
  // Bound on themes * (ordinary + themes * ordinary + themes) props.
  std::size_t max_props = 20;
};

/// Chain-based interpretation satisfying Core, verified with check_core.
CoreWitness synthesize_core_witness(const Model& model, const SynthesisOptions& options = {});

}  // namespace taam
