#pragma once

#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "taam/model.hpp"

namespace taam {

/// The part of a model visible under a theme set.
struct SubModel {
  Model model;
  ThemeSet themes;
};

/// Statements and relations carrying some theme of `themes`, typed by the
/// intersection. Relations losing an endpoint are dropped. nullopt when
/// nothing in the model carries any of the themes. Throws UnknownId.
std::optional<SubModel> sub_model(const Model& model, const ThemeSet& themes);

enum class SemanticsId { grounded, complete, preferred, stable, naive };
const char* to_string(SemanticsId s);
std::optional<SemanticsId> parse_semantics(std::string_view name);

using Extension = std::set<StatementId>;

// Non-grounded semantics enumerate conflict-free sets.
inline constexpr std::size_t kMaxArguments = 30;

/// Extensions over the attack edges only, sorted.
std::vector<Extension> extensions(const Model& model, SemanticsId sem);

/// Join over the extensions of the meet of each member's effective aspect
/// under `themes`. Members without aspects are skipped, so an extension of
/// such members contributes 1. nullopt when the sub-model is undefined or
/// there is no non-empty extension.
EffectiveAspect logico_rhetorical_conclusion(const Model& model, const Interpretation& interp,
                                             const ThemeSet& themes, SemanticsId sem);

struct LogicalFallacyVerdict {
  bool fallacy = false;
  // Theme sets whose conclusion is 0, by size then lexicographically.
  std::vector<ThemeSet> witnesses;
};

/// Scans the non-empty subsets of the used themes. Throws
/// CapExceeded beyond `max_themes`.
LogicalFallacyVerdict detect_logical_fallacy(const Model& model, const Interpretation& interp,
                                             SemanticsId sem, std::size_t max_themes = 12);

}  // namespace taam
