#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "taam/aspect_lang.hpp"
#include "taam/model.hpp"

namespace taam {

class ModelFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model file: the graph, an optional interpretation and the formula text
/// each element was authored with.
struct ModelDocument {
  Model model;
  std::optional<Interpretation> interpretation;
  FormulaBook formulas;
};

/// JSON layout:
///   themes, props, statements [{id, kind, theme, target, themes}],
///   relations [{from, to, types, themes}],
///   interpretation {default, theme_aspects [{themes, aspects | "ALL" | generated_by}],
///                   statement_aspects [{themes, statement, aspects}]}
/// A pointer's target "@summary" makes it a summary pointer; statement "@omega"
/// in statement_aspects is another way to write theme_aspects.
ModelDocument parse_model_document(std::string_view json_text);
ModelDocument read_model_document(const std::filesystem::path& path);

std::string write_model_document(const Model& model, const Interpretation* interp,
                                 const FormulaBook& formulas);

}  // namespace taam
