#pragma once

#include <optional>
#include <string>

#include "dataltl/formula.hpp"

namespace dataltl {

enum class Fragment { BasicDataLTL, ExtendedDataLTL, BeyondDecidable };

/// Outcome of checking "rho_neq implies rho_eq" for the extended Until.
enum class ImplicationStatus { NotApplicable, Syntactic, Verified, Falsified, Unknown };

struct FragmentTag {
  Fragment fragment = Fragment::BasicDataLTL;
  std::string reason;  // set for BeyondDecidable
  ImplicationStatus implication = ImplicationStatus::NotApplicable;
};

struct ClassifyOptions {
  /// Word length bound for the semantic implication search.
  std::size_t implication_max_len = 3;
  /// Number of distinct data values allowed in the search.
  std::size_t implication_max_values = 3;
  /// Node budget for the search; exceeding it yields Unknown.
  std::size_t implication_budget = 200000;
};

FragmentTag classify(const Formula& phi, const ClassifyOptions& opts = {});

std::string to_string(Fragment f);
std::string to_string(ImplicationStatus s);

/// Decomposition of an extended-Until node of the restricted shape
///   (rho | (@b & rho_eq) | (!=@b & rho_neq)) U!{a}[delta] (!=@c & tau).
/// Absent parts are nullptr (rho, rho_eq, rho_neq) or true (tau).
struct UneqShape {
  bool until = true;
  std::string frozen;  // a
  int delta = 0;
  Formula rho;
  std::string inter_attr;  // b; empty when neither rho_eq nor rho_neq is present
  Formula rho_eq;
  Formula rho_neq;
  std::string target_attr;  // c
  Formula tau;
};

/// Returns the decomposition, or an explanation of why the node does not fit.
std::optional<UneqShape> extended_shape(const Formula& uneq, std::string* why = nullptr);

/// Semantic check that rho_neq implies rho_eq (bounded search) with the
/// syntactic fast path rho_eq = phi | rho_neq.
ImplicationStatus check_implication(const Formula& rho_neq, const Formula& rho_eq,
                                    const ClassifyOptions& opts = {});

enum class LowerMode {
  /// Exactly the textbook rewriting.
  Literal,
  /// Adds existence guards so the result also agrees at the left word
  /// boundary and where attributes are absent.
  Guarded,
};

/// Rewrites a U!/S! node with negative shift into a shift-free formula.
/// Throws FormulaError if the node is not U!/S! or its shift is not negative.
Formula lower_shift(const Formula& uneq, LowerMode mode = LowerMode::Guarded);

/// Applies lower_shift to every negative-shift U!/S! node in phi.
Formula lower_all_shifts(const Formula& phi, LowerMode mode = LowerMode::Guarded);

}  // namespace dataltl
