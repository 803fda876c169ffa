#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataltl/formula.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchBounds {
  std::size_t max_len = 4;
  std::vector<std::string> props;
  std::vector<std::string> attrs;
  /// Number of distinct values; nullopt lets every present slot be fresh.
  std::optional<std::size_t> max_values;
  /// Attributes that must be present at every position.
  std::set<std::string> complete;
  /// Words checked before giving up with BudgetExceeded.
  std::size_t budget = 20'000'000;
  unsigned threads = 1;
  /// Optional pruning on the proposition set of position p (1-based) in a
  /// word of length len; only sound when every model passes it.
  std::function<bool(std::size_t p, std::size_t len, const std::set<std::string>& props)> letter_filter;
  std::function<bool(std::size_t len)> length_filter;
};

enum class SearchOutcome { Sat, BoundedUnsat, BudgetExceeded };
std::string to_string(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::BoundedUnsat;
  std::optional<AttributedWord> model;
  std::size_t words_checked = 0;
  SearchBounds bounds;
};

/// Words of length 1..max_len in lexicographic order (propositions by
/// position, then attribute presence, then values). Values are restricted
/// growth sequences over the present slots (position-major, attributes in
/// declared order), so every word is reached exactly once up to renaming.
/// Returns the first word satisfying phi at position 1.
SearchResult find_model(const Formula& phi, const SearchBounds& b);

/// Same order, but every value assignment over [0, V) with V = max_values or
/// the number of present slots. Used as a reference for find_model.
SearchResult find_model_naive(const Formula& phi, const SearchBounds& b);

/// Visits the canonical words of one length in search order; stop by
/// returning false.
void for_each_canonical_word(const SearchBounds& b, std::size_t len,
                             const std::function<bool(const AttributedWord&)>& visit);

struct EquisatReport {
  SearchResult original;
  SearchResult encoded;
  bool agree = false;
};

/// Searches chi over b and structure & t(chi) over the 1-attributed encoding
/// with length bound max_len * m. Values are unbounded on both sides so the
/// two searches cover corresponding word sets; the encoded search prunes
/// letters that violate the structure formula's per-position invariants.
EquisatReport check_equisat(const Formula& chi, const SearchBounds& b);

std::string search_result_json(const SearchResult& r, int indent = 2);

}  // namespace dataltl
