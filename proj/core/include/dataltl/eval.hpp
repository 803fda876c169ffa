#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dataltl/formula.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bottom-up labelling evaluator. Position formulas get one truth vector
/// over positions; class formulas and U-subformulas get one vector per
/// data value occurring in the word (plus any extra values registered at
/// construction). Results are memoised per node for the evaluator's lifetime.
class Evaluator {
 public:
  explicit Evaluator(const AttributedWord& w, const std::vector<DataValue>& extra_values = {});

  const AttributedWord& word() const { return w_; }
  std::size_t size() const { return n_; }

  /// w, i |= phi  (phi a position formula, 1 <= i <= |w|).
  bool at(const Formula& phi, std::size_t i);
  /// w, i, d |= psi  (psi a class formula or U-subformula).
  bool at(const Formula& psi, std::size_t i, DataValue d);

  /// Truth vector indexed 1..|w| (index 0 and |w|+1 are false).
  const std::vector<char>& truth(const Formula& phi);
  /// Truth vector of a class/U-subformula for frozen value d.
  const std::vector<char>& truth(const Formula& psi, DataValue d);

  /// Index of d in the value table, or -1.
  int value_index(DataValue d) const;
  const std::vector<DataValue>& value_table() const { return vals_; }
  /// Value index of attribute a at every position (-1 when absent).
  const std::vector<int>& attr_column(const std::string& a);

 private:
  using Vec = std::vector<char>;
  using Mat = std::vector<Vec>;  // [value index][position]

  const Vec& pos(const Formula& phi);
  const Mat& cls(const Formula& psi);
  Vec compute_pos(const Formula& phi);
  Mat compute_cls(const Formula& psi);
  void check_index(std::size_t i) const;

  AttributedWord w_;
  std::size_t n_;
  std::vector<DataValue> vals_;
  std::unordered_map<DataValue, int> vidx_;
  std::unordered_map<std::string, std::vector<int>> cols_;
  std::vector<std::vector<char>> in_class_;  // [value][position]
  std::unordered_map<const Node*, Vec> pmemo_;
  std::unordered_map<const Node*, Mat> cmemo_;
  std::vector<Formula> keep_;  // keeps memo keys alive
};

bool eval_position(const AttributedWord& w, std::size_t i, const Formula& phi);
bool eval_class(const AttributedWord& w, std::size_t i, DataValue d, const Formula& psi);
bool eval_usub(const AttributedWord& w, std::size_t i, DataValue d, const Formula& chi);
/// w |= phi, i.e. evaluation at position 1. Throws EvalError on the empty word.
bool holds(const AttributedWord& w, const Formula& phi);

/// Atom of the logic of repeating values: x = X^delta y, or x = <>y.
struct CltlAtom {
  enum class Kind { Shift, Future };
  Kind kind = Kind::Shift;
  std::string x, y;
  int delta = 0;
};

/// Direct semantics of a repeating-values atom on a complete word.
bool eval_cltl_atom(const AttributedWord& w, std::size_t i, const CltlAtom& atom);

}  // namespace dataltl
