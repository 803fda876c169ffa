#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dataltl {

/// Which layer a node lives in: position formulas are evaluated at (w,i),
/// class formulas and U-subformulas at (w,i,d) for a frozen value d.
enum class Sort : unsigned char { Position, Class, USub };

enum class Op : unsigned char {
  // position layer
  True,
  False,
  Prop,
  Not,  // also class layer
  And,  // also class and U-subformula layers
  Or,   // also class and U-subformula layers
  Next,
  Prev,
  Until,
  Since,
  Freeze,      // C^delta_a psi
  UneqUntil,   // rho U^{!=,delta}_a tau
  UneqSince,   // rho S^{!=,delta}_a tau
  FromNow,     // N
  UpToNow,     // N-bar
  PairNext,    // X_{@a,@b}
  PairPrev,    // Y_{@a,@b}
  // class layer
  Lift,  // also U-subformula layer
  AttrIs,
  ClassNext,
  ClassPrev,
  ClassUntil,
  ClassSince,
  // U-subformula layer
  AttrEq,
  AttrNeq,
};

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Sort sort;
  std::string name;   // proposition, frozen/tested attribute, or first pair attribute
  std::string name2;  // second pair attribute
  int delta = 0;
  std::vector<Formula> kids;
  std::size_t hash = 0;

  const Formula& kid(std::size_t k = 0) const { return kids.at(k); }
};

bool equal(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};

/// Smart constructors. They keep lifts maximal (a Boolean combination of
/// lifted position formulas is itself a single lift), which makes every
/// constructed tree canonical and printing/parsing a bijection.
namespace f {

Formula top();
Formula bottom();
Formula prop(const std::string& p);
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula conj_all(const std::vector<Formula>& xs, Sort sort = Sort::Position);
Formula disj_all(const std::vector<Formula>& xs, Sort sort = Sort::Position);

Formula next(Formula a);
Formula prev(Formula a);
Formula next_n(Formula a, int n);  // n < 0 means prev
Formula until(Formula a, Formula b);
Formula since(Formula a, Formula b);
Formula eventually(Formula a);
Formula always(Formula a);
Formula once(Formula a);
Formula historically(Formula a);

Formula freeze(int delta, const std::string& a, Formula psi);
/// @a = X^delta @b
Formula attr_shift_eq(const std::string& a, int delta, const std::string& b);
Formula uneq_until(const std::string& a, int delta, Formula rho, Formula tau);
Formula uneq_since(const std::string& a, int delta, Formula rho, Formula tau);
Formula from_now(Formula a);
Formula up_to_now(Formula a);
Formula pair_next(const std::string& a, const std::string& b, Formula phi);
Formula pair_prev(const std::string& a, const std::string& b, Formula phi);

Formula lift(Formula position_formula, Sort to);
Formula attr_is(const std::string& a);
Formula class_next(Formula a);
Formula class_prev(Formula a);
Formula class_until(Formula a, Formula b);
Formula class_since(Formula a, Formula b);
Formula class_eventually(Formula a);
Formula class_always(Formula a);
Formula class_once(Formula a);
Formula class_historically(Formula a);

Formula attr_eq(const std::string& b);
Formula attr_neq(const std::string& b);

}  // namespace f

/// Rebuilds node n with replacement children through the smart constructors.
Formula rebuild(const Formula& n, std::vector<Formula> kids);

/// Visits every node once in post-order (children before parents).
std::vector<Formula> subformulas(const Formula& phi);
std::size_t formula_size(const Formula& phi);
std::size_t formula_depth(const Formula& phi);
std::set<std::string> propositions_of(const Formula& phi);
std::set<std::string> attributes_of(const Formula& phi);
/// Largest |delta| over Freeze / UneqUntil / UneqSince nodes.
int max_shift(const Formula& phi);

std::string to_string(Op op);

}  // namespace dataltl
