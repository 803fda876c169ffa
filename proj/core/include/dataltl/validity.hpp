#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataltl/formula.hpp"
#include "dataltl/herd.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One occurrence of a subformula in the tree of the root formula. Marks are
/// keyed by occurrence, so equal subformulas under different freezes never
/// share marks.
struct Occurrence {
  Formula node;
  std::string path;  // "/" for the root, "/0/1" for the second child of the first child
  int parent = -1;
  std::vector<int> kids;
  bool valued() const { return node->sort != Sort::Position; }
};

/// A 1-attributed word with subformula marks and the =_r propositions.
/// Position occurrences carry one mark per position; class occurrences and
/// U-subformulas carry one mark per (position, frozen value).
class ExtendedWord {
 public:
  ExtendedWord() = default;
  ExtendedWord(AttributedWord base, Formula phi, int N);

  const AttributedWord& base() const { return base_; }
  const std::string& attr() const { return attr_; }
  const Formula& phi() const { return phi_; }
  int N() const { return N_; }
  std::size_t size() const { return base_.size(); }
  const std::vector<Occurrence>& occurrences() const { return occ_; }
  const std::vector<DataValue>& values() const { return values_; }
  std::optional<DataValue> val(std::size_t i) const { return base_.value(attr_, i); }

  /// Occurrence ids whose node equals f, in pre-order.
  std::vector<int> find(const Formula& f) const;

  bool marked(int id, std::size_t i) const;
  bool marked(int id, std::size_t i, DataValue d) const;
  void set_mark(int id, std::size_t i, bool on);
  void set_mark(int id, std::size_t i, DataValue d, bool on);
  /// Position occurrences marked at i.
  std::set<int> marks_at(std::size_t i) const;

  /// =_r at i for r in [-N,-1] and [1,N].
  bool eq(std::size_t i, int r) const;
  void set_eq(std::size_t i, int r, bool on);

  /// Row of d in the per-value mark tables, or -1.
  int row(DataValue d) const;

 private:
  void index(const Formula& f, int parent, const std::string& path);
  std::vector<char>& cell(int id, std::size_t row);
  const std::vector<char>& cell(int id, std::size_t row) const;

  AttributedWord base_;
  std::string attr_;
  Formula phi_;
  int N_ = 0;
  std::vector<Occurrence> occ_;
  std::vector<DataValue> values_;
  std::vector<std::vector<std::vector<char>>> marks_;  // [occurrence][row][position]
  std::vector<std::set<int>> eqr_;                     // [position]
};

/// Marks every occurrence with its truth and computes =_r exactly.
/// Throws ValidityError when N is below a shift of phi, the word is not
/// 1-attributed, phi mentions another attribute, or phi uses N/N-bar/pairs.
ExtendedWord build_valid_extension(const AttributedWord& w, const Formula& phi, int N);

struct Violation {
  std::size_t position = 0;
  std::optional<DataValue> value;  // set for class occurrences
};

/// First position where the marks of occurrence id disagree with its local
/// rule over the marks of its children.
std::optional<Violation> first_violation(const ExtendedWord& w, int id);
bool check_valid_wrt(const ExtendedWord& w, int id);
/// The =_r propositions agree with the base word.
bool check_eqr(const ExtendedWord& w);
/// All occurrences and =_r.
bool is_valid(const ExtendedWord& w);

// ---- s-decorations for one extended-until occurrence ----

enum Label : unsigned char { kStart = 1, kMid = 2, kEnd = 4 };
enum Color : unsigned char { kARight = 1, kALeft = 2, kCRight = 4, kCLeft = 8 };

/// Everything the automaton for one index s reads: tau_(s), psi_(s),
/// e-_(s), e+_(s), labels and colors. All vectors are 1-based.
struct SLayer {
  int s = 0;
  std::vector<char> tau, psi, e_minus, e_plus;
  std::vector<unsigned char> label;
  std::vector<unsigned char> color;
};

struct SDecoration {
  int occurrence = -1;
  int delta = 0;
  /// rho_eq, rho_neq, tau and values read off the marks.
  HerdLabels labels;
  std::vector<char> psi;
  std::map<std::size_t, int> s_assign;  // tau-position -> s
  std::vector<SLayer> layers;           // indexed by s
};

/// Labels of an extended-until occurrence computed from marks only.
HerdLabels labels_from_marks(const ExtendedWord& w, int id);

/// The canonical decoration: s handed out round-robin over the e+ positions
/// (tau-positions without an interval get s = 0), psi_(s) marked where the
/// s-restricted characterization holds, labels from the s-level intervals,
/// colorings by the two greedy procedures.
SDecoration build_s_decoration(const ExtendedWord& w, int id);

struct ConditionResult {
  std::string name;
  bool ok = true;
  std::size_t position = 0;  // first violation
  std::string detail;
};

struct ConditionReport {
  int s = 0;
  std::array<ConditionResult, 8> results;  // Col1 Col2 Spec1 Spec2 Spec3 Spec4 Log1 Log2
  bool ok() const;
  const ConditionResult& get(const std::string& name) const;
};

ConditionReport check_conditions(const SDecoration& d, int s);
std::vector<ConditionReport> check_all_conditions(const SDecoration& d);

/// psi_(s) of every layer agrees with the brute-force s-restricted
/// characterization.
bool conditions_imply_truth(const SDecoration& d);

std::string condition_report_json(const std::vector<ConditionReport>& reports, int indent = 2);

}  // namespace dataltl
