#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dataltl/classify.hpp"
#include "dataltl/formula.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class HerdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Why a position is special for a tau-position (bit flags).
enum SpecialKind : unsigned {
  kRhoFar = 1u,
  kRhoStair = 2u,
  kTauFar = 4u,
  kTauStair = 8u,
  kEmptyHerd = 16u,
};
std::string special_kind_string(unsigned kinds);

enum class HerdMode { TruthRelative, MarkRelative };

/// Labels of one extended-until formula (rho U^{!=,delta}_a tau with a single
/// attribute a) over a word. A pure intermediate disjunct rho is folded into
/// both rho_eq and rho_neq, and rho_eq is closed under rho_neq.
struct HerdLabels {
  std::string attr;
  int delta = 0;
  std::size_t n = 0;
  std::vector<std::optional<DataValue>> val;  // 1-based
  std::vector<char> rho_eq, rho_neq, tau;     // 1-based
};

HerdLabels herd_labels(const AttributedWord& w, const Formula& psi);

struct HerdReport {
  HerdLabels labels;
  std::set<std::size_t> psi_positions;
  std::map<std::size_t, std::size_t> shepherd_of;          // i -> j
  std::map<std::size_t, std::set<std::size_t>> herds;      // j -> H(j), shepherds only
  std::set<std::size_t> tau_positions;
  std::map<std::size_t, std::map<std::size_t, unsigned>> specials;  // j -> S(j) with kinds
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> intervals;  // j -> [e-, e+]
  std::set<std::size_t> unshepherded;  // psi-marked without any tau witness and rho-path

  std::set<std::size_t> special_set(std::size_t j) const;
  bool is_shepherd(std::size_t j) const { return herds.count(j) != 0; }
};

/// Shepherd/herd/special analysis. Truth-relative mode evaluates psi;
/// mark-relative mode takes the psi-positions from marks.
HerdReport analyze(const AttributedWord& w, const Formula& psi, HerdMode mode,
                   const std::set<std::size_t>& marks = {});

/// The same analysis over precomputed labels and a given psi-set.
HerdReport analyze_labels(HerdLabels labels, const std::set<std::size_t>& psi_positions);

/// psi holds at i iff the minimal j >= i+delta with tau at j and
/// a value different from i exists and every k in [i+delta, j) has rho_neq,
/// or the value of i and rho_eq. Independent of the evaluator's
/// extended-until code; relies on rho_neq implying rho_eq.
bool characterization_holds(const HerdLabels& l, std::size_t i);

struct ClaimCheck {
  std::string name;
  bool ok = true;
  std::string counterexample;
};

/// The four interval claims about special sets and intervals, checked literally.
std::array<ClaimCheck, 4> verify_claims(const HerdReport& r);

std::string herd_report_text(const HerdReport& r);
std::string herd_report_json(const HerdReport& r, int indent = 2);

}  // namespace dataltl
