#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dataltl/formula.hpp"
#include "dataltl/random.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class GadgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named conjunct of a reduction formula.
struct Conjunct {
  std::string name;
  Formula formula;
};

Formula conjoin(const std::vector<Conjunct>& cs);

// ---- PCP with pair navigation ----

/// Pairs (u_i, v_i) over single-character symbols. Both words of a pair must
/// be nonempty so blocks u_i bar(v_i) can be recognised locally.
struct PCPInstance {
  std::vector<std::pair<std::string, std::string>> pairs;

  void validate() const;
  std::vector<char> alphabet() const;
};

/// Proposition for a symbol of u, and for a barred symbol of v.
std::string pcp_letter(char c);
std::string pcp_bar_letter(char c);

/// Conjuncts over attributes a and b: block structure, chain shape
/// of the value pairs in u and in bar(v), value multiplicity, and the pairing
/// of every u-position with one bar(v)-position carrying the barred symbol.
std::vector<Conjunct> pcp_conjuncts(const PCPInstance& p);
Formula pcp_formula(const PCPInstance& p);

/// Word for a solution (1-based pair indices); the solution word must have
/// odd length so the value chains end on an unshared a-value.
AttributedWord pcp_witness(const PCPInstance& p, const std::vector<std::size_t>& solution);

// ---- two-counter machines ----

enum class CounterAction { Inc1, Inc2, Dec1, Dec2, IfZero1, IfZero2 };
std::string to_string(CounterAction a);
CounterAction counter_action_from_string(const std::string& s);

struct MinskyMachine {
  struct Transition {
    std::string from;
    CounterAction action;
    std::string to;
  };
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> accepting;
  std::vector<Transition> transitions;

  void validate() const;
};

/// Transition consistency, exactly one state and one action per
/// position, value multiplicity, and no ifzero_i between an inc_i and
/// its dec_i, via prefix evaluation.
std::vector<Conjunct> minsky_conjuncts(const MinskyMachine& m);
Formula minsky_formula(const MinskyMachine& m);

/// The same machine conjuncts, with the zero tests as an extended until
/// with a positive target.
std::vector<Conjunct> undu_conjuncts(const MinskyMachine& m);
Formula undu_formula(const MinskyMachine& m);

/// Run word for a sequence of transition indices (0-based). Values: a fresh
/// value per inc and per ifzero; a dec reuses the value of the inc it undoes.
/// Throws GadgetError on an illegal or non-accepting run.
AttributedWord minsky_run_word(const MinskyMachine& m, const std::vector<std::size_t>& run);

/// Random solvable instances for sweeps.
struct PcpCase {
  PCPInstance instance;
  std::vector<std::size_t> solution;
};
PcpCase random_pcp_case(SplitMix64& rng, std::size_t pairs);

struct MinskyCase {
  MinskyMachine machine;
  std::vector<std::size_t> run;
};
/// A line machine (one state per step) following a random legal run that
/// ends with both counters zero.
MinskyCase random_minsky_case(SplitMix64& rng, std::size_t steps);

PCPInstance pcp_from_json(const std::string& text, std::vector<std::size_t>* solution = nullptr);
MinskyMachine minsky_from_json(const std::string& text, std::vector<std::size_t>* run = nullptr);

}  // namespace dataltl
