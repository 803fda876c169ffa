#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataltl/word.hpp"

namespace dataltl {

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A letter is the set of propositions at a position. A transition guard of
/// nullopt matches every letter.
using Letter = std::set<std::string>;
using LetterGuard = std::optional<Letter>;

bool guard_matches(const LetterGuard& g, const Letter& x);

/// Register automaton over one attribute. States are 0..states-1 and
/// registers 1..registers; all registers start empty.
struct RegisterAutomaton {
  struct Compare {
    int from = 0;
    int reg = 1;
    LetterGuard letter;
    int to = 0;
  };
  struct Store {
    int from = 0;
    LetterGuard letter;
    int to = 0;
    int reg = 1;
  };
  std::vector<std::string> props;
  int states = 1;
  int initial = 0;
  int registers = 1;
  std::vector<Compare> compare;
  std::vector<Store> store;
  std::set<int> accepting;

  /// Throws AutomatonError on out-of-range states or registers.
  void validate() const;
};

/// Compare transitions fire when the current value sits in the named
/// register; store transitions fire when the value is in no register.
bool ra_accepts(const RegisterAutomaton& a, const AttributedWord& w);

/// Letter-to-letter transducer (the base) plus an NFA over its outputs (the
/// class automaton). Output symbols are 0..gamma.size()-1.
struct DataAutomaton {
  struct BaseTransition {
    int from = 0;
    LetterGuard letter;
    int output = 0;
    int to = 0;
  };
  struct ClassTransition {
    int from = 0;
    int symbol = 0;
    int to = 0;
  };
  std::vector<std::string> props;
  std::vector<std::string> gamma;
  int base_states = 1;
  int base_initial = 0;
  std::vector<BaseTransition> base;
  std::set<int> base_accepting;
  int class_states = 1;
  int class_initial = 0;
  std::vector<ClassTransition> klass;
  std::set<int> class_accepting;

  void validate() const;
};

struct DaStats {
  std::size_t nodes = 0;  // search nodes expanded
  std::size_t runs = 0;   // complete base runs reached
};

/// Some accepting base run yields an output whose every class string is
/// accepted by the class automaton. Depth-first over base runs, memoized on
/// (position, base state, class state sets).
bool da_accepts(const DataAutomaton& a, const AttributedWord& w, DaStats* stats = nullptr);

/// Intersection: paired base states and outputs, paired class automata.
DataAutomaton da_product(const DataAutomaton& a, const DataAutomaton& b);

/// One state, accepts everything over the given propositions.
DataAutomaton da_universal(const std::vector<std::string>& props);

RegisterAutomaton register_automaton_from_json(const std::string& text);
std::string register_automaton_to_json(const RegisterAutomaton& a, int indent = 2);
DataAutomaton data_automaton_from_json(const std::string& text);
std::string data_automaton_to_json(const DataAutomaton& a, int indent = 2);

}  // namespace dataltl
