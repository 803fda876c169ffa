#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dataltl/classify.hpp"
#include "dataltl/eval.hpp"
#include "dataltl/gadgets.hpp"
#include "dataltl/satsearch.hpp"
#include "dataltl/syntax.hpp"

using namespace dataltl;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(DATALTL_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Conjunct& named(const std::vector<Conjunct>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("no conjunct " + name);
}

// q0 -inc1-> q1 -ifzero1-> q2 -dec1-> q3
MinskyMachine zero_test_between() {
  MinskyMachine m;
  m.states = {"q0", "q1", "q2", "q3"};
  m.initial = "q0";
  m.accepting = {"q3"};
  m.transitions = {{"q0", CounterAction::Inc1, "q1"},
                   {"q1", CounterAction::IfZero1, "q2"},
                   {"q2", CounterAction::Dec1, "q3"}};
  return m;
}

// The run the machine above would take if the zero test were not checked.
AttributedWord cheating_run() {
  std::vector<Position> ps(3);
  ps[0].props = {"q1", "inc1"};
  ps[0].attrs = {{"a", 1}};
  ps[1].props = {"q2", "ifzero1"};
  ps[1].attrs = {{"a", 2}};
  ps[2].props = {"q3", "dec1"};
  ps[2].attrs = {{"a", 1}};
  return AttributedWord({"q0", "q1", "q2", "q3", "inc1", "inc2", "dec1", "dec2", "ifzero1", "ifzero2"}, {"a"}, ps);
}

}  // namespace

TEST_SUITE("gadgets") {
  TEST_CASE("trivial PCP instance") {
    const PCPInstance p{{{"a", "a"}}};
    const auto w = pcp_witness(p, {1});
    CHECK(w.size() == 2);
    CHECK(holds(w, pcp_formula(p)));
  }

  TEST_CASE("PCP witness satisfies every conjunct") {
    std::vector<std::size_t> sol;
    const auto p = pcp_from_json(slurp("pcp_small.json"), &sol);
    CHECK(sol == std::vector<std::size_t>{1, 2});
    const auto w = pcp_witness(p, sol);
    for (const auto& c : pcp_conjuncts(p)) CHECK_MESSAGE(holds(w, c.formula), c.name);
    CHECK(classify(pcp_formula(p)).fragment == Fragment::BeyondDecidable);
  }

  TEST_CASE("a broken pairing is noticed") {
    const PCPInstance p{{{"a", "a"}}};
    auto w = pcp_witness(p, {1});
    Position x = w.at(2);
    x.attrs["b"] = 99;
    w = with_position(w, 2, x);
    CHECK_FALSE(holds(w, named(pcp_conjuncts(p), "pairing").formula));
    CHECK_FALSE(holds(w, pcp_formula(p)));
  }

  TEST_CASE("PCP witness preconditions") {
    const PCPInstance p{{{"a", "ab"}, {"ba", "a"}}};
    CHECK(pcp_witness(p, {1, 2}).size() == 6);  // an even number of pairs is fine
    CHECK_THROWS_AS(pcp_witness(p, {}), GadgetError);
    CHECK_THROWS_AS(pcp_witness(p, {1}), GadgetError);  // not a solution
    CHECK_THROWS_AS(pcp_witness(p, {3}), GadgetError);
    const PCPInstance even{{{"ab", "ab"}}};
    CHECK_THROWS_AS(pcp_witness(even, {1}), GadgetError);  // solution word of even length
    const PCPInstance empty_word{{{"", "a"}}};
    CHECK_THROWS_AS(empty_word.validate(), GadgetError);
  }

  TEST_CASE("value chains of even length are refused") {
    // u_a u_b v_b v_a with the v-chain read backwards
    std::vector<Position> ps(4);
    const char* letters[] = {"u_a", "u_b", "v_b", "v_a"};
    const DataValue a[] = {0, 0, 0, 0}, b[] = {0, 1, 1, 0};
    for (int k = 0; k < 4; ++k) {
      ps[k].props = {letters[k]};
      ps[k].attrs = {{"a", a[k]}, {"b", b[k]}};
    }
    const AttributedWord w({"u_a", "v_a", "u_b", "v_b"}, {"a", "b"}, ps);
    const PCPInstance p{{{"ab", "ba"}}};
    CHECK_FALSE(holds(w, named(pcp_conjuncts(p), "chain-end-u").formula));
    CHECK_FALSE(holds(w, pcp_formula(p)));
  }

  TEST_CASE("an unsolvable instance has no short model") {
    // u and v never agree on the first symbol
    const PCPInstance p{{{"ab", "ba"}}};
    SearchBounds b;
    b.max_len = 4;
    b.attrs = {"a", "b"};
    for (char c : p.alphabet()) {
      b.props.push_back(pcp_letter(c));
      b.props.push_back(pcp_bar_letter(c));
    }
    b.complete = {"a", "b"};
    // the block conjuncts force the projection (u_a u_b v_b v_a)^k
    const std::vector<std::string> block{"u_a", "u_b", "v_b", "v_a"};
    b.length_filter = [](std::size_t len) { return len % 4 == 0; };
    b.letter_filter = [&](std::size_t pos, std::size_t, const std::set<std::string>& s) {
      return s == std::set<std::string>{block[(pos - 1) % 4]};
    };
    CHECK(find_model(pcp_formula(p), b).outcome == SearchOutcome::BoundedUnsat);
  }

  TEST_CASE("counter machine run") {
    std::vector<std::size_t> run;
    const auto m = minsky_from_json(slurp("minsky_small.json"), &run);
    const auto w = minsky_run_word(m, run);
    CHECK(w.size() == 2);
    for (const auto& c : minsky_conjuncts(m)) CHECK_MESSAGE(holds(w, c.formula), c.name);
    for (const auto& c : undu_conjuncts(m)) CHECK_MESSAGE(holds(w, c.formula), c.name);
    CHECK_THROWS_AS(minsky_run_word(m, {}), GadgetError);
    CHECK_THROWS_AS(minsky_run_word(m, {1}), GadgetError);
    CHECK_THROWS_AS(minsky_run_word(m, {0}), GadgetError);  // ends in q1
  }

  TEST_CASE("a zero test inside an open increment is refused") {
    const auto m = zero_test_between();
    CHECK_THROWS_AS(minsky_run_word(m, {0, 1, 2}), GadgetError);
    const auto w = cheating_run();
    for (const auto& cs : {minsky_conjuncts(m), undu_conjuncts(m)})
      for (const auto& c : cs) CHECK_MESSAGE(holds(w, c.formula) == (c.name != "zero-tests"), c.name);
  }

  TEST_CASE("fragments of the machine formulas") {
    const auto m = zero_test_between();
    CHECK(classify(minsky_formula(m)).fragment == Fragment::BeyondDecidable);
    CHECK(classify(undu_formula(m)).fragment == Fragment::BeyondDecidable);
  }

  TEST_CASE("an unmatched increment is refused") {
    MinskyMachine m;
    m.states = {"q0", "q1"};
    m.initial = "q0";
    m.accepting = {"q1"};
    m.transitions = {{"q0", CounterAction::Inc1, "q1"}};
    std::vector<Position> ps(1);
    ps[0].props = {"q1", "inc1"};
    ps[0].attrs = {{"a", 1}};
    const AttributedWord w({"q0", "q1", "inc1", "inc2", "dec1", "dec2", "ifzero1", "ifzero2"}, {"a"}, ps);
    CHECK_FALSE(holds(w, minsky_formula(m)));
    CHECK_FALSE(holds(w, undu_formula(m)));
  }

  TEST_CASE("action names") {
    for (auto a : {CounterAction::Inc1, CounterAction::Inc2, CounterAction::Dec1, CounterAction::Dec2,
                   CounterAction::IfZero1, CounterAction::IfZero2})
      CHECK(counter_action_from_string(to_string(a)) == a);
    CHECK_THROWS_AS(counter_action_from_string("nop"), GadgetError);
  }

  TEST_CASE("property: random instances and their witnesses") {
    SplitMix64 rng(91);
    for (int t = 0; t < 10; ++t) {
      const auto pc = random_pcp_case(rng, 1 + rng.below(3));
      CHECK(holds(pcp_witness(pc.instance, pc.solution), pcp_formula(pc.instance)));
      const auto mc = random_minsky_case(rng, 2 + 2 * rng.below(4));
      const auto w = minsky_run_word(mc.machine, mc.run);
      CHECK(holds(w, minsky_formula(mc.machine)));
      CHECK(holds(w, undu_formula(mc.machine)));
    }
  }
}
