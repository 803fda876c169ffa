#include "doctest.h"
#include "dataltl/encoder.hpp"
#include "dataltl/eval.hpp"
#include "dataltl/random.hpp"
#include "dataltl/syntax.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace dataltl;

TEST_SUITE("semantics") {
  TEST_CASE("worked positions of the herd word") {
    const auto w = fixtures::herd_word();
    const auto psi = fixtures::herd_psi();
    CHECK(eval_position(w, 3, psi));
    CHECK(eval_position(w, 8, psi));  // j = 10 right at the shift, no intermediates
    CHECK_FALSE(eval_position(w, 9, psi));  // 9 + 2 leaves the word
    CHECK_FALSE(eval_position(w, 10, psi));
    CHECK(eval_position(w, 4, parse("p | !p")));
  }

  TEST_CASE("class and U-subformula atoms") {
    const auto w = fixtures::herd_word();
    CHECK(eval_class(w, 1, 1, f::class_next(f::attr_is("a"))));
    CHECK_FALSE(eval_class(w, 10, 3, f::class_next(f::top())));
    CHECK(eval_usub(w, 10, 1, f::attr_neq("a")));
    CHECK_FALSE(eval_usub(w, 10, 3, f::attr_neq("a")));
    CHECK(eval_usub(w, 10, 3, f::attr_eq("a")));
    // absent attribute: neither equal nor different
    const auto x = fixtures::two_attr_word();
    CHECK_FALSE(eval_usub(x, 1, 7, f::attr_neq("a2")));
    CHECK_FALSE(eval_usub(x, 1, 7, f::attr_eq("a2")));
  }

  TEST_CASE("freeze needs a value and an in-range shift") {
    const auto x = fixtures::two_attr_word();
    CHECK_FALSE(eval_position(x, 1, parse("C[0]{a2} true")));
    CHECK(eval_position(x, 1, parse("C[0]{a1} true")));
    CHECK_FALSE(eval_position(x, 3, parse("C[1]{a1} true")));
    CHECK(eval_position(x, 3, parse("C[-2]{a1} true")));
  }

  TEST_CASE("client/server request is answered") {
    // B requests at 1 with value 2 and is served at 3 (same value).
    std::vector<Position> ps(3);
    ps[0].props = {"q_B"};
    ps[0].attrs = {{"B", 2}};
    ps[1].attrs = {{"B", 5}};
    ps[2].props = {"s_B"};
    ps[2].attrs = {{"B", 2}};
    const AttributedWord w({"q_B", "s_B"}, {"B"}, ps);
    CHECK_FALSE(holds(w, parse("C[0]{B} ((@B -> !q_B) U= (@B & s_B))")));  // 1 itself requests
    CHECK(holds(w, parse("C[0]{B} X= ((@B -> !q_B) U= (@B & s_B))")));
    CHECK(holds(w, parse("C[0]{B} X= (@B & s_B)")));
  }

  TEST_CASE("repeating-value atoms") {
    const auto w = make_one_attributed("x", {5, 5}, {{}, {}});
    CHECK(eval_cltl_atom(w, 1, {CltlAtom::Kind::Shift, "x", "x", 1}));
    const auto v = make_one_attributed("x", {5, 6, 5}, {{}, {}, {}});
    CHECK(eval_cltl_atom(v, 1, {CltlAtom::Kind::Future, "x", "x", 0}));
    CHECK_FALSE(eval_cltl_atom(v, 2, {CltlAtom::Kind::Future, "x", "x", 0}));
    CHECK_FALSE(eval_cltl_atom(v, 3, {CltlAtom::Kind::Future, "x", "x", 0}));
  }

  TEST_CASE("from-now-on and up-to-now") {
    const auto w = make_one_attributed("a", {1, 2, 3}, {{"p"}, {}, {}});
    CHECK(eval_position(w, 3, parse("P p")));
    CHECK_FALSE(eval_position(w, 3, parse("N P p")));
    CHECK(eval_position(w, 1, parse("F !p")));
    CHECK_FALSE(eval_position(w, 1, parse("Nbar F !p")));
  }

  TEST_CASE("property: evaluator agrees with the reference semantics") {
    SplitMix64 rng(31);
    WordGen wg;
    wg.max_len = 7;
    wg.values = 3;
    FormulaGen fg;
    fg.depth = 5;
    fg.max_delta = 2;
    fg.beyond = true;
    fg.implication_safe = false;
    std::size_t checked = 0;
    for (int t = 0; t < 3000; ++t) {
      const auto w = random_word(rng, wg);
      const auto phi = random_formula(rng, fg);
      Evaluator ev(w);
      oracle::Oracle o(w);
      for (std::size_t i = 1; i <= w.size(); ++i) {
        const bool a = ev.at(phi, i), b = o.pos(phi, i);
        if (a != b) FAIL_CHECK(print(phi) << " at " << i << " on " << word_to_json(w));
        ++checked;
      }
    }
    CHECK(checked > 10000);
  }

  TEST_CASE("property: class formulas agree with the reference semantics") {
    SplitMix64 rng(32);
    WordGen wg;
    wg.max_len = 6;
    FormulaGen fg;
    for (int t = 0; t < 1500; ++t) {
      const auto w = random_word(rng, wg);
      const auto psi = random_class_formula(rng, fg, 4);
      Evaluator ev(w, {0, 1, 2, 3});  // values missing from w too
      oracle::Oracle o(w);
      for (std::size_t i = 1; i <= w.size(); ++i)
        for (DataValue d = 0; d < wg.values; ++d)
          if (ev.at(psi, i, d) != o.cls(psi, i, d)) FAIL_CHECK(print(psi) << " at " << i << " d=" << d);
    }
  }

  TEST_CASE("property: renaming values never changes truth") {
    SplitMix64 rng(33);
    WordGen wg;
    FormulaGen fg;
    fg.depth = 4;
    for (int t = 0; t < 1000; ++t) {
      const auto w = random_word(rng, wg);
      const auto phi = random_formula(rng, fg);
      // an injective renaming: d -> 3d + 7
      std::vector<Position> ps = w.positions();
      for (auto& p : ps)
        for (auto& [a, v] : p.attrs) v = 3 * v + 7;
      const AttributedWord r(w.props_alphabet(), w.attrs_alphabet(), ps);
      Evaluator e1(w), e2(r);
      for (std::size_t i = 1; i <= w.size(); ++i) CHECK(e1.at(phi, i) == e2.at(phi, i));
    }
  }

  TEST_CASE("property: repeating-value atoms match their translation") {
    SplitMix64 rng(34);
    WordGen wg;
    wg.absent = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto w = random_word(rng, wg);
      CltlAtom at;
      at.kind = rng.chance(0.5) ? CltlAtom::Kind::Shift : CltlAtom::Kind::Future;
      at.x = rng.pick(wg.attrs);
      at.y = rng.pick(wg.attrs);
      at.delta = at.kind == CltlAtom::Kind::Shift ? rng.range(-2, 2) : 0;
      const auto phi = translate_cltl(at);
      for (std::size_t i = 1; i <= w.size(); ++i) CHECK(eval_cltl_atom(w, i, at) == eval_position(w, i, phi));
    }
  }
}
