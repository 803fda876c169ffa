#include "doctest.h"
#include "dataltl/eval.hpp"
#include "dataltl/herd.hpp"
#include "dataltl/random.hpp"
#include "dataltl/syntax.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace dataltl;

namespace {

using S = std::set<std::size_t>;

Formula shaped(int delta) {
  return parse("(rho | (@a & (req | rneq)) | (!=@a & rneq)) U!{a}[" + std::to_string(delta) + "] (!=@a & tau)");
}

AttributedWord random_labeled(SplitMix64& rng, std::size_t max_len) {
  const std::size_t n = 1 + rng.below(max_len);
  std::vector<DataValue> vals;
  std::vector<std::set<std::string>> ps(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals.push_back(rng.below(3));
    for (const char* p : {"rho", "req", "rneq", "tau"})
      if (rng.chance(std::string(p) == "rho" ? 0.15 : 0.4)) ps[i].insert(p);
  }
  return make_one_attributed("a", vals, ps, {"rho", "req", "rneq", "tau"});
}

// Minimal witness of psi at i, straight from the definition.
std::optional<std::size_t> first_witness(const AttributedWord& w, const Formula& psi, std::size_t i) {
  oracle::Oracle o(w);
  const auto d = w.value("a", i);
  if (!d) return std::nullopt;
  const std::size_t start = i + static_cast<std::size_t>(psi->delta);
  for (std::size_t j = start; j <= w.size(); ++j) {
    if (o.cls(psi->kid(1), j, *d)) return j;
    if (!o.cls(psi->kid(0), j, *d)) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("herd") {
  TEST_CASE("mark-relative report of the ten-position word") {
    const auto r = analyze(fixtures::herd_word(), fixtures::herd_psi(), HerdMode::MarkRelative, {3, 4, 6, 7});
    CHECK(r.herds.size() == 1);
    CHECK(r.herds.at(10) == S{3, 4, 6, 7});
    CHECK_FALSE(r.is_shepherd(4));
    CHECK(r.special_set(10) == S{3, 4, 6});
    CHECK((r.specials.at(10).at(6) & kRhoStair) != 0);
    CHECK((r.specials.at(10).at(3) & kRhoFar) != 0);
    CHECK((r.specials.at(10).at(4) & kRhoFar) != 0);
    CHECK(r.intervals.at(10) == std::pair<std::size_t, std::size_t>{3, 6});
    CHECK(r.tau_positions == S{4, 10});
    const std::string text = herd_report_text(r);
    CHECK(text.find("H(10)={3,4,6,7}") != std::string::npos);
    CHECK(text.find("6 is a rho-stair for {3,4} (shepherd 10)") != std::string::npos);
    CHECK(text.find("{3,4} are rho-far from 10") != std::string::npos);
    CHECK(text.find("e-(10)=3") != std::string::npos);
    CHECK(text.find("e+(10)=6") != std::string::npos);
  }

  TEST_CASE("truth-relative report of the ten-position word") {
    const auto w = fixtures::herd_word();
    const auto psi = fixtures::herd_psi();
    const auto r = analyze(w, psi, HerdMode::TruthRelative);
    CHECK(r.psi_positions == S{1, 2, 3, 4, 5, 6, 7, 8});
    for (std::size_t i = 1; i <= w.size(); ++i) CHECK(r.psi_positions.count(i) == eval_position(w, i, psi));
    CHECK(r.shepherd_of.at(2) == 4);
    for (const auto& c : verify_claims(r)) CHECK_MESSAGE(c.ok, c.name << ": " << c.counterexample);
  }

  TEST_CASE("empty report") {
    const auto w = make_one_attributed("a", {1, 1, 1}, {{}, {}, {}}, {"rho", "req", "rneq", "tau"});
    const auto r = analyze(w, shaped(0), HerdMode::TruthRelative);
    CHECK(r.psi_positions.empty());
    CHECK(r.herds.empty());
    CHECK(r.specials.empty());
    for (const auto& c : verify_claims(r)) CHECK(c.ok);
  }

  TEST_CASE("only extended-until formulas of the expected shape") {
    const auto w = fixtures::herd_word();
    CHECK_THROWS_AS(analyze(w, parse("p U q"), HerdMode::TruthRelative), HerdError);
    CHECK_THROWS_AS(analyze(w, parse("rho S!{a}[0] (!=@a & tau)"), HerdMode::TruthRelative), HerdError);
  }

  TEST_CASE("json report") {
    const auto r = analyze(fixtures::herd_word(), fixtures::herd_psi(), HerdMode::MarkRelative, {3, 4, 6, 7});
    const std::string j = herd_report_json(r, -1);
    CHECK(j.find("\"psi_positions\":[3,4,6,7]") != std::string::npos);
    CHECK(j.find("\"delta\":2") != std::string::npos);
  }

  TEST_CASE("property: shepherds are minimal witnesses and the report is consistent") {
    SplitMix64 rng(51);
    for (int t = 0; t < 2000; ++t) {
      const int delta = rng.range(0, 3);
      const auto psi = shaped(delta);
      const auto w = random_labeled(rng, 10);
      const auto r = analyze(w, psi, HerdMode::TruthRelative);
      for (std::size_t i = 1; i <= w.size(); ++i) {
        const auto j = first_witness(w, psi, i);
        CHECK(r.psi_positions.count(i) == j.has_value());
        CHECK(characterization_holds(r.labels, i) == j.has_value());
        if (j) CHECK(r.shepherd_of.at(i) == *j);
      }
      for (const auto& [j, herd] : r.herds)
        for (auto i : herd) CHECK(r.shepherd_of.at(i) == j);
      for (const auto& [j, sp] : r.specials) CHECK(r.intervals.count(j) == !sp.empty());
      for (const auto& [j, iv] : r.intervals) {
        CHECK(iv.first <= iv.second);
        CHECK(iv.second < j);
      }
      for (const auto& c : verify_claims(r)) CHECK_MESSAGE(c.ok, c.name << ": " << c.counterexample);
    }
  }
}
