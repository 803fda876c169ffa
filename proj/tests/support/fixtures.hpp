#pragma once

#include <string>
#include <vector>

#include "dataltl/syntax.hpp"
#include "dataltl/word.hpp"

namespace fixtures {

using namespace dataltl;

// Ten positions, attribute a = 1,2,1,1,2,1,2,2,2,3; req is rho_eq, rneq is
// rho_neq, tau the target proposition.
inline AttributedWord herd_word() {
  const std::vector<DataValue> v{1, 2, 1, 1, 2, 1, 2, 2, 2, 3};
  std::vector<std::set<std::string>> p(10);
  for (int i : {1, 3, 4, 6}) p[i - 1].insert("req");
  for (int i : {5, 7, 8, 9}) p[i - 1].insert("rneq");
  for (int i : {4, 10}) p[i - 1].insert("tau");
  return make_one_attributed("a", v, p, {"req", "rneq", "tau"});
}

inline const char* herd_psi_text() { return "((@a & (req | rneq)) | (!=@a & rneq)) U!{a}[2] (!=@a & tau)"; }
inline Formula herd_psi() { return parse(herd_psi_text()); }

// Three positions over attributes a1, a2: {p} a1=1; {q} a2=2; {p,q} a1=3 a2=4.
inline AttributedWord two_attr_word() {
  std::vector<Position> ps(3);
  ps[0].props = {"p"};
  ps[0].attrs = {{"a1", 1}};
  ps[1].props = {"q"};
  ps[1].attrs = {{"a2", 2}};
  ps[2].props = {"p", "q"};
  ps[2].attrs = {{"a1", 3}, {"a2", 4}};
  return AttributedWord({"p", "q"}, {"a1", "a2"}, ps);
}

// Its 1-attributed encoding: blocks of two, R where the attribute exists,
// absent values padded with the next later value of the same attribute.
inline AttributedWord two_attr_encoded() {
  const std::vector<std::set<std::string>> p{{"p", "att1", "R"}, {"p", "att2"},      {"q", "att1"},
                                             {"q", "att2", "R"},  {"p", "q", "att1", "R"}, {"p", "q", "att2", "R"}};
  return make_one_attributed("a", {1, 2, 3, 2, 3, 4}, p, {"p", "q", "att1", "att2", "R"});
}

}  // namespace fixtures
