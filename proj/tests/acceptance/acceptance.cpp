// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is 0 when every criterion passes, or when the only failures are
// known ones whose pinned counterexamples still reproduce exactly.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dataltl/automata.hpp"
#include "dataltl/classify.hpp"
#include "dataltl/encoder.hpp"
#include "dataltl/eval.hpp"
#include "dataltl/gadgets.hpp"
#include "dataltl/herd.hpp"
#include "dataltl/random.hpp"
#include "dataltl/satsearch.hpp"
#include "dataltl/syntax.hpp"
#include "dataltl/validity.hpp"
#include "support/fixtures.hpp"

using namespace dataltl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  // A failure that matches its documented counterexamples exactly.
  bool known = false;
  std::vector<std::string> notes;
  void note(const std::string& s) { notes.push_back(s); }
};

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream ss;
  (ss << ... << xs);
  return ss.str();
}

const std::vector<std::string> kLabels{"rho", "req", "rneq", "tau"};

Formula shaped(int delta) {
  return parse("(rho | (@a & (req | rneq)) | (!=@a & rneq)) U!{a}[" + std::to_string(delta) + "] (!=@a & tau)");
}

AttributedWord labeled_word(const std::vector<DataValue>& vals, const std::vector<std::set<std::string>>& props) {
  return make_one_attributed("a", vals, props, kLabels);
}

AttributedWord random_labeled(SplitMix64& rng, std::size_t max_len, double p) {
  const std::size_t n = 1 + rng.below(max_len);
  std::vector<DataValue> vals;
  std::vector<std::set<std::string>> ps(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals.push_back(rng.below(3));
    for (const auto& l : kLabels)
      if (rng.chance(l == "rho" ? p / 3 : p)) ps[i].insert(l);
  }
  return labeled_word(vals, ps);
}

// ---- 1 ----

Outcome herd_report() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = analyze(fixtures::herd_word(), fixtures::herd_psi(), HerdMode::MarkRelative, {3, 4, 6, 7});
  const std::string text = herd_report_text(r);
  const double dt = seconds_since(t0);
  bool ok = true;
  auto want = [&](bool c, const std::string& what) {
    if (!c) o.note("mismatch: " + what);
    ok = ok && c;
  };
  want(r.herds.count(10) && r.herds.at(10) == std::set<std::size_t>{3, 4, 6, 7}, "H(10)={3,4,6,7}");
  want(!r.is_shepherd(4), "4 is not a shepherd");
  want(r.specials.count(10) && r.specials.at(10).count(6) && (r.specials.at(10).at(6) & kRhoStair),
       "6 is a rho-stair");
  for (std::size_t i : {3, 4})
    want(r.specials.count(10) && r.specials.at(10).count(i) && (r.specials.at(10).at(i) & kRhoFar),
         cat(i, " is rho-far"));
  want(r.special_set(10) == std::set<std::size_t>{3, 4, 6}, "S(10)={3,4,6}");
  want(r.intervals.count(10) && r.intervals.at(10) == std::pair<std::size_t, std::size_t>{3, 6},
       "e-(10)=3, e+(10)=6");
  for (const char* line : {"H(10)={3,4,6,7}", "4 is not a shepherd", "6 is a rho-stair for {3,4} (shepherd 10)",
                           "{3,4} are rho-far from 10", "S(10)={3,4,6}", "e-(10)=3", "e+(10)=6"})
    want(text.find(line) != std::string::npos, cat("report line \"", line, "\""));
  want(dt < 1.0, "runtime under 1 s");
  o.note(cat("runtime ", dt * 1000, " ms"));
  o.pass = ok;
  return o;
}

// ---- 2 ----

Outcome two_attribute_encoding() {
  Outcome o;
  const auto w = fixtures::two_attr_word();
  const auto e = encode_word(w, scheme_for(w), Padding::NextSame);
  const auto want = fixtures::two_attr_encoded();
  bool ok = e.size() == want.size();
  for (std::size_t i = 1; ok && i <= e.size(); ++i) ok = e.at(i) == want.at(i);
  // fresh padding: marks identical, present values identical
  const auto f = encode_word(w, scheme_for(w), Padding::Fresh);
  bool marks = f.size() == want.size();
  for (std::size_t i = 1; marks && i <= f.size(); ++i) {
    marks = f.at(i).props == want.at(i).props;
    if (f.at(i).has("R")) marks = marks && f.value("a", i) == want.value("a", i);
  }
  o.note(cat("next-same padding exact: ", ok ? "yes" : "no", "; fresh padding marks and present values: ",
             marks ? "yes" : "no"));
  o.pass = ok && marks;
  return o;
}

// ---- 3 ----

Outcome encoding_equivalence() {
  Outcome o;
  SplitMix64 rng(1003);
  const auto t0 = Clock::now();
  int total = 0, agree = 0;
  std::string first_bad;
  for (int t = 0; t < 10000; ++t) {
    WordGen wg;
    wg.max_len = 6;
    wg.values = 4;
    wg.props = rng.chance(0.5) ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{"p"};
    wg.attrs = rng.chance(0.7) ? std::vector<std::string>{"a", "b"} : std::vector<std::string>{"a"};
    FormulaGen fg;
    fg.depth = 1 + static_cast<int>(rng.below(5));
    fg.props = wg.props;
    fg.attrs = wg.attrs;
    const auto w = random_word(rng, wg);
    const auto chi = random_formula(rng, fg);
    const auto s = scheme_for(w);
    const auto e = encode_word(w, s, t % 2 ? Padding::NextSame : Padding::Fresh);
    const bool lhs = holds(w, chi);
    const bool rhs = holds(e, f::conj(structure_formula(s), translate(chi, s)));
    ++total;
    if (lhs == rhs)
      ++agree;
    else if (first_bad.empty())
      first_bad = print(chi) + " on " + word_to_json(w, -1);
  }
  const double dt = seconds_since(t0);
  o.note(cat(agree, "/", total, " pairs agree, ", dt, " s single-threaded"));
  if (!first_bad.empty()) o.note("first mismatch: " + first_bad);
  o.pass = agree == total && total >= 10000 && dt < 600;
  return o;
}

// ---- 4, 5 ----

// Random rho=, rho!=, tau with rho!= -> rho= built in.
Formula random_shaped(SplitMix64& rng, int delta) {
  FormulaGen g;
  g.props = {"p", "q", "r"};
  g.attrs = {};
  g.freeze = g.class_nav = g.uneq = false;
  g.depth = 2;
  const auto phi = print(random_formula(rng, g));
  const auto neq = print(random_formula(rng, g));
  const auto tau = print(random_formula(rng, g));
  return parse("((@a & ((" + phi + ") | (" + neq + "))) | (!=@a & (" + neq + "))) U!{a}[" +
               std::to_string(delta) + "] (!=@a & (" + tau + "))");
}

AttributedWord random_pqr(SplitMix64& rng) {
  WordGen g;
  g.props = {"p", "q", "r"};
  g.attrs = {"a"};
  g.absent = 0;
  g.max_len = 10;
  g.values = 1 + rng.below(4);
  return random_word(rng, g);
}

Outcome characterization() {
  Outcome o;
  SplitMix64 rng(1004);
  std::size_t checked = 0, bad = 0;
  std::string first_bad;
  for (int t = 0; t < 10000; ++t) {
    const int delta = static_cast<int>(rng.below(4));
    const bool labeled = t % 2 == 0;
    const auto psi = labeled ? shaped(delta) : random_shaped(rng, delta);
    const auto w = labeled ? random_labeled(rng, 10, 0.4) : random_pqr(rng);
    const auto l = herd_labels(w, psi);
    Evaluator ev(w);
    for (std::size_t i = 1; i <= w.size(); ++i) {
      ++checked;
      if (ev.at(psi, i) != characterization_holds(l, i)) {
        ++bad;
        if (first_bad.empty()) first_bad = cat(print(psi), " at ", i, " on ", word_to_json(w, -1));
      }
    }
  }
  o.note(cat(checked - bad, "/", checked, " positions agree over 10000 words"));
  if (!first_bad.empty()) o.note("first mismatch: " + first_bad);
  o.pass = bad == 0;
  return o;
}

Outcome claims() {
  Outcome o;
  SplitMix64 rng(1005);
  std::map<std::string, int> fails;
  std::size_t shepherds = 0;
  std::string first_bad;
  for (int t = 0; t < 10000; ++t) {
    const int delta = static_cast<int>(rng.below(4));
    const bool labeled = t % 2 == 0;
    const auto psi = labeled ? shaped(delta) : random_shaped(rng, delta);
    const auto w = labeled ? random_labeled(rng, 10, 0.4) : random_pqr(rng);
    const auto r = analyze(w, psi, HerdMode::TruthRelative);
    shepherds += r.herds.size();
    for (const auto& c : verify_claims(r))
      if (!c.ok) {
        ++fails[c.name];
        if (first_bad.empty()) first_bad = c.name + ": " + c.counterexample;
      }
  }
  o.note(cat(shepherds, " shepherds over 10000 words"));
  for (const auto& [k, v] : fails) o.note(cat("claim ", k, ": ", v, " counterexamples"));
  if (!first_bad.empty()) o.note("first: " + first_bad);
  o.pass = fails.empty() && shepherds > 0;
  return o;
}

// ---- 6 ----

Outcome validity() {
  Outcome o;
  SplitMix64 rng(1006);
  FormulaGen fg;
  fg.attrs = {"a"};
  fg.max_delta = 2;
  WordGen wg;
  wg.attrs = {"a"};
  wg.absent = 0;
  wg.max_len = 7;
  wg.values = 3;
  int unsound = 0, mutations = 0, caught = 0, pos_mutations = 0;
  std::vector<std::string> uncaught_pos, uncaught_other;
  for (int t = 0; t < 1000; ++t) {
    fg.depth = 1 + static_cast<int>(rng.below(4));
    const auto w = random_word(rng, wg);
    const auto phi = random_formula(rng, fg);
    const auto x = build_valid_extension(w, phi, fg.max_delta);
    bool ok = check_eqr(x);
    for (std::size_t id = 0; id < x.occurrences().size(); ++id) ok = ok && check_valid_wrt(x, static_cast<int>(id));
    if (!ok) ++unsound;
    // single-mark mutations: three per pair, plus one =_r flip
    for (int m = 0; m < 4; ++m) {
      ExtendedWord y = x;
      const std::size_t i = 1 + rng.below(w.size());
      std::string what;
      bool position_mark = false;
      if (m == 3) {
        int r = static_cast<int>(rng.range(1, x.N()));
        if (rng.chance(0.5)) r = -r;
        y.set_eq(i, r, !y.eq(i, r));
        what = cat("=_", r, " at ", i);
      } else {
        const int id = static_cast<int>(rng.below(x.occurrences().size()));
        const auto& occ = x.occurrences()[static_cast<std::size_t>(id)];
        if (occ.valued()) {
          const DataValue d = rng.pick(x.values());
          y.set_mark(id, i, d, !y.marked(id, i, d));
          what = cat(print(occ.node), " at ", i, " value ", d);
        } else {
          y.set_mark(id, i, !y.marked(id, i));
          what = cat(print(occ.node), " at ", i);
          position_mark = true;
        }
      }
      ++mutations;
      pos_mutations += position_mark;
      if (!is_valid(y)) {
        ++caught;
      } else {
        (position_mark ? uncaught_pos : uncaught_other).push_back(what);
      }
    }
  }
  const double rate = mutations ? 100.0 * caught / mutations : 0;
  o.note(cat("built extensions failing a local check: ", unsound, "/1000"));
  o.note(cat("mutations caught: ", caught, "/", mutations, " (", rate, "%), position-formula marks: ", pos_mutations));
  o.note(cat("uncaught position-formula marks: ", uncaught_pos.size(), ", other marks: ", uncaught_other.size()));
  for (std::size_t k = 0; k < uncaught_pos.size() && k < 5; ++k) o.note("  " + uncaught_pos[k]);
  for (std::size_t k = 0; k < uncaught_other.size() && k < 5; ++k) o.note("  " + uncaught_other[k]);
  o.pass = unsound == 0 && rate >= 99.0 && uncaught_pos.empty();
  return o;
}

// ---- 7 ----

struct Pinned {
  std::string name;
  bool reproduced = false;
};

// Canonical decoration rejected by Log1: the minimal tau_(s)-position for
// i = 2 is 2 itself.
Pinned pinned_log1() {
  const auto w = labeled_word({0, 2}, {{"req", "tau"}, {"req", "rneq", "tau"}});
  const auto d = build_s_decoration(build_valid_extension(w, shaped(0), 2), 0);
  bool fails_log1 = false;
  for (const auto& r : check_all_conditions(d)) {
    const auto& c = r.get("Log1");
    fails_log1 = fails_log1 || (!c.ok && c.position == 2);
  }
  return {"Log1 on delta=0, v0{req,tau} v2{req,rneq,tau}", fails_log1 && conditions_imply_truth(d)};
}

// Canonical decoration rejected by Spec3: -| demanded without an interval.
Pinned pinned_spec3() {
  const auto w = labeled_word({2, 1}, {{}, {"tau"}});
  const auto d = build_s_decoration(build_valid_extension(w, shaped(2), 2), 0);
  bool fails_spec3 = false;
  for (const auto& r : check_all_conditions(d)) fails_spec3 = fails_spec3 || !r.get("Spec3").ok;
  return {"Spec3 on delta=2, v2{} v1{tau}", fails_spec3 && conditions_imply_truth(d)};
}

// A decoration passing all eight conditions with a missing psi_(s) mark.
Pinned pinned_log2() {
  const auto w = labeled_word({0, 0, 1, 2, 2, 1}, {{"rneq"}, {"req"}, {"rneq", "tau"}, {"rneq"}, {"rneq"}, {"rneq"}});
  auto d = build_s_decoration(build_valid_extension(w, shaped(1), 2), 0);
  auto& ly = d.layers.at(0);
  const std::vector<char> psi{0, 0, 1, 0, 0, 0, 0};
  const std::vector<unsigned char> label{0, kStart, kEnd, 0, 0, 0, 0};
  const std::vector<unsigned char> color{0, 3, 4, 8, 0, 0, 12};
  for (std::size_t i = 1; i <= 6; ++i) {
    ly.psi[i] = psi[i];
    ly.label[i] = label[i];
    ly.color[i] = color[i];
  }
  bool tau_only_3 = true;
  for (std::size_t i = 1; i <= 6; ++i) tau_only_3 = tau_only_3 && (ly.tau[i] != 0) == (i == 3);
  return {"falsifier on delta=1, values 0,0,1,2,2,1",
          tau_only_3 && check_conditions(d, 0).ok() && !conditions_imply_truth(d)};
}

Outcome decorations() {
  Outcome o;
  SplitMix64 rng(1007);
  std::map<std::string, int> fails;
  int pass_all = 0, truth_ok = 0;
  for (int t = 0; t < 1000; ++t) {
    const int delta = static_cast<int>(rng.below(4));
    const auto w = random_labeled(rng, 12, 0.4);
    const auto d = build_s_decoration(build_valid_extension(w, shaped(delta), 3), 0);
    bool ok = true;
    for (const auto& r : check_all_conditions(d))
      for (const auto& c : r.results)
        if (!c.ok) {
          ++fails[c.name];
          ok = false;
        }
    pass_all += ok;
    truth_ok += conditions_imply_truth(d);
  }
  o.note(cat("canonical decorations passing all conditions: ", pass_all, "/1000"));
  std::string per;
  for (const auto& [k, v] : fails) per += cat(" ", k, "=", v);
  o.note("layer failures by condition:" + per);
  o.note(cat("conditions_imply_truth: ", truth_ok, "/1000"));

  // falsification: perturb one layer, keep decorations that pass everything
  int passing = 0, wrong = 0;
  for (int t = 0; t < 100000; ++t) {
    const int delta = static_cast<int>(rng.below(3));
    const auto w = random_labeled(rng, 6, 0.35);
    auto d = build_s_decoration(build_valid_extension(w, shaped(delta), 2), 0);
    const int s = static_cast<int>(rng.below(d.layers.size()));
    auto& ly = d.layers[static_cast<std::size_t>(s)];
    const int k = 1 + static_cast<int>(rng.below(3));
    for (int m = 0; m < k; ++m) {
      const std::size_t i = 1 + rng.below(w.size());
      switch (rng.below(3)) {
        case 0: ly.psi[i] ^= 1; break;
        case 1: {
          static const unsigned char kL[] = {0, kStart, kMid, kEnd, kStart | kEnd};
          ly.label[i] = kL[rng.below(5)];
          break;
        }
        default: ly.color[i] = static_cast<unsigned char>(rng.below(16));
      }
    }
    if (!check_conditions(d, s).ok()) continue;
    ++passing;
    wrong += !conditions_imply_truth(d);
  }
  o.note(cat("falsification: 100000 trials, ", passing, " perturbed decorations pass all conditions, ", wrong,
             " of them carry a wrong psi_(s) mark"));

  const std::vector<Pinned> pins{pinned_log1(), pinned_spec3(), pinned_log2()};
  bool pins_ok = true;
  for (const auto& p : pins) {
    o.note(cat("pinned counterexample ", p.name, ": ", p.reproduced ? "reproduced" : "NOT reproduced"));
    pins_ok = pins_ok && p.reproduced;
  }
  o.pass = pass_all == 1000 && truth_ok == 1000 && wrong == 0;
  // Known failure: the literal conditions reject canonical decorations and
  // admit wrong ones; acceptable only while the pinned cases still behave.
  o.known = !o.pass && truth_ok == 1000 && pins_ok;
  return o;
}

// ---- 8 ----

Outcome negative_shift() {
  Outcome o;
  const std::vector<std::string> templates{
      "p U!{a}[D] (!=@a & q)",
      "(p | (@a & q) | (!=@a & (p & q))) U!{a}[D] (!=@a & !p)",
      "(@a | q) S!{a}[D] (!=@a & p)",
      "X (q U!{a}[D] (!=@a & (p | q)))",
  };
  ParseOptions raw;
  raw.lower_negative_shifts = false;
  std::vector<std::pair<Formula, Formula>> cases;
  for (const auto& t : templates)
    for (int delta : {-1, -2}) {
      std::string s = t;
      s.replace(s.find('D'), 1, std::to_string(delta));
      const auto phi = parse(s, raw);
      cases.push_back({phi, lower_all_shifts(phi, LowerMode::Guarded)});
    }
  std::size_t words = 0, checks = 0, bad = 0;
  std::string first_bad;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 8;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<DataValue> vals(n);
      std::vector<std::set<std::string>> ps(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 8) {
        vals[i] = c & 1;
        if (c & 2) ps[i].insert("p");
        if (c & 4) ps[i].insert("q");
      }
      const auto w = make_one_attributed("a", vals, ps, {"p", "q"});
      Evaluator ev(w);
      ++words;
      for (const auto& [phi, low] : cases)
        for (std::size_t i = 1; i <= n; ++i) {
          ++checks;
          if (ev.at(phi, i) != ev.at(low, i)) {
            ++bad;
            if (first_bad.empty()) first_bad = cat(print(phi), " at ", i, " on ", word_to_json(w, -1));
          }
        }
    }
  }
  o.note(cat(words, " words, ", cases.size(), " formulas, ", checks - bad, "/", checks, " verdicts agree"));
  if (!first_bad.empty()) o.note("first mismatch: " + first_bad);
  o.pass = bad == 0;
  return o;
}

// ---- 9 ----

Outcome cltl() {
  Outcome o;
  SplitMix64 rng(1009);
  WordGen wg;
  wg.absent = 0;
  wg.attrs = {"x", "y", "z"};
  std::size_t checks = 0, bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto w = random_word(rng, wg);
    for (int k = 0; k < 4; ++k) {
      CltlAtom at;
      at.kind = rng.chance(0.5) ? CltlAtom::Kind::Shift : CltlAtom::Kind::Future;
      at.x = rng.pick(wg.attrs);
      at.y = rng.pick(wg.attrs);
      at.delta = at.kind == CltlAtom::Kind::Shift ? rng.range(-3, 3) : 0;
      const auto phi = translate_cltl(at);
      for (std::size_t i = 1; i <= w.size(); ++i) {
        ++checks;
        bad += eval_cltl_atom(w, i, at) != eval_position(w, i, phi);
      }
    }
  }
  o.note(cat(checks - bad, "/", checks, " atom verdicts agree on 1000 complete words"));
  o.pass = bad == 0;
  return o;
}

// ---- 10 ----

// Single-fault variants: toggle one proposition, or move one value to
// another existing value or a fresh one. Pure renamings are not faults.
std::vector<AttributedWord> single_faults(const AttributedWord& w) {
  std::vector<AttributedWord> out;
  const auto base = canonicalize_values(w);
  auto keep = [&](const AttributedWord& m) {
    if (!(canonicalize_values(m) == base)) out.push_back(m);
  };
  const auto vals = w.values();
  const DataValue fresh = vals.empty() ? 0 : *std::max_element(vals.begin(), vals.end()) + 1;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    for (const auto& p : w.props_alphabet()) {
      Position q = w.at(i);
      if (q.has(p))
        q.props.erase(p);
      else
        q.props.insert(p);
      keep(with_position(w, i, q));
    }
    for (const auto& [a, v] : w.at(i).attrs) {
      for (DataValue d : vals) {
        if (d == v) continue;
        Position q = w.at(i);
        q.attrs[a] = d;
        keep(with_position(w, i, q));
      }
      Position q = w.at(i);
      q.attrs[a] = fresh;
      keep(with_position(w, i, q));
    }
  }
  return out;
}

bool all_hold(const std::vector<Conjunct>& cs, const AttributedWord& w) {
  for (const auto& c : cs)
    if (!holds(w, c.formula)) return false;
  return true;
}

Outcome gadgets() {
  Outcome o;
  SplitMix64 rng(1010);
  int pcp = 0, pcp_bad = 0, mk = 0, mk_bad = 0;
  std::size_t muts = 0, caught = 0;
  std::vector<std::string> uncaught;

  std::vector<PcpCase> pcps;
  pcps.push_back({PCPInstance{{{"a", "a"}}}, {1}});
  pcps.push_back({PCPInstance{{{"a", "ab"}, {"ba", "a"}}}, {1, 2}});
  pcps.push_back({PCPInstance{{{"ab", "a"}, {"b", "bb"}}}, {1, 2}});
  for (int k = 0; k < 20; ++k) pcps.push_back(random_pcp_case(rng, 1 + rng.below(3)));
  for (const auto& c : pcps) {
    ++pcp;
    const auto w = pcp_witness(c.instance, c.solution);
    const auto cs = pcp_conjuncts(c.instance);
    if (!all_hold(cs, w)) ++pcp_bad;
    for (const auto& m : single_faults(w)) {
      ++muts;
      if (!all_hold(cs, m))
        ++caught;
      else if (uncaught.size() < 5)
        uncaught.push_back("pcp " + word_to_json(m, -1));
    }
  }

  std::vector<MinskyCase> machines;
  {
    MinskyMachine m;
    m.states = {"q0", "q1", "q2", "q3", "q4"};
    m.initial = "q0";
    m.accepting = {"q4"};
    m.transitions = {{"q0", CounterAction::Inc1, "q1"},
                     {"q1", CounterAction::Inc2, "q2"},
                     {"q2", CounterAction::Dec1, "q3"},
                     {"q3", CounterAction::Dec2, "q4"},
                     {"q4", CounterAction::IfZero1, "q4"}};
    machines.push_back({m, {0, 1, 2, 3, 4}});
  }
  for (int k = 0; k < 20; ++k) machines.push_back(random_minsky_case(rng, 2 + rng.below(8)));
  for (const auto& c : machines) {
    ++mk;
    const auto w = minsky_run_word(c.machine, c.run);
    const auto cs = minsky_conjuncts(c.machine), us = undu_conjuncts(c.machine);
    if (!all_hold(cs, w) || !all_hold(us, w)) ++mk_bad;
    for (const auto& m : single_faults(w)) {
      for (const auto* set : {&cs, &us}) {
        ++muts;
        if (!all_hold(*set, m))
          ++caught;
        else if (uncaught.size() < 5)
          uncaught.push_back((set == &cs ? "minsky " : "undu ") + word_to_json(m, -1));
      }
    }
  }
  o.note(cat("PCP instances: ", pcp, ", witness failures: ", pcp_bad));
  o.note(cat("machine instances: ", mk, ", run-word failures: ", mk_bad));
  o.note(cat("single-fault mutations falsifying a conjunct: ", caught, "/", muts));
  for (const auto& u : uncaught) o.note("uncaught: " + u);
  o.pass = pcp >= 20 && mk >= 20 && pcp_bad == 0 && mk_bad == 0 && caught == muts;
  return o;
}

// ---- 11 ----

DataAutomaton random_automaton(SplitMix64& rng) {
  DataAutomaton a;
  a.props = {"p"};
  a.gamma = {"x", "y"};
  a.base_states = 1 + static_cast<int>(rng.below(2));
  for (int s = 0; s < a.base_states; ++s)
    for (int l = 0; l < 2; ++l) {
      const Letter letter = l ? Letter{"p"} : Letter{};
      const int n = 1 + static_cast<int>(rng.below(2));
      for (int k = 0; k < n; ++k)
        a.base.push_back({s, letter, static_cast<int>(rng.below(2)), static_cast<int>(rng.below(a.base_states))});
    }
  for (int s = 0; s < a.base_states; ++s)
    if (rng.chance(0.7)) a.base_accepting.insert(s);
  a.class_states = 1 + static_cast<int>(rng.below(3));
  for (int s = 0; s < a.class_states; ++s)
    for (int g = 0; g < 2; ++g)
      if (rng.chance(0.8)) a.klass.push_back({s, g, static_cast<int>(rng.below(a.class_states))});
  for (int s = 0; s < a.class_states; ++s)
    if (rng.chance(0.6)) a.class_accepting.insert(s);
  return a;
}

Outcome product_law() {
  Outcome o;
  SplitMix64 rng(1011);
  WordGen g;
  g.props = {"p"};
  g.attrs = {"a"};
  g.absent = 0;
  g.values = 3;
  g.max_len = 8;
  std::vector<AttributedWord> corpus;
  for (int k = 0; k < 500; ++k) corpus.push_back(random_word(rng, g));
  std::size_t checks = 0, bad = 0, accepted = 0;
  for (int k = 0; k < 20; ++k) {
    const auto a = random_automaton(rng), b = random_automaton(rng);
    const auto ab = da_product(a, b);
    for (const auto& w : corpus) {
      const bool both = da_accepts(a, w) && da_accepts(b, w);
      ++checks;
      accepted += both;
      bad += da_accepts(ab, w) != both;
    }
  }
  o.note(cat(checks - bad, "/", checks, " memberships agree (20 random automaton pairs x 500 words, ", accepted,
             " accepted by both)"));
  o.pass = bad == 0 && accepted > 0 && accepted < checks;
  return o;
}

// ---- 12 ----

// Every formula of depth <= 3 over the grammar
//   leaf ::= p | q | C[0]{a} X= @a | C[1]{a} @a
//   f    ::= leaf | !f | X f | F f | f & f | f U f
std::vector<Formula> corpus_depth3() {
  std::vector<std::vector<Formula>> by_depth(4);
  by_depth[1] = {parse("p"), parse("q"), parse("C[0]{a} X= @a"), parse("C[1]{a} @a")};
  for (int d = 2; d <= 3; ++d) {
    std::vector<Formula> below;
    for (int e = 1; e < d; ++e) below.insert(below.end(), by_depth[e].begin(), by_depth[e].end());
    for (const auto& x : by_depth[d - 1]) {
      by_depth[d].push_back(f::neg(x));
      by_depth[d].push_back(f::next(x));
      by_depth[d].push_back(f::eventually(x));
    }
    for (const auto& x : below)
      for (const auto& y : below) {
        if (std::max(formula_depth(x), formula_depth(y)) != static_cast<std::size_t>(d - 1)) continue;
        by_depth[d].push_back(f::conj(x, y));
        by_depth[d].push_back(f::until(x, y));
      }
  }
  std::vector<Formula> all;
  for (const auto& v : by_depth) all.insert(all.end(), v.begin(), v.end());
  return all;
}

Outcome satcheck() {
  Outcome o;
  const auto corpus = corpus_depth3();
  SearchBounds b;
  b.max_len = 3;
  b.props = {"p", "q"};
  b.attrs = {"a"};
  b.max_values = 3;
  std::size_t agree = 0, sat = 0;
  std::string first_bad;
  for (const auto& phi : corpus) {
    const auto c = find_model(phi, b), n = find_model_naive(phi, b);
    const bool ok = c.outcome == n.outcome && (!c.model || holds(*c.model, phi));
    agree += ok;
    sat += c.outcome == SearchOutcome::Sat;
    if (!ok && first_bad.empty()) first_bad = print(phi);
  }
  o.note(cat(agree, "/", corpus.size(), " depth<=3 formulas agree at length 3 (", sat, " sat)"));
  if (!first_bad.empty()) o.note("first mismatch: " + first_bad);

  // speed at length 6 on an unsatisfiable formula (both searches exhaust)
  SearchBounds s;
  s.max_len = 6;
  s.props = {"p"};
  s.attrs = {"a"};
  s.complete = {"a"};
  s.max_values = 4;
  const auto phi = parse("G(C[0]{a} X= @a -> p) & F(!p & C[0]{a} X= @a)");
  auto t0 = Clock::now();
  const auto rc = find_model(phi, s);
  const double tc = seconds_since(t0);
  t0 = Clock::now();
  const auto rn = find_model_naive(phi, s);
  const double tn = seconds_since(t0);
  const double speedup = tn / std::max(tc, 1e-9);
  o.note(cat("length 6: canonical ", rc.words_checked, " words in ", tc, " s, naive ", rn.words_checked, " words in ",
             tn, " s, speedup ", speedup, "x"));
  o.pass = agree == corpus.size() && rc.outcome == rn.outcome && speedup >= 5.0;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"herd report on the ten-position word", herd_report},
      {"two-attribute encoding", two_attribute_encoding},
      {"encoding equivalence", encoding_equivalence},
      {"extended-until characterization", characterization},
      {"interval claims", claims},
      {"validity soundness and mutation sensitivity", validity},
      {"decoration conditions", decorations},
      {"negative-shift rewrite", negative_shift},
      {"repeating-value embedding", cltl},
      {"gadget round trips", gadgets},
      {"data-automata product law", product_law},
      {"satcheck exactness and speedup", satcheck},
  };
  int passed = 0, known = 0, unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.known = false;
      o.note(std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                seconds_since(t0), !o.pass && o.known ? " [known, counterexamples pinned]" : "");
    for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    if (o.pass)
      ++passed;
    else if (o.known)
      ++known;
    else
      ++unexpected;
  }
  std::printf("%d passed, %d known failures, %d unexpected failures\n", passed, known, unexpected);
  return unexpected == 0 ? 0 : 1;
}
