#include "dataltl/gadgets.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "json.hpp"

namespace dataltl {

Formula conjoin(const std::vector<Conjunct>& cs) {
  std::vector<Formula> xs;
  for (const auto& c : cs) xs.push_back(c.formula);
  return f::conj_all(xs);
}

namespace {

Formula any_of(const std::vector<std::string>& ps) {
  std::vector<Formula> xs;
  for (const auto& p : ps) xs.push_back(f::prop(p));
  return f::disj_all(xs);
}

Formula exactly_one(const std::vector<std::string>& ps) {
  std::vector<Formula> xs;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::vector<Formula> others;
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (j != i) others.push_back(f::neg(f::prop(ps[j])));
    others.push_back(f::prop(ps[i]));
    xs.push_back(f::conj_all(others));
  }
  return f::disj_all(xs);
}

Formula has_next() { return f::next(f::top()); }
Formula has_prev() { return f::prev(f::top()); }

// ---- PCP helpers ----

// The word s (as propositions) read from the current position on.
Formula reads(const std::vector<std::string>& letters) {
  std::vector<Formula> xs;
  for (std::size_t t = 0; t < letters.size(); ++t)
    xs.push_back(f::next_n(f::prop(letters[t]), static_cast<int>(t)));
  return f::conj_all(xs);
}

// The next S-position lies at distance k for some k in gaps, and the x
// values there and here are equal.
Formula same_next(const Formula& s, const std::set<int>& gaps, const std::string& x) {
  std::vector<Formula> xs;
  for (int k : gaps) {
    std::vector<Formula> parts{f::next_n(s, k), f::attr_shift_eq(x, k, x)};
    for (int l = 1; l < k; ++l) parts.push_back(f::next_n(f::neg(s), l));
    xs.push_back(f::conj_all(parts));
  }
  return f::disj_all(xs);
}

Formula exists_next(const Formula& s) { return f::next(f::eventually(s)); }

// phi holds at the next S-position.
Formula at_next(const Formula& s, const Formula& phi) {
  return f::next(f::until(f::neg(s), f::conj(s, phi)));
}

}  // namespace

void PCPInstance::validate() const {
  if (pairs.empty()) throw GadgetError("PCP instance has no pairs");
  for (const auto& [u, v] : pairs) {
    if (u.empty() || v.empty()) throw GadgetError("PCP pair words must be nonempty");
    for (char c : u + v)
      if (!std::isalnum(static_cast<unsigned char>(c)))
        throw GadgetError(std::string("PCP symbol '") + c + "' is not alphanumeric");
  }
}

std::vector<char> PCPInstance::alphabet() const {
  std::set<char> s;
  for (const auto& [u, v] : pairs) {
    s.insert(u.begin(), u.end());
    s.insert(v.begin(), v.end());
  }
  return {s.begin(), s.end()};
}

std::string pcp_letter(char c) { return std::string("u_") + c; }
std::string pcp_bar_letter(char c) { return std::string("v_") + c; }

std::vector<Conjunct> pcp_conjuncts(const PCPInstance& p) {
  p.validate();
  const auto sigma = p.alphabet();
  std::vector<std::string> us, vs, all;
  for (char c : sigma) {
    us.push_back(pcp_letter(c));
    vs.push_back(pcp_bar_letter(c));
  }
  all = us;
  all.insert(all.end(), vs.begin(), vs.end());
  const Formula U = any_of(us), B = any_of(vs);

  std::vector<Conjunct> out;
  out.push_back({"one-letter", f::always(exactly_one(all))});

  // the projection is u_{i1} bar(v_{i1}) ... : blocks start at a
  // u-letter that follows a barred letter or opens the word.
  std::vector<Formula> codes;
  std::set<int> gap_u{1}, gap_v{1};
  for (const auto& [u, v] : p.pairs) {
    std::vector<std::string> letters;
    for (char c : u) letters.push_back(pcp_letter(c));
    for (char c : v) letters.push_back(pcp_bar_letter(c));
    const int len = static_cast<int>(letters.size());
    codes.push_back(f::conj(reads(letters),
                            f::next_n(f::disj(f::neg(has_next()), f::next(U)), len - 1)));
    gap_u.insert(static_cast<int>(v.size()) + 1);
    gap_v.insert(static_cast<int>(u.size()) + 1);
  }
  const Formula start = f::conj(U, f::disj(f::neg(has_prev()), f::prev(B)));
  out.push_back({"opens-with-u", U});
  out.push_back({"blocks", f::always(f::implies(start, f::disj_all(codes)))});

  // both values everywhere; along u and along bar(v) the pairs form the
  // chain (a1,b1)(a1,b2)(a2,b2)(a2,b3)...
  out.push_back({"complete", f::always(f::conj(f::freeze(0, "a", f::top()), f::freeze(0, "b", f::top())))});
  for (const auto& [s, gaps, tag] :
       {std::tuple{U, gap_u, std::string("u")}, std::tuple{B, gap_v, std::string("v")}}) {
    const Formula sa = same_next(s, gaps, "a"), sb = same_next(s, gaps, "b");
    const Formula alt = f::disj(f::conj(sa, f::neg(sb)), f::conj(sb, f::neg(sa)));
    const Formula first = f::conj(s, f::neg(f::prev(f::once(s))));
    out.push_back({"chain-start-" + tag,
                   f::always(f::implies(f::conj(first, exists_next(s)), sa))});
    out.push_back({"chain-step-" + tag,
                   f::always(f::implies(f::conj(s, exists_next(s)), alt))});
    out.push_back({"chain-alt-" + tag,
                   f::always(f::conj(
                       f::implies(f::conj(s, sa), at_next(s, f::disj(f::neg(exists_next(s)), sb))),
                       f::implies(f::conj(s, sb), at_next(s, f::disj(f::neg(exists_next(s)), sa)))))});
    // odd length: the last a-value was not seen before on the chain
    const Formula last = f::conj(s, f::neg(exists_next(s)));
    const Formula earlier = f::class_prev(f::class_once(f::conj(f::lift(s, Sort::Class), f::attr_is("a"))));
    out.push_back({"chain-end-" + tag, f::always(f::implies(last, f::freeze(0, "a", f::neg(earlier))))});
    // a value never returns on the same attribute once its chain link is over
    for (const std::string x : {"a", "b"}) {
      const Formula later = f::class_next(f::class_eventually(
          f::conj(f::lift(s, Sort::Class), f::attr_is(x))));
      out.push_back({"once-" + x + "-" + tag,
                     f::always(f::implies(f::conj(s, f::neg(same_next(s, gaps, x))),
                                          f::freeze(0, x, f::neg(later))))});
    }
  }

  // every (a,b) pair occurs at exactly one u-position and one
  // bar(v)-position, and the symbols agree.
  auto partner = [](const Formula& there) {
    const Formula fwd = f::conj_all({f::pair_next("a", "b", there),
                                     f::neg(f::pair_next("a", "b", f::pair_next("a", "b", f::top()))),
                                     f::neg(f::pair_prev("a", "b", f::top()))});
    const Formula bwd = f::conj_all({f::pair_prev("a", "b", there),
                                     f::neg(f::pair_prev("a", "b", f::pair_prev("a", "b", f::top()))),
                                     f::neg(f::pair_next("a", "b", f::top()))});
    return f::disj(fwd, bwd);
  };
  std::vector<Formula> match;
  for (char c : sigma) {
    match.push_back(f::implies(f::prop(pcp_letter(c)), partner(f::prop(pcp_bar_letter(c)))));
    match.push_back(f::implies(f::prop(pcp_bar_letter(c)), partner(f::prop(pcp_letter(c)))));
  }
  out.push_back({"pairing", f::always(f::conj_all(match))});
  return out;
}

Formula pcp_formula(const PCPInstance& p) { return conjoin(pcp_conjuncts(p)); }

AttributedWord pcp_witness(const PCPInstance& p, const std::vector<std::size_t>& solution) {
  p.validate();
  if (solution.empty()) throw GadgetError("empty PCP solution");
  std::string u, v;
  for (std::size_t i : solution) {
    if (i < 1 || i > p.pairs.size()) throw GadgetError("PCP index out of range");
    u += p.pairs[i - 1].first;
    v += p.pairs[i - 1].second;
  }
  if (u != v) throw GadgetError("index sequence is not a PCP solution");
  if (u.size() % 2 == 0) throw GadgetError("PCP solution word must have odd length");

  std::vector<std::string> alphabet;
  for (char c : p.alphabet()) alphabet.push_back(pcp_letter(c));
  for (char c : p.alphabet()) alphabet.push_back(pcp_bar_letter(c));

  // t-th symbol (1-based) of u and of v both carry (a_ceil(t/2), b_floor(t/2)+1);
  // a-values are even and b-values odd so the two never meet.
  auto pos = [](const std::string& letter, std::size_t t) {
    Position q;
    q.props = {letter};
    q.attrs["a"] = 2 * ((t + 1) / 2);
    q.attrs["b"] = 2 * (t / 2 + 1) + 1;
    return q;
  };
  std::vector<Position> ps;
  std::size_t tu = 0, tv = 0;
  for (std::size_t i : solution) {
    for (char c : p.pairs[i - 1].first) ps.push_back(pos(pcp_letter(c), ++tu));
    for (char c : p.pairs[i - 1].second) ps.push_back(pos(pcp_bar_letter(c), ++tv));
  }
  return AttributedWord(alphabet, {"a", "b"}, std::move(ps));
}

// ---- counter machines ----

std::string to_string(CounterAction a) {
  switch (a) {
    case CounterAction::Inc1: return "inc1";
    case CounterAction::Inc2: return "inc2";
    case CounterAction::Dec1: return "dec1";
    case CounterAction::Dec2: return "dec2";
    case CounterAction::IfZero1: return "ifzero1";
    case CounterAction::IfZero2: return "ifzero2";
  }
  return "?";
}

CounterAction counter_action_from_string(const std::string& s) {
  for (auto a : {CounterAction::Inc1, CounterAction::Inc2, CounterAction::Dec1, CounterAction::Dec2,
                 CounterAction::IfZero1, CounterAction::IfZero2})
    if (to_string(a) == s) return a;
  throw GadgetError("unknown counter action " + s);
}

namespace {

const std::vector<std::string>& action_names() {
  static const std::vector<std::string> names{"inc1", "inc2", "dec1", "dec2", "ifzero1", "ifzero2"};
  return names;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> minsky_props(const MinskyMachine& m) {
  std::vector<std::string> ps = m.states;
  ps.insert(ps.end(), action_names().begin(), action_names().end());
  return ps;
}

std::vector<Conjunct> minsky_common(const MinskyMachine& m) {
  m.validate();
  std::vector<Conjunct> out;
  out.push_back({"one-state", f::always(exactly_one(m.states))});
  out.push_back({"one-action", f::always(exactly_one(action_names()))});

  std::vector<Formula> first, step;
  for (const auto& t : m.transitions) {
    const Formula act = f::prop(to_string(t.action));
    if (t.from == m.initial) first.push_back(f::conj(act, f::prop(t.to)));
    step.push_back(f::conj(f::prop(t.from), f::next(f::conj(act, f::prop(t.to)))));
  }
  out.push_back({"initial-step", f::disj_all(first)});
  out.push_back({"steps", f::always(f::implies(has_next(), f::disj_all(step)))});
  out.push_back({"accepts", f::always(f::implies(f::neg(has_next()), any_of(m.accepting)))});

  // ifzero values are alone in their class; an inc_i value occurs once
  // more, at a later dec_i, and nowhere else.
  const Formula alone = f::conj(f::neg(f::class_next(f::top())), f::neg(f::class_prev(f::top())));
  out.push_back({"valued", f::always(f::freeze(0, "a", f::top()))});
  std::vector<Formula> mult;
  for (int c : {1, 2}) {
    const std::string inc = "inc" + std::to_string(c), dec = "dec" + std::to_string(c);
    const std::string zero = "ifzero" + std::to_string(c);
    mult.push_back(f::implies(f::prop(zero), f::freeze(0, "a", alone)));
    mult.push_back(f::implies(
        f::prop(inc),
        f::freeze(0, "a", f::conj(f::neg(f::class_prev(f::top())),
                                  f::class_next(f::conj(f::lift(f::prop(dec), Sort::Class),
                                                        f::neg(f::class_next(f::top()))))))));
    mult.push_back(f::implies(
        f::prop(dec),
        f::freeze(0, "a", f::conj(f::neg(f::class_next(f::top())),
                                  f::class_prev(f::conj(f::lift(f::prop(inc), Sort::Class),
                                                        f::neg(f::class_prev(f::top()))))))));
  }
  out.push_back({"pairing", f::always(f::conj_all(mult))});
  return out;
}

}  // namespace

void MinskyMachine::validate() const {
  if (states.empty()) throw GadgetError("machine has no states");
  std::set<std::string> names;
  for (const auto& s : states) {
    if (!valid_identifier(s)) throw GadgetError("state name " + s + " is not an identifier");
    if (std::find(action_names().begin(), action_names().end(), s) != action_names().end())
      throw GadgetError("state name " + s + " clashes with an action");
    if (!names.insert(s).second) throw GadgetError("duplicate state " + s);
  }
  auto known = [&](const std::string& s) {
    if (!names.count(s)) throw GadgetError("unknown state " + s);
  };
  known(initial);
  if (accepting.empty()) throw GadgetError("machine has no accepting state");
  for (const auto& s : accepting) known(s);
  if (transitions.empty()) throw GadgetError("machine has no transitions");
  for (const auto& t : transitions) {
    known(t.from);
    known(t.to);
  }
}

std::vector<Conjunct> minsky_conjuncts(const MinskyMachine& m) {
  auto out = minsky_common(m);
  // looking only at the prefix up to an ifzero_i, every earlier inc_i
  // already met its dec_i.
  std::vector<Formula> zero;
  for (int c : {1, 2}) {
    const Formula matched = f::freeze(0, "a", f::class_eventually(
                                                  f::lift(f::prop("dec" + std::to_string(c)), Sort::Class)));
    zero.push_back(f::implies(
        f::prop("ifzero" + std::to_string(c)),
        f::up_to_now(f::historically(f::implies(f::prop("inc" + std::to_string(c)), matched)))));
  }
  out.push_back({"zero-tests", f::always(f::conj_all(zero))});
  return out;
}

Formula minsky_formula(const MinskyMachine& m) { return conjoin(minsky_conjuncts(m)); }

std::vector<Conjunct> undu_conjuncts(const MinskyMachine& m) {
  auto out = minsky_common(m);
  std::vector<Formula> zero;
  for (int c : {1, 2}) {
    const std::string n = std::to_string(c);
    const Formula rho = f::lift(f::neg(f::prop("ifzero" + n)), Sort::USub);
    const Formula tau = f::conj(f::attr_eq("a"), f::lift(f::prop("dec" + n), Sort::USub));
    zero.push_back(f::implies(f::prop("inc" + n), f::uneq_until("a", 0, rho, tau)));
  }
  out.push_back({"zero-tests", f::always(f::conj_all(zero))});
  return out;
}

Formula undu_formula(const MinskyMachine& m) { return conjoin(undu_conjuncts(m)); }

AttributedWord minsky_run_word(const MinskyMachine& m, const std::vector<std::size_t>& run) {
  m.validate();
  if (run.empty()) throw GadgetError("empty run");
  std::string state = m.initial;
  std::vector<DataValue> stack[2];
  DataValue fresh = 1;
  std::vector<Position> ps;
  for (std::size_t k = 0; k < run.size(); ++k) {
    if (run[k] >= m.transitions.size()) throw GadgetError("transition index out of range");
    const auto& t = m.transitions[run[k]];
    if (t.from != state) throw GadgetError("run step " + std::to_string(k + 1) + " leaves the wrong state");
    Position q;
    q.props = {t.to, to_string(t.action)};
    switch (t.action) {
      case CounterAction::Inc1:
      case CounterAction::Inc2: {
        const int c = t.action == CounterAction::Inc1 ? 0 : 1;
        stack[c].push_back(fresh);
        q.attrs["a"] = fresh++;
        break;
      }
      case CounterAction::Dec1:
      case CounterAction::Dec2: {
        const int c = t.action == CounterAction::Dec1 ? 0 : 1;
        if (stack[c].empty())
          throw GadgetError("run step " + std::to_string(k + 1) + " decrements a zero counter");
        q.attrs["a"] = stack[c].back();
        stack[c].pop_back();
        break;
      }
      case CounterAction::IfZero1:
      case CounterAction::IfZero2: {
        const int c = t.action == CounterAction::IfZero1 ? 0 : 1;
        if (!stack[c].empty())
          throw GadgetError("run step " + std::to_string(k + 1) + " tests a nonzero counter");
        q.attrs["a"] = fresh++;
        break;
      }
    }
    ps.push_back(std::move(q));
    state = t.to;
  }
  if (std::find(m.accepting.begin(), m.accepting.end(), state) == m.accepting.end())
    throw GadgetError("run ends in a non-accepting state");
  if (!stack[0].empty() || !stack[1].empty()) throw GadgetError("run ends with a nonzero counter");
  return AttributedWord(minsky_props(m), {"a"}, std::move(ps));
}

// ---- random instances ----

PcpCase random_pcp_case(SplitMix64& rng, std::size_t pairs) {
  if (pairs == 0) throw GadgetError("need at least one pair");
  // Cut one random string of odd length into `pairs` nonempty pieces in two ways.
  std::size_t len = pairs + rng.below(pairs + 2);
  if (len % 2 == 0) ++len;
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += static_cast<char>('a' + rng.below(2));
  auto cuts = [&] {
    std::vector<std::size_t> all;
    for (std::size_t k = 1; k < len; ++k) all.push_back(k);
    for (std::size_t k = 0; k + 1 < all.size(); ++k) std::swap(all[k], all[k + rng.below(all.size() - k)]);
    std::vector<std::size_t> c(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(pairs - 1));
    std::sort(c.begin(), c.end());
    c.insert(c.begin(), 0);
    c.push_back(len);
    return c;
  };
  const auto cu = cuts(), cv = cuts();
  PcpCase out;
  for (std::size_t k = 0; k < pairs; ++k) {
    out.instance.pairs.push_back({s.substr(cu[k], cu[k + 1] - cu[k]), s.substr(cv[k], cv[k + 1] - cv[k])});
    out.solution.push_back(k + 1);
  }
  return out;
}

MinskyCase random_minsky_case(SplitMix64& rng, std::size_t steps) {
  if (steps == 0) throw GadgetError("need at least one step");
  std::vector<CounterAction> acts;
  std::size_t c[2] = {0, 0};
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t left = steps - k;
    std::vector<CounterAction> ok;
    // keep enough room to bring both counters back to zero
    if (c[0] + c[1] + 2 <= left) ok.insert(ok.end(), {CounterAction::Inc1, CounterAction::Inc2});
    if (c[0]) ok.push_back(CounterAction::Dec1);
    if (c[1]) ok.push_back(CounterAction::Dec2);
    if (c[0] + c[1] + 1 <= left) {
      if (!c[0]) ok.push_back(CounterAction::IfZero1);
      if (!c[1]) ok.push_back(CounterAction::IfZero2);
    }
    const CounterAction a = rng.pick(ok);
    acts.push_back(a);
    if (a == CounterAction::Inc1) ++c[0];
    if (a == CounterAction::Inc2) ++c[1];
    if (a == CounterAction::Dec1) --c[0];
    if (a == CounterAction::Dec2) --c[1];
  }
  MinskyCase out;
  for (std::size_t k = 0; k <= steps; ++k) out.machine.states.push_back("q" + std::to_string(k));
  out.machine.initial = "q0";
  out.machine.accepting = {"q" + std::to_string(steps)};
  for (std::size_t k = 0; k < steps; ++k) {
    out.machine.transitions.push_back({"q" + std::to_string(k), acts[k], "q" + std::to_string(k + 1)});
    out.run.push_back(k);
  }
  return out;
}

// ---- JSON ----

PCPInstance pcp_from_json(const std::string& text, std::vector<std::size_t>* solution) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GadgetError(std::string("bad PCP JSON: ") + e.what());
  }
  PCPInstance p;
  try {
    for (const auto& pr : j.at("pairs")) p.pairs.push_back({pr.at(0).get<std::string>(), pr.at(1).get<std::string>()});
    if (solution && j.contains("solution")) *solution = j["solution"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw GadgetError(std::string("bad PCP JSON: ") + e.what());
  }
  p.validate();
  return p;
}

MinskyMachine minsky_from_json(const std::string& text, std::vector<std::size_t>* run) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GadgetError(std::string("bad machine JSON: ") + e.what());
  }
  MinskyMachine m;
  try {
    m.states = j.at("states").get<std::vector<std::string>>();
    m.initial = j.at("initial").get<std::string>();
    m.accepting = j.at("accepting").get<std::vector<std::string>>();
    for (const auto& t : j.at("transitions"))
      m.transitions.push_back({t.at("from").get<std::string>(),
                               counter_action_from_string(t.at("action").get<std::string>()),
                               t.at("to").get<std::string>()});
    if (run && j.contains("run")) *run = j["run"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw GadgetError(std::string("bad machine JSON: ") + e.what());
  }
  m.validate();
  return m;
}

}  // namespace dataltl
