#include "dataltl/automata.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "json.hpp"

namespace dataltl {

using nlohmann::json;

bool guard_matches(const LetterGuard& g, const Letter& x) { return !g || *g == x; }

namespace {

void check_state(int s, int n, const char* what) {
  if (s < 0 || s >= n) throw AutomatonError(std::string(what) + " " + std::to_string(s) + " out of range");
}

Letter letter_at(const AttributedWord& w, std::size_t i, const std::vector<std::string>& props) {
  Letter out;
  for (const auto& p : props)
    if (w.at(i).has(p)) out.insert(p);
  return out;
}

}  // namespace

void RegisterAutomaton::validate() const {
  if (states < 1) throw AutomatonError("register automaton needs a state");
  if (registers < 0) throw AutomatonError("negative register count");
  check_state(initial, states, "initial state");
  for (const auto& t : compare) {
    check_state(t.from, states, "state");
    check_state(t.to, states, "state");
    if (t.reg < 1 || t.reg > registers) throw AutomatonError("register " + std::to_string(t.reg) + " out of range");
  }
  for (const auto& t : store) {
    check_state(t.from, states, "state");
    check_state(t.to, states, "state");
    if (t.reg < 1 || t.reg > registers) throw AutomatonError("register " + std::to_string(t.reg) + " out of range");
  }
  for (int s : accepting) check_state(s, states, "accepting state");
}

bool ra_accepts(const RegisterAutomaton& a, const AttributedWord& w) {
  a.validate();
  if (w.attrs_alphabet().size() != 1) throw AutomatonError("register automata read 1-attributed words");
  const std::string& attr = w.attrs_alphabet().front();

  using Regs = std::vector<std::optional<DataValue>>;
  std::set<std::pair<int, Regs>> cur{{a.initial, Regs(static_cast<std::size_t>(a.registers))}};
  for (std::size_t i = 1; i <= w.size() && !cur.empty(); ++i) {
    const auto v = w.value(attr, i);
    if (!v) throw AutomatonError("position " + std::to_string(i) + " has no value");
    const Letter x = letter_at(w, i, a.props);
    std::set<std::pair<int, Regs>> nxt;
    for (const auto& [s, regs] : cur) {
      const bool fresh = std::none_of(regs.begin(), regs.end(), [&](const auto& r) { return r == v; });
      for (const auto& t : a.compare)
        if (t.from == s && guard_matches(t.letter, x) && regs[static_cast<std::size_t>(t.reg - 1)] == v)
          nxt.insert({t.to, regs});
      if (fresh)
        for (const auto& t : a.store)
          if (t.from == s && guard_matches(t.letter, x)) {
            Regs r = regs;
            r[static_cast<std::size_t>(t.reg - 1)] = v;
            nxt.insert({t.to, std::move(r)});
          }
    }
    cur = std::move(nxt);
  }
  return std::any_of(cur.begin(), cur.end(), [&](const auto& c) { return a.accepting.count(c.first) != 0; });
}

void DataAutomaton::validate() const {
  if (base_states < 1 || class_states < 1) throw AutomatonError("data automaton needs states");
  check_state(base_initial, base_states, "base initial state");
  check_state(class_initial, class_states, "class initial state");
  const int g = static_cast<int>(gamma.size());
  for (const auto& t : base) {
    check_state(t.from, base_states, "base state");
    check_state(t.to, base_states, "base state");
    check_state(t.output, g, "output symbol");
  }
  for (const auto& t : klass) {
    check_state(t.from, class_states, "class state");
    check_state(t.to, class_states, "class state");
    check_state(t.symbol, g, "class symbol");
  }
  for (int s : base_accepting) check_state(s, base_states, "base accepting state");
  for (int s : class_accepting) check_state(s, class_states, "class accepting state");
}

namespace {

using StateSet = std::vector<char>;  // indicator over class states

class DaSearch {
 public:
  DaSearch(const DataAutomaton& a, const AttributedWord& w, DaStats* stats) : a_(a), w_(w), stats_(stats) {
    if (w.attrs_alphabet().size() != 1) throw AutomatonError("data automata read 1-attributed words");
    const std::string& attr = w.attrs_alphabet().front();
    const auto vals = w.values();
    for (std::size_t i = 1; i <= w.size(); ++i) {
      const auto v = w.value(attr, i);
      if (!v) throw AutomatonError("position " + std::to_string(i) + " has no value");
      cls_.push_back(static_cast<int>(std::find(vals.begin(), vals.end(), *v) - vals.begin()));
      letters_.push_back(letter_at(w, i, a.props));
    }
    step_.assign(a.gamma.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(a.class_states)));
    for (const auto& t : a.klass)
      step_[static_cast<std::size_t>(t.symbol)][static_cast<std::size_t>(t.from)].push_back(t.to);
    StateSet init(static_cast<std::size_t>(a.class_states), 0);
    init[static_cast<std::size_t>(a.class_initial)] = 1;
    classes_.assign(vals.size(), init);
    started_.assign(vals.size(), 0);
  }

  bool run() { return dfs(0, a_.base_initial); }

 private:
  bool dfs(std::size_t pos, int state) {
    if (stats_) ++stats_->nodes;
    if (pos == w_.size()) {
      if (stats_) ++stats_->runs;
      if (!a_.base_accepting.count(state)) return false;
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (!started_[c]) continue;
        bool ok = false;
        for (int s : a_.class_accepting) ok = ok || classes_[c][static_cast<std::size_t>(s)];
        if (!ok) return false;
      }
      return true;
    }
    if (!seen_.insert(key(pos, state)).second) return false;
    const std::size_t c = static_cast<std::size_t>(cls_[pos]);
    for (const auto& t : a_.base) {
      if (t.from != state || !guard_matches(t.letter, letters_[pos])) continue;
      StateSet next(static_cast<std::size_t>(a_.class_states), 0);
      bool any = false;
      for (std::size_t s = 0; s < next.size(); ++s)
        if (classes_[c][s])
          for (int u : step_[static_cast<std::size_t>(t.output)][s]) {
            next[static_cast<std::size_t>(u)] = 1;
            any = true;
          }
      if (!any) continue;  // this class can never be accepted
      StateSet saved = classes_[c];
      const char was = started_[c];
      classes_[c] = std::move(next);
      started_[c] = 1;
      const bool ok = dfs(pos + 1, t.to);
      classes_[c] = std::move(saved);
      started_[c] = was;
      if (ok) return true;
    }
    return false;
  }

  std::string key(std::size_t pos, int state) const {
    std::string k = std::to_string(pos) + ":" + std::to_string(state) + ":";
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      k.push_back(started_[c] ? '1' : '0');
      k.append(classes_[c].begin(), classes_[c].end());
    }
    return k;
  }

  const DataAutomaton& a_;
  const AttributedWord& w_;
  DaStats* stats_;
  std::vector<int> cls_;
  std::vector<Letter> letters_;
  std::vector<std::vector<std::vector<int>>> step_;  // [symbol][state] -> states
  std::vector<StateSet> classes_;
  std::vector<char> started_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

bool da_accepts(const DataAutomaton& a, const AttributedWord& w, DaStats* stats) {
  a.validate();
  return DaSearch(a, w, stats).run();
}

namespace {

// Both guards at once, or nullopt-in-optional when they cannot agree.
std::optional<LetterGuard> meet(const LetterGuard& x, const LetterGuard& y) {
  if (!x) return y;
  if (!y) return x;
  if (*x != *y) return std::nullopt;
  return x;
}

}  // namespace

DataAutomaton da_product(const DataAutomaton& a, const DataAutomaton& b) {
  a.validate();
  b.validate();
  if (std::set<std::string>(a.props.begin(), a.props.end()) != std::set<std::string>(b.props.begin(), b.props.end()))
    throw AutomatonError("product needs equal input alphabets");
  DataAutomaton p;
  p.props = a.props;
  const int gb = static_cast<int>(b.gamma.size());
  for (const auto& x : a.gamma)
    for (const auto& y : b.gamma) p.gamma.push_back("(" + x + "," + y + ")");
  auto bs = [&](int x, int y) { return x * b.base_states + y; };
  auto cs = [&](int x, int y) { return x * b.class_states + y; };
  p.base_states = a.base_states * b.base_states;
  p.base_initial = bs(a.base_initial, b.base_initial);
  for (const auto& s : a.base)
    for (const auto& t : b.base)
      if (auto g = meet(s.letter, t.letter))
        p.base.push_back({bs(s.from, t.from), *g, s.output * gb + t.output, bs(s.to, t.to)});
  for (int x : a.base_accepting)
    for (int y : b.base_accepting) p.base_accepting.insert(bs(x, y));
  p.class_states = a.class_states * b.class_states;
  p.class_initial = cs(a.class_initial, b.class_initial);
  for (const auto& s : a.klass)
    for (const auto& t : b.klass) p.klass.push_back({cs(s.from, t.from), s.symbol * gb + t.symbol, cs(s.to, t.to)});
  for (int x : a.class_accepting)
    for (int y : b.class_accepting) p.class_accepting.insert(cs(x, y));
  return p;
}

DataAutomaton da_universal(const std::vector<std::string>& props) {
  DataAutomaton u;
  u.props = props;
  u.gamma = {"_"};
  u.base = {{0, std::nullopt, 0, 0}};
  u.base_accepting = {0};
  u.klass = {{0, 0, 0}};
  u.class_accepting = {0};
  return u;
}

// ---- JSON ----

namespace {

LetterGuard guard_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "*") return std::nullopt;
  if (!j.is_array()) throw AutomatonError("letter must be an array of propositions or \"*\"");
  return j.get<Letter>();
}

json guard_to(const LetterGuard& g) { return g ? json(*g) : json("*"); }

int symbol_from(const json& j, const std::vector<std::string>& gamma) {
  if (j.is_number_integer()) return j.get<int>();
  const auto name = j.get<std::string>();
  auto it = std::find(gamma.begin(), gamma.end(), name);
  if (it == gamma.end()) throw AutomatonError("unknown output symbol " + name);
  return static_cast<int>(it - gamma.begin());
}

template <class F>
auto guarded(F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw AutomatonError(std::string("bad automaton JSON: ") + e.what());
  }
}

}  // namespace

RegisterAutomaton register_automaton_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    RegisterAutomaton a;
    a.props = j.value("props", std::vector<std::string>{});
    a.states = j.at("states").get<int>();
    a.initial = j.value("initial", 0);
    a.registers = j.at("registers").get<int>();
    for (const auto& t : j.value("compare", json::array()))
      a.compare.push_back({t.at("from").get<int>(), t.at("register").get<int>(), guard_from(t.value("letter", json("*"))),
                           t.at("to").get<int>()});
    for (const auto& t : j.value("store", json::array()))
      a.store.push_back({t.at("from").get<int>(), guard_from(t.value("letter", json("*"))), t.at("to").get<int>(),
                         t.at("register").get<int>()});
    a.accepting = j.at("accepting").get<std::set<int>>();
    a.validate();
    return a;
  });
}

std::string register_automaton_to_json(const RegisterAutomaton& a, int indent) {
  json j = {{"type", "register"}, {"props", a.props},         {"states", a.states},
            {"initial", a.initial}, {"registers", a.registers}, {"accepting", a.accepting}};
  j["compare"] = json::array();
  for (const auto& t : a.compare)
    j["compare"].push_back({{"from", t.from}, {"register", t.reg}, {"letter", guard_to(t.letter)}, {"to", t.to}});
  j["store"] = json::array();
  for (const auto& t : a.store)
    j["store"].push_back({{"from", t.from}, {"letter", guard_to(t.letter)}, {"to", t.to}, {"register", t.reg}});
  return j.dump(indent);
}

DataAutomaton data_automaton_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    DataAutomaton a;
    a.props = j.value("props", std::vector<std::string>{});
    a.gamma = j.at("gamma").get<std::vector<std::string>>();
    const json& b = j.at("base");
    a.base_states = b.at("states").get<int>();
    a.base_initial = b.value("initial", 0);
    for (const auto& t : b.value("transitions", json::array()))
      a.base.push_back({t.at("from").get<int>(), guard_from(t.value("letter", json("*"))),
                        symbol_from(t.at("output"), a.gamma), t.at("to").get<int>()});
    a.base_accepting = b.at("accepting").get<std::set<int>>();
    const json& c = j.at("class");
    a.class_states = c.at("states").get<int>();
    a.class_initial = c.value("initial", 0);
    for (const auto& t : c.value("transitions", json::array()))
      a.klass.push_back({t.at("from").get<int>(), symbol_from(t.at("symbol"), a.gamma), t.at("to").get<int>()});
    a.class_accepting = c.at("accepting").get<std::set<int>>();
    a.validate();
    return a;
  });
}

std::string data_automaton_to_json(const DataAutomaton& a, int indent) {
  json base = {{"states", a.base_states}, {"initial", a.base_initial}, {"accepting", a.base_accepting}};
  base["transitions"] = json::array();
  for (const auto& t : a.base)
    base["transitions"].push_back(
        {{"from", t.from}, {"letter", guard_to(t.letter)}, {"output", a.gamma.at(static_cast<std::size_t>(t.output))}, {"to", t.to}});
  json cls = {{"states", a.class_states}, {"initial", a.class_initial}, {"accepting", a.class_accepting}};
  cls["transitions"] = json::array();
  for (const auto& t : a.klass)
    cls["transitions"].push_back(
        {{"from", t.from}, {"symbol", a.gamma.at(static_cast<std::size_t>(t.symbol))}, {"to", t.to}});
  json j = {{"type", "data"}, {"props", a.props}, {"gamma", a.gamma}, {"base", base}, {"class", cls}};
  return j.dump(indent);
}

}  // namespace dataltl
