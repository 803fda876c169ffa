#include "dataltl/validity.hpp"

#include <algorithm>
#include <functional>

#include "dataltl/classify.hpp"
#include "dataltl/eval.hpp"
#include "json.hpp"

namespace dataltl {

ExtendedWord::ExtendedWord(AttributedWord base, Formula phi, int N)
    : base_(std::move(base)), phi_(std::move(phi)), N_(N) {
  if (base_.attrs_alphabet().size() != 1)
    throw ValidityError("extended words are defined over exactly one attribute");
  if (N_ < 0) throw ValidityError("negative shift bound");
  attr_ = base_.attrs_alphabet().front();
  values_ = base_.values();
  index(phi_, -1, "/");
  const std::size_t n = base_.size();
  marks_.resize(occ_.size());
  for (std::size_t id = 0; id < occ_.size(); ++id)
    marks_[id].assign(occ_[id].valued() ? values_.size() : 1, std::vector<char>(n + 2, 0));
  eqr_.assign(n + 2, {});
}

void ExtendedWord::index(const Formula& f, int parent, const std::string& path) {
  const int id = static_cast<int>(occ_.size());
  occ_.push_back(Occurrence{f, path, parent, {}});
  for (std::size_t k = 0; k < f->kids.size(); ++k) {
    const int kid = static_cast<int>(occ_.size());
    occ_[static_cast<std::size_t>(id)].kids.push_back(kid);
    index(f->kids[k], id, (path == "/" ? "/" : path + "/") + std::to_string(k));
  }
}

std::vector<int> ExtendedWord::find(const Formula& f) const {
  std::vector<int> out;
  for (std::size_t id = 0; id < occ_.size(); ++id)
    if (equal(occ_[id].node, f)) out.push_back(static_cast<int>(id));
  return out;
}

int ExtendedWord::row(DataValue d) const {
  auto it = std::find(values_.begin(), values_.end(), d);
  return it == values_.end() ? -1 : static_cast<int>(it - values_.begin());
}

std::vector<char>& ExtendedWord::cell(int id, std::size_t r) {
  if (id < 0 || static_cast<std::size_t>(id) >= occ_.size())
    throw ValidityError("no occurrence " + std::to_string(id));
  return marks_[static_cast<std::size_t>(id)].at(r);
}

const std::vector<char>& ExtendedWord::cell(int id, std::size_t r) const {
  if (id < 0 || static_cast<std::size_t>(id) >= occ_.size())
    throw ValidityError("no occurrence " + std::to_string(id));
  return marks_[static_cast<std::size_t>(id)].at(r);
}

bool ExtendedWord::marked(int id, std::size_t i) const {
  if (i < 1 || i > size()) return false;
  if (occ_.at(static_cast<std::size_t>(id)).valued())
    throw ValidityError("occurrence " + std::to_string(id) + " needs a frozen value");
  return cell(id, 0)[i] != 0;
}

bool ExtendedWord::marked(int id, std::size_t i, DataValue d) const {
  if (i < 1 || i > size()) return false;
  const int r = row(d);
  if (r < 0) return false;
  return cell(id, static_cast<std::size_t>(r))[i] != 0;
}

void ExtendedWord::set_mark(int id, std::size_t i, bool on) {
  if (i < 1 || i > size()) throw ValidityError("position out of range");
  cell(id, 0)[i] = on;
}

void ExtendedWord::set_mark(int id, std::size_t i, DataValue d, bool on) {
  if (i < 1 || i > size()) throw ValidityError("position out of range");
  const int r = row(d);
  if (r < 0) throw ValidityError("value does not occur in the word");
  cell(id, static_cast<std::size_t>(r))[i] = on;
}

std::set<int> ExtendedWord::marks_at(std::size_t i) const {
  std::set<int> out;
  for (std::size_t id = 0; id < occ_.size(); ++id)
    if (!occ_[id].valued() && marked(static_cast<int>(id), i)) out.insert(static_cast<int>(id));
  return out;
}

bool ExtendedWord::eq(std::size_t i, int r) const {
  if (i < 1 || i > size()) return false;
  return eqr_[i].count(r) != 0;
}

void ExtendedWord::set_eq(std::size_t i, int r, bool on) {
  if (i < 1 || i > size() || r == 0 || std::abs(r) > N_) throw ValidityError("=_r out of range");
  if (on)
    eqr_[i].insert(r);
  else
    eqr_[i].erase(r);
}

ExtendedWord build_valid_extension(const AttributedWord& w, const Formula& phi, int N) {
  if (phi->sort != Sort::Position) throw ValidityError("root must be a position formula");
  if (max_shift(phi) > N)
    throw ValidityError("N = " + std::to_string(N) + " is below the largest shift " +
                        std::to_string(max_shift(phi)));
  ExtendedWord x(w, phi, N);
  for (const auto& a : attributes_of(phi))
    if (a != x.attr()) throw ValidityError("formula mentions attribute " + a);
  for (const auto& o : x.occurrences()) {
    const Op op = o.node->op;
    if (op == Op::FromNow || op == Op::UpToNow || op == Op::PairNext || op == Op::PairPrev)
      throw ValidityError("no local rule for " + to_string(op));
  }

  Evaluator ev(w);
  const std::size_t n = w.size();
  for (std::size_t id = 0; id < x.occurrences().size(); ++id) {
    const auto& o = x.occurrences()[id];
    if (o.valued()) {
      for (DataValue d : x.values()) {
        const auto& v = ev.truth(o.node, d);
        for (std::size_t i = 1; i <= n; ++i) x.set_mark(static_cast<int>(id), i, d, v[i]);
      }
    } else {
      const auto& v = ev.truth(o.node);
      for (std::size_t i = 1; i <= n; ++i) x.set_mark(static_cast<int>(id), i, v[i]);
    }
  }
  for (std::size_t i = 1; i <= n; ++i)
    for (int r = -N; r <= N; ++r) {
      if (r == 0) continue;
      const long t = static_cast<long>(i) + r;
      if (t < 1 || t > static_cast<long>(n)) continue;
      const auto a = x.val(i), b = x.val(static_cast<std::size_t>(t));
      if (a && b && *a == *b) x.set_eq(i, r, true);
    }
  return x;
}

namespace {

// Expected mark of a position occurrence at i from its children's marks.
bool expect_position(const ExtendedWord& w, const Occurrence& o, std::size_t i) {
  const std::size_t n = w.size();
  const Node& f = *o.node;
  auto P = [&](std::size_t k, std::size_t at) { return w.marked(o.kids[k], at); };
  switch (f.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Prop: return w.base().at(i).has(f.name);
    case Op::Not: return !P(0, i);
    case Op::And: return P(0, i) && P(1, i);
    case Op::Or: return P(0, i) || P(1, i);
    case Op::Next: return i < n && P(0, i + 1);
    case Op::Prev: return i > 1 && P(0, i - 1);
    case Op::Until:
      for (std::size_t j = i; j <= n; ++j) {
        if (P(1, j)) return true;
        if (!P(0, j)) return false;
      }
      return false;
    case Op::Since:
      for (std::size_t j = i; j >= 1; --j) {
        if (P(1, j)) return true;
        if (!P(0, j)) return false;
      }
      return false;
    case Op::Freeze: {
      const auto d = w.val(i);
      if (!d) return false;
      const long t = static_cast<long>(i) + f.delta;
      if (t < 1 || t > static_cast<long>(n)) return false;
      return w.marked(o.kids[0], static_cast<std::size_t>(t), *d);
    }
    case Op::UneqUntil:
    case Op::UneqSince: {
      const auto d = w.val(i);
      if (!d) return false;
      const bool until = f.op == Op::UneqUntil;
      const long start = static_cast<long>(i) + (until ? f.delta : -f.delta);
      if (start < 1 || start > static_cast<long>(n)) return false;
      const int rho = o.kids[0], tau = o.kids[1];
      if (until) {
        for (std::size_t j = static_cast<std::size_t>(start); j <= n; ++j) {
          if (w.marked(tau, j, *d)) return true;
          if (!w.marked(rho, j, *d)) return false;
        }
      } else {
        for (std::size_t j = static_cast<std::size_t>(start); j >= 1; --j) {
          if (w.marked(tau, j, *d)) return true;
          if (!w.marked(rho, j, *d)) return false;
        }
      }
      return false;
    }
    default:
      throw ValidityError("no local rule for " + to_string(f.op));
  }
}

// Expected mark of a class occurrence or U-subformula at (k, d).
bool expect_valued(const ExtendedWord& w, const Occurrence& o, std::size_t k, DataValue d) {
  const std::size_t n = w.size();
  const Node& f = *o.node;
  auto C = [&](std::size_t kid, std::size_t at) { return w.marked(o.kids[kid], at, d); };
  auto in_class = [&](std::size_t at) { return w.val(at) == d; };
  switch (f.op) {
    case Op::Lift: return w.marked(o.kids[0], k);
    case Op::AttrIs:
    case Op::AttrEq: return w.val(k) == d;
    case Op::AttrNeq: return w.val(k) && *w.val(k) != d;
    case Op::Not: return !C(0, k);
    case Op::And: return C(0, k) && C(1, k);
    case Op::Or: return C(0, k) || C(1, k);
    case Op::ClassNext:
      for (std::size_t j = k + 1; j <= n; ++j)
        if (in_class(j)) return C(0, j);
      return false;
    case Op::ClassPrev:
      for (std::size_t j = k - 1; j >= 1; --j)
        if (in_class(j)) return C(0, j);
      return false;
    case Op::ClassUntil:
      for (std::size_t j = k; j <= n; ++j) {
        if (!in_class(j)) continue;
        if (C(1, j)) return true;
        if (!C(0, j)) return false;
      }
      return false;
    case Op::ClassSince:
      for (std::size_t j = k; j >= 1; --j) {
        if (!in_class(j)) continue;
        if (C(1, j)) return true;
        if (!C(0, j)) return false;
      }
      return false;
    default:
      throw ValidityError("no local rule for " + to_string(f.op));
  }
}

}  // namespace

std::optional<Violation> first_violation(const ExtendedWord& w, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= w.occurrences().size())
    throw ValidityError("no marks for occurrence " + std::to_string(id));
  const Occurrence& o = w.occurrences()[static_cast<std::size_t>(id)];
  for (std::size_t i = 1; i <= w.size(); ++i) {
    if (o.valued()) {
      for (DataValue d : w.values())
        if (w.marked(id, i, d) != expect_valued(w, o, i, d)) return Violation{i, d};
    } else if (w.marked(id, i) != expect_position(w, o, i)) {
      return Violation{i, std::nullopt};
    }
  }
  return std::nullopt;
}

bool check_valid_wrt(const ExtendedWord& w, int id) { return !first_violation(w, id); }

bool check_eqr(const ExtendedWord& w) {
  const long n = static_cast<long>(w.size());
  for (long i = 1; i <= n; ++i)
    for (int r = -w.N(); r <= w.N(); ++r) {
      if (r == 0) continue;
      const long t = i + r;
      bool expect = false;
      if (t >= 1 && t <= n) {
        const auto a = w.val(static_cast<std::size_t>(i)), b = w.val(static_cast<std::size_t>(t));
        expect = a && b && *a == *b;
      }
      if (w.eq(static_cast<std::size_t>(i), r) != expect) return false;
    }
  return true;
}

bool is_valid(const ExtendedWord& w) {
  for (std::size_t id = 0; id < w.occurrences().size(); ++id)
    if (!check_valid_wrt(w, static_cast<int>(id))) return false;
  return check_eqr(w);
}

// ---- decorations ----

namespace {

void flatten(const ExtendedWord& w, int id, Op op, std::vector<int>& out) {
  const Occurrence& o = w.occurrences()[static_cast<std::size_t>(id)];
  if (o.node->op == op && o.node->sort != Sort::Position) {
    for (int k : o.kids) flatten(w, k, op, out);
  } else {
    out.push_back(id);
  }
}

// Conjunction of the lifted parts of a guarded disjunct, with its guard.
struct Part {
  Op guard = Op::Lift;  // Lift (none), AttrEq or AttrNeq
  std::vector<int> lifted;  // position occurrences
};

Part split_part(const ExtendedWord& w, int id) {
  std::vector<int> cs;
  flatten(w, id, Op::And, cs);
  Part p;
  for (int c : cs) {
    const Occurrence& o = w.occurrences()[static_cast<std::size_t>(c)];
    switch (o.node->op) {
      case Op::Lift: p.lifted.push_back(o.kids[0]); break;
      case Op::AttrEq:
      case Op::AttrNeq: p.guard = o.node->op; break;
      default: throw ValidityError("unexpected " + to_string(o.node->op) + " in extended until");
    }
  }
  return p;
}

bool holds(const ExtendedWord& w, const Part& p, std::size_t i) {
  for (int id : p.lifted)
    if (!w.marked(id, i)) return false;
  return true;
}

std::size_t class_delta_pred(const HerdLabels& l, std::size_t j, std::size_t delta) {
  if (!l.val[j] || j <= delta) return 0;
  for (std::size_t k = j - delta; k >= 1; --k)
    if (l.val[k] == l.val[j]) return k;
  return 0;
}

std::size_t class_pred(const HerdLabels& l, std::size_t j) {
  if (!l.val[j]) return 0;
  for (std::size_t k = j - 1; k >= 1; --k)
    if (l.val[k] == l.val[j]) return k;
  return 0;
}

HerdLabels with_tau(const HerdLabels& l, const std::vector<char>& tau) {
  HerdLabels out = l;
  out.tau = tau;
  return out;
}

}  // namespace

HerdLabels labels_from_marks(const ExtendedWord& w, int id) {
  if (id < 0 || static_cast<std::size_t>(id) >= w.occurrences().size())
    throw ValidityError("no occurrence " + std::to_string(id));
  const Occurrence& o = w.occurrences()[static_cast<std::size_t>(id)];
  std::string why;
  auto sh = extended_shape(o.node, &why);
  if (!sh) throw ValidityError("not an extended-until occurrence: " + why);
  if (!sh->until || sh->delta < 0)
    throw ValidityError("decorations are defined for until with a nonnegative shift");

  const std::size_t n = w.size();
  HerdLabels l;
  l.attr = w.attr();
  l.delta = sh->delta;
  l.n = n;
  l.val.assign(n + 2, std::nullopt);
  l.rho_eq.assign(n + 2, 0);
  l.rho_neq.assign(n + 2, 0);
  l.tau.assign(n + 2, 0);

  std::vector<int> ds;
  flatten(w, o.kids[0], Op::Or, ds);
  std::vector<Part> parts;
  for (int d : ds) parts.push_back(split_part(w, d));
  const Part target = split_part(w, o.kids[1]);

  for (std::size_t i = 1; i <= n; ++i) {
    l.val[i] = w.val(i);
    for (const Part& p : parts) {
      if (!holds(w, p, i)) continue;
      if (p.guard != Op::AttrEq) l.rho_neq[i] = 1;
      l.rho_eq[i] = 1;
    }
    l.tau[i] = holds(w, target, i);
  }
  return l;
}

SDecoration build_s_decoration(const ExtendedWord& w, int id) {
  HerdLabels l = labels_from_marks(w, id);
  std::function<void(int)> require = [&](int k) {
    for (int c : w.occurrences()[static_cast<std::size_t>(k)].kids) {
      if (!check_valid_wrt(w, c))
        throw ValidityError("word is not valid for occurrence " +
                            w.occurrences()[static_cast<std::size_t>(c)].path);
      require(c);
    }
  };
  require(id);

  const std::size_t n = w.size();
  const std::size_t delta = static_cast<std::size_t>(l.delta);
  SDecoration dec;
  dec.occurrence = id;
  dec.delta = l.delta;
  dec.psi.assign(n + 2, 0);
  std::set<std::size_t> psi;
  for (std::size_t i = 1; i <= n; ++i)
    if (w.marked(id, i)) {
      dec.psi[i] = 1;
      psi.insert(i);
    }

  const HerdReport top = analyze_labels(l, psi);
  std::vector<std::pair<std::size_t, std::size_t>> by_end;  // (e+, j)
  for (const auto& [j, iv] : top.intervals) by_end.emplace_back(iv.second, j);
  std::sort(by_end.begin(), by_end.end());
  for (std::size_t t = 0; t < by_end.size(); ++t)
    dec.s_assign[by_end[t].second] = static_cast<int>(t % (delta + 1));
  for (std::size_t j : top.tau_positions) dec.s_assign.emplace(j, 0);

  for (std::size_t s = 0; s <= delta; ++s) {
    SLayer ly;
    ly.s = static_cast<int>(s);
    ly.tau.assign(n + 2, 0);
    ly.psi.assign(n + 2, 0);
    ly.e_minus.assign(n + 2, 0);
    ly.e_plus.assign(n + 2, 0);
    ly.label.assign(n + 2, 0);
    ly.color.assign(n + 2, 0);
    for (const auto& [j, sj] : dec.s_assign)
      if (sj == static_cast<int>(s)) ly.tau[j] = 1;

    const HerdLabels ls = with_tau(l, ly.tau);
    std::set<std::size_t> ps;
    for (std::size_t i = 1; i <= n; ++i)
      if (characterization_holds(ls, i)) {
        ly.psi[i] = 1;
        ps.insert(i);
      }
    const HerdReport r = analyze_labels(ls, ps);

    for (const auto& [j, iv] : r.intervals) {
      ly.e_minus[iv.first] = 1;
      ly.e_plus[iv.second] = 1;
      ly.label[iv.first] |= kStart;
      ly.label[iv.second] |= kEnd;
      for (const auto& [k, kind] : r.specials.at(j))
        if (k > iv.first && k < iv.second) ly.label[k] |= kMid;
    }

    for (std::size_t j = 1; j <= n; ++j) {
      if (!ly.tau[j]) continue;
      const std::size_t p = class_delta_pred(l, j, delta);
      if (p && (ly.color[p] & kCRight)) continue;
      ly.color[j] |= kCLeft;
      auto h = r.herds.find(j);
      if (h != r.herds.end())
        for (std::size_t i : h->second) ly.color[i] |= kCRight;
    }

    std::size_t prev = 0;
    bool first = true;
    for (std::size_t k = 1; k <= n; ++k) {
      if (!(ly.label[k] & kStart)) continue;
      const std::size_t cp = class_pred(l, k);
      const bool left = first || !(cp && (ly.color[cp] & kARight));
      if (left) {
        ly.color[k] |= kALeft;
        for (std::size_t x = std::max(cp, prev) + 1; x < k; ++x) ly.color[x] |= kARight;
      }
      prev = k;
      first = false;
    }
    dec.layers.push_back(std::move(ly));
  }
  dec.labels = std::move(l);
  return dec;
}

bool ConditionReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const ConditionResult& r) { return r.ok; });
}

const ConditionResult& ConditionReport::get(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r;
  throw ValidityError("no condition " + name);
}

namespace {

// Pattern ((|- o* -|) + {|-,-|})* over a sequence of labels. Returns the
// index of the first offending element, or the size when the sequence is fine
// (an unterminated interval reports its last element).
std::size_t match_pattern(const std::vector<unsigned char>& seq) {
  bool open = false;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const unsigned char x = seq[t];
    if (!open) {
      if (x == (kStart | kEnd)) continue;
      if (x == kStart) {
        open = true;
        continue;
      }
      return t;
    }
    if (x == kMid) continue;
    if (x == kEnd) {
      open = false;
      continue;
    }
    return t;
  }
  return open ? seq.size() - 1 : seq.size();
}

// One unit (|- o* -|) or {|-,-|}.
bool single_unit(const std::vector<unsigned char>& seq) {
  if (seq.size() == 1) return seq[0] == (kStart | kEnd);
  if (seq.size() < 2 || seq.front() != kStart || seq.back() != kEnd) return false;
  for (std::size_t t = 1; t + 1 < seq.size(); ++t)
    if (seq[t] != kMid) return false;
  return true;
}

}  // namespace

ConditionReport check_conditions(const SDecoration& dec, int s) {
  if (s < 0 || static_cast<std::size_t>(s) >= dec.layers.size())
    throw ValidityError("no layer for s = " + std::to_string(s));
  const SLayer& ly = dec.layers[static_cast<std::size_t>(s)];
  const HerdLabels& l = dec.labels;
  const std::size_t n = l.n;
  const std::size_t delta = static_cast<std::size_t>(dec.delta);

  ConditionReport rep;
  rep.s = s;
  const char* names[] = {"Col1", "Col2", "Spec1", "Spec2", "Spec3", "Spec4", "Log1", "Log2"};
  for (std::size_t t = 0; t < 8; ++t) rep.results[t].name = names[t];
  auto fail = [&](std::size_t t, std::size_t pos, const std::string& why) {
    auto& r = rep.results[t];
    if (!r.ok) return;
    r.ok = false;
    r.position = pos;
    r.detail = why;
  };

  auto labeled = [&](std::size_t i) { return ly.label[i] != 0; };
  auto is_start = [&](std::size_t i) { return (ly.label[i] & kStart) != 0; };
  auto is_end = [&](std::size_t i) { return (ly.label[i] & kEnd) != 0; };
  auto has = [&](std::size_t i, unsigned char c) { return (ly.color[i] & c) != 0; };
  auto a_consistent = [&](std::size_t i, std::size_t k) { return has(i, kARight) == has(k, kALeft); };
  auto c_consistent = [&](std::size_t i, std::size_t j) { return has(i, kCRight) == has(j, kCLeft); };
  // minimal tau_(s)-position >= from
  auto next_tau = [&](std::size_t from) -> std::size_t {
    for (std::size_t j = from; j <= n; ++j)
      if (ly.tau[j]) return j;
    return 0;
  };
  auto closing_end = [&](std::size_t k) -> std::size_t {
    for (std::size_t m = k; m <= n; ++m)
      if (is_end(m)) return m;
    return 0;
  };

  // Col1
  for (std::size_t j = 1; j <= n; ++j) {
    if (!ly.tau[j]) continue;
    const std::size_t p = class_delta_pred(l, j, delta);
    if ((p && has(p, kCRight)) != !has(j, kCLeft))
      fail(0, j, "class delta-predecessor " + std::to_string(p) + " is inconsistent");
  }
  // Col2
  for (std::size_t j = 1; j <= n; ++j) {
    if (!is_start(j)) continue;
    const std::size_t p = class_pred(l, j);
    if ((p && has(p, kARight)) != !has(j, kALeft))
      fail(1, j, "class predecessor " + std::to_string(p) + " is inconsistent");
  }
  // Spec1
  {
    std::vector<std::size_t> at;
    std::vector<unsigned char> seq;
    for (std::size_t i = 1; i <= n; ++i)
      if (labeled(i)) {
        at.push_back(i);
        seq.push_back(ly.label[i]);
      }
    const std::size_t bad = match_pattern(seq);
    if (bad < seq.size()) fail(2, at[bad], "global label pattern broken");
  }
  // Spec2: maximal runs of labeled positions inside each class word.
  {
    std::map<DataValue, std::vector<std::size_t>> classes;
    for (std::size_t i = 1; i <= n; ++i)
      if (l.val[i]) classes[*l.val[i]].push_back(i);
    for (const auto& [d, ps] : classes) {
      std::vector<unsigned char> run;
      std::size_t run_start = 0;
      auto flush = [&]() {
        if (!run.empty() && !single_unit(run)) fail(3, run_start, "class block is not one interval");
        run.clear();
      };
      for (std::size_t i : ps) {
        if (labeled(i)) {
          if (run.empty()) run_start = i;
          run.push_back(ly.label[i]);
        } else {
          flush();
        }
      }
      flush();
    }
  }
  // Spec3
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t j = next_tau(k + 1);
    bool cond = false;
    if (j) {
      bool inner = true;
      for (std::size_t m = k + 1; m < j && inner; ++m) inner = l.rho_neq[m];
      bool start_between = false;
      for (std::size_t m = k + 1; m < j; ++m) start_between = start_between || is_start(m);
      cond = inner && (!l.rho_neq[k] || (ly.tau[k] && (!labeled(j) || start_between)));
    }
    if (is_end(k) != cond) fail(4, k, cond ? "missing -|" : "unexpected -|");
  }
  // Spec4
  for (std::size_t k = 1; k <= n; ++k) {
    if (!labeled(k)) continue;
    bool rhs = false;
    const std::size_t m = closing_end(k);
    const std::size_t j = m ? next_tau(m + 1) : 0;
    if (m && j) {
      bool A = true, B = true, C = true;
      for (std::size_t x = k + delta + 1; x <= m; ++x)
        if (labeled(x) && !l.rho_eq[x]) A = false;
      for (std::size_t x = k + delta + 1; x < m; ++x)
        if (!labeled(x) && !l.rho_neq[x]) B = false;
      for (std::size_t x = std::max(m + 1, k + delta); x < j; ++x)
        if (!l.rho_neq[x]) C = false;
      auto consistent_after = [&](std::size_t i) {
        for (std::size_t x = i + 1; x < k; ++x)
          if (!a_consistent(x, k)) return false;
        return true;
      };
      bool di = false, dii = false, diii = false;
      for (std::size_t i = 1; i < k; ++i) {
        const std::size_t t = i + delta;
        if (t >= j) continue;
        if (!consistent_after(i)) continue;
        if (!labeled(t) && l.tau[t]) di = true;
        if (!l.rho_eq[t]) dii = true;
        if (!labeled(t) && !l.rho_neq[t]) diii = true;
      }
      bool D = di || dii || diii;
      if (!D) D = consistent_after(0);
      rhs = A && B && C && D;
    }
    if (is_start(k) != rhs) fail(5, k, rhs ? "missing |-" : "unexpected |-");
  }
  // Log1
  for (std::size_t i = 1; i <= n; ++i) {
    if (labeled(i)) continue;
    const std::size_t j = i + delta <= n ? next_tau(i + delta) : 0;
    bool cond = j != 0;
    for (std::size_t k = i + delta; cond && k < j; ++k) cond = l.rho_neq[k];
    if (static_cast<bool>(ly.psi[i]) != cond)
      fail(6, i, cond ? "unlabeled position should carry psi_(s)" : "unlabeled psi_(s) without witness");
    else if (cond && !c_consistent(i, j))
      fail(6, i, "not c-consistent with " + std::to_string(j));
  }
  // Log2
  for (std::size_t i = 1; i <= n; ++i) {
    if (!labeled(i)) continue;
    const std::size_t lend = closing_end(i);
    const std::size_t j = lend && i + delta <= n ? next_tau(std::max(i + delta, lend + 1)) : 0;
    bool cond = j != 0;
    for (std::size_t k = i + delta; cond && k <= lend; ++k)
      cond = l.rho_neq[k] || (labeled(k) && l.rho_eq[k]);
    for (std::size_t k = std::max(lend, i + delta); cond && k < j; ++k) cond = l.rho_neq[k];
    if (static_cast<bool>(ly.psi[i]) != cond)
      fail(7, i, cond ? "labeled position should carry psi_(s)" : "labeled psi_(s) without witness");
    else if (cond && !c_consistent(i, j))
      fail(7, i, "not c-consistent with " + std::to_string(j));
  }
  return rep;
}

std::vector<ConditionReport> check_all_conditions(const SDecoration& d) {
  std::vector<ConditionReport> out;
  for (std::size_t s = 0; s < d.layers.size(); ++s) out.push_back(check_conditions(d, static_cast<int>(s)));
  return out;
}

bool conditions_imply_truth(const SDecoration& d) {
  for (const SLayer& ly : d.layers) {
    const HerdLabels ls = with_tau(d.labels, ly.tau);
    for (std::size_t i = 1; i <= ls.n; ++i)
      if (static_cast<bool>(ly.psi[i]) != characterization_holds(ls, i)) return false;
  }
  return true;
}

std::string condition_report_json(const std::vector<ConditionReport>& reports, int indent) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json conds = nlohmann::json::object();
    for (const auto& c : r.results) {
      nlohmann::json e = {{"ok", c.ok}};
      if (!c.ok) {
        e["position"] = c.position;
        e["detail"] = c.detail;
      }
      conds[c.name] = e;
    }
    out.push_back({{"s", r.s}, {"ok", r.ok()}, {"conditions", conds}});
  }
  return out.dump(indent);
}

}  // namespace dataltl
