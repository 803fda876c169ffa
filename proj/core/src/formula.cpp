#include "dataltl/formula.hpp"

#include <algorithm>
#include <unordered_set>

namespace dataltl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Formula make(Op op, Sort sort, std::vector<Formula> kids, std::string name = {},
             std::string name2 = {}, int delta = 0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->sort = sort;
  n->name = std::move(name);
  n->name2 = std::move(name2);
  n->delta = delta;
  n->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(op), static_cast<std::size_t>(sort));
  h = mix(h, std::hash<std::string>{}(n->name));
  h = mix(h, std::hash<std::string>{}(n->name2));
  h = mix(h, std::hash<int>{}(n->delta));
  for (const auto& k : n->kids) h = mix(h, k->hash);
  n->hash = h;
  return n;
}

void require(const Formula& a, Sort s, const char* where) {
  if (!a) throw FormulaError(std::string(where) + ": null operand");
  if (a->sort != s) throw FormulaError(std::string(where) + ": operand has the wrong layer");
}

Formula as_sort(Formula a, Sort s, const char* where) {
  if (!a) throw FormulaError(std::string(where) + ": null operand");
  if (a->sort == s) return a;
  if (a->sort == Sort::Position) return f::lift(std::move(a), s);
  throw FormulaError(std::string(where) + ": operand has the wrong layer");
}

Formula binary_bool(Op op, Formula a, Formula b) {
  const char* where = op == Op::And ? "conjunction" : "disjunction";
  if (!a || !b) throw FormulaError(std::string(where) + ": null operand");
  Sort s = a->sort == Sort::Position ? b->sort : a->sort;
  a = as_sort(std::move(a), s, where);
  b = as_sort(std::move(b), s, where);
  if (s != Sort::Position && a->op == Op::Lift && b->op == Op::Lift)
    return f::lift(binary_bool(op, a->kid(), b->kid()), s);
  return make(op, s, {std::move(a), std::move(b)});
}

}  // namespace

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->op != b->op || a->sort != b->sort || a->delta != b->delta ||
      a->name != b->name || a->name2 != b->name2 || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t k = 0; k < a->kids.size(); ++k)
    if (!equal(a->kids[k], b->kids[k])) return false;
  return true;
}

namespace f {

Formula top() { return make(Op::True, Sort::Position, {}); }
Formula bottom() { return make(Op::False, Sort::Position, {}); }
Formula prop(const std::string& p) {
  if (p.empty()) throw FormulaError("empty proposition name");
  return make(Op::Prop, Sort::Position, {}, p);
}

Formula neg(Formula a) {
  if (!a) throw FormulaError("negation: null operand");
  switch (a->sort) {
    case Sort::Position:
      return make(Op::Not, Sort::Position, {std::move(a)});
    case Sort::Class:
      if (a->op == Op::Lift) return lift(neg(a->kid()), Sort::Class);
      return make(Op::Not, Sort::Class, {std::move(a)});
    case Sort::USub:
      if (a->op == Op::Lift) return lift(neg(a->kid()), Sort::USub);
      throw FormulaError("negation of an attribute test is not a U-subformula");
  }
  return nullptr;
}

Formula conj(Formula a, Formula b) { return binary_bool(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return binary_bool(Op::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula conj_all(const std::vector<Formula>& xs, Sort sort) {
  if (xs.empty()) return lift(top(), sort);
  Formula acc = xs.back();
  for (std::size_t k = xs.size() - 1; k-- > 0;) acc = conj(xs[k], acc);
  return acc;
}

Formula disj_all(const std::vector<Formula>& xs, Sort sort) {
  if (xs.empty()) return lift(bottom(), sort);
  Formula acc = xs.back();
  for (std::size_t k = xs.size() - 1; k-- > 0;) acc = disj(xs[k], acc);
  return acc;
}

Formula next(Formula a) {
  require(a, Sort::Position, "X");
  return make(Op::Next, Sort::Position, {std::move(a)});
}
Formula prev(Formula a) {
  require(a, Sort::Position, "Y");
  return make(Op::Prev, Sort::Position, {std::move(a)});
}
Formula next_n(Formula a, int n) {
  for (int k = 0; k < n; ++k) a = next(a);
  for (int k = 0; k < -n; ++k) a = prev(a);
  return a;
}
Formula until(Formula a, Formula b) {
  require(a, Sort::Position, "U");
  require(b, Sort::Position, "U");
  return make(Op::Until, Sort::Position, {std::move(a), std::move(b)});
}
Formula since(Formula a, Formula b) {
  require(a, Sort::Position, "S");
  require(b, Sort::Position, "S");
  return make(Op::Since, Sort::Position, {std::move(a), std::move(b)});
}
Formula eventually(Formula a) { return until(top(), std::move(a)); }
Formula always(Formula a) { return neg(eventually(neg(std::move(a)))); }
Formula once(Formula a) { return since(top(), std::move(a)); }
Formula historically(Formula a) { return neg(once(neg(std::move(a)))); }

Formula freeze(int delta, const std::string& a, Formula psi) {
  if (a.empty()) throw FormulaError("freeze: empty attribute name");
  psi = as_sort(std::move(psi), Sort::Class, "C");
  return make(Op::Freeze, Sort::Position, {std::move(psi)}, a, {}, delta);
}
Formula attr_shift_eq(const std::string& a, int delta, const std::string& b) {
  return freeze(delta, a, attr_is(b));
}
Formula uneq_until(const std::string& a, int delta, Formula rho, Formula tau) {
  if (a.empty()) throw FormulaError("U!: empty attribute name");
  rho = as_sort(std::move(rho), Sort::USub, "U!");
  tau = as_sort(std::move(tau), Sort::USub, "U!");
  return make(Op::UneqUntil, Sort::Position, {std::move(rho), std::move(tau)}, a, {}, delta);
}
Formula uneq_since(const std::string& a, int delta, Formula rho, Formula tau) {
  if (a.empty()) throw FormulaError("S!: empty attribute name");
  rho = as_sort(std::move(rho), Sort::USub, "S!");
  tau = as_sort(std::move(tau), Sort::USub, "S!");
  return make(Op::UneqSince, Sort::Position, {std::move(rho), std::move(tau)}, a, {}, delta);
}
Formula from_now(Formula a) {
  require(a, Sort::Position, "N");
  return make(Op::FromNow, Sort::Position, {std::move(a)});
}
Formula up_to_now(Formula a) {
  require(a, Sort::Position, "Nbar");
  return make(Op::UpToNow, Sort::Position, {std::move(a)});
}
Formula pair_next(const std::string& a, const std::string& b, Formula phi) {
  require(phi, Sort::Position, "XX");
  return make(Op::PairNext, Sort::Position, {std::move(phi)}, a, b);
}
Formula pair_prev(const std::string& a, const std::string& b, Formula phi) {
  require(phi, Sort::Position, "YY");
  return make(Op::PairPrev, Sort::Position, {std::move(phi)}, a, b);
}

Formula lift(Formula p, Sort to) {
  require(p, Sort::Position, "lift");
  if (to == Sort::Position) return p;
  return make(Op::Lift, to, {std::move(p)});
}
Formula attr_is(const std::string& a) { return make(Op::AttrIs, Sort::Class, {}, a); }
Formula class_next(Formula a) {
  return make(Op::ClassNext, Sort::Class, {as_sort(std::move(a), Sort::Class, "X=")});
}
Formula class_prev(Formula a) {
  return make(Op::ClassPrev, Sort::Class, {as_sort(std::move(a), Sort::Class, "Y=")});
}
Formula class_until(Formula a, Formula b) {
  return make(Op::ClassUntil, Sort::Class,
              {as_sort(std::move(a), Sort::Class, "U="), as_sort(std::move(b), Sort::Class, "U=")});
}
Formula class_since(Formula a, Formula b) {
  return make(Op::ClassSince, Sort::Class,
              {as_sort(std::move(a), Sort::Class, "S="), as_sort(std::move(b), Sort::Class, "S=")});
}
Formula class_eventually(Formula a) { return class_until(top(), std::move(a)); }
Formula class_always(Formula a) {
  return neg(class_eventually(neg(as_sort(std::move(a), Sort::Class, "G="))));
}
Formula class_once(Formula a) { return class_since(top(), std::move(a)); }
Formula class_historically(Formula a) {
  return neg(class_once(neg(as_sort(std::move(a), Sort::Class, "H="))));
}

Formula attr_eq(const std::string& b) { return make(Op::AttrEq, Sort::USub, {}, b); }
Formula attr_neq(const std::string& b) { return make(Op::AttrNeq, Sort::USub, {}, b); }

}  // namespace f

Formula rebuild(const Formula& n, std::vector<Formula> k) {
  auto at = [&](std::size_t i) { return k.at(i); };
  switch (n->op) {
    case Op::True:
    case Op::False:
    case Op::Prop:
    case Op::AttrIs:
    case Op::AttrEq:
    case Op::AttrNeq:
      return n;
    case Op::Not: return f::neg(at(0));
    case Op::And: return f::conj(at(0), at(1));
    case Op::Or: return f::disj(at(0), at(1));
    case Op::Next: return f::next(at(0));
    case Op::Prev: return f::prev(at(0));
    case Op::Until: return f::until(at(0), at(1));
    case Op::Since: return f::since(at(0), at(1));
    case Op::Freeze: return f::freeze(n->delta, n->name, at(0));
    case Op::UneqUntil: return f::uneq_until(n->name, n->delta, at(0), at(1));
    case Op::UneqSince: return f::uneq_since(n->name, n->delta, at(0), at(1));
    case Op::FromNow: return f::from_now(at(0));
    case Op::UpToNow: return f::up_to_now(at(0));
    case Op::PairNext: return f::pair_next(n->name, n->name2, at(0));
    case Op::PairPrev: return f::pair_prev(n->name, n->name2, at(0));
    case Op::Lift: return f::lift(at(0), n->sort);
    case Op::ClassNext: return f::class_next(at(0));
    case Op::ClassPrev: return f::class_prev(at(0));
    case Op::ClassUntil: return f::class_until(at(0), at(1));
    case Op::ClassSince: return f::class_since(at(0), at(1));
  }
  throw FormulaError("rebuild: unknown node");
}

std::vector<Formula> subformulas(const Formula& phi) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  std::function<void(const Formula&)> go = [&](const Formula& n) {
    if (seen.count(n)) return;
    for (const auto& k : n->kids) go(k);
    if (seen.insert(n).second) out.push_back(n);
  };
  go(phi);
  return out;
}

std::size_t formula_size(const Formula& phi) {
  std::size_t s = 1;
  for (const auto& k : phi->kids) s += formula_size(k);
  return s;
}

std::size_t formula_depth(const Formula& phi) {
  std::size_t d = 0;
  for (const auto& k : phi->kids) d = std::max(d, formula_depth(k));
  return d + 1;
}

std::set<std::string> propositions_of(const Formula& phi) {
  std::set<std::string> out;
  for (const auto& n : subformulas(phi))
    if (n->op == Op::Prop) out.insert(n->name);
  return out;
}

std::set<std::string> attributes_of(const Formula& phi) {
  std::set<std::string> out;
  for (const auto& n : subformulas(phi)) {
    switch (n->op) {
      case Op::Freeze:
      case Op::UneqUntil:
      case Op::UneqSince:
      case Op::AttrIs:
      case Op::AttrEq:
      case Op::AttrNeq:
        out.insert(n->name);
        break;
      case Op::PairNext:
      case Op::PairPrev:
        out.insert(n->name);
        out.insert(n->name2);
        break;
      default:
        break;
    }
  }
  return out;
}

int max_shift(const Formula& phi) {
  int m = 0;
  for (const auto& n : subformulas(phi))
    if (n->op == Op::Freeze || n->op == Op::UneqUntil || n->op == Op::UneqSince)
      m = std::max(m, std::abs(n->delta));
  return m;
}

std::string to_string(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Prop: return "prop";
    case Op::Not: return "not";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Next: return "X";
    case Op::Prev: return "Y";
    case Op::Until: return "U";
    case Op::Since: return "S";
    case Op::Freeze: return "C";
    case Op::UneqUntil: return "U!";
    case Op::UneqSince: return "S!";
    case Op::FromNow: return "N";
    case Op::UpToNow: return "Nbar";
    case Op::PairNext: return "XX";
    case Op::PairPrev: return "YY";
    case Op::Lift: return "lift";
    case Op::AttrIs: return "@";
    case Op::ClassNext: return "X=";
    case Op::ClassPrev: return "Y=";
    case Op::ClassUntil: return "U=";
    case Op::ClassSince: return "S=";
    case Op::AttrEq: return "@";
    case Op::AttrNeq: return "!=@";
  }
  return "?";
}

}  // namespace dataltl
