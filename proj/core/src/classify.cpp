#include "dataltl/classify.hpp"

#include <functional>
#include <vector>

#include "dataltl/eval.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

std::string to_string(Fragment f) {
  switch (f) {
    case Fragment::BasicDataLTL: return "BasicDataLTL";
    case Fragment::ExtendedDataLTL: return "ExtendedDataLTL";
    case Fragment::BeyondDecidable: return "BeyondDecidable";
  }
  return "?";
}

std::string to_string(ImplicationStatus s) {
  switch (s) {
    case ImplicationStatus::NotApplicable: return "not-applicable";
    case ImplicationStatus::Syntactic: return "syntactic";
    case ImplicationStatus::Verified: return "verified";
    case ImplicationStatus::Falsified: return "falsified";
    case ImplicationStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void flatten(const Formula& x, Op op, std::vector<Formula>& out) {
  if (x->op == op) {
    flatten(x->kid(0), op, out);
    flatten(x->kid(1), op, out);
  } else {
    out.push_back(x);
  }
}

bool is_attr_test(const Formula& x) { return x->op == Op::AttrEq || x->op == Op::AttrNeq; }

Formula or_opt(const Formula& a, const Formula& b) { return a ? f::disj(a, b) : b; }

// A conjunction of one attribute test with lifted position formulas.
bool split_guarded(const Formula& d, Formula& test, Formula& body) {
  std::vector<Formula> cs;
  flatten(d, Op::And, cs);
  test = nullptr;
  std::vector<Formula> rest;
  for (const auto& c : cs) {
    if (is_attr_test(c)) {
      if (test) return false;
      test = c;
    } else if (c->op == Op::Lift) {
      rest.push_back(c->kid());
    } else {
      return false;
    }
  }
  if (!test) return false;
  body = rest.empty() ? f::top() : f::conj_all(rest);
  return true;
}

bool pure_propositional(const Formula& x) {
  for (const auto& n : subformulas(x))
    switch (n->op) {
      case Op::True:
      case Op::False:
      case Op::Prop:
      case Op::Not:
      case Op::And:
      case Op::Or:
        break;
      default:
        return false;
    }
  return true;
}

}  // namespace

std::optional<UneqShape> extended_shape(const Formula& u, std::string* why) {
  auto no = [&](const std::string& m) -> std::optional<UneqShape> {
    if (why) *why = m;
    return std::nullopt;
  };
  if (u->op != Op::UneqUntil && u->op != Op::UneqSince) return no("not an extended Until/Since");
  UneqShape s;
  s.until = u->op == Op::UneqUntil;
  s.frozen = u->name;
  s.delta = u->delta;

  std::vector<Formula> ds;
  flatten(u->kid(0), Op::Or, ds);
  for (const auto& d : ds) {
    if (d->op == Op::Lift) {
      s.rho = or_opt(s.rho, d->kid());
      continue;
    }
    Formula test, body;
    if (!split_guarded(d, test, body))
      return no("intermediate disjunct is not a position formula or an attribute test "
                "conjoined with a position formula");
    if (!s.inter_attr.empty() && s.inter_attr != test->name)
      return no("intermediate tests two different attributes");
    s.inter_attr = test->name;
    if (test->op == Op::AttrEq)
      s.rho_eq = or_opt(s.rho_eq, body);
    else
      s.rho_neq = or_opt(s.rho_neq, body);
  }

  Formula test, body;
  const Formula& t = u->kid(1);
  if (t->op == Op::Lift) return no("target has no attribute test");
  if (!split_guarded(t, test, body)) return no("target is not of the form !=@b & tau");
  if (test->op == Op::AttrEq) return no("positive attribute test in target");
  s.target_attr = test->name;
  s.tau = body;
  return s;
}

ImplicationStatus check_implication(const Formula& rho_neq, const Formula& rho_eq,
                                    const ClassifyOptions& opts) {
  if (!rho_neq) return ImplicationStatus::Syntactic;
  if (!rho_eq) {
    if (rho_neq->op == Op::False) return ImplicationStatus::Syntactic;
  } else {
    if (equal(rho_neq, rho_eq)) return ImplicationStatus::Syntactic;
    std::vector<Formula> ds;
    flatten(rho_eq, Op::Or, ds);
    for (const auto& d : ds)
      if (equal(d, rho_neq)) return ImplicationStatus::Syntactic;
    if (rho_eq->op == Op::True) return ImplicationStatus::Syntactic;
  }
  const Formula eq = rho_eq ? rho_eq : f::bottom();
  const Formula cex = f::conj(rho_neq, f::neg(eq));

  std::set<std::string> ps = propositions_of(cex);
  std::set<std::string> as = attributes_of(cex);
  std::vector<std::string> props(ps.begin(), ps.end());
  std::vector<std::string> attrs(as.begin(), as.end());
  const bool complete_check = pure_propositional(cex);
  const std::size_t max_len = complete_check ? 1 : opts.implication_max_len;

  std::size_t budget = opts.implication_budget;
  bool exhausted = false;
  // Enumerate words position by position: a label set, then for every
  // attribute either absence or a value in restricted-growth order.
  for (std::size_t len = 1; len <= max_len && !exhausted; ++len) {
    std::vector<Position> cur(len);
    std::function<bool(std::size_t, std::size_t, DataValue)> go =
        [&](std::size_t slot, std::size_t, DataValue used) -> bool {
      const std::size_t per = 1 + attrs.size();
      if (slot == len * per) {
        if (budget-- == 0) {
          exhausted = true;
          return true;
        }
        AttributedWord w(props, attrs, cur);
        Evaluator ev(w);
        const auto& v = ev.truth(cex);
        for (std::size_t i = 1; i <= len; ++i)
          if (v[i]) return true;
        return false;
      }
      std::size_t p = slot / per, k = slot % per;
      if (k == 0) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << props.size()); ++mask) {
          cur[p].props.clear();
          for (std::size_t b = 0; b < props.size(); ++b)
            if (mask >> b & 1) cur[p].props.insert(props[b]);
          if (go(slot + 1, 0, used)) return true;
        }
        return false;
      }
      const std::string& a = attrs[k - 1];
      cur[p].attrs.erase(a);
      if (go(slot + 1, 0, used)) return true;
      for (DataValue d = 0; d <= used && d < opts.implication_max_values; ++d) {
        cur[p].attrs[a] = d;
        if (go(slot + 1, 0, d == used ? used + 1 : used)) return true;
      }
      cur[p].attrs.erase(a);
      return false;
    };
    if (go(0, 0, 0)) return exhausted ? ImplicationStatus::Unknown : ImplicationStatus::Falsified;
  }
  return complete_check ? ImplicationStatus::Verified : ImplicationStatus::Unknown;
}

FragmentTag classify(const Formula& phi, const ClassifyOptions& opts) {
  FragmentTag tag;
  bool extended = false;
  ImplicationStatus worst = ImplicationStatus::NotApplicable;
  auto rank = [](ImplicationStatus s) {
    switch (s) {
      case ImplicationStatus::NotApplicable: return 0;
      case ImplicationStatus::Syntactic: return 1;
      case ImplicationStatus::Verified: return 2;
      case ImplicationStatus::Unknown: return 3;
      case ImplicationStatus::Falsified: return 4;
    }
    return 0;
  };
  for (const auto& n : subformulas(phi)) {
    switch (n->op) {
      case Op::FromNow:
        return {Fragment::BeyondDecidable, "from-now-on operator N", worst};
      case Op::UpToNow:
        return {Fragment::BeyondDecidable, "up-to-now operator Nbar", worst};
      case Op::PairNext:
      case Op::PairPrev:
        return {Fragment::BeyondDecidable, "pair navigation XX/YY", worst};
      case Op::UneqUntil:
      case Op::UneqSince: {
        std::string why;
        auto s = extended_shape(n, &why);
        if (!s) return {Fragment::BeyondDecidable, why, worst};
        extended = true;
        if (s->rho_neq) {
          ImplicationStatus st = check_implication(s->rho_neq, s->rho_eq, opts);
          if (rank(st) > rank(worst)) worst = st;
          if (st == ImplicationStatus::Falsified)
            return {Fragment::BeyondDecidable, "rho_neq does not imply rho_eq", worst};
        } else if (rank(ImplicationStatus::Syntactic) > rank(worst)) {
          worst = ImplicationStatus::Syntactic;
        }
        break;
      }
      default:
        break;
    }
  }
  tag.fragment = extended ? Fragment::ExtendedDataLTL : Fragment::BasicDataLTL;
  tag.implication = worst;
  return tag;
}

namespace {

// Position formula stating that U-subformula chi holds k positions away
// (k > 0 forward, k < 0 backward) relative to the frozen attribute a.
Formula shifted(const Formula& chi, const std::string& a, int k, LowerMode mode) {
  switch (chi->op) {
    case Op::Lift:
      return f::next_n(chi->kid(), k);
    case Op::AttrEq:
      return f::attr_shift_eq(a, k, chi->name);
    case Op::AttrNeq: {
      Formula lit = f::neg(f::attr_shift_eq(a, k, chi->name));
      if (mode == LowerMode::Literal) return lit;
      return f::conj(lit, f::next_n(f::freeze(0, chi->name, f::top()), k));
    }
    case Op::And:
      return f::conj(shifted(chi->kid(0), a, k, mode), shifted(chi->kid(1), a, k, mode));
    case Op::Or:
      return f::disj(shifted(chi->kid(0), a, k, mode), shifted(chi->kid(1), a, k, mode));
    default:
      throw FormulaError("not a U-subformula");
  }
}

}  // namespace

Formula lower_shift(const Formula& u, LowerMode mode) {
  if (u->op != Op::UneqUntil && u->op != Op::UneqSince)
    throw FormulaError("lower_shift expects an extended Until/Since node");
  if (u->delta >= 0) throw FormulaError("lower_shift expects a negative shift");
  const bool until = u->op == Op::UneqUntil;
  const int d = -u->delta;
  const std::string& a = u->name;
  const Formula& rho = u->kid(0);
  const Formula& tau = u->kid(1);
  // Until looks back (Y^k); Since looks ahead (X^k).
  const int dir = until ? -1 : 1;
  auto rho_k = [&](int k) { return shifted(rho, a, dir * k, mode); };
  auto tau_k = [&](int k) { return shifted(tau, a, dir * k, mode); };

  Formula base = until ? f::uneq_until(a, 0, rho, tau) : f::uneq_since(a, 0, rho, tau);
  std::vector<Formula> first{base};
  for (int i = 1; i <= d; ++i) first.push_back(rho_k(i));
  std::vector<Formula> alts{f::conj_all(first)};
  for (int j = 1; j <= d; ++j) {
    std::vector<Formula> c{tau_k(j)};
    for (int i = j + 1; i <= d; ++i) c.push_back(rho_k(i));
    alts.push_back(f::conj_all(c));
  }
  Formula out = f::disj_all(alts);
  if (mode == LowerMode::Guarded) out = f::conj(f::freeze(0, a, f::top()), out);
  return out;
}

Formula lower_all_shifts(const Formula& phi, LowerMode mode) {
  std::vector<Formula> kids;
  kids.reserve(phi->kids.size());
  for (const auto& k : phi->kids) kids.push_back(lower_all_shifts(k, mode));
  Formula n = rebuild(phi, std::move(kids));
  if ((n->op == Op::UneqUntil || n->op == Op::UneqSince) && n->delta < 0)
    return lower_shift(n, mode);
  return n;
}

}  // namespace dataltl
