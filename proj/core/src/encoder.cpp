#include "dataltl/encoder.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "dataltl/classify.hpp"

namespace dataltl {

std::size_t EncodingScheme::index_of(const std::string& attr) const {
  for (std::size_t j = 0; j < attrs.size(); ++j)
    if (attrs[j] == attr) return j + 1;
  throw EncodingError("attribute '" + attr + "' is not part of the encoding scheme");
}

EncodingScheme make_scheme(std::vector<std::string> props, std::vector<std::string> attrs,
                           std::string att_prefix, std::string r, std::string carrier) {
  if (attrs.empty()) throw EncodingError("encoding needs at least one attribute");
  EncodingScheme s;
  s.props = std::move(props);
  s.attrs = std::move(attrs);
  s.r = std::move(r);
  s.carrier = std::move(carrier);
  for (std::size_t j = 1; j <= s.attrs.size(); ++j) s.att.push_back(att_prefix + std::to_string(j));
  std::set<std::string> user(s.props.begin(), s.props.end());
  std::set<std::string> reserved(s.att.begin(), s.att.end());
  reserved.insert(s.r);
  if (reserved.size() != s.att.size() + 1) throw EncodingError("reserved names collide");
  for (const auto& x : reserved)
    if (user.count(x)) throw EncodingError("reserved proposition '" + x + "' is a user proposition");
  std::set<std::string> as(s.attrs.begin(), s.attrs.end());
  if (as.size() != s.attrs.size()) throw EncodingError("duplicate attribute in scheme");
  return s;
}

EncodingScheme scheme_for(const AttributedWord& w) {
  return make_scheme(w.props_alphabet(), w.attrs_alphabet());
}

AttributedWord encode_word(const AttributedWord& w, const EncodingScheme& s, Padding pad) {
  for (const auto& a : w.attrs_alphabet()) s.index_of(a);
  for (const auto& p : w.props_alphabet())
    if (p == s.r || std::find(s.att.begin(), s.att.end(), p) != s.att.end())
      throw EncodingError("word uses reserved proposition '" + p + "'");

  const std::size_t n = w.size(), m = s.m();
  DataValue fresh = 0;
  for (const auto& pos : w.positions())
    for (const auto& [a, v] : pos.attrs) fresh = std::max(fresh, v + 1);

  std::vector<Position> out;
  out.reserve(n * m);
  for (std::size_t i = 1; i <= n; ++i) {
    const Position& src = w.at(i);
    for (std::size_t j = 1; j <= m; ++j) {
      Position p;
      p.props = src.props;
      p.props.insert(s.att[j - 1]);
      if (auto v = src.value(s.attrs[j - 1])) {
        p.props.insert(s.r);
        p.attrs[s.carrier] = *v;
      } else {
        std::optional<DataValue> reuse;
        if (pad == Padding::NextSame)
          for (std::size_t k = i + 1; k <= n && !reuse; ++k) reuse = w.value(s.attrs[j - 1], k);
        p.attrs[s.carrier] = reuse ? *reuse : fresh++;
      }
      out.push_back(std::move(p));
    }
  }
  std::vector<std::string> props = s.props;
  for (const auto& p : w.props_alphabet())
    if (std::find(props.begin(), props.end(), p) == props.end()) props.push_back(p);
  props.insert(props.end(), s.att.begin(), s.att.end());
  props.push_back(s.r);
  return AttributedWord(props, {s.carrier}, std::move(out));
}

AttributedWord decode_word(const AttributedWord& e, const EncodingScheme& s) {
  const std::size_t m = s.m();
  if (e.size() % m != 0) throw EncodingError("length is not a multiple of the block size");
  std::set<std::string> reserved(s.att.begin(), s.att.end());
  reserved.insert(s.r);
  std::vector<Position> out;
  for (std::size_t b = 0; b < e.size() / m; ++b) {
    Position src;
    for (std::size_t j = 1; j <= m; ++j) {
      const Position& p = e.at(b * m + j);
      for (std::size_t k = 1; k <= m; ++k)
        if (p.has(s.att[k - 1]) != (k == j))
          throw EncodingError("block " + std::to_string(b + 1) + " position " + std::to_string(j) +
                              " has the wrong att marks");
      std::set<std::string> user;
      for (const auto& q : p.props)
        if (!reserved.count(q)) user.insert(q);
      if (j == 1)
        src.props = user;
      else if (user != src.props)
        throw EncodingError("block " + std::to_string(b + 1) + " disagrees on propositions");
      if (p.has(s.r)) {
        auto v = p.value(s.carrier);
        if (!v) throw EncodingError("R-marked position without a value");
        src.attrs[s.attrs[j - 1]] = *v;
      }
    }
    out.push_back(std::move(src));
  }
  std::vector<std::string> props;
  for (const auto& p : e.props_alphabet())
    if (!reserved.count(p)) props.push_back(p);
  return AttributedWord(props, s.attrs, std::move(out));
}

Formula structure_formula(const EncodingScheme& s) {
  using namespace f;
  const std::size_t m = s.m();
  auto att = [&](std::size_t j) { return prop(s.att[j - 1]); };
  std::vector<Formula> inv;
  std::vector<Formula> some;
  for (std::size_t j = 1; j <= m; ++j) some.push_back(att(j));
  inv.push_back(disj_all(some));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = j + 1; k <= m; ++k) inv.push_back(neg(conj(att(j), att(k))));
  for (std::size_t j = 1; j <= m; ++j)
    inv.push_back(implies(conj(att(j), next(top())), next(att(j == m ? 1 : j + 1))));
  inv.push_back(implies(neg(next(top())), att(m)));
  for (std::size_t j = 1; j < m; ++j)
    for (const auto& p : s.props) inv.push_back(implies(att(j), iff(prop(p), next(prop(p)))));
  inv.push_back(implies(prop(s.r), freeze(0, s.carrier, top())));
  return conj(att(1), always(conj_all(inv)));
}

Formula nav_to(std::size_t i, const Formula& phi, const EncodingScheme& s) {
  std::vector<Formula> cs;
  for (std::size_t j = 1; j <= s.m(); ++j)
    cs.push_back(f::implies(f::prop(s.att[j - 1]),
                            f::next_n(phi, static_cast<int>(i) - static_cast<int>(j))));
  return f::conj_all(cs);
}

namespace {

class Translator {
 public:
  explicit Translator(const EncodingScheme& s) : s_(s), m_(static_cast<int>(s.m())) {}

  Formula pos(const Formula& x) {
    auto it = pmemo_.find(x.get());
    if (it != pmemo_.end()) return it->second;
    Formula r = pos_uncached(x);
    keep_.push_back(x);
    return pmemo_[x.get()] = r;
  }

  Formula cls(const Formula& x) {
    auto it = cmemo_.find(x.get());
    if (it != cmemo_.end()) return it->second;
    Formula r = cls_uncached(x);
    keep_.push_back(x);
    return cmemo_[x.get()] = r;
  }

 private:
  Formula R() const { return f::prop(s_.r); }
  Formula att(std::size_t j) const { return f::prop(s_.att[j - 1]); }
  Formula lift_c(const Formula& p) const { return f::lift(p, Sort::Class); }
  Formula lift_u(const Formula& p) const { return f::lift(p, Sort::USub); }
  // @a = X^delta @a with an R guard on the far side.
  Formula same_at(int delta) const {
    return f::freeze(delta, s_.carrier, f::conj(lift_c(R()), f::attr_is(s_.carrier)));
  }
  int idx(const std::string& a) const { return static_cast<int>(s_.index_of(a)); }

  // Navigates to the last (first) R-position of the block carrying the
  // frozen value and evaluates the class formula phi there.
  Formula to_block_edge(const Formula& phi, bool last) {
    std::vector<Formula> outer;
    for (int i = 1; i <= m_; ++i) {
      const int hi = last ? m_ - i : i - 1;
      std::vector<Formula> inner;
      for (int d = 0; d <= hi; ++d) {
        const int sd = last ? d : -d;
        std::vector<Formula> guard{same_at(sd)};
        for (int e = d + 1; e <= hi; ++e) guard.push_back(f::neg(same_at(last ? e : -e)));
        inner.push_back(f::implies(f::conj_all(guard), f::freeze(sd, s_.carrier, phi)));
      }
      outer.push_back(f::implies(att(i), f::conj_all(inner)));
    }
    return lift_c(f::conj_all(outer));
  }

  Formula attr_is(int j) const {
    std::vector<Formula> cs;
    for (int i = 1; i <= m_; ++i)
      cs.push_back(f::implies(att(i), same_at(j - i)));
    return lift_c(f::conj_all(cs));
  }

  Formula cls_uncached(const Formula& x) {
    switch (x->op) {
      case Op::Lift: return lift_c(pos(x->kid()));
      case Op::AttrIs: return attr_is(idx(x->name));
      case Op::Not: return f::neg(cls(x->kid()));
      case Op::And: return f::conj(cls(x->kid(0)), cls(x->kid(1)));
      case Op::Or: return f::disj(cls(x->kid(0)), cls(x->kid(1)));
      case Op::ClassNext:
        return to_block_edge(
            f::class_next(f::class_until(lift_c(f::neg(R())),
                                         f::conj(lift_c(R()), cls(x->kid())))),
            true);
      case Op::ClassPrev:
        return to_block_edge(
            f::class_prev(f::class_since(lift_c(f::neg(R())),
                                         f::conj(lift_c(R()), cls(x->kid())))),
            false);
      case Op::ClassUntil:
        return f::class_until(f::implies(lift_c(R()), cls(x->kid(0))),
                              f::conj(lift_c(R()), cls(x->kid(1))));
      case Op::ClassSince:
        return f::class_since(f::implies(lift_c(R()), cls(x->kid(0))),
                              f::conj(lift_c(R()), cls(x->kid(1))));
      default:
        throw EncodingError("cannot translate class node " + to_string(x->op));
    }
  }

  // C^delta_{a_i} psi for delta != 0, evaluated at block position i with R
  // holding there. Only Boolean combinations of @b and position formulas.
  Formula shifted_freeze(const Formula& psi, int i, int delta) {
    switch (psi->op) {
      case Op::AttrIs: return same_at(delta * m_ + idx(psi->name) - i);
      case Op::Lift: return f::next_n(pos(psi->kid()), delta * m_);
      case Op::Not:
        return f::conj(f::next_n(f::top(), delta * m_), f::neg(shifted_freeze(psi->kid(), i, delta)));
      case Op::And:
        return f::conj(shifted_freeze(psi->kid(0), i, delta), shifted_freeze(psi->kid(1), i, delta));
      case Op::Or:
        return f::disj(shifted_freeze(psi->kid(0), i, delta), shifted_freeze(psi->kid(1), i, delta));
      default:
        throw EncodingError("class navigation under a nonzero freeze shift is not translatable");
    }
  }

  Formula freeze(const Formula& x) {
    const int i = idx(x->name);
    const Formula& psi = x->kid();
    Formula body;
    if (psi->op == Op::AttrIs)
      body = same_at(x->delta * m_ + idx(psi->name) - i);
    else if (x->delta != 0)
      body = shifted_freeze(psi, i, x->delta);
    else if (psi->op == Op::Lift)
      body = pos(psi->kid());
    else
      body = f::freeze(0, s_.carrier, cls(psi));
    return nav_to(i, f::conj(R(), body), s_);
  }

  Formula uneq(const Formula& x) {
    std::string why;
    auto sh = extended_shape(x, &why);
    if (!sh) throw EncodingError("extended Until/Since outside the supported shape: " + why);
    const int j = idx(sh->frozen);
    const int k = idx(sh->target_attr);
    const int i = sh->inter_attr.empty() ? k : idx(sh->inter_attr);
    const int dm = sh->delta * m_;
    const std::string& a = s_.carrier;

    auto t_or_false = [&](const Formula& p) { return p ? pos(p) : f::bottom(); };
    const Formula tr = t_or_false(sh->rho);
    const Formula teq = t_or_false(sh->rho_eq);
    const Formula tneq = t_or_false(sh->rho_neq);
    const Formula tt = pos(sh->tau);

    std::vector<Formula> ip{lift_u(tr)};
    if (sh->rho_eq) ip.push_back(f::conj_all({lift_u(R()), f::attr_eq(a), lift_u(teq)}, Sort::USub));
    if (sh->rho_neq)
      ip.push_back(f::conj_all({lift_u(R()), f::attr_neq(a), lift_u(tneq)}, Sort::USub));
    const Formula inter_part = f::disj_all(ip, Sort::USub);
    const Formula target = f::conj(lift_u(f::conj_all({att(k), R(), tt})), f::attr_neq(a));

    auto make = [&](int s, const Formula& rho, const Formula& tau) {
      Formula u = sh->until ? f::uneq_until(a, s, rho, tau) : f::uneq_since(a, s, rho, tau);
      return s < 0 ? lower_shift(u, LowerMode::Guarded) : u;
    };

    Formula body;
    const bool straight = sh->until ? i >= k : i <= k;
    if (straight) {
      const int s = sh->until ? dm + k - j : dm + j - k;
      body = make(s, f::disj(lift_u(f::neg(att(i))), inter_part), target);
    } else {
      // The window also covers the intermediate slot of the target block,
      // so a near-target there is tolerated and ruled out separately.
      const int r = sh->until ? k - i : i - k;
      const int dir = sh->until ? 1 : -1;
      const int s = sh->until ? dm + i - j : dm + j - i;
      const Formula soft = f::next_n(f::conj(R(), tt), dir * r);
      const Formula relaxed_inter =
          f::disj_all({lift_u(f::neg(att(i))), inter_part, lift_u(soft)}, Sort::USub);
      const Formula relaxed = make(s, relaxed_inter, target);

      const Formula back = f::next_n(R(), -dir * r);
      const Formula eq = f::freeze(-dir * r, a, f::attr_is(a));
      const Formula fail = f::conj_all({f::neg(tr), f::neg(f::conj_all({back, eq, teq})),
                                        f::neg(f::conj_all({back, f::neg(eq), tneq}))});
      const Formula not_target =
          f::disj(lift_u(f::disj_all({f::neg(att(k)), f::neg(R()), f::neg(tt)})), f::attr_eq(a));
      const Formula bad_inter = f::conj(relaxed_inter, not_target);
      const Formula bad_target =
          f::conj(lift_u(f::conj_all({att(k), R(), tt, fail})), f::attr_eq(a));
      body = f::conj(relaxed, f::neg(make(s, bad_inter, bad_target)));
    }
    return nav_to(j, f::conj(R(), body), s_);
  }

  Formula pos_uncached(const Formula& x) {
    switch (x->op) {
      case Op::True:
      case Op::False:
        return x;
      case Op::Prop:
        if (std::find(s_.att.begin(), s_.att.end(), x->name) != s_.att.end() || x->name == s_.r)
          throw EncodingError("formula uses reserved proposition '" + x->name + "'");
        return x;
      case Op::Not: return f::neg(pos(x->kid()));
      case Op::And: return f::conj(pos(x->kid(0)), pos(x->kid(1)));
      case Op::Or: return f::disj(pos(x->kid(0)), pos(x->kid(1)));
      case Op::Next: return f::next_n(pos(x->kid()), m_);
      case Op::Prev: return f::next_n(pos(x->kid()), -m_);
      case Op::Until: return f::until(pos(x->kid(0)), pos(x->kid(1)));
      case Op::Since: return f::since(pos(x->kid(0)), pos(x->kid(1)));
      case Op::Freeze: return freeze(x);
      case Op::UneqUntil:
      case Op::UneqSince:
        if (x->delta < 0) return pos(lower_shift(x, LowerMode::Guarded));
        return uneq(x);
      case Op::FromNow:
      case Op::UpToNow:
        throw EncodingError("N and Nbar are outside the translatable fragment");
      case Op::PairNext:
      case Op::PairPrev:
        throw EncodingError("pair navigation is outside the translatable fragment");
      default:
        throw EncodingError("cannot translate position node " + to_string(x->op));
    }
  }

  const EncodingScheme& s_;
  int m_;
  std::unordered_map<const Node*, Formula> pmemo_, cmemo_;
  std::vector<Formula> keep_;
};

}  // namespace

Formula translate(const Formula& chi, const EncodingScheme& s) {
  if (chi->sort != Sort::Position) throw EncodingError("translate expects a position formula");
  Translator t(s);
  return t.pos(chi);
}

Formula translate_cltl(const CltlAtom& atom) {
  if (atom.kind == CltlAtom::Kind::Shift) return f::attr_shift_eq(atom.x, atom.delta, atom.y);
  return f::freeze(0, atom.x, f::class_next(f::class_eventually(f::attr_is(atom.y))));
}

}  // namespace dataltl
