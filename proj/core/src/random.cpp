#include "dataltl/random.hpp"

namespace dataltl {

AttributedWord random_word(SplitMix64& rng, const WordGen& g) {
  const std::size_t n = g.min_len + rng.below(g.max_len - g.min_len + 1);
  std::vector<Position> ps(n);
  for (auto& p : ps) {
    for (const auto& x : g.props)
      if (rng.chance(0.5)) p.props.insert(x);
    for (const auto& a : g.attrs)
      if (!rng.chance(g.absent)) p.attrs[a] = rng.below(g.values);
  }
  return AttributedWord(g.props, g.attrs, std::move(ps));
}

namespace {

class Gen {
 public:
  Gen(SplitMix64& rng, const FormulaGen& g) : r_(rng), g_(g) {}

  Formula leaf() {
    switch (r_.below(g_.props.empty() ? 2 : 6)) {
      case 0: return f::top();
      case 1: return f::bottom();
      default: return f::prop(r_.pick(g_.props));
    }
  }

  Formula pos(int d) {
    if (d <= 0) return leaf();
    const int k = static_cast<int>(r_.below(14));
    switch (k) {
      case 0: return leaf();
      case 1: return f::neg(pos(d - 1));
      case 2: return f::conj(pos(d - 1), pos(d - 1));
      case 3: return f::disj(pos(d - 1), pos(d - 1));
      case 4: return f::next(pos(d - 1));
      case 5: return f::until(pos(d - 1), pos(d - 1));
      case 6: return g_.past ? f::prev(pos(d - 1)) : f::next(pos(d - 1));
      case 7: return g_.past ? f::since(pos(d - 1), pos(d - 1)) : f::until(pos(d - 1), pos(d - 1));
      case 8:
      case 9:
        if (!g_.attrs.empty())
          return f::attr_shift_eq(r_.pick(g_.attrs), r_.range(-g_.max_delta, g_.max_delta),
                                  r_.pick(g_.attrs));
        return leaf();
      case 10:
      case 11:
        if (g_.freeze && !g_.attrs.empty()) return freeze(d);
        return f::neg(pos(d - 1));
      case 12:
        if (g_.uneq && !g_.attrs.empty()) return uneq(d);
        return f::conj(pos(d - 1), pos(d - 1));
      default:
        if (g_.beyond) {
          switch (r_.below(3)) {
            case 0: return f::from_now(pos(d - 1));
            case 1: return f::up_to_now(pos(d - 1));
            default:
              if (g_.attrs.size() >= 2)
                return r_.chance(0.5) ? f::pair_next(g_.attrs[0], g_.attrs[1], pos(d - 1))
                                      : f::pair_prev(g_.attrs[0], g_.attrs[1], pos(d - 1));
              return f::from_now(pos(d - 1));
          }
        }
        return f::disj(pos(d - 1), pos(d - 1));
    }
  }

  Formula freeze(int d) {
    const std::string& a = r_.pick(g_.attrs);
    const int delta = r_.chance(0.6) ? 0 : r_.range(-g_.max_delta, g_.max_delta);
    if (delta != 0) return f::freeze(delta, a, shallow_cls(d - 1));
    return f::freeze(0, a, cls(d - 1));
  }

  // Boolean combinations of @b and lifted position formulas.
  Formula shallow_cls(int d) {
    if (d <= 0 || r_.chance(0.3))
      return r_.chance(0.6) ? f::attr_is(r_.pick(g_.attrs)) : f::lift(leaf(), Sort::Class);
    switch (r_.below(4)) {
      case 0: return f::neg(shallow_cls(d - 1));
      case 1: return f::conj(shallow_cls(d - 1), shallow_cls(d - 1));
      case 2: return f::disj(shallow_cls(d - 1), shallow_cls(d - 1));
      default: return f::lift(pos(d - 1), Sort::Class);
    }
  }

  Formula cls(int d) {
    if (d <= 0 || r_.chance(0.15))
      return r_.chance(0.6) ? f::attr_is(r_.pick(g_.attrs)) : f::lift(leaf(), Sort::Class);
    const int k = static_cast<int>(r_.below(g_.class_nav ? 9 : 5));
    switch (k) {
      case 0: return f::neg(cls(d - 1));
      case 1: return f::conj(cls(d - 1), cls(d - 1));
      case 2: return f::disj(cls(d - 1), cls(d - 1));
      case 3: return f::lift(pos(d - 1), Sort::Class);
      case 4: return f::attr_is(r_.pick(g_.attrs));
      case 5: return f::class_next(cls(d - 1));
      case 6: return f::class_until(cls(d - 1), cls(d - 1));
      case 7: return g_.past ? f::class_prev(cls(d - 1)) : f::class_next(cls(d - 1));
      default: return g_.past ? f::class_since(cls(d - 1), cls(d - 1)) : f::class_until(cls(d - 1), cls(d - 1));
    }
  }

  Formula uneq(int d) {
    const std::string& a = r_.pick(g_.attrs);
    const std::string& b = r_.pick(g_.attrs);
    const std::string& c = r_.pick(g_.attrs);
    int delta = r_.range(g_.negative_uneq ? -g_.max_delta : 0, g_.max_delta);
    const int sub = d - 1;
    auto body = [&]() { return f::lift(pos(sub), Sort::USub); };
    std::vector<Formula> ds;
    if (r_.chance(0.7)) ds.push_back(body());
    const bool eq = r_.chance(0.6), neq = r_.chance(0.5);
    Formula rho_neq = neq ? pos(sub) : nullptr;
    if (eq || (neq && g_.implication_safe)) {
      Formula rho_eq = pos(sub);
      if (neq && g_.implication_safe) rho_eq = f::disj(rho_eq, rho_neq);
      ds.push_back(f::conj(f::attr_eq(b), f::lift(rho_eq, Sort::USub)));
    }
    if (neq) ds.push_back(f::conj(f::attr_neq(b), f::lift(rho_neq, Sort::USub)));
    if (ds.empty()) ds.push_back(body());
    Formula rho = f::disj_all(ds, Sort::USub);
    Formula tau = f::conj(f::attr_neq(c), body());
    return r_.chance(g_.past ? 0.5 : 1.0) ? f::uneq_until(a, delta, rho, tau)
                                          : f::uneq_since(a, delta, rho, tau);
  }

 private:
  SplitMix64& r_;
  const FormulaGen& g_;
};

}  // namespace

Formula random_formula(SplitMix64& rng, const FormulaGen& g) { return Gen(rng, g).pos(g.depth); }

Formula random_class_formula(SplitMix64& rng, const FormulaGen& g, int depth) {
  return Gen(rng, g).cls(depth);
}

}  // namespace dataltl
