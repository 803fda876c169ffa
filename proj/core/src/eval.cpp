#include "dataltl/eval.hpp"

namespace dataltl {

Evaluator::Evaluator(const AttributedWord& w, const std::vector<DataValue>& extra_values)
    : w_(w), n_(w.size()) {
  for (DataValue d : w_.values())
    if (vidx_.emplace(d, static_cast<int>(vals_.size())).second) vals_.push_back(d);
  for (DataValue d : extra_values)
    if (vidx_.emplace(d, static_cast<int>(vals_.size())).second) vals_.push_back(d);
  in_class_.assign(vals_.size(), std::vector<char>(n_ + 2, 0));
  for (std::size_t i = 1; i <= n_; ++i)
    for (const auto& [a, v] : w_.at(i).attrs) in_class_[vidx_.at(v)][i] = 1;
}

int Evaluator::value_index(DataValue d) const {
  auto it = vidx_.find(d);
  return it == vidx_.end() ? -1 : it->second;
}

const std::vector<int>& Evaluator::attr_column(const std::string& a) {
  auto it = cols_.find(a);
  if (it != cols_.end()) return it->second;
  std::vector<int> col(n_ + 2, -1);
  for (std::size_t i = 1; i <= n_; ++i) {
    auto v = w_.at(i).value(a);
    if (v) col[i] = vidx_.at(*v);
  }
  return cols_.emplace(a, std::move(col)).first->second;
}

void Evaluator::check_index(std::size_t i) const {
  if (i < 1 || i > n_)
    throw EvalError("position " + std::to_string(i) + " out of range [1," + std::to_string(n_) +
                    "]");
}

bool Evaluator::at(const Formula& phi, std::size_t i) {
  check_index(i);
  if (phi->sort != Sort::Position) throw EvalError("expected a position formula");
  return pos(phi)[i] != 0;
}

bool Evaluator::at(const Formula& psi, std::size_t i, DataValue d) {
  check_index(i);
  if (psi->sort == Sort::Position) return pos(psi)[i] != 0;
  int v = value_index(d);
  if (v < 0) throw EvalError("value not registered with the evaluator");
  return cls(psi)[static_cast<std::size_t>(v)][i] != 0;
}

const std::vector<char>& Evaluator::truth(const Formula& phi) {
  if (phi->sort != Sort::Position) throw EvalError("expected a position formula");
  return pos(phi);
}

const std::vector<char>& Evaluator::truth(const Formula& psi, DataValue d) {
  if (psi->sort == Sort::Position) return pos(psi);
  int v = value_index(d);
  if (v < 0) throw EvalError("value not registered with the evaluator");
  return cls(psi)[static_cast<std::size_t>(v)];
}

const Evaluator::Vec& Evaluator::pos(const Formula& phi) {
  auto it = pmemo_.find(phi.get());
  if (it != pmemo_.end()) return it->second;
  Vec v = compute_pos(phi);
  keep_.push_back(phi);
  return pmemo_.emplace(phi.get(), std::move(v)).first->second;
}

const Evaluator::Mat& Evaluator::cls(const Formula& psi) {
  auto it = cmemo_.find(psi.get());
  if (it != cmemo_.end()) return it->second;
  Mat m = compute_cls(psi);
  keep_.push_back(psi);
  return cmemo_.emplace(psi.get(), std::move(m)).first->second;
}

Evaluator::Vec Evaluator::compute_pos(const Formula& phi) {
  const std::size_t n = n_;
  Vec out(n + 2, 0);
  switch (phi->op) {
    case Op::True:
      for (std::size_t i = 1; i <= n; ++i) out[i] = 1;
      break;
    case Op::False:
      break;
    case Op::Prop:
      for (std::size_t i = 1; i <= n; ++i) out[i] = w_.at(i).has(phi->name);
      break;
    case Op::Not: {
      const Vec& k = pos(phi->kid());
      for (std::size_t i = 1; i <= n; ++i) out[i] = !k[i];
      break;
    }
    case Op::And:
    case Op::Or: {
      const Vec& a = pos(phi->kid(0));
      const Vec& b = pos(phi->kid(1));
      for (std::size_t i = 1; i <= n; ++i)
        out[i] = phi->op == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
      break;
    }
    case Op::Next: {
      const Vec& k = pos(phi->kid());
      for (std::size_t i = 1; i < n; ++i) out[i] = k[i + 1];
      break;
    }
    case Op::Prev: {
      const Vec& k = pos(phi->kid());
      for (std::size_t i = 2; i <= n; ++i) out[i] = k[i - 1];
      break;
    }
    case Op::Until: {
      const Vec& a = pos(phi->kid(0));
      const Vec& b = pos(phi->kid(1));
      for (std::size_t i = n; i >= 1; --i) out[i] = b[i] || (a[i] && out[i + 1]);
      break;
    }
    case Op::Since: {
      const Vec& a = pos(phi->kid(0));
      const Vec& b = pos(phi->kid(1));
      for (std::size_t i = 1; i <= n; ++i) out[i] = b[i] || (a[i] && out[i - 1]);
      break;
    }
    case Op::Freeze: {
      const auto& col = attr_column(phi->name);
      const Mat& m = cls(phi->kid());
      const long d = phi->delta;
      for (std::size_t i = 1; i <= n; ++i) {
        long t = static_cast<long>(i) + d;
        if (col[i] < 0 || t < 1 || t > static_cast<long>(n)) continue;
        out[i] = m[static_cast<std::size_t>(col[i])][static_cast<std::size_t>(t)];
      }
      break;
    }
    case Op::UneqUntil:
    case Op::UneqSince: {
      const bool until = phi->op == Op::UneqUntil;
      const auto& col = attr_column(phi->name);
      const Mat& rho = cls(phi->kid(0));
      const Mat& tau = cls(phi->kid(1));
      // reach[v][k]: a target for frozen value v is reachable from k with
      // the intermediate holding on the way (k excluded when k is the target).
      std::vector<Vec> reach(vals_.size());
      for (std::size_t i = 1; i <= n; ++i) {
        if (col[i] < 0) continue;
        auto v = static_cast<std::size_t>(col[i]);
        if (reach[v].empty()) {
          Vec r(n + 2, 0);
          if (until) {
            for (std::size_t k = n; k >= 1; --k) r[k] = tau[v][k] || (rho[v][k] && r[k + 1]);
          } else {
            for (std::size_t k = 1; k <= n; ++k) r[k] = tau[v][k] || (rho[v][k] && r[k - 1]);
          }
          reach[v] = std::move(r);
        }
        long start = until ? static_cast<long>(i) + phi->delta : static_cast<long>(i) - phi->delta;
        if (start < 1 || start > static_cast<long>(n)) continue;
        out[i] = reach[v][static_cast<std::size_t>(start)];
      }
      break;
    }
    case Op::FromNow:
      for (std::size_t i = 1; i <= n; ++i) {
        Evaluator sub(suffix(w_, i));
        out[i] = sub.at(phi->kid(), 1);
      }
      break;
    case Op::UpToNow:
      for (std::size_t i = 1; i <= n; ++i) {
        Evaluator sub(prefix(w_, i));
        out[i] = sub.at(phi->kid(), i);
      }
      break;
    case Op::PairNext:
    case Op::PairPrev: {
      const auto& ca = attr_column(phi->name);
      const auto& cb = attr_column(phi->name2);
      const Vec& k = pos(phi->kid());
      for (std::size_t i = 1; i <= n; ++i) {
        if (ca[i] < 0 || cb[i] < 0) continue;
        if (phi->op == Op::PairNext) {
          for (std::size_t j = i + 1; j <= n; ++j)
            if (ca[j] == ca[i] && cb[j] == cb[i]) {
              out[i] = k[j];
              break;
            }
        } else {
          for (std::size_t j = i - 1; j >= 1; --j)
            if (ca[j] == ca[i] && cb[j] == cb[i]) {
              out[i] = k[j];
              break;
            }
        }
      }
      break;
    }
    default:
      throw EvalError("not a position formula: " + to_string(phi->op));
  }
  return out;
}

Evaluator::Mat Evaluator::compute_cls(const Formula& psi) {
  const std::size_t n = n_;
  const std::size_t nv = vals_.size();
  Mat out(nv, Vec(n + 2, 0));
  switch (psi->op) {
    case Op::Lift: {
      const Vec& k = pos(psi->kid());
      for (auto& row : out) row = k;
      break;
    }
    case Op::AttrIs:
    case Op::AttrEq:
    case Op::AttrNeq: {
      const auto& col = attr_column(psi->name);
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 1; i <= n; ++i) {
          if (psi->op == Op::AttrNeq)
            out[v][i] = col[i] >= 0 && col[i] != static_cast<int>(v);
          else
            out[v][i] = col[i] == static_cast<int>(v);
        }
      break;
    }
    case Op::Not: {
      const Mat& k = cls(psi->kid());
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 1; i <= n; ++i) out[v][i] = !k[v][i];
      break;
    }
    case Op::And:
    case Op::Or: {
      const Mat& a = cls(psi->kid(0));
      const Mat& b = cls(psi->kid(1));
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 1; i <= n; ++i)
          out[v][i] = psi->op == Op::And ? (a[v][i] && b[v][i]) : (a[v][i] || b[v][i]);
      break;
    }
    case Op::ClassNext: {
      const Mat& k = cls(psi->kid());
      for (std::size_t v = 0; v < nv; ++v) {
        std::size_t nxt = 0;
        for (std::size_t i = n; i >= 1; --i) {
          out[v][i] = nxt ? k[v][nxt] : 0;
          if (in_class_[v][i]) nxt = i;
        }
      }
      break;
    }
    case Op::ClassPrev: {
      const Mat& k = cls(psi->kid());
      for (std::size_t v = 0; v < nv; ++v) {
        std::size_t prv = 0;
        for (std::size_t i = 1; i <= n; ++i) {
          out[v][i] = prv ? k[v][prv] : 0;
          if (in_class_[v][i]) prv = i;
        }
      }
      break;
    }
    case Op::ClassUntil: {
      const Mat& a = cls(psi->kid(0));
      const Mat& b = cls(psi->kid(1));
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = n; i >= 1; --i)
          out[v][i] = in_class_[v][i] ? (b[v][i] || (a[v][i] && out[v][i + 1])) : out[v][i + 1];
      break;
    }
    case Op::ClassSince: {
      const Mat& a = cls(psi->kid(0));
      const Mat& b = cls(psi->kid(1));
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t i = 1; i <= n; ++i)
          out[v][i] = in_class_[v][i] ? (b[v][i] || (a[v][i] && out[v][i - 1])) : out[v][i - 1];
      break;
    }
    default:
      throw EvalError("not a class formula or U-subformula: " + to_string(psi->op));
  }
  return out;
}

bool eval_position(const AttributedWord& w, std::size_t i, const Formula& phi) {
  Evaluator ev(w);
  return ev.at(phi, i);
}

bool eval_class(const AttributedWord& w, std::size_t i, DataValue d, const Formula& psi) {
  Evaluator ev(w, {d});
  return ev.at(psi, i, d);
}

bool eval_usub(const AttributedWord& w, std::size_t i, DataValue d, const Formula& chi) {
  Evaluator ev(w, {d});
  return ev.at(chi, i, d);
}

bool holds(const AttributedWord& w, const Formula& phi) {
  if (w.empty()) throw EvalError("satisfaction is undefined on the empty word");
  return eval_position(w, 1, phi);
}

bool eval_cltl_atom(const AttributedWord& w, std::size_t i, const CltlAtom& atom) {
  if (!is_complete(w, {atom.x, atom.y})) {
    for (const auto& p : w.positions())
      if (!p.attrs.count(atom.x) || !p.attrs.count(atom.y))
        throw EvalError("word is not complete for the atom's variables");
  }
  auto x = w.value(atom.x, i);
  if (atom.kind == CltlAtom::Kind::Shift) {
    long t = static_cast<long>(i) + atom.delta;
    if (t < 1 || t > static_cast<long>(w.size())) return false;
    return *x == *w.value(atom.y, static_cast<std::size_t>(t));
  }
  for (std::size_t j = i + 1; j <= w.size(); ++j)
    if (*w.value(atom.y, j) == *x) return true;
  return false;
}

}  // namespace dataltl
