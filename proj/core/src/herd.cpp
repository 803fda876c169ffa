#include "dataltl/herd.hpp"

#include <algorithm>
#include <sstream>

#include "dataltl/eval.hpp"
#include "json.hpp"

namespace dataltl {

std::string special_kind_string(unsigned k) {
  std::vector<std::string> parts;
  if (k & kRhoFar) parts.push_back("rho-far");
  if (k & kRhoStair) parts.push_back("rho-stair");
  if (k & kTauFar) parts.push_back("tau-far");
  if (k & kTauStair) parts.push_back("tau-stair");
  if (k & kEmptyHerd) parts.push_back("empty-herd");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

HerdLabels herd_labels(const AttributedWord& w, const Formula& psi) {
  std::string why;
  auto sh = extended_shape(psi, &why);
  if (!sh) throw HerdError("not an extended-until formula: " + why);
  if (!sh->until) throw HerdError("herd analysis is defined for the until direction only");
  if (sh->delta < 0) throw HerdError("herd analysis needs a nonnegative shift");
  if ((!sh->inter_attr.empty() && sh->inter_attr != sh->frozen) || sh->target_attr != sh->frozen)
    throw HerdError("herd analysis needs a single attribute throughout");

  HerdLabels l;
  l.attr = sh->frozen;
  l.delta = sh->delta;
  l.n = w.size();
  Evaluator ev(w);
  const std::vector<char> none(l.n + 2, 0);
  auto lab = [&](const Formula& f) { return f ? ev.truth(f) : none; };
  const auto rho = lab(sh->rho), eq = lab(sh->rho_eq), neq = lab(sh->rho_neq);
  l.tau = lab(sh->tau);
  l.val.assign(l.n + 2, std::nullopt);
  l.rho_eq.assign(l.n + 2, 0);
  l.rho_neq.assign(l.n + 2, 0);
  for (std::size_t i = 1; i <= l.n; ++i) {
    l.val[i] = w.value(l.attr, i);
    l.rho_neq[i] = rho[i] || neq[i];
    l.rho_eq[i] = rho[i] || eq[i] || neq[i];
  }
  return l;
}

namespace {

std::optional<std::size_t> minimal_witness(const HerdLabels& l, std::size_t i) {
  if (!l.val[i]) return std::nullopt;
  for (std::size_t j = i + l.delta; j <= l.n; ++j)
    if (l.tau[j] && l.val[j] && *l.val[j] != *l.val[i]) return j;
  return std::nullopt;
}

bool distinct(const std::optional<DataValue>& x, const std::optional<DataValue>& y) {
  return x && y && *x != *y;
}

// Largest k < j (and k >= lo) with a value different from j, only rho_neq
// strictly between k and j, and k a tau-position or rho_eq without rho_neq.
std::optional<std::size_t> far_boundary(const HerdLabels& l, std::size_t j, std::size_t lo) {
  for (std::size_t k = j - 1; k >= std::max<std::size_t>(lo, 1); --k) {
    if (distinct(l.val[k], l.val[j]) && (l.tau[k] || (l.rho_eq[k] && !l.rho_neq[k]))) return k;
    if (!l.rho_neq[k]) return std::nullopt;
    if (k == 1) break;
  }
  return std::nullopt;
}

}  // namespace

bool characterization_holds(const HerdLabels& l, std::size_t i) {
  auto j = minimal_witness(l, i);
  if (!j) return false;
  for (std::size_t k = i + l.delta; k < *j; ++k) {
    const bool a = l.rho_neq[k];
    const bool b = l.val[k] == l.val[i] && l.rho_eq[k];
    if (!a && !b) return false;
  }
  return true;
}

std::set<std::size_t> HerdReport::special_set(std::size_t j) const {
  std::set<std::size_t> out;
  auto it = specials.find(j);
  if (it != specials.end())
    for (const auto& [k, kind] : it->second) out.insert(k);
  return out;
}

HerdReport analyze(const AttributedWord& w, const Formula& psi, HerdMode mode,
                   const std::set<std::size_t>& marks) {
  HerdLabels l = herd_labels(w, psi);
  std::set<std::size_t> ps;
  if (mode == HerdMode::TruthRelative) {
    Evaluator ev(w);
    const auto& v = ev.truth(psi);
    for (std::size_t i = 1; i <= l.n; ++i)
      if (v[i]) ps.insert(i);
  } else {
    ps = marks;
  }
  return analyze_labels(std::move(l), ps);
}

HerdReport analyze_labels(HerdLabels labels, const std::set<std::size_t>& psi_positions) {
  HerdReport r;
  r.labels = std::move(labels);
  const HerdLabels& l = r.labels;
  const std::size_t n = l.n;
  const std::size_t d = static_cast<std::size_t>(l.delta);
  for (std::size_t i : psi_positions) {
    if (i < 1 || i > n) throw HerdError("mark " + std::to_string(i) + " is out of range");
    r.psi_positions.insert(i);
  }

  for (std::size_t i : r.psi_positions) {
    if (auto j = minimal_witness(l, i)) {
      r.shepherd_of[i] = *j;
      r.herds[*j].insert(i);
    } else {
      r.unshepherded.insert(i);
    }
  }

  for (std::size_t j = 1; j <= n; ++j) {
    if (!l.tau[j]) continue;
    r.tau_positions.insert(j);
    std::map<std::size_t, unsigned> s;
    auto h = r.herds.find(j);
    if (h != r.herds.end()) {
      for (std::size_t i : h->second)
        for (std::size_t k = i + d; k < j; ++k) {
          if (!l.rho_neq[k]) {
            s[i] |= kRhoFar;
            s[k] |= kRhoStair;
          }
          if (l.tau[k]) {
            s[i] |= kTauFar;
            s[k] |= kTauStair;
          }
        }
    } else if (j > 1) {
      const std::size_t lo = j > d ? j - d : 1;
      if (auto k = far_boundary(l, j, lo)) {
        s[*k] |= kEmptyHerd;
        for (std::size_t m = (j > d ? j - d + 1 : 1); m < *k; ++m)
          if (l.val[m] == l.val[*k]) s[m] |= kEmptyHerd;
      }
    }
    if (!s.empty()) {
      r.intervals[j] = {s.begin()->first, s.rbegin()->first};
      r.specials[j] = std::move(s);
    }
  }
  return r;
}

std::array<ClaimCheck, 4> verify_claims(const HerdReport& r) {
  std::array<ClaimCheck, 4> out{ClaimCheck{"same-value", true, ""},
                                ClaimCheck{"e+ characterization", true, ""},
                                ClaimCheck{"e- characterization", true, ""},
                                ClaimCheck{"interval overlap", true, ""}};
  const HerdLabels& l = r.labels;
  const std::size_t d = static_cast<std::size_t>(l.delta);
  auto fail = [](ClaimCheck& c, const std::string& msg) {
    if (c.ok) {
      c.ok = false;
      c.counterexample = msg;
    }
  };

  for (const auto& [j, s] : r.specials) {
    const std::string at = "j=" + std::to_string(j);
    const auto& first = l.val[s.begin()->first];
    for (const auto& [k, kind] : s)
      if (l.val[k] != first) fail(out[0], at + ": positions " + std::to_string(s.begin()->first) +
                                              " and " + std::to_string(k) + " differ in value");

    const auto [em, ep] = r.intervals.at(j);
    auto k = far_boundary(l, j, 1);
    if (!k || *k != ep)
      fail(out[1], at + ": e+=" + std::to_string(ep) + " but characterization gives " +
                       (k ? std::to_string(*k) : std::string("none")));

    const std::set<std::size_t> sj = r.special_set(j);
    std::optional<std::size_t> best;
    for (std::size_t m = 1; m <= ep && !best; ++m) {
      if (l.val[m] != l.val[ep]) continue;
      bool ok = true;
      for (std::size_t x = m + d; x < j && ok; ++x) {
        const bool in_s = sj.count(x) != 0;
        if (!in_s && !l.rho_neq[x]) ok = false;
        if (!l.rho_eq[x]) ok = false;
        if (!in_s && l.tau[x]) ok = false;
      }
      if (ok) best = m;
    }
    if (!best || *best != em)
      fail(out[2], at + ": e-=" + std::to_string(em) + " but characterization gives " +
                       (best ? std::to_string(*best) : std::string("none")));
  }

  for (auto a = r.intervals.begin(); a != r.intervals.end(); ++a)
    for (auto b = std::next(a); b != r.intervals.end(); ++b) {
      const std::size_t lo = std::max(a->second.first, b->second.first);
      const std::size_t hi = std::min(a->second.second, b->second.second);
      const std::size_t overlap = hi >= lo ? hi - lo + 1 : 0;
      if (overlap > d)
        fail(out[3], "intervals of " + std::to_string(a->first) + " and " +
                         std::to_string(b->first) + " share " + std::to_string(overlap) +
                         " positions");
    }
  return out;
}

namespace {

std::string set_str(const std::set<std::size_t>& s) {
  std::string out = "{";
  bool first = true;
  for (auto x : s) {
    out += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string herd_report_text(const HerdReport& r) {
  const HerdLabels& l = r.labels;
  std::ostringstream os;
  os << "pos  val  rho=  rho!=  tau  psi  shepherd\n";
  for (std::size_t i = 1; i <= l.n; ++i) {
    os << std::string(i < 10 ? 2 : 1, ' ') << i << "  ";
    os << (l.val[i] ? std::to_string(*l.val[i]) : std::string("-")) << "    ";
    os << (l.rho_eq[i] ? "x" : ".") << "     " << (l.rho_neq[i] ? "x" : ".") << "      "
       << (l.tau[i] ? "x" : ".") << "    " << (r.psi_positions.count(i) ? "x" : ".") << "    ";
    auto it = r.shepherd_of.find(i);
    os << (it != r.shepherd_of.end() ? std::to_string(it->second) : std::string("-")) << "\n";
  }
  for (const auto& [j, h] : r.herds) os << "H(" << j << ")=" << set_str(h) << "\n";
  for (std::size_t j : r.tau_positions)
    if (!r.is_shepherd(j)) os << j << " is not a shepherd\n";
  for (const auto& [j, s] : r.specials) {
    for (const auto& [k, kind] : s) {
      if (kind & kRhoStair) {
        std::set<std::size_t> fars;
        for (std::size_t i : r.herds.count(j) ? r.herds.at(j) : std::set<std::size_t>{})
          if (k >= i + static_cast<std::size_t>(l.delta) && !l.rho_neq[k]) fars.insert(i);
        os << k << " is a rho-stair for " << set_str(fars) << " (shepherd " << j << ")\n";
      }
      if (kind & kTauStair) os << k << " is a tau-stair for " << j << "\n";
    }
    std::set<std::size_t> rf, tf;
    for (const auto& [k, kind] : s) {
      if (kind & kRhoFar) rf.insert(k);
      if (kind & kTauFar) tf.insert(k);
    }
    if (!rf.empty()) os << set_str(rf) << " are rho-far from " << j << "\n";
    if (!tf.empty()) os << set_str(tf) << " are tau-far from " << j << "\n";
    os << "S(" << j << ")=" << set_str(r.special_set(j)) << "\n";
    os << "e-(" << j << ")=" << r.intervals.at(j).first << "\n";
    os << "e+(" << j << ")=" << r.intervals.at(j).second << "\n";
  }
  if (!r.unshepherded.empty()) os << "marked without shepherd: " << set_str(r.unshepherded) << "\n";
  return os.str();
}

std::string herd_report_json(const HerdReport& r, int indent) {
  using nlohmann::json;
  json j;
  j["delta"] = r.labels.delta;
  j["attribute"] = r.labels.attr;
  j["psi_positions"] = r.psi_positions;
  json sh = json::object();
  for (const auto& [i, s] : r.shepherd_of) sh[std::to_string(i)] = s;
  j["shepherd_of"] = sh;
  json herds = json::object();
  for (const auto& [s, h] : r.herds) herds[std::to_string(s)] = h;
  j["herds"] = herds;
  j["tau_positions"] = r.tau_positions;
  json sp = json::object();
  for (const auto& [s, m] : r.specials) {
    json e = json::object();
    for (const auto& [k, kind] : m) e[std::to_string(k)] = special_kind_string(kind);
    sp[std::to_string(s)] = e;
  }
  j["specials"] = sp;
  json iv = json::object();
  for (const auto& [s, p] : r.intervals) iv[std::to_string(s)] = {p.first, p.second};
  j["intervals"] = iv;
  j["unshepherded"] = r.unshepherded;
  return j.dump(indent);
}

}  // namespace dataltl
