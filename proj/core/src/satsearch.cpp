#include "dataltl/satsearch.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "dataltl/encoder.hpp"
#include "dataltl/eval.hpp"
#include "json.hpp"

namespace dataltl {

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Sat: return "sat";
    case SearchOutcome::BoundedUnsat: return "bounded-unsat";
    case SearchOutcome::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

void validate(const Formula& phi, const SearchBounds& b) {
  if (b.max_len < 1) throw SearchError("max_len must be positive");
  if (b.props.size() > 16) throw SearchError("too many propositions for exhaustive search");
  if (b.max_values && *b.max_values < 1) throw SearchError("max_values must be positive");
  for (const auto& a : b.complete)
    if (std::find(b.attrs.begin(), b.attrs.end(), a) == b.attrs.end())
      throw SearchError("completeness attribute " + a + " is not in the alphabet");
  if (phi) {
    for (const auto& p : propositions_of(phi))
      if (std::find(b.props.begin(), b.props.end(), p) == b.props.end())
        throw SearchError("formula proposition " + p + " is not in the search alphabet");
    for (const auto& a : attributes_of(phi))
      if (std::find(b.attrs.begin(), b.attrs.end(), a) == b.attrs.end())
        throw SearchError("formula attribute " + a + " is not in the search alphabet");
  }
}

std::set<std::string> letter_of(const SearchBounds& b, unsigned mask) {
  std::set<std::string> out;
  for (std::size_t k = 0; k < b.props.size(); ++k)
    if (mask >> k & 1u) out.insert(b.props[k]);
  return out;
}

// Enumerates the words of one length whose first letter is first_mask.
class Enumerator {
 public:
  Enumerator(const SearchBounds& b, std::size_t len, bool naive,
             const std::function<bool(const AttributedWord&)>& visit)
      : b_(b), len_(len), naive_(naive), visit_(visit) {
    const unsigned nletters = 1u << b.props.size();
    for (std::size_t p = 1; p <= len; ++p) {
      std::vector<unsigned> ok;
      for (unsigned m = 0; m < nletters; ++m)
        if (!b.letter_filter || b.letter_filter(p, len, letter_of(b, m))) ok.push_back(m);
      letters_.push_back(std::move(ok));
    }
    unsigned need = 0;
    for (std::size_t k = 0; k < b.attrs.size(); ++k)
      if (b.complete.count(b.attrs[k])) need |= 1u << k;
    for (unsigned m = 0; m < (1u << b.attrs.size()); ++m)
      if ((m & need) == need) presence_.push_back(m);
    ps_.resize(len);
  }

  const std::vector<unsigned>& first_letters() const { return letters_.front(); }

  // false when the visitor asked to stop
  bool run(unsigned first) {
    ps_[0].props = letter_of(b_, first);
    return letters(1);
  }

 private:
  bool letters(std::size_t p) {
    if (p == len_) return presence(0);
    for (unsigned m : letters_[p]) {
      ps_[p].props = letter_of(b_, m);
      if (!letters(p + 1)) return false;
    }
    return true;
  }

  bool presence(std::size_t p) {
    if (p == len_) {
      slots_.clear();
      for (std::size_t i = 0; i < len_; ++i)
        for (std::size_t k = 0; k < b_.attrs.size(); ++k)
          if (pres_[i] >> k & 1u) slots_.push_back({i, k});
      vals_.assign(slots_.size(), 0);
      const std::size_t cap = b_.max_values ? *b_.max_values : std::max<std::size_t>(slots_.size(), 1);
      return values(0, 0, cap);
    }
    if (pres_.size() < len_) pres_.resize(len_);
    for (unsigned m : presence_) {
      pres_[p] = m;
      if (!presence(p + 1)) return false;
    }
    return true;
  }

  // used = number of distinct values so far (restricted growth)
  bool values(std::size_t t, std::size_t used, std::size_t cap) {
    if (t == slots_.size()) return emit();
    const std::size_t hi = naive_ ? cap : std::min(used + 1, cap);
    for (std::size_t v = 0; v < hi; ++v) {
      vals_[t] = v;
      if (!values(t + 1, std::max(used, v + 1), cap)) return false;
    }
    return true;
  }

  bool emit() {
    std::vector<Position> ps = ps_;
    for (auto& p : ps) p.attrs.clear();
    for (std::size_t t = 0; t < slots_.size(); ++t)
      ps[slots_[t].first].attrs[b_.attrs[slots_[t].second]] = vals_[t];
    return visit_(AttributedWord(b_.props, b_.attrs, std::move(ps)));
  }

  const SearchBounds& b_;
  std::size_t len_;
  bool naive_;
  const std::function<bool(const AttributedWord&)>& visit_;
  std::vector<std::vector<unsigned>> letters_;
  std::vector<unsigned> presence_;
  std::vector<Position> ps_;
  std::vector<unsigned> pres_;
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
  std::vector<std::size_t> vals_;
};

struct Task {
  std::size_t len;
  unsigned first;
};

struct TaskResult {
  std::optional<AttributedWord> model;
  bool aborted = false;
  bool skipped = false;
};

SearchResult search(const Formula& phi, const SearchBounds& b, bool naive) {
  validate(phi, b);
  std::vector<Task> tasks;
  for (std::size_t len = 1; len <= b.max_len; ++len) {
    if (b.length_filter && !b.length_filter(len)) continue;
    const std::function<bool(const AttributedWord&)> none = [](const AttributedWord&) { return true; };
    Enumerator e(b, len, naive, none);
    for (unsigned m : e.first_letters()) tasks.push_back({len, m});
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> checked{0};
  std::atomic<std::size_t> best{tasks.size()};
  std::atomic<bool> out_of_budget{false};

  auto work = [&](std::size_t t) {
    if (t > best.load()) {
      results[t].skipped = true;
      return;
    }
    TaskResult& r = results[t];
    const std::function<bool(const AttributedWord&)> visit = [&](const AttributedWord& w) {
      if (out_of_budget.load() || t > best.load()) {
        r.aborted = out_of_budget.load();
        r.skipped = !r.aborted;
        return false;
      }
      if (checked.fetch_add(1) + 1 > b.budget) {
        out_of_budget = true;
        r.aborted = true;
        return false;
      }
      Evaluator ev(w);
      if (ev.at(phi, 1)) {
        r.model = w;
        std::size_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
        return false;
      }
      return true;
    };
    Enumerator e(b, tasks[t].len, naive, visit);
    e.run(tasks[t].first);
  };

  const unsigned nt = std::max(1u, b.threads);
  if (nt == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      work(t);
      if (results[t].model || results[t].aborted) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nt; ++k)
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) work(t);
      });
    for (auto& th : pool) th.join();
  }

  SearchResult out;
  out.bounds = b;
  out.words_checked = std::min(checked.load(), b.budget);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (results[t].model) {
      out.outcome = SearchOutcome::Sat;
      out.model = results[t].model;
      return out;
    }
    if (results[t].aborted) {
      out.outcome = SearchOutcome::BudgetExceeded;
      return out;
    }
  }
  out.outcome = out_of_budget ? SearchOutcome::BudgetExceeded : SearchOutcome::BoundedUnsat;
  return out;
}

}  // namespace

SearchResult find_model(const Formula& phi, const SearchBounds& b) { return search(phi, b, false); }

SearchResult find_model_naive(const Formula& phi, const SearchBounds& b) { return search(phi, b, true); }

void for_each_canonical_word(const SearchBounds& b, std::size_t len,
                             const std::function<bool(const AttributedWord&)>& visit) {
  validate(nullptr, b);
  Enumerator e(b, len, false, visit);
  for (unsigned m : e.first_letters())
    if (!e.run(m)) return;
}

EquisatReport check_equisat(const Formula& chi, const SearchBounds& b) {
  EquisatReport rep;
  SearchBounds ob = b;
  ob.max_values.reset();
  rep.original = find_model(chi, ob);

  const EncodingScheme s = make_scheme(b.props, b.attrs);
  const std::size_t m = s.m();
  SearchBounds eb = b;
  eb.max_values.reset();
  eb.max_len = b.max_len * m;
  eb.attrs = {s.carrier};
  eb.complete.clear();
  eb.props = s.props;
  eb.props.insert(eb.props.end(), s.att.begin(), s.att.end());
  eb.props.push_back(s.r);
  // Every model of the structure formula has exactly att_j at block position j.
  eb.letter_filter = [s, m](std::size_t p, std::size_t, const std::set<std::string>& x) {
    const std::string& want = s.att[(p - 1) % m];
    for (const auto& a : s.att)
      if ((x.count(a) != 0) != (a == want)) return false;
    return true;
  };
  eb.length_filter = [m](std::size_t len) { return len % m == 0; };
  rep.encoded = find_model(f::conj(structure_formula(s), translate(chi, s)), eb);

  const auto o = rep.original.outcome, e = rep.encoded.outcome;
  rep.agree = o != SearchOutcome::BudgetExceeded && e != SearchOutcome::BudgetExceeded &&
              (o == SearchOutcome::Sat) == (e == SearchOutcome::Sat);
  return rep;
}

std::string search_result_json(const SearchResult& r, int indent) {
  nlohmann::json j;
  j["outcome"] = to_string(r.outcome);
  j["words_checked"] = r.words_checked;
  if (r.model) j["model"] = nlohmann::json::parse(word_to_json(*r.model));
  nlohmann::json bounds = {{"max_len", r.bounds.max_len},
                           {"props", r.bounds.props},
                           {"attrs", r.bounds.attrs},
                           {"complete", r.bounds.complete}};
  bounds["max_values"] = r.bounds.max_values ? nlohmann::json(*r.bounds.max_values) : nlohmann::json("free");
  j["bounds"] = bounds;
  return j.dump(indent);
}

}  // namespace dataltl
