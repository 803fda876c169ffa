#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dataltl/automata.hpp"
#include "dataltl/classify.hpp"
#include "dataltl/encoder.hpp"
#include "dataltl/eval.hpp"
#include "dataltl/gadgets.hpp"
#include "dataltl/herd.hpp"
#include "dataltl/random.hpp"
#include "dataltl/satsearch.hpp"
#include "dataltl/syntax.hpp"
#include "dataltl/validity.hpp"
#include "json.hpp"

namespace dltl {

using namespace dataltl;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Context {
 public:
  Context(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  AttributedWord word(const std::string& path) { return word_from_json(read(path)); }

  Formula formula(const std::string& inline_text, const std::string& file) {
    if (inline_text.empty() == file.empty()) throw UsageError("give exactly one of --formula and --formula-file");
    return parse(inline_text.empty() ? read(file) : inline_text);
  }

  std::ostream& out() { return out_; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::vector<std::string> sorted(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

std::string word_table(const AttributedWord& w) {
  std::ostringstream o;
  for (std::size_t i = 1; i <= w.size(); ++i) {
    const auto& p = w.at(i);
    o << i << ": {" << join(sorted(p.props)) << "}";
    for (const auto& a : w.attrs_alphabet()) {
      o << " " << a << "=";
      if (auto v = p.value(a))
        o << *v;
      else
        o << "-";
    }
    o << "\n";
  }
  return o.str();
}

json word_json(const AttributedWord& w) { return json::parse(word_to_json(w)); }

// ---- commands ----

struct FormulaArgs {
  std::string text, file;
  void add(CLI::App* c) {
    c->add_option("--formula,-f", text, "Formula text");
    c->add_option("--formula-file", file, "File holding the formula");
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Context ctx(in, out);
  CLI::App app{"dltl: attributed-word temporal logic toolkit", "dltl"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  int code = kTrue;
  std::function<int()> action;

  // parse
  FormulaArgs parse_f;
  bool keep_negative = false;
  auto* c_parse = app.add_subcommand("parse", "Parse and pretty-print a formula");
  parse_f.add(c_parse);
  c_parse->add_flag("--keep-negative-shifts", keep_negative, "Do not rewrite negative U!/S! shifts");
  c_parse->callback([&] {
    action = [&] {
      if (parse_f.text.empty() == parse_f.file.empty())
        throw UsageError("give exactly one of --formula and --formula-file");
      ParseOptions po;
      po.lower_negative_shifts = !keep_negative;
      const Formula phi = parse(parse_f.text.empty() ? ctx.read(parse_f.file) : parse_f.text, po);
      if (as_json) {
        out << json{{"formula", print(phi)},
                    {"props", sorted(propositions_of(phi))},
                    {"attrs", sorted(attributes_of(phi))},
                    {"subformulas", subformulas(phi).size()},
                    {"max_shift", max_shift(phi)}}
                   .dump(2)
            << "\n";
      } else {
        out << print(phi) << "\n";
      }
      return int{kTrue};
    };
  });

  // eval
  FormulaArgs eval_f;
  std::string eval_word;
  std::size_t eval_pos = 1;
  bool eval_all = false;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a formula on a word");
  eval_f.add(c_eval);
  c_eval->add_option("--word,-w", eval_word, "Word JSON file, - for stdin")->required();
  c_eval->add_option("--pos,-p", eval_pos, "Position (1-based)");
  c_eval->add_flag("--all", eval_all, "List every position where the formula holds");
  c_eval->callback([&] {
    action = [&] {
      const Formula phi = ctx.formula(eval_f.text, eval_f.file);
      const AttributedWord w = ctx.word(eval_word);
      Evaluator ev(w);
      if (eval_all) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 1; i <= w.size(); ++i)
          if (ev.at(phi, i)) hits.push_back(i);
        if (as_json) {
          out << json{{"positions", hits}}.dump() << "\n";
        } else {
          for (std::size_t k = 0; k < hits.size(); ++k) out << (k ? " " : "") << hits[k];
          out << "\n";
        }
        return int{kTrue};
      }
      if (eval_pos < 1 || eval_pos > w.size())
        throw InputError("position " + std::to_string(eval_pos) + " outside 1.." + std::to_string(w.size()));
      const bool v = ev.at(phi, eval_pos);
      if (as_json)
        out << json{{"position", eval_pos}, {"value", v}}.dump() << "\n";
      else
        out << (v ? "true" : "false") << "\n";
      return int{v ? kTrue : kFalse};
    };
  });

  // classify
  FormulaArgs cls_f;
  auto* c_cls = app.add_subcommand("classify", "Report the decidable fragment of a formula");
  cls_f.add(c_cls);
  c_cls->callback([&] {
    action = [&] {
      const FragmentTag t = classify(ctx.formula(cls_f.text, cls_f.file));
      if (as_json) {
        out << json{{"fragment", to_string(t.fragment)},
                    {"reason", t.reason},
                    {"implication", to_string(t.implication)}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(t.fragment);
        if (!t.reason.empty()) out << " (" << t.reason << ")";
        if (t.implication != ImplicationStatus::NotApplicable) out << "; implication " << to_string(t.implication);
        out << "\n";
      }
      return int{kTrue};
    };
  });

  // encode
  std::string enc_word, enc_pad = "fresh";
  bool enc_decode = false;
  std::vector<std::string> enc_props, enc_attrs;
  auto* c_enc = app.add_subcommand("encode", "Encode a word as a 1-attributed word, or decode one");
  c_enc->add_option("--word,-w", enc_word, "Word JSON file, - for stdin")->required();
  c_enc->add_option("--padding", enc_pad, "Values for absent attributes")
      ->check(CLI::IsMember({"fresh", "next-same"}));
  c_enc->add_flag("--decode", enc_decode, "Decode an encoded word (needs --props and --attrs)");
  c_enc->add_option("--props", enc_props, "Original propositions (with --decode)")->delimiter(',');
  c_enc->add_option("--attrs", enc_attrs, "Original attributes (with --decode)")->delimiter(',');
  c_enc->callback([&] {
    action = [&] {
      const AttributedWord w = ctx.word(enc_word);
      AttributedWord r;
      if (enc_decode) {
        if (enc_attrs.empty()) throw UsageError("--decode needs --attrs");
        r = decode_word(w, make_scheme(enc_props, enc_attrs));
      } else {
        r = encode_word(w, scheme_for(w), enc_pad == "fresh" ? Padding::Fresh : Padding::NextSame);
      }
      out << (as_json ? word_to_json(r, 2) + "\n" : word_table(r));
      return int{kTrue};
    };
  });

  // translate
  FormulaArgs tr_f;
  std::vector<std::string> tr_props, tr_attrs;
  bool tr_structure = false;
  auto* c_tr = app.add_subcommand("translate", "Translate a formula to the 1-attributed encoding");
  tr_f.add(c_tr);
  c_tr->add_option("--props", tr_props, "Propositions (default: those of the formula)")->delimiter(',');
  c_tr->add_option("--attrs", tr_attrs, "Attributes (default: those of the formula)")->delimiter(',');
  c_tr->add_flag("--structure", tr_structure, "Conjoin the structure formula");
  c_tr->callback([&] {
    action = [&] {
      const Formula chi = ctx.formula(tr_f.text, tr_f.file);
      const auto props = tr_props.empty() ? sorted(propositions_of(chi)) : tr_props;
      const auto attrs = tr_attrs.empty() ? sorted(attributes_of(chi)) : tr_attrs;
      if (attrs.empty()) throw InputError("no attributes: give --attrs");
      const EncodingScheme s = make_scheme(props, attrs);
      Formula t = translate(chi, s);
      if (tr_structure) t = f::conj(structure_formula(s), t);
      if (as_json) {
        out << json{{"props", s.props}, {"attrs", s.attrs}, {"att", s.att},
                    {"r", s.r},         {"carrier", s.carrier}, {"formula", print(t)}}
                   .dump(2)
            << "\n";
      } else {
        out << print(t) << "\n";
      }
      return int{kTrue};
    };
  });

  // satcheck
  FormulaArgs sat_f;
  SearchBounds sat_b;
  std::size_t sat_vals = 0;
  std::vector<std::string> sat_complete;
  bool sat_naive = false, sat_equisat = false;
  auto* c_sat = app.add_subcommand("satcheck", "Bounded exhaustive satisfiability search");
  sat_f.add(c_sat);
  c_sat->add_option("--max-len", sat_b.max_len, "Longest word length");
  c_sat->add_option("--max-vals", sat_vals, "Number of distinct values (default: unbounded)");
  c_sat->add_option("--props", sat_b.props, "Propositions (default: those of the formula)")->delimiter(',');
  c_sat->add_option("--attrs", sat_b.attrs, "Attributes (default: those of the formula)")->delimiter(',');
  c_sat->add_option("--complete", sat_complete, "Attributes present at every position")->delimiter(',');
  c_sat->add_option("--budget", sat_b.budget, "Words checked before giving up");
  c_sat->add_option("--threads", sat_b.threads, "Worker threads");
  c_sat->add_flag("--naive", sat_naive, "Enumerate all value assignments, not only canonical ones");
  c_sat->add_flag("--equisat", sat_equisat, "Also search the 1-attributed encoding and compare");
  c_sat->callback([&] {
    action = [&] {
      const Formula phi = ctx.formula(sat_f.text, sat_f.file);
      if (sat_b.props.empty()) sat_b.props = sorted(propositions_of(phi));
      if (sat_b.attrs.empty()) sat_b.attrs = sorted(attributes_of(phi));
      if (sat_vals) sat_b.max_values = sat_vals;
      sat_b.complete = {sat_complete.begin(), sat_complete.end()};
      if (sat_equisat) {
        const EquisatReport r = check_equisat(phi, sat_b);
        if (as_json) {
          out << json{{"original", json::parse(search_result_json(r.original))},
                      {"encoded", json::parse(search_result_json(r.encoded))},
                      {"agree", r.agree}}
                     .dump(2)
              << "\n";
        } else {
          out << "original: " << to_string(r.original.outcome) << "\nencoded: " << to_string(r.encoded.outcome)
              << "\n"
              << (r.agree ? "agree" : "disagree") << "\n";
        }
        return int{r.agree ? kTrue : kFalse};
      }
      const SearchResult r = sat_naive ? find_model_naive(phi, sat_b) : find_model(phi, sat_b);
      if (as_json) {
        out << search_result_json(r) << "\n";
      } else {
        out << to_string(r.outcome) << " (" << r.words_checked << " words checked, max-len " << sat_b.max_len
            << ")\n";
        if (r.model) out << word_table(*r.model);
      }
      switch (r.outcome) {
        case SearchOutcome::Sat: return int{kTrue};
        case SearchOutcome::BoundedUnsat: return int{kFalse};
        case SearchOutcome::BudgetExceeded: return int{kBudget};
      }
      return int{kFalse};
    };
  });

  // validity
  FormulaArgs val_f;
  std::string val_word;
  int val_n = -1;
  auto* c_val = app.add_subcommand("validity", "Build the valid extension and check the decoration conditions");
  val_f.add(c_val);
  c_val->add_option("--word,-w", val_word, "1-attributed word JSON file, - for stdin")->required();
  c_val->add_option("--N", val_n, "Equality horizon (default: the largest shift)");
  c_val->callback([&] {
    action = [&] {
      const Formula phi = ctx.formula(val_f.text, val_f.file);
      const AttributedWord w = ctx.word(val_word);
      const ExtendedWord x = build_valid_extension(w, phi, val_n < 0 ? max_shift(phi) : val_n);
      const bool valid = is_valid(x);
      bool ok = valid;
      json decs = json::array();
      std::ostringstream text;
      text << "valid extension: " << (valid ? "yes" : "no") << "\n";
      for (std::size_t id = 0; id < x.occurrences().size(); ++id) {
        const auto& o = x.occurrences()[id];
        if (o.node->op != Op::UneqUntil) continue;
        const SDecoration d = build_s_decoration(x, static_cast<int>(id));
        const auto reports = check_all_conditions(d);
        const bool implies = conditions_imply_truth(d);
        text << "occurrence " << o.path << ": " << print(o.node) << "\n";
        for (const auto& r : reports) {
          text << "  s=" << r.s << ":";
          for (const auto& c : r.results) {
            text << " " << c.name << "=" << (c.ok ? "ok" : "FAIL@" + std::to_string(c.position));
            ok = ok && c.ok;
          }
          text << "\n";
        }
        text << "  conditions imply truth: " << (implies ? "yes" : "no") << "\n";
        ok = ok && implies;
        decs.push_back({{"occurrence", o.path},
                        {"formula", print(o.node)},
                        {"reports", json::parse(condition_report_json(reports))},
                        {"implies_truth", implies}});
      }
      if (as_json)
        out << json{{"valid", valid}, {"decorations", decs}}.dump(2) << "\n";
      else
        out << text.str();
      return int{ok ? kTrue : kFalse};
    };
  });

  // herd
  FormulaArgs herd_f;
  std::string herd_word;
  std::vector<std::size_t> herd_marks;
  bool herd_claims = false;
  auto* c_herd = app.add_subcommand("herd", "Shepherd, herd and special-position report for U!");
  herd_f.add(c_herd);
  c_herd->add_option("--word,-w", herd_word, "1-attributed word JSON file, - for stdin")->required();
  c_herd->add_option("--marks", herd_marks, "Positions marked with the formula (default: where it holds)")
      ->delimiter(',');
  c_herd->add_flag("--claims", herd_claims, "Also check the interval claims");
  c_herd->callback([&] {
    action = [&] {
      const Formula psi = ctx.formula(herd_f.text, herd_f.file);
      const AttributedWord w = ctx.word(herd_word);
      const std::set<std::size_t> marks(herd_marks.begin(), herd_marks.end());
      const HerdReport r =
          analyze(w, psi, marks.empty() ? HerdMode::TruthRelative : HerdMode::MarkRelative, marks);
      bool ok = true;
      if (as_json) {
        json j = json::parse(herd_report_json(r));
        if (herd_claims) {
          json cs = json::array();
          for (const auto& c : verify_claims(r)) {
            cs.push_back({{"name", c.name}, {"ok", c.ok}, {"counterexample", c.counterexample}});
            ok = ok && c.ok;
          }
          j["claims"] = cs;
        }
        out << j.dump(2) << "\n";
      } else {
        out << herd_report_text(r);
        if (herd_claims)
          for (const auto& c : verify_claims(r)) {
            out << "claim " << c.name << ": " << (c.ok ? "holds" : "fails " + c.counterexample) << "\n";
            ok = ok && c.ok;
          }
      }
      return int{ok ? kTrue : kFalse};
    };
  });

  // automaton-run
  std::string au_file, au_word;
  auto* c_au = app.add_subcommand("automaton-run", "Run a register or data automaton on a word");
  c_au->add_option("--automaton,-a", au_file, "Automaton JSON file")->required();
  c_au->add_option("--word,-w", au_word, "Word JSON file, - for stdin")->required();
  c_au->callback([&] {
    action = [&] {
      const std::string text = ctx.read(au_file);
      json j;
      try {
        j = json::parse(text);
      } catch (const json::exception& e) {
        throw InputError(std::string("bad automaton JSON: ") + e.what());
      }
      const std::string type = j.value("type", "");
      const AttributedWord w = ctx.word(au_word);
      bool acc = false;
      if (type == "register")
        acc = ra_accepts(register_automaton_from_json(text), w);
      else if (type == "data")
        acc = da_accepts(data_automaton_from_json(text), w);
      else
        throw InputError("automaton \"type\" must be \"register\" or \"data\"");
      if (as_json)
        out << json{{"type", type}, {"accepted", acc}}.dump() << "\n";
      else
        out << (acc ? "accepted" : "rejected") << "\n";
      return int{acc ? kTrue : kFalse};
    };
  });

  // gadget
  std::string gd_kind, gd_file;
  auto* c_gd = app.add_subcommand("gadget", "Reduction formulas for PCP and two-counter machines");
  c_gd->add_option("kind", gd_kind, "pcp, minsky or undu")->required()->check(CLI::IsMember({"pcp", "minsky", "undu"}));
  c_gd->add_option("--instance,-i", gd_file, "Instance JSON file")->required();
  c_gd->callback([&] {
    action = [&] {
      const std::string text = ctx.read(gd_file);
      std::vector<Conjunct> cs;
      std::optional<AttributedWord> witness;
      if (gd_kind == "pcp") {
        std::vector<std::size_t> sol;
        const PCPInstance p = pcp_from_json(text, &sol);
        cs = pcp_conjuncts(p);
        if (!sol.empty()) witness = pcp_witness(p, sol);
      } else {
        std::vector<std::size_t> run;
        const MinskyMachine m = minsky_from_json(text, &run);
        cs = gd_kind == "minsky" ? minsky_conjuncts(m) : undu_conjuncts(m);
        if (!run.empty()) witness = minsky_run_word(m, run);
      }
      bool ok = true;
      json jc = json::array();
      for (const auto& c : cs) {
        json e{{"name", c.name}, {"formula", print(c.formula)}};
        if (witness) {
          const bool h = holds(*witness, c.formula);
          e["holds"] = h;
          ok = ok && h;
        }
        jc.push_back(e);
      }
      const Formula phi = conjoin(cs);
      if (as_json) {
        json j{{"formula", print(phi)}, {"conjuncts", jc}, {"fragment", to_string(classify(phi).fragment)}};
        if (witness) {
          j["witness"] = word_json(*witness);
          j["holds"] = ok;
        }
        out << j.dump(2) << "\n";
      } else {
        out << print(phi) << "\n";
        if (witness) {
          out << word_to_json(*witness) << "\n";
          for (const auto& e : jc)
            if (!e["holds"].get<bool>()) out << "conjunct " << e["name"].get<std::string>() << " fails\n";
          out << "witness " << (ok ? "satisfies" : "violates") << " the formula\n";
        }
      }
      return int{ok ? kTrue : kFalse};
    };
  });

  // random-word
  std::uint64_t rw_seed = 0;
  std::size_t rw_count = 1;
  WordGen rw_gen;
  auto* c_rw = app.add_subcommand("random-word", "Reproducible random words (splitmix64 stream)");
  c_rw->add_option("--seed", rw_seed, "Seed")->required();
  c_rw->add_option("--count", rw_count, "Number of words");
  c_rw->add_option("--min-len", rw_gen.min_len, "Shortest length");
  c_rw->add_option("--max-len", rw_gen.max_len, "Longest length");
  c_rw->add_option("--props", rw_gen.props, "Propositions")->delimiter(',');
  c_rw->add_option("--attrs", rw_gen.attrs, "Attributes")->delimiter(',');
  c_rw->add_option("--values", rw_gen.values, "Values are drawn from [0, values)");
  c_rw->add_option("--absent", rw_gen.absent, "Probability that an attribute is missing")
      ->check(CLI::Range(0.0, 1.0));
  c_rw->callback([&] {
    action = [&] {
      if (rw_gen.min_len > rw_gen.max_len) throw UsageError("--min-len exceeds --max-len");
      if (rw_gen.values == 0) throw UsageError("--values must be positive");
      SplitMix64 rng(rw_seed);
      json all = json::array();
      for (std::size_t k = 0; k < rw_count; ++k) {
        const AttributedWord w = random_word(rng, rw_gen);
        if (as_json)
          all.push_back(word_json(w));
        else
          out << word_to_json(w) << "\n";
      }
      if (as_json) out << all.dump(2) << "\n";
      return int{kTrue};
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kTrue;
    }
    err << "dltl: " << e.what() << "\n";
    return kUsage;
  }

  try {
    code = action ? action() : int{kUsage};
  } catch (const UsageError& e) {
    err << "dltl: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "dltl: " << e.what() << "\n";
    return kInput;
  }
  return code;
}

}  // namespace dltl
