#include <sstream>

#include "doctest.h"
#include "cli.hpp"
#include "json.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = dltl::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kData = DATALTL_TEST_DATA;
const std::string kWord = kData + "/herd_word.json";
const std::string kPsi = kData + "/herd_psi.txt";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval exit codes follow the truth value") {
    auto r = run({"eval", "--word", kWord, "--formula-file", kPsi, "--pos", "3"});
    CHECK(r.code == dltl::kTrue);
    CHECK(r.out == "true\n");
    r = run({"eval", "--word", kWord, "--formula-file", kPsi, "--pos", "9"});
    CHECK(r.code == dltl::kFalse);
    r = run({"eval", "--word", kWord, "--formula-file", kPsi, "--all"});
    CHECK(r.out == "1 2 3 4 5 6 7 8\n");
  }

  TEST_CASE("words from standard input") {
    const auto r = run({"eval", "--word", "-", "-f", "p"},
                       R"({"props_alphabet":["p"],"attrs_alphabet":[],"positions":[{"props":["p"],"attrs":{}}]})");
    CHECK(r.code == dltl::kTrue);
  }

  TEST_CASE("herd report") {
    const auto r = run({"herd", "--word", kWord, "--formula-file", kPsi, "--marks", "3,4,6,7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("H(10)={3,4,6,7}") != std::string::npos);
    CHECK(r.out.find("S(10)={3,4,6}") != std::string::npos);
  }

  TEST_CASE("satcheck") {
    auto r = run({"satcheck", "-f", "p & !p", "--max-len", "3"});
    CHECK(r.code == dltl::kFalse);
    r = run({"satcheck", "-f", "C[0]{a} X= F= @a", "--max-len", "3"});
    CHECK(r.code == dltl::kTrue);
    r = run({"satcheck", "-f", "G p & F !p", "--max-len", "6", "--budget", "5"});
    CHECK(r.code == dltl::kBudget);
  }

  TEST_CASE("usage and input errors") {
    CHECK(run({"eval", "--no-such-flag"}).code == dltl::kUsage);
    CHECK(run({}).code == dltl::kUsage);
    CHECK(run({"eval", "--word", kData + "/missing.json", "-f", "p"}).code == dltl::kInput);
    CHECK(run({"parse", "-f", "p U"}).code == dltl::kInput);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("json output parses") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "parse", "-f", "F p"},
             {"--json", "classify", "-f", "p U!{a}[1] (!=@a & q)"},
             {"--json", "eval", "--word", kWord, "--formula-file", kPsi, "--pos", "3"},
             {"--json", "herd", "--word", kWord, "--formula-file", kPsi, "--claims"},
             {"--json", "satcheck", "-f", "p", "--max-len", "2"},
             {"--json", "encode", "--word", kWord},
             {"--json", "gadget", "pcp", "--instance", kData + "/pcp_small.json"},
             {"--json", "gadget", "minsky", "--instance", kData + "/minsky_small.json"},
             {"--json", "random-word", "--seed", "5", "--count", "3"},
         }) {
      const auto r = run(args);
      CHECK_MESSAGE(r.code == 0, args[1] << ": " << r.err);
      CHECK_NOTHROW(static_cast<void>(nlohmann::json::parse(r.out)));
    }
  }

  TEST_CASE("random words are reproducible") {
    const auto a = run({"random-word", "--seed", "17", "--count", "20"});
    const auto b = run({"random-word", "--seed", "17", "--count", "20"});
    const auto c = run({"random-word", "--seed", "18", "--count", "20"});
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
  }

  TEST_CASE("validity and gadgets") {
    CHECK(run({"validity", "--word", kWord, "--formula-file", kPsi}).code == dltl::kFalse);
    CHECK(run({"gadget", "undu", "--instance", kData + "/minsky_small.json"}).code == 0);
  }
}
