#include <benchmark/benchmark.h>

#include "dataltl/encoder.hpp"
#include "dataltl/eval.hpp"
#include "dataltl/herd.hpp"
#include "dataltl/random.hpp"
#include "dataltl/satsearch.hpp"
#include "dataltl/syntax.hpp"

using namespace dataltl;

namespace {

AttributedWord word_of_length(std::size_t n) {
  SplitMix64 rng(7);
  WordGen g;
  g.attrs = {"a"};
  g.props = {"rneq", "req", "tau"};
  g.absent = 0;
  g.values = 4;
  g.max_len = n;
  AttributedWord w = random_word(rng, g);
  while (w.size() != n) w = random_word(rng, g);
  return w;
}

const char* kPsi = "((@a & (req | rneq)) | (!=@a & rneq)) U!{a}[2] (!=@a & tau)";

void BM_Evaluate(benchmark::State& st) {
  const auto w = word_of_length(static_cast<std::size_t>(st.range(0)));
  const auto phi = parse(std::string("G F (") + kPsi + ")");
  for (auto _ : st) benchmark::DoNotOptimize(holds(w, phi));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_HerdAnalysis(benchmark::State& st) {
  const auto w = word_of_length(static_cast<std::size_t>(st.range(0)));
  const auto psi = parse(kPsi);
  for (auto _ : st) benchmark::DoNotOptimize(analyze(w, psi, HerdMode::TruthRelative));
}
BENCHMARK(BM_HerdAnalysis)->RangeMultiplier(4)->Range(16, 1024);

void BM_EncodeAndCheck(benchmark::State& st) {
  SplitMix64 rng(11);
  WordGen wg;
  wg.attrs = {"a", "b"};
  wg.max_len = 6;
  const auto w = random_word(rng, wg);
  const auto chi = parse("G (C[0]{a} X= F= @b -> p)");
  const auto s = scheme_for(w);
  const auto enc = f::conj(structure_formula(s), translate(chi, s));
  for (auto _ : st) benchmark::DoNotOptimize(holds(encode_word(w, s, Padding::Fresh), enc));
}
BENCHMARK(BM_EncodeAndCheck);

SearchBounds sat_bounds(std::size_t len) {
  SearchBounds b;
  b.max_len = len;
  b.props = {"p"};
  b.attrs = {"a"};
  b.complete = {"a"};
  b.max_values = 4;
  return b;
}

const char* kUnsat = "G(C[0]{a} X= @a -> p) & F(!p & C[0]{a} X= @a)";

void BM_SearchCanonical(benchmark::State& st) {
  const auto phi = parse(kUnsat);
  const auto b = sat_bounds(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(find_model(phi, b));
}
BENCHMARK(BM_SearchCanonical)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SearchNaive(benchmark::State& st) {
  const auto phi = parse(kUnsat);
  const auto b = sat_bounds(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(find_model_naive(phi, b));
}
BENCHMARK(BM_SearchNaive)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
