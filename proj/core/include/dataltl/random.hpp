#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataltl/formula.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

/// splitmix64; small, seedable, and identical on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed = 0) : s_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : (*this)() % n; }
  /// Uniform in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(double p) { return static_cast<double>((*this)() >> 11) * 0x1.0p-53 < p; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

 private:
  std::uint64_t s_;
};

struct WordGen {
  std::size_t min_len = 1;
  std::size_t max_len = 6;
  std::vector<std::string> props{"p", "q"};
  std::vector<std::string> attrs{"a", "b"};
  std::size_t values = 4;
  double absent = 0.25;  // probability that an attribute is missing
};

AttributedWord random_word(SplitMix64& rng, const WordGen& g);

struct FormulaGen {
  int depth = 4;
  std::vector<std::string> props{"p", "q"};
  std::vector<std::string> attrs{"a", "b"};
  bool past = true;
  bool freeze = true;       // C^delta_a with class bodies
  bool class_nav = true;    // X= Y= U= S= inside class bodies
  bool uneq = true;         // extended until/since
  int max_delta = 1;        // |delta| bound for C and U!/S!
  bool negative_uneq = true;
  /// Keeps rho_neq -> rho_eq syntactically valid so formulas stay in the
  /// decidable extended fragment.
  bool implication_safe = true;
  bool beyond = false;  // N, Nbar, pair navigation
};

Formula random_formula(SplitMix64& rng, const FormulaGen& g);
/// Class formula (used for freeze bodies and tests of the class layer).
Formula random_class_formula(SplitMix64& rng, const FormulaGen& g, int depth);

}  // namespace dataltl
