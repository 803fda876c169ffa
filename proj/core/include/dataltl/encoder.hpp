#pragma once

#include <string>
#include <vector>

#include "dataltl/eval.hpp"
#include "dataltl/formula.hpp"
#include "dataltl/word.hpp"

namespace dataltl {

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block encoding of m-attributed words as 1-attributed words. Source
/// position i becomes block i of m positions; block position j carries
/// att_j and represents attribute attrs[j-1]; R marks present attributes.
struct EncodingScheme {
  std::vector<std::string> props;  // user propositions
  std::vector<std::string> attrs;  // a_1..a_m
  std::vector<std::string> att;    // att_1..att_m
  std::string r = "R";
  std::string carrier = "a";  // the single attribute of encoded words

  std::size_t m() const { return attrs.size(); }
  /// 1-based index of a source attribute; throws EncodingError.
  std::size_t index_of(const std::string& attr) const;
};

/// Builds a scheme with reserved names att1..attm and R, checking that they
/// do not collide with the user propositions.
EncodingScheme make_scheme(std::vector<std::string> props, std::vector<std::string> attrs,
                           std::string att_prefix = "att", std::string r = "R",
                           std::string carrier = "a");
/// Scheme over the alphabets of w.
EncodingScheme scheme_for(const AttributedWord& w);

enum class Padding {
  Fresh,     // a new value per absent attribute
  NextSame,  // next later value of the same attribute, fresh if none
};

AttributedWord encode_word(const AttributedWord& w, const EncodingScheme& s,
                           Padding pad = Padding::Fresh);
/// Inverse of encode_word up to padding. Throws EncodingError on a
/// malformed block structure.
AttributedWord decode_word(const AttributedWord& encoded, const EncodingScheme& s);

/// Holds at position 1 of exactly the well-formed encodings.
Formula structure_formula(const EncodingScheme& s);

/// The translation t. Negative extended-until shifts are lowered first.
/// Throws EncodingError on formulas outside the supported fragments.
Formula translate(const Formula& chi, const EncodingScheme& s);

/// t_i: navigate to block position i and evaluate phi there.
Formula nav_to(std::size_t i, const Formula& phi, const EncodingScheme& s);

/// Repeating-values atom as a formula over the word's own attributes.
Formula translate_cltl(const CltlAtom& atom);

}  // namespace dataltl
