#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dataltl/formula.hpp"

namespace dataltl {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  /// When set, unknown names are rejected.
  std::optional<std::set<std::string>> props;
  std::optional<std::set<std::string>> attrs;
  /// Rewrite U!/S! with negative shift into shift-free form (see lower_shift).
  bool lower_negative_shifts = true;
};

inline constexpr int kMaxShift = 64;

/// Grammar (lowest to highest precedence):
///   f  ::= f '<->' f | f '->' f | f '|' f | f '&' f
///        | f 'U' f | f 'S' f | f 'U=' f | f 'S=' f
///        | f 'U!{a}[d]' f | f 'S!{a}[d]' f          (right associative)
///        | unary f | atom
///   unary ::= '!' | 'X' | 'Y' | 'N' | 'Nbar' | 'F' | 'G' | 'P' | 'H'
///           | 'X=' | 'Y=' | 'F=' | 'G=' | 'P=' | 'H='
///           | 'C[d]{a}' | 'C{a}' | 'XX{a,b}' | 'YY{a,b}'
///           | 'F!{a}[d]' | 'P!{a}[d]'
///   atom  ::= 'true' | 'false' | ident | '@a' | '!=@a'
///           | '@a=X^d@b' | '@a=Y^d@b' | '(' f ')'
Formula parse(std::string_view text, const ParseOptions& opts = {});

/// Canonical text; parse(print(phi)) reproduces phi.
std::string print(const Formula& phi);

}  // namespace dataltl
