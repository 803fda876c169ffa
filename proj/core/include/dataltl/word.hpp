#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dataltl {

/// Opaque data value. Only equality is ever consulted.
using DataValue = std::uint64_t;

class WordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Position {
  std::set<std::string> props;
  std::map<std::string, DataValue> attrs;

  bool has(const std::string& p) const { return props.count(p) != 0; }
  std::optional<DataValue> value(const std::string& a) const {
    auto it = attrs.find(a);
    if (it == attrs.end()) return std::nullopt;
    return it->second;
  }
  bool operator==(const Position&) const = default;
};

/// Finite attributed word. Positions are 1-based in every public accessor.
/// Immutable after construction; the constructor validates alphabets.
class AttributedWord {
 public:
  AttributedWord() = default;
  AttributedWord(std::vector<std::string> props_alphabet,
                 std::vector<std::string> attrs_alphabet,
                 std::vector<Position> positions);

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }

  /// 1-based access; throws WordError when out of range.
  const Position& at(std::size_t i) const;
  std::optional<DataValue> value(const std::string& a, std::size_t i) const {
    return at(i).value(a);
  }

  const std::vector<Position>& positions() const { return positions_; }
  const std::vector<std::string>& props_alphabet() const { return props_; }
  const std::vector<std::string>& attrs_alphabet() const { return attrs_; }

  /// Distinct values in first-occurrence order (positions left to right,
  /// attributes in declared order).
  std::vector<DataValue> values() const;

  bool operator==(const AttributedWord&) const = default;

 private:
  std::vector<std::string> props_;
  std::vector<std::string> attrs_;
  std::vector<Position> positions_;
};

struct ClassView {
  const AttributedWord* owner = nullptr;
  DataValue value = 0;
  std::vector<std::size_t> positions;
};

ClassView class_positions(const AttributedWord& w, DataValue d);
std::vector<std::set<std::string>> string_projection(const AttributedWord& w);
bool is_complete(const AttributedWord& w, const std::set<std::string>& attrs);
AttributedWord canonicalize_values(const AttributedWord& w);

/// Suffix starting at position i (1-based, inclusive).
AttributedWord suffix(const AttributedWord& w, std::size_t i);
/// Prefix ending at position i (1-based, inclusive).
AttributedWord prefix(const AttributedWord& w, std::size_t i);

/// Builds a word over one attribute from a value list and per-position props.
AttributedWord make_one_attributed(const std::string& attr,
                                   const std::vector<DataValue>& values,
                                   const std::vector<std::set<std::string>>& props,
                                   std::vector<std::string> props_alphabet = {});

/// Returns a copy of w with position i (1-based) replaced.
AttributedWord with_position(const AttributedWord& w, std::size_t i, Position p);

// JSON interchange. Schema:
//   {"props_alphabet":[...], "attrs_alphabet":[...],
//    "positions":[{"props":["p"],"attrs":{"a":1}}, ...]}
// String values are interned to tokens above the largest integer value.
AttributedWord word_from_json(const std::string& text);
std::string word_to_json(const AttributedWord& w, int indent = -1);

}  // namespace dataltl
