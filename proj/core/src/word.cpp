#include "dataltl/word.hpp"

#include <algorithm>
#include <unordered_map>

#include "json.hpp"

namespace dataltl {

namespace {

std::vector<std::string> dedup(std::vector<std::string> v) {
  std::vector<std::string> out;
  for (auto& s : v)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  return out;
}

}  // namespace

AttributedWord::AttributedWord(std::vector<std::string> props_alphabet,
                               std::vector<std::string> attrs_alphabet,
                               std::vector<Position> positions)
    : props_(dedup(std::move(props_alphabet))),
      attrs_(dedup(std::move(attrs_alphabet))),
      positions_(std::move(positions)) {
  std::set<std::string> ps(props_.begin(), props_.end());
  std::set<std::string> as(attrs_.begin(), attrs_.end());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    for (const auto& p : positions_[i].props)
      if (!ps.count(p))
        throw WordError("position " + std::to_string(i + 1) + ": proposition '" + p +
                        "' not in alphabet");
    for (const auto& [a, v] : positions_[i].attrs)
      if (!as.count(a))
        throw WordError("position " + std::to_string(i + 1) + ": attribute '" + a +
                        "' not in alphabet");
  }
}

const Position& AttributedWord::at(std::size_t i) const {
  if (i < 1 || i > positions_.size())
    throw WordError("position " + std::to_string(i) + " out of range [1," +
                    std::to_string(positions_.size()) + "]");
  return positions_[i - 1];
}

std::vector<DataValue> AttributedWord::values() const {
  std::vector<DataValue> out;
  std::set<DataValue> seen;
  for (const auto& pos : positions_)
    for (const auto& a : attrs_) {
      auto v = pos.value(a);
      if (v && seen.insert(*v).second) out.push_back(*v);
    }
  return out;
}

ClassView class_positions(const AttributedWord& w, DataValue d) {
  ClassView cv{&w, d, {}};
  for (std::size_t i = 1; i <= w.size(); ++i)
    for (const auto& [a, v] : w.at(i).attrs)
      if (v == d) {
        cv.positions.push_back(i);
        break;
      }
  return cv;
}

std::vector<std::set<std::string>> string_projection(const AttributedWord& w) {
  std::vector<std::set<std::string>> out;
  out.reserve(w.size());
  for (const auto& p : w.positions()) out.push_back(p.props);
  return out;
}

bool is_complete(const AttributedWord& w, const std::set<std::string>& attrs) {
  for (const auto& p : w.positions()) {
    if (p.attrs.size() != attrs.size()) return false;
    for (const auto& a : attrs)
      if (!p.attrs.count(a)) return false;
  }
  return true;
}

AttributedWord canonicalize_values(const AttributedWord& w) {
  std::unordered_map<DataValue, DataValue> ren;
  std::vector<Position> ps = w.positions();
  for (auto& pos : ps)
    for (const auto& a : w.attrs_alphabet()) {
      auto it = pos.attrs.find(a);
      if (it == pos.attrs.end()) continue;
      auto [r, fresh] = ren.try_emplace(it->second, ren.size());
      it->second = r->second;
    }
  return AttributedWord(w.props_alphabet(), w.attrs_alphabet(), std::move(ps));
}

AttributedWord suffix(const AttributedWord& w, std::size_t i) {
  w.at(i);
  std::vector<Position> ps(w.positions().begin() + static_cast<long>(i - 1), w.positions().end());
  return AttributedWord(w.props_alphabet(), w.attrs_alphabet(), std::move(ps));
}

AttributedWord prefix(const AttributedWord& w, std::size_t i) {
  w.at(i);
  std::vector<Position> ps(w.positions().begin(), w.positions().begin() + static_cast<long>(i));
  return AttributedWord(w.props_alphabet(), w.attrs_alphabet(), std::move(ps));
}

AttributedWord make_one_attributed(const std::string& attr,
                                   const std::vector<DataValue>& values,
                                   const std::vector<std::set<std::string>>& props,
                                   std::vector<std::string> props_alphabet) {
  if (!props.empty() && props.size() != values.size())
    throw WordError("props and values differ in length");
  std::set<std::string> seen(props_alphabet.begin(), props_alphabet.end());
  std::vector<Position> ps;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Position p;
    if (!props.empty()) p.props = props[i];
    for (const auto& q : p.props)
      if (seen.insert(q).second) props_alphabet.push_back(q);
    p.attrs[attr] = values[i];
    ps.push_back(std::move(p));
  }
  return AttributedWord(std::move(props_alphabet), {attr}, std::move(ps));
}

AttributedWord with_position(const AttributedWord& w, std::size_t i, Position p) {
  w.at(i);
  auto ps = w.positions();
  ps[i - 1] = std::move(p);
  return AttributedWord(w.props_alphabet(), w.attrs_alphabet(), std::move(ps));
}

AttributedWord word_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw WordError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw WordError("word JSON must be an object");
  std::vector<std::string> props, attrs;
  if (j.contains("props_alphabet")) props = j.at("props_alphabet").get<std::vector<std::string>>();
  if (j.contains("attrs_alphabet")) attrs = j.at("attrs_alphabet").get<std::vector<std::string>>();
  if (!j.contains("positions") || !j.at("positions").is_array())
    throw WordError("word JSON needs a 'positions' array");

  DataValue max_int = 0;
  bool any_int = false;
  for (const auto& pj : j.at("positions"))
    if (pj.contains("attrs"))
      for (const auto& [k, v] : pj.at("attrs").items())
        if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
          max_int = std::max<DataValue>(max_int, v.get<DataValue>());
          any_int = true;
        }
  std::map<std::string, DataValue> interned;
  DataValue next = any_int ? max_int + 1 : 0;

  std::vector<Position> ps;
  for (const auto& pj : j.at("positions")) {
    Position p;
    if (pj.contains("props")) {
      for (const auto& q : pj.at("props")) p.props.insert(q.get<std::string>());
    }
    if (pj.contains("attrs")) {
      for (const auto& [k, v] : pj.at("attrs").items()) {
        if (v.is_string()) {
          auto [it, fresh] = interned.try_emplace(v.get<std::string>(), next);
          if (fresh) ++next;
          p.attrs[k] = it->second;
        } else if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
          p.attrs[k] = v.get<DataValue>();
        } else if (v.is_null()) {
          continue;
        } else {
          throw WordError("attribute '" + k + "': value must be a non-negative integer or string");
        }
      }
    }
    ps.push_back(std::move(p));
  }
  return AttributedWord(std::move(props), std::move(attrs), std::move(ps));
}

std::string word_to_json(const AttributedWord& w, int indent) {
  nlohmann::json j;
  j["props_alphabet"] = w.props_alphabet();
  j["attrs_alphabet"] = w.attrs_alphabet();
  auto arr = nlohmann::json::array();
  for (const auto& p : w.positions()) {
    nlohmann::json pj;
    pj["props"] = std::vector<std::string>(p.props.begin(), p.props.end());
    nlohmann::json aj = nlohmann::json::object();
    for (const auto& [a, v] : p.attrs) aj[a] = v;
    pj["attrs"] = aj;
    arr.push_back(pj);
  }
  j["positions"] = arr;
  return j.dump(indent);
}

}  // namespace dataltl
