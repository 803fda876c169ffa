#include "dataltl/syntax.hpp"

#include <cctype>
#include <memory>
#include <sstream>
#include <vector>

#include "dataltl/classify.hpp"

namespace dataltl {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  End,
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Caret,
  And,
  Or,
  Implies,
  Iff,
  Not,
  AttrNeq,  // "!=@"
  At,       // "@"
  KwTrue,
  KwFalse,
  KwX,
  KwY,
  KwU,
  KwS,
  KwN,
  KwNbar,
  KwF,
  KwG,
  KwP,
  KwH,
  KwC,
  KwXX,
  KwYY,
  ClassX,   // X=
  ClassY,   // Y=
  ClassU,   // U=
  ClassS,   // S=
  ClassF,   // F=
  ClassG,   // G=
  ClassP,   // P=
  ClassH,   // H=
  UneqU,    // U!
  UneqS,    // S!
  UneqF,    // F!
  UneqP,    // P!
  ShiftEq,  // "=X" or "=Y" directly after an @a
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= s_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = s_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          id += get();
        classify_ident(t, id);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < s_.size() &&
                  std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
        std::string num;
        num += get();
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
          num += get();
        t.kind = Tok::Int;
        t.text = num;
        if (num.size() > 6) throw ParseError("integer too large", t.line, t.col);
        t.value = std::stoll(num);
      } else if (c == '@' || (c == '!' && peek(1) == '=' && peek(2) == '@')) {
        const bool neq = c == '!';
        for (int k = neq ? 3 : 1; k > 0; --k) get();
        t.kind = neq ? Tok::AttrNeq : Tok::At;
        out.push_back(t);
        // attribute name, then an optional "=X" / "=Y" shift comparison
        skip_ws();
        Token id;
        id.line = line_;
        id.col = col_;
        if (pos_ < s_.size() &&
            (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
          while (pos_ < s_.size() &&
                 (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            id.text += get();
          id.kind = Tok::Ident;
          out.push_back(id);
        }
        if (peek(0) == '=' && (peek(1) == 'X' || peek(1) == 'Y') &&
            (peek(2) == '^' || peek(2) == '@')) {
          Token sh;
          sh.line = line_;
          sh.col = col_;
          get();
          sh.kind = Tok::ShiftEq;
          sh.text = std::string(1, get());
          out.push_back(sh);
        }
        continue;
      } else {
        get();
        switch (c) {
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '[': t.kind = Tok::LBracket; break;
          case ']': t.kind = Tok::RBracket; break;
          case ',': t.kind = Tok::Comma; break;
          case '^': t.kind = Tok::Caret; break;
          case '&': t.kind = Tok::And; break;
          case '|': t.kind = Tok::Or; break;
          case '!': t.kind = Tok::Not; break;
          case '-':
            if (peek(0) == '>') {
              get();
              t.kind = Tok::Implies;
              break;
            }
            throw ParseError("unexpected '-'", t.line, t.col);
          case '<':
            if (peek(0) == '-' && peek(1) == '>') {
              get();
              get();
              t.kind = Tok::Iff;
              break;
            }
            throw ParseError("unexpected '<'", t.line, t.col);
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
        }
      }
      out.push_back(t);
    }
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }
  char get() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') get();
      } else {
        break;
      }
    }
  }

  void classify_ident(Token& t, const std::string& id) {
    t.text = id;
    auto with_eq = [&](Tok plain, Tok eq) {
      if (peek(0) == '=') {
        get();
        t.kind = eq;
      } else {
        t.kind = plain;
      }
    };
    auto with_bang = [&](Tok plain, Tok bang) {
      if (peek(0) == '!' && peek(1) == '{') {
        get();
        t.kind = bang;
        return true;
      }
      t.kind = plain;
      return false;
    };
    if (id == "true") t.kind = Tok::KwTrue;
    else if (id == "false") t.kind = Tok::KwFalse;
    else if (id == "X") with_eq(Tok::KwX, Tok::ClassX);
    else if (id == "Y") with_eq(Tok::KwY, Tok::ClassY);
    else if (id == "U") { if (!with_bang(Tok::KwU, Tok::UneqU)) with_eq(Tok::KwU, Tok::ClassU); }
    else if (id == "S") { if (!with_bang(Tok::KwS, Tok::UneqS)) with_eq(Tok::KwS, Tok::ClassS); }
    else if (id == "F") { if (!with_bang(Tok::KwF, Tok::UneqF)) with_eq(Tok::KwF, Tok::ClassF); }
    else if (id == "P") { if (!with_bang(Tok::KwP, Tok::UneqP)) with_eq(Tok::KwP, Tok::ClassP); }
    else if (id == "G") with_eq(Tok::KwG, Tok::ClassG);
    else if (id == "H") with_eq(Tok::KwH, Tok::ClassH);
    else if (id == "N") t.kind = Tok::KwN;
    else if (id == "Nbar") t.kind = Tok::KwNbar;
    else if (id == "C") t.kind = Tok::KwC;
    else if (id == "XX") t.kind = Tok::KwXX;
    else if (id == "YY") t.kind = Tok::KwYY;
    else t.kind = Tok::Ident;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Untyped syntax tree; layers are assigned afterwards.
enum class RK {
  True, False, Ident, Not, And, Or, Implies, Iff,
  Next, Prev, FromNow, UpToNow, Ev, Alw, Once, Hist,
  CNext, CPrev, CEv, CAlw, COnce, CHist,
  Until, Since, CUntil, CSince, UUntil, USince, FNeq, PNeq,
  Freeze, At, AtNeq, AtShift, PairN, PairP,
};

struct Raw {
  RK kind;
  std::string a, b;
  int delta = 0;
  std::vector<std::unique_ptr<Raw>> kids;
  int line = 0, col = 0;
};
using RawPtr = std::unique_ptr<Raw>;

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : t_(std::move(toks)), opts_(opts) {}

  Formula run() {
    RawPtr r = parse_iff();
    if (cur().kind != Tok::End) fail("unexpected token '" + describe(cur()) + "'");
    return elab(*r, Sort::Position);
  }

 private:
  const Token& cur() const { return t_[k_]; }
  Token take() { return t_[k_++]; }
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, cur().line, cur().col); }
  [[noreturn]] static void fail_at(const Raw& r, const std::string& m) {
    throw ParseError(m, r.line, r.col);
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    if (!t.text.empty()) return t.text;
    return "symbol";
  }
  void expect(Tok k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what);
    ++k_;
  }

  RawPtr node(RK k, const Token& at) {
    auto r = std::make_unique<Raw>();
    r->kind = k;
    r->line = at.line;
    r->col = at.col;
    return r;
  }

  std::string attr_name() {
    if (cur().kind != Tok::Ident) fail("expected attribute name");
    std::string a = take().text;
    if (opts_.attrs && !opts_.attrs->count(a)) fail("unknown attribute '" + a + "'");
    return a;
  }
  int shift_value() {
    if (cur().kind != Tok::Int) fail("expected integer shift");
    long long v = take().value;
    if (v > kMaxShift || v < -kMaxShift)
      throw ParseError("shift exceeds bound " + std::to_string(kMaxShift), t_[k_ - 1].line,
                       t_[k_ - 1].col);
    return static_cast<int>(v);
  }
  // "{a}" then optional "[d]"
  void attr_then_shift(Raw& r) {
    expect(Tok::LBrace, "'{'");
    r.a = attr_name();
    expect(Tok::RBrace, "'}'");
    if (cur().kind == Tok::LBracket) {
      ++k_;
      r.delta = shift_value();
      expect(Tok::RBracket, "']'");
    }
  }

  RawPtr bin(RK k, const Token& at, RawPtr l, RawPtr r) {
    auto n = node(k, at);
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return n;
  }

  RawPtr parse_iff() {
    RawPtr l = parse_implies();
    while (cur().kind == Tok::Iff) {
      Token op = take();
      l = bin(RK::Iff, op, std::move(l), parse_implies());
    }
    return l;
  }
  RawPtr parse_implies() {
    RawPtr l = parse_or();
    if (cur().kind == Tok::Implies) {
      Token op = take();
      return bin(RK::Implies, op, std::move(l), parse_implies());
    }
    return l;
  }
  RawPtr parse_or() {
    RawPtr l = parse_and();
    while (cur().kind == Tok::Or) {
      Token op = take();
      l = bin(RK::Or, op, std::move(l), parse_and());
    }
    return l;
  }
  RawPtr parse_and() {
    RawPtr l = parse_temporal();
    while (cur().kind == Tok::And) {
      Token op = take();
      l = bin(RK::And, op, std::move(l), parse_temporal());
    }
    return l;
  }
  RawPtr parse_temporal() {
    RawPtr l = parse_unary();
    Token op = cur();
    RK k;
    switch (op.kind) {
      case Tok::KwU: k = RK::Until; break;
      case Tok::KwS: k = RK::Since; break;
      case Tok::ClassU: k = RK::CUntil; break;
      case Tok::ClassS: k = RK::CSince; break;
      case Tok::UneqU: k = RK::UUntil; break;
      case Tok::UneqS: k = RK::USince; break;
      default: return l;
    }
    ++k_;
    auto n = node(k, op);
    if (k == RK::UUntil || k == RK::USince) attr_then_shift(*n);
    n->kids.push_back(std::move(l));
    n->kids.push_back(parse_temporal());
    return n;
  }

  RawPtr unary(RK k, const Token& at) {
    auto n = node(k, at);
    n->kids.push_back(parse_unary());
    return n;
  }

  RawPtr parse_unary() {
    Token t = cur();
    switch (t.kind) {
      case Tok::Not: ++k_; return unary(RK::Not, t);
      case Tok::KwX: ++k_; return unary(RK::Next, t);
      case Tok::KwY: ++k_; return unary(RK::Prev, t);
      case Tok::KwN: ++k_; return unary(RK::FromNow, t);
      case Tok::KwNbar: ++k_; return unary(RK::UpToNow, t);
      case Tok::KwF: ++k_; return unary(RK::Ev, t);
      case Tok::KwG: ++k_; return unary(RK::Alw, t);
      case Tok::KwP: ++k_; return unary(RK::Once, t);
      case Tok::KwH: ++k_; return unary(RK::Hist, t);
      case Tok::ClassX: ++k_; return unary(RK::CNext, t);
      case Tok::ClassY: ++k_; return unary(RK::CPrev, t);
      case Tok::ClassF: ++k_; return unary(RK::CEv, t);
      case Tok::ClassG: ++k_; return unary(RK::CAlw, t);
      case Tok::ClassP: ++k_; return unary(RK::COnce, t);
      case Tok::ClassH: ++k_; return unary(RK::CHist, t);
      case Tok::UneqF:
      case Tok::UneqP: {
        ++k_;
        auto n = node(t.kind == Tok::UneqF ? RK::FNeq : RK::PNeq, t);
        attr_then_shift(*n);
        n->kids.push_back(parse_unary());
        return n;
      }
      case Tok::KwC: {
        ++k_;
        auto n = node(RK::Freeze, t);
        if (cur().kind == Tok::LBracket) {
          ++k_;
          n->delta = shift_value();
          expect(Tok::RBracket, "']'");
        }
        expect(Tok::LBrace, "'{'");
        n->a = attr_name();
        expect(Tok::RBrace, "'}'");
        n->kids.push_back(parse_unary());
        return n;
      }
      case Tok::KwXX:
      case Tok::KwYY: {
        ++k_;
        auto n = node(t.kind == Tok::KwXX ? RK::PairN : RK::PairP, t);
        expect(Tok::LBrace, "'{'");
        n->a = attr_name();
        expect(Tok::Comma, "','");
        n->b = attr_name();
        expect(Tok::RBrace, "'}'");
        n->kids.push_back(parse_unary());
        return n;
      }
      default:
        return parse_atom();
    }
  }

  RawPtr parse_atom() {
    Token t = cur();
    switch (t.kind) {
      case Tok::KwTrue: ++k_; return node(RK::True, t);
      case Tok::KwFalse: ++k_; return node(RK::False, t);
      case Tok::Ident: {
        ++k_;
        if (opts_.props && !opts_.props->count(t.text))
          throw ParseError("unknown proposition '" + t.text + "'", t.line, t.col);
        auto n = node(RK::Ident, t);
        n->a = t.text;
        return n;
      }
      case Tok::LParen: {
        ++k_;
        RawPtr r = parse_iff();
        expect(Tok::RParen, "')'");
        return r;
      }
      case Tok::AttrNeq: {
        ++k_;
        auto n = node(RK::AtNeq, t);
        n->a = attr_name();
        return n;
      }
      case Tok::At: {
        ++k_;
        std::string a = attr_name();
        if (cur().kind != Tok::ShiftEq) {
          auto n = node(RK::At, t);
          n->a = a;
          return n;
        }
        bool back = take().text == "Y";
        int d = 1;
        if (cur().kind == Tok::Caret) {
          ++k_;
          d = shift_value();
        }
        expect(Tok::At, "'@'");
        auto n = node(RK::AtShift, t);
        n->a = a;
        n->b = attr_name();
        n->delta = back ? -d : d;
        return n;
      }
      default:
        fail("unexpected " + describe(t));
    }
  }

  // A raw tree is pure when it has no class or U-subformula construct
  // outside a nested quantifier.
  static bool pure(const Raw& r) {
    switch (r.kind) {
      case RK::At:
      case RK::AtNeq:
      case RK::CNext:
      case RK::CPrev:
      case RK::CEv:
      case RK::CAlw:
      case RK::COnce:
      case RK::CHist:
      case RK::CUntil:
      case RK::CSince:
        return false;
      case RK::Freeze:
      case RK::UUntil:
      case RK::USince:
      case RK::FNeq:
      case RK::PNeq:
      case RK::AtShift:
        return true;
      default:
        for (const auto& k : r.kids)
          if (!pure(*k)) return false;
        return true;
    }
  }

  Formula uneq(bool until, const std::string& a, int delta, Formula rho, Formula tau) {
    Formula u = until ? f::uneq_until(a, delta, rho, tau) : f::uneq_since(a, delta, rho, tau);
    if (delta < 0 && opts_.lower_negative_shifts) return lower_shift(u);
    return u;
  }

  Formula elab(const Raw& r, Sort s) {
    if (s != Sort::Position && pure(r)) return f::lift(elab(r, Sort::Position), s);
    auto kid = [&](std::size_t i, Sort ks) { return elab(*r.kids[i], ks); };
    switch (r.kind) {
      case RK::True: return f::top();
      case RK::False: return f::bottom();
      case RK::Ident: return f::prop(r.a);
      case RK::Not:
        if (s == Sort::USub) fail_at(r, "negation of an attribute test is not allowed here");
        return f::neg(kid(0, s));
      case RK::And: return f::conj(kid(0, s), kid(1, s));
      case RK::Or: return f::disj(kid(0, s), kid(1, s));
      case RK::Implies:
        if (s == Sort::USub) fail_at(r, "implication over attribute tests is not allowed here");
        return f::implies(kid(0, s), kid(1, s));
      case RK::Iff:
        if (s == Sort::USub) fail_at(r, "equivalence over attribute tests is not allowed here");
        return f::iff(kid(0, s), kid(1, s));
      default:
        break;
    }
    if (s == Sort::Position) {
      switch (r.kind) {
        case RK::Next: return f::next(kid(0, s));
        case RK::Prev: return f::prev(kid(0, s));
        case RK::FromNow: return f::from_now(kid(0, s));
        case RK::UpToNow: return f::up_to_now(kid(0, s));
        case RK::Ev: return f::eventually(kid(0, s));
        case RK::Alw: return f::always(kid(0, s));
        case RK::Once: return f::once(kid(0, s));
        case RK::Hist: return f::historically(kid(0, s));
        case RK::Until: return f::until(kid(0, s), kid(1, s));
        case RK::Since: return f::since(kid(0, s), kid(1, s));
        case RK::Freeze: return f::freeze(r.delta, r.a, kid(0, Sort::Class));
        case RK::AtShift: return f::attr_shift_eq(r.a, r.delta, r.b);
        case RK::UUntil:
        case RK::USince:
          return uneq(r.kind == RK::UUntil, r.a, r.delta, kid(0, Sort::USub), kid(1, Sort::USub));
        case RK::FNeq:
        case RK::PNeq:
          return uneq(r.kind == RK::FNeq, r.a, r.delta, f::top(),
                      f::conj(f::attr_neq(r.a), kid(0, Sort::Position)));
        case RK::PairN: return f::pair_next(r.a, r.b, kid(0, s));
        case RK::PairP: return f::pair_prev(r.a, r.b, kid(0, s));
        default:
          fail_at(r, "class operator or attribute test outside a quantifier");
      }
    }
    if (s == Sort::Class) {
      switch (r.kind) {
        case RK::At: return f::attr_is(r.a);
        case RK::CNext: return f::class_next(kid(0, s));
        case RK::CPrev: return f::class_prev(kid(0, s));
        case RK::CEv: return f::class_eventually(kid(0, s));
        case RK::CAlw: return f::class_always(kid(0, s));
        case RK::COnce: return f::class_once(kid(0, s));
        case RK::CHist: return f::class_historically(kid(0, s));
        case RK::CUntil: return f::class_until(kid(0, s), kid(1, s));
        case RK::CSince: return f::class_since(kid(0, s), kid(1, s));
        case RK::AtNeq: fail_at(r, "'!=@' is only allowed inside U!/S! operands");
        default:
          fail_at(r, "position operator applied to a class formula (use the '=' variant)");
      }
    }
    switch (r.kind) {
      case RK::At: return f::attr_eq(r.a);
      case RK::AtNeq: return f::attr_neq(r.a);
      default:
        fail_at(r, "only positive combinations of attribute tests are allowed in U!/S! operands");
    }
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
  const ParseOptions& opts_;
};

// ---- printing ----

bool is_binary(const Formula& n) {
  switch (n->op) {
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Since:
    case Op::UneqUntil:
    case Op::UneqSince:
    case Op::ClassUntil:
    case Op::ClassSince:
      return true;
    case Op::Lift:
      return is_binary(n->kid());
    default:
      return false;
  }
}

int prec(const Formula& n) {
  switch (n->op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Until:
    case Op::Since:
    case Op::UneqUntil:
    case Op::UneqSince:
    case Op::ClassUntil:
    case Op::ClassSince:
      return 3;
    case Op::Lift: return prec(n->kid());
    default: return 4;
  }
}

void emit(std::ostringstream& o, const Formula& n);

void emit_operand(std::ostringstream& o, const Formula& n, bool paren) {
  if (paren) o << '(';
  emit(o, n);
  if (paren) o << ')';
}

void emit_unary(std::ostringstream& o, const char* op, const Formula& k) {
  o << op;
  emit_operand(o, k, is_binary(k));
}

void emit(std::ostringstream& o, const Formula& n) {
  switch (n->op) {
    case Op::True: o << "true"; return;
    case Op::False: o << "false"; return;
    case Op::Prop: o << n->name; return;
    case Op::Lift: emit(o, n->kid()); return;
    case Op::AttrIs:
    case Op::AttrEq: o << '@' << n->name; return;
    case Op::AttrNeq: o << "!=@" << n->name; return;
    case Op::Not: emit_unary(o, "!", n->kid()); return;
    case Op::Next: emit_unary(o, "X ", n->kid()); return;
    case Op::Prev: emit_unary(o, "Y ", n->kid()); return;
    case Op::FromNow: emit_unary(o, "N ", n->kid()); return;
    case Op::UpToNow: emit_unary(o, "Nbar ", n->kid()); return;
    case Op::ClassNext: emit_unary(o, "X= ", n->kid()); return;
    case Op::ClassPrev: emit_unary(o, "Y= ", n->kid()); return;
    case Op::Freeze: {
      std::string head = "C[" + std::to_string(n->delta) + "]{" + n->name + "} ";
      emit_unary(o, head.c_str(), n->kid());
      return;
    }
    case Op::PairNext:
    case Op::PairPrev: {
      std::string head = std::string(n->op == Op::PairNext ? "XX{" : "YY{") + n->name + "," +
                         n->name2 + "} ";
      emit_unary(o, head.c_str(), n->kid());
      return;
    }
    case Op::And:
    case Op::Or: {
      // left associative: a same-precedence left child needs no parentheses
      const auto& l = n->kid(0);
      const auto& r = n->kid(1);
      emit_operand(o, l, is_binary(l) && !(prec(l) == prec(n) && l->op != Op::Lift &&
                                           l->op == n->op));
      o << (n->op == Op::And ? " & " : " | ");
      emit_operand(o, r, is_binary(r));
      return;
    }
    default:
      break;
  }
  // right-associative temporal binaries
  const auto& l = n->kid(0);
  const auto& r = n->kid(1);
  emit_operand(o, l, is_binary(l));
  switch (n->op) {
    case Op::Until: o << " U "; break;
    case Op::Since: o << " S "; break;
    case Op::ClassUntil: o << " U= "; break;
    case Op::ClassSince: o << " S= "; break;
    case Op::UneqUntil:
      o << " U!{" << n->name << "}[" << n->delta << "] ";
      break;
    case Op::UneqSince:
      o << " S!{" << n->name << "}[" << n->delta << "] ";
      break;
    default:
      throw FormulaError("print: unexpected node");
  }
  emit_operand(o, r, is_binary(r) && prec(r) != 3);
}

}  // namespace

Formula parse(std::string_view text, const ParseOptions& opts) {
  Lexer lx(text);
  Parser p(lx.run(), opts);
  return p.run();
}

std::string print(const Formula& phi) {
  std::ostringstream o;
  emit(o, phi);
  return o.str();
}

}  // namespace dataltl
