#include "surfsig/words.hpp"

#include "surfsig/atlas.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace surfsig {

Word Word::twist(std::string curve, long exponent) {
  if (exponent == 0) throw Error("twist exponent must be nonzero");
  Word w;
  w.kind = Kind::Twist;
  w.name = std::move(curve);
  w.exponent = exponent;
  return w;
}

Word Word::named(std::string name) {
  Word w;
  w.kind = Kind::Named;
  w.name = std::move(name);
  return w;
}

Word Word::inverse(Word inner) {
  Word w;
  w.kind = Kind::Inverse;
  w.children.push_back(std::move(inner));
  return w;
}

Word Word::power(Word inner, long exponent) {
  if (exponent == 0) throw Error("power exponent must be nonzero");
  Word w;
  w.kind = Kind::Power;
  w.exponent = exponent;
  w.children.push_back(std::move(inner));
  return w;
}

Word Word::commutator(Word a, Word b) {
  Word w;
  w.kind = Kind::Commutator;
  w.children.push_back(std::move(a));
  w.children.push_back(std::move(b));
  return w;
}

Word Word::concat(std::vector<Word> factors) {
  if (factors.size() == 1) return std::move(factors.front());
  Word w;
  w.kind = Kind::Concat;
  w.children = std::move(factors);
  return w;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line, int column_offset)
      : text_(text), line_(line), col_(1 + column_offset) {}

  Word parse_all() {
    Word w = parse_sequence();
    skip_space();
    if (!at_end()) fail({"end of input"});
    return w;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
    throw ParseError(line_, col_, std::move(expected), found);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail({std::string("'") + c + "'"});
    advance();
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip_space();
    if (!ident_start(peek())) fail({"name"});
    std::string s;
    while (!at_end() && ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }

  long integer() {
    skip_space();
    std::string s;
    if (peek() == '-' || peek() == '+') {
      s += peek();
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"integer"});
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    if (s.size() > 12) fail({"integer of at most 11 digits"});
    return std::stol(s);
  }

  long nonzero_integer() {
    const int line = line_, col = col_;
    const long k = integer();
    if (k == 0) throw ParseError(line, col, {"nonzero integer"}, "0");
    return k;
  }

  bool starts_factor() {
    skip_space();
    const char c = peek();
    return ident_start(c) || c == '[' || c == '(';
  }

  Word parse_sequence() {
    std::vector<Word> factors;
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c == ',' || c == ']' || c == ')') break;
      if (!starts_factor()) fail({"t(", "name", "[", "(", "end of word"});
      factors.push_back(parse_factor());
    }
    return Word::concat(std::move(factors));
  }

  Word parse_factor() {
    bool foldable = false;
    Word w = parse_primary(foldable);
    while (true) {
      skip_space();
      if (peek() == '^') {
        advance();
        w = Word::power(std::move(w), nonzero_integer());
      } else if (peek() == '\'') {
        advance();
        if (foldable)
          w.exponent = -w.exponent;
        else
          w = Word::inverse(std::move(w));
      } else {
        break;
      }
      foldable = false;
    }
    return w;
  }

  Word parse_primary(bool& foldable) {
    skip_space();
    const char c = peek();
    if (c == '[') {
      advance();
      Word a = parse_sequence();
      expect(',');
      Word b = parse_sequence();
      expect(']');
      return Word::commutator(std::move(a), std::move(b));
    }
    if (c == '(') {
      advance();
      Word inner = parse_sequence();
      expect(')');
      return inner;
    }
    std::string name = identifier();
    skip_space();
    if (name == "t" && peek() == '(') {
      advance();
      std::string curve = identifier();
      skip_space();
      long k = 1;
      if (peek() == ',') {
        advance();
        k = nonzero_integer();
        skip_space();
      }
      if (peek() != ')') fail(k == 1 ? std::set<std::string>{"')'", "','"} : std::set<std::string>{"')'"});
      advance();
      foldable = true;
      return Word::twist(std::move(curve), k);
    }
    return Word::named(std::move(name));
  }
};

std::string print_operand(const Word& w, bool under_inverse) {
  const bool wrap = w.kind == Word::Kind::Concat || (under_inverse && w.kind == Word::Kind::Twist);
  return wrap ? "(" + print_word(w) + ")" : print_word(w);
}

class Evaluator {
 public:
  Evaluator(const CurveAtlas& atlas, const Definitions& defs, Convention conv)
      : atlas_(atlas), defs_(defs), conv_(conv) {}

  IntMatrix eval(const Word& w) {
    const Eigen::Index n = 2 * atlas_.genus;
    switch (w.kind) {
      case Word::Kind::Twist: {
        if (!atlas_.contains(w.name))
          throw UnknownName("curve '" + w.name + "' is not in atlas " + atlas_.name);
        return transvection(curve_class(atlas_, w.name).homology, w.exponent, conv_);
      }
      case Word::Kind::Named:
        return named(w.name);
      case Word::Kind::Inverse:
        return symplectic_inverse(eval(w.children[0]));
      case Word::Kind::Power: {
        IntMatrix base = eval(w.children[0]);
        if (w.exponent < 0) base = symplectic_inverse(base);
        IntMatrix r = IntMatrix::Identity(n, n);
        for (long e = w.exponent < 0 ? -w.exponent : w.exponent; e > 0; e >>= 1) {
          if (e & 1) r = (r * base).eval();
          if (e > 1) base = (base * base).eval();
        }
        return r;
      }
      case Word::Kind::Commutator:
        return commutator(eval(w.children[0]), eval(w.children[1]));
      case Word::Kind::Concat: {
        IntMatrix r = IntMatrix::Identity(n, n);
        for (const auto& c : w.children) r = (r * eval(c)).eval();
        return r;
      }
    }
    throw Error("corrupt word");
  }

 private:
  const CurveAtlas& atlas_;
  const Definitions& defs_;
  Convention conv_;
  std::map<std::string, IntMatrix> memo_;
  std::set<std::string> active_;

  IntMatrix named(const std::string& name) {
    if (auto it = memo_.find(name); it != memo_.end()) return it->second;
    const auto def = defs_.find(name);
    if (def == defs_.end()) throw UnknownName("no definition for '" + name + "'");
    if (!active_.insert(name).second) throw CyclicDefinition("'" + name + "' refers to itself");
    IntMatrix m = eval(def->second);
    active_.erase(name);
    memo_.emplace(name, m);
    return m;
  }
};

void collect_curves(const Word& w, const Definitions& defs, std::set<std::string>& seen_defs,
                    std::vector<std::string>& out) {
  if (w.kind == Word::Kind::Twist) {
    if (std::find(out.begin(), out.end(), w.name) == out.end()) out.push_back(w.name);
    return;
  }
  if (w.kind == Word::Kind::Named) {
    const auto it = defs.find(w.name);
    if (it != defs.end() && seen_defs.insert(w.name).second) collect_curves(it->second, defs, seen_defs, out);
    return;
  }
  for (const auto& c : w.children) collect_curves(c, defs, seen_defs, out);
}

}  // namespace

Word parse_word(std::string_view text, int line, int column_offset) {
  return Parser(text, line, column_offset).parse_all();
}

std::string print_word(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Twist:
      if (w.exponent == 1) return "t(" + w.name + ")";
      if (w.exponent == -1) return "t(" + w.name + ")'";
      return "t(" + w.name + "," + std::to_string(w.exponent) + ")";
    case Word::Kind::Named:
      return w.name;
    case Word::Kind::Inverse:
      return print_operand(w.children[0], true) + "'";
    case Word::Kind::Power:
      return print_operand(w.children[0], false) + "^" + std::to_string(w.exponent);
    case Word::Kind::Commutator:
      return "[" + print_word(w.children[0]) + " , " + print_word(w.children[1]) + "]";
    case Word::Kind::Concat: {
      std::string s;
      for (const auto& c : w.children) {
        if (!s.empty()) s += ' ';
        s += c.kind == Word::Kind::Concat ? "(" + print_word(c) + ")" : print_word(c);
      }
      return s;
    }
  }
  return {};
}

IntMatrix evaluate(const Word& w, const CurveAtlas& atlas, const Definitions& defs, Convention conv) {
  return Evaluator(atlas, defs, conv).eval(w);
}

std::vector<std::string> curves_used(const Word& w, const Definitions& defs) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_curves(w, defs, seen, out);
  return out;
}

std::string to_string(Chirality c) { return c == Chirality::right ? "right" : "left"; }

Chirality parse_chirality(std::string_view s) {
  if (s == "right") return Chirality::right;
  if (s == "left") return Chirality::left;
  throw FormatError("chirality must be right or left, got '" + std::string(s) + "'");
}

IntMatrix letter_matrix(const Letter& l, Convention conv) {
  return transvection(l.homology, l.chirality == Chirality::right ? 1 : -1, conv);
}

IntMatrix evaluate(const Factorization& f, Convention conv) {
  IntMatrix r = IntMatrix::Identity(2 * f.genus, 2 * f.genus);
  for (const auto& l : f.letters) r = (r * letter_matrix(l, conv)).eval();
  return r;
}

Factorization hurwitz_move(const Factorization& f, std::size_t i, Direction d, Convention conv) {
  if (i + 1 >= f.size())
    throw IndexOutOfRange("Hurwitz move at position " + std::to_string(i) + " in a factorization of length " +
                          std::to_string(f.size()));
  Factorization g = f;
  const Letter& a = f.letters[i];
  const Letter& b = f.letters[i + 1];
  if (d == Direction::right) {
    // t_b^{-1} t_a t_b is the twist along t_b^{-1}(a).
    Letter moved = a;
    moved.homology = symplectic_inverse(letter_matrix(b, conv)) * a.homology;
    g.letters[i] = b;
    g.letters[i + 1] = std::move(moved);
  } else {
    Letter moved = b;
    moved.homology = letter_matrix(a, conv) * b.homology;
    g.letters[i] = std::move(moved);
    g.letters[i + 1] = a;
  }
  return g;
}

Factorization cyclic_shift(const Factorization& f, std::size_t k) {
  Factorization g = f;
  if (!f.letters.empty())
    std::rotate(g.letters.begin(), g.letters.begin() + static_cast<std::ptrdiff_t>(k % f.size()), g.letters.end());
  return g;
}

}  // namespace surfsig
