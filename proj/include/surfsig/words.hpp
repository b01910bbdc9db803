#pragma once

// The monodromy-word language: AST, parser, canonical printer, evaluation
// into Sp(2h, Z), and Hurwitz moves on twist factorizations.
//
// Grammar (whitespace separates tokens, '#' starts a comment):
//
//   word    := factor*                      juxtaposition, possibly empty
//   factor  := primary postfix*
//   postfix := '^' integer | "'"            "'" is shorthand for ^-1
//   primary := 't' '(' name [',' integer] ')'
//            | name                         named diffeomorphism
//            | '[' word ',' word ']'        commutator x y x^-1 y^-1
//            | '(' word ')'
//
// A quote written directly after t(c) folds into the twist exponent, so
// t(c)' is Twist(c, -1); t(c, k) is Twist(c, k); t(c)^k is Power(Twist(c), k).

#include "surfsig/sympl.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace surfsig {

struct CurveAtlas;

struct Word {
  enum class Kind { Twist, Named, Inverse, Power, Commutator, Concat };

  Kind kind = Kind::Concat;
  std::string name;   // curve for Twist, definition for Named
  long exponent = 1;  // Twist and Power only; never zero
  std::vector<Word> children;

  static Word twist(std::string curve, long exponent = 1);
  static Word named(std::string name);
  static Word inverse(Word w);
  static Word power(Word w, long exponent);
  static Word commutator(Word a, Word b);
  /// Flattens nothing, but collapses a single factor to itself so that a
  /// Concat always has zero or at least two children.
  static Word concat(std::vector<Word> factors);

  bool empty() const noexcept { return kind == Kind::Concat && children.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// line is added to reported error positions when parsing one line of a file.
Word parse_word(std::string_view text, int line = 1, int column_offset = 0);
std::string print_word(const Word& w);

using Definitions = std::map<std::string, Word>;

/// Homomorphism from words to Sp(2h, Z).
///
/// Twist letters map to transvections along the atlas class; Named letters
/// are expanded from defs (memoized). Throws UnknownName, CyclicDefinition.
IntMatrix evaluate(const Word& w, const CurveAtlas& atlas, const Definitions& defs = {},
                   Convention conv = {});

/// Curve names that occur in w or in any definition it reaches.
std::vector<std::string> curves_used(const Word& w, const Definitions& defs);

enum class Chirality { right, left };
enum class Direction { right, left };

std::string to_string(Chirality c);
Chirality parse_chirality(std::string_view s);

/// A singular-fiber letter. The homology class is authoritative; label is the
/// curve name it came from and is kept through Hurwitz moves.
struct Letter {
  std::string label;
  IntVector homology;
  int sep_type = 0;
  Chirality chirality = Chirality::right;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.label == b.label && exactly_equal(a.homology, b.homology) && a.sep_type == b.sep_type &&
           a.chirality == b.chirality;
  }
};

struct Factorization {
  Eigen::Index genus = 0;
  std::vector<Letter> letters;
  std::string atlas;

  std::size_t size() const noexcept { return letters.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// T_c for a right-handed letter, T_c^{-1} for a left-handed one.
IntMatrix letter_matrix(const Letter& l, Convention conv = {});
/// Product of the letters in order.
IntMatrix evaluate(const Factorization& f, Convention conv = {});

/// Elementary transformation on positions i and i+1 (0-based).
///
/// Right: (t_i, t_{i+1}) -> (t_{i+1}, t_{i+1}^{-1} t_i t_{i+1}).
/// Left:  (t_i, t_{i+1}) -> (t_i t_{i+1} t_i^{-1}, t_i), the inverse move.
/// Throws IndexOutOfRange unless i + 1 < f.size().
Factorization hurwitz_move(const Factorization& f, std::size_t i, Direction d, Convention conv = {});

/// Moves the first k letters to the end.
Factorization cyclic_shift(const Factorization& f, std::size_t k);

}  // namespace surfsig
