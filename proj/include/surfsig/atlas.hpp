#pragma once

// Named curve configurations on the reference fiber, stored as homology
// classes with separating-type metadata, plus the constraints and relations
// that certify them.
//
// Atlas file format, one declaration per line, '#' comments:
//
//   genus 3
//   min_genus 2
//   curve a4 0,0,1,0,0,0 type=0
//   curve x 0,0,0,0,0,0 type=1 split=2
//   constraint disjoint a1 a3
//   constraint intersect_once a1 a2
//   constraint separating x [j]
//   relation chain : t(a4) t(a5) == (t(a1) t(a2) t(a3))^4
//
// split=j records the genus of the side of a separating curve that is fixed
// by the configuration; at fiber genus h the type is min(j, h - j). Without
// split the declared type plays that role.

#include "surfsig/report.hpp"
#include "surfsig/sympl.hpp"
#include "surfsig/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace surfsig {

struct CurveClass {
  std::string name;
  IntVector homology;
  int sep_type = 0;
  std::optional<int> split;
};

struct Constraint {
  enum class Kind { disjoint, intersect_once, separating, equal_product };

  Kind kind = Kind::disjoint;
  std::vector<std::string> curves;  // disjoint, intersect_once, separating
  std::optional<int> type;          // separating(j)
  std::string label;                // equal_product
  Word lhs, rhs;                    // equal_product

  std::string describe() const;
};

struct CurveAtlas {
  std::string name;
  Eigen::Index genus = 0;
  Eigen::Index min_genus = 0;
  std::vector<CurveClass> curves;  // declaration order
  std::vector<Constraint> constraints;

  bool contains(const std::string& curve) const;
  /// The equal_product constraints, i.e. relators that must hold in Sp(2h, Z).
  std::vector<const Constraint*> relations() const;
};

/// Parses an atlas file; source names the file in error messages.
CurveAtlas parse_atlas(std::string_view text, std::string name);

/// Loads a shipped atlas (two_holed_torus, feners, ko, ko_sep, comm) or an
/// atlas file on disk. Throws UnknownAtlas, or ConstraintViolation naming the
/// first failing check.
CurveAtlas load_atlas(const std::string& name, Convention conv = {});

/// Homology-level certification of every constraint and class invariant.
CheckReport check_constraints(const CurveAtlas& atlas, Convention conv = {});

/// Throws UnknownCurve.
const CurveClass& curve_class(const CurveAtlas& atlas, const std::string& name);

/// Re-embeds the configuration in genus h (zero-padding, or truncating
/// coordinates that are all zero) and recomputes separating types.
/// Throws GenusTooSmall below the atlas's minimal genus.
CurveAtlas stabilize(const CurveAtlas& atlas, Eigen::Index genus);

/// Type of a curve with the given split at fiber genus h.
int separating_type(int split, Eigen::Index genus);

}  // namespace surfsig
