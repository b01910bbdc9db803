#pragma once

// Lefschetz fibrations and surface bundles given by monodromy words, their
// signatures, and the subtraction / fiber-sum calculus.
//
// Fibration file format, one declaration per line, '#' comments:
//
//   fiber_genus 3
//   base_genus 2
//   atlas ko
//   achiral                                  allow left-handed letters
//   def phi1 = t(c1) t(b2) ...
//   handle t(a3) , phi2                      one (alpha, beta) pair per line
//   singular t(a) type=0 chirality=right [image=<word>]
//   section 0 [note]                         declared self-intersection
//
// singular lines are in factorization order. image=<word> (to the end of the
// line) turns the letter into the twist along M(c), M the word's matrix.

#include "surfsig/atlas.hpp"
#include "surfsig/report.hpp"
#include "surfsig/words.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace surfsig {

struct Handle {
  Word alpha, beta;
};

struct SingularSpec {
  std::string curve;
  std::optional<Word> image;
  std::optional<int> declared_type;
  Chirality chirality = Chirality::right;
};

struct SectionData {
  bool exists = false;
  std::optional<long> self_intersection;
  std::string note;

  static SectionData declared(long square, std::string note) { return {true, square, std::move(note)}; }
};

struct Fibration {
  std::string id;
  Eigen::Index fiber_genus = 0;
  long base_genus = 0;
  CurveAtlas atlas;  // already stabilized to fiber_genus
  Definitions defs;
  std::vector<Handle> handles;
  std::vector<SingularSpec> singular;
  SectionData section;
  bool achiral = false;
};

/// Parses a fibration file. With genus set, the atlas is stabilized to that
/// fiber genus instead of the declared one.
Fibration parse_fibration(std::string_view text, std::string id, std::optional<Eigen::Index> genus = {},
                          Convention conv = {});
/// Reads a fibration from disk or the shipped set (e.g. "prop45.fib").
Fibration load_fibration(const std::string& path, std::optional<Eigen::Index> genus = {}, Convention conv = {});

/// Product of a genus-h fiber and a genus-g base: identity handles, no fibers.
Fibration trivial_fibration(Eigen::Index fiber_genus, long base_genus);

/// The singular letters with their homology classes resolved.
Factorization factorization(const Fibration& f, Convention conv = {});

CheckReport validate(const Fibration& f, Convention conv = {});

/// mu_j = number of singular fibers of type j, j = 0 .. floor(h/2).
std::vector<long> mu_comb(const Fibration& f);
std::vector<long> mu_comb(std::span<const Letter> letters, Eigen::Index fiber_genus);

/// Signature of the bundle over the genus-g surface with r = gammas.size()
/// boundary circles; sum over handles, then boundary loops, in word order.
/// Throws RelatorViolation unless prod [alpha_i, beta_i] * prod gamma_j = I.
int meyer_signature(std::span<const IntMatrix> alphas, std::span<const IntMatrix> betas,
                    std::span<const IntMatrix> gammas);
/// The same with the handle matrices taken from f.
int signature_boundary(const Fibration& f, std::span<const IntMatrix> gammas, Convention conv = {});

/// 0 for nonseparating letters; -1 for separating right-handed, +1 for separating left-handed.
int local_signature(const Letter& l);

/// Complement with the singular letters as boundary loops, plus local terms.
int signature(const Fibration& f, Convention conv = {});
/// Independent route: complement of one disk containing every singular fiber
/// (a single boundary loop, the product of the letters), plus the bundle over
/// the disk with s holes, plus local terms.
int signature_split(const Fibration& f, Convention conv = {});

long euler_characteristic(const Fibration& f);
long euler_characteristic(Eigen::Index fiber_genus, long base_genus, long singular_fibers);

/// Summary that subtraction, fiber sums and covers operate on.
struct FibrationRecord {
  std::string id;
  Eigen::Index fiber_genus = 0;
  long base_euler = 2;  // Euler characteristic of the closed base
  long signature = 0;
  std::vector<Letter> fibers;
  SectionData section;
  std::vector<std::string> provenance;

  long base_genus() const noexcept { return (2 - base_euler) / 2; }
  bool is_bundle() const noexcept { return fibers.empty(); }
  long euler() const { return euler_characteristic(fiber_genus, base_genus(), static_cast<long>(fibers.size())); }
};

FibrationRecord summarize(const Fibration& f, Convention conv = {});
FibrationRecord trivial_bundle(Eigen::Index fiber_genus, long base_genus);

/// Matched fibers, 0-based.
struct FiberGroup {
  std::vector<std::size_t> first, second;
};

struct SubtractOptions {
  bool assert_isomorphic = false;  // skip the multi-fiber group check
  bool coinciding_lifts = false;   // the section lifts of matched twists coincide
};

/// X1 - X2: removes the neighbourhoods of matched fiber groups and glues the
/// complements. Every fiber of f2 must be matched; f1 keeps its unmatched
/// fibers in order. Base Euler characteristic chi1 + chi2 - 2m.
/// Throws IncompatibleGrouping.
FibrationRecord subtract(const FibrationRecord& f1, const FibrationRecord& f2, const std::vector<FiberGroup>& groups,
                         SubtractOptions options = {});
/// Singleton groups matched by type in order. Throws CombinatorialMismatch
/// unless mu_comb agrees.
FibrationRecord subtract_full(const FibrationRecord& f1, const FibrationRecord& f2, SubtractOptions options = {});

/// Parses "1,2:3,4;5:6" (1-based, groups separated by ';').
std::vector<FiberGroup> parse_groups(std::string_view text);

/// Fiberwise connected sum along zero sections. Throws BaseMismatch,
/// MissingZeroSection.
FibrationRecord fiber_sum(const FibrationRecord& b1, const FibrationRecord& b2,
                          std::optional<SectionData> result_section = {});

}  // namespace surfsig
