#pragma once

// Certified arithmetic for the genus function g_h(n): explicit bundles over
// closed bases, covering tricks, and the resulting bound table.

#include "surfsig/fibration.hpp"

#include <string>
#include <vector>

namespace surfsig {

/// A genus-h surface bundle over a closed genus-g base with signature sigma.
struct BundleCertificate {
  std::string id;
  Eigen::Index h = 0;
  long g = 0;
  long sigma = 0;
  SectionData section;
  std::vector<std::string> chain;
};

/// sigma = 0 mod 4 and (g - 1)(h - 1) >= 2|sigma / 4|; a violation means a
/// sign convention is off upstream and raises ConventionViolation.
void check_certificate(const BundleCertificate& c);

/// Throws unless r is a surface bundle.
BundleCertificate certificate(const FibrationRecord& r);
FibrationRecord as_record(const BundleCertificate& c);

/// Runs the shipped signature-4 pipeline at fiber genus h >= 3.
BundleCertificate build_Yh(Eigen::Index h, Convention conv = {});

/// Pullback along an unramified degree-n cover of the base.
BundleCertificate pullback_cover(const BundleCertificate& c, long n);

/// Fiber sum of k = floor(h / 3) copies of Y_3, plus the product with a
/// genus-(h mod 3) fiber when that is nonzero.
BundleCertificate build_Sh(Eigen::Index h, Convention conv = {});

/// An upper bound on G_h = lim g_h(n) / n.
struct AsymptoticBound {
  Eigen::Index h = 0;
  Rational upper;
  std::string source;
  std::vector<std::string> witnesses;
  bool constructive = true;
};

/// Slope (g - 1) / (sigma / 4) of the pullbacks of a certificate.
Rational pullback_slope(const BundleCertificate& c);

/// G_{2d+1} <= G_3 / d from degree-d fiberwise covers of pullbacks of c (h = 3).
AsymptoticBound fiberwise_cover(const BundleCertificate& c, long d);

/// Even h >= 4: the fiberwise cover Z of fiber genus h-1 summed with a
/// product with torus fibers.
AsymptoticBound even_genus_bound(Eigen::Index h, const BundleCertificate& y3);

/// G_h <= 24 / (h - l) from pullbacks of S_h.
AsymptoticBound sum_bound(Eigen::Index h, const BundleCertificate& sh);

struct BoundRow {
  Eigen::Index h = 0;
  Rational lower;
  Rational upper;
  std::string upper_source;
  Rational covering_bound;  // 16/(h-1) or 16/(h-2)
  Rational sum_bound;       // 24/(h-l)
  Rational historical;      // 110
  Rational kodaira;         // 44/(5(h-1)), non-constructive here
  long g_at_one = 0;        // g_h(1) <= this
  std::vector<std::string> witnesses;
};

/// Rows for h = 3 .. h_max.
std::vector<BoundRow> genus_bound_table(Eigen::Index h_max, Convention conv = {});

std::string format_rational(const Rational& q);

}  // namespace surfsig
