#include "surfsig/bounds.hpp"

#include "surfsig/pipeline.hpp"
#include "surfsig/shipped.hpp"

#include <map>

namespace surfsig {

namespace {

const char* const kPipeline = "pipelines/thm11_pipeline.txt";

long abs_long(long x) { return x < 0 ? -x : x; }

}  // namespace

std::string format_rational(const Rational& q) {
  const Integer num = numerator(q), den = denominator(q);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

void check_certificate(const BundleCertificate& c) {
  if (c.sigma % 4 != 0)
    throw ConventionViolation(c.id + ": signature " + std::to_string(c.sigma) + " is not divisible by 4");
  if (c.sigma != 0 && (c.g - 1) * (static_cast<long>(c.h) - 1) < 2 * abs_long(c.sigma / 4))
    throw ConventionViolation(c.id + ": (h, g, sigma) = (" + std::to_string(c.h) + ", " + std::to_string(c.g) + ", " +
                              std::to_string(c.sigma) + ") violates the lower bound on the base genus");
}

BundleCertificate certificate(const FibrationRecord& r) {
  if (!r.is_bundle())
    throw Error(r.id + " still has " + std::to_string(r.fibers.size()) + " singular fibers");
  BundleCertificate c{r.id, r.fiber_genus, r.base_genus(), r.signature, r.section, r.provenance};
  check_certificate(c);
  return c;
}

FibrationRecord as_record(const BundleCertificate& c) {
  FibrationRecord r;
  r.id = c.id;
  r.fiber_genus = c.h;
  r.base_euler = 2 - 2 * c.g;
  r.signature = c.sigma;
  r.section = c.section;
  r.provenance = c.chain;
  return r;
}

BundleCertificate build_Yh(Eigen::Index h, Convention conv) {
  if (h < 3) throw GenusTooSmall("Y_h needs fiber genus at least 3, got " + std::to_string(h));
  const auto run = run_pipeline(*shipped_file(kPipeline), h, conv);
  if (const auto* bad = run.expectations.first_failure())
    throw Error("pipeline " + std::string(kPipeline) + ": " + bad->name + " failed (" + bad->detail + ")");
  BundleCertificate c = certificate(run.result_record());
  c.id = "Y" + std::to_string(h);
  c.chain.push_back("Y_" + std::to_string(h) + " = result of " + kPipeline + " at fiber genus " + std::to_string(h));
  return c;
}

BundleCertificate pullback_cover(const BundleCertificate& c, long n) {
  if (n < 1) throw Error("cover degree must be positive");
  BundleCertificate r = c;
  r.id = c.id + "^" + std::to_string(n);
  r.g = n * (c.g - 1) + 1;
  r.sigma = n * c.sigma;
  r.chain.push_back("pullback of " + c.id + " along a degree-" + std::to_string(n) + " unramified cover of the base");
  check_certificate(r);
  return r;
}

BundleCertificate build_Sh(Eigen::Index h, Convention conv) {
  if (h < 3) throw GenusTooSmall("S_h needs fiber genus at least 3, got " + std::to_string(h));
  const long k = static_cast<long>(h / 3), l = static_cast<long>(h % 3);
  const FibrationRecord y3 = as_record(build_Yh(3, conv));
  // The sum of bundles with zero sections again has one: a parallel copy of
  // either summand's section away from the gluing region.
  const auto zero = SectionData::declared(0, "section of a summand away from the gluing region");
  FibrationRecord acc = y3;
  for (long i = 1; i < k; ++i) acc = fiber_sum(acc, y3, zero);
  if (l > 0) acc = fiber_sum(acc, trivial_bundle(l, y3.base_genus()), zero);
  BundleCertificate c = certificate(acc);
  c.id = "S" + std::to_string(h);
  c.chain.push_back("S_" + std::to_string(h) + " = " + std::to_string(k) + " copies of Y_3" +
                    (l ? " + product with genus-" + std::to_string(l) + " fiber" : ""));
  return c;
}

Rational pullback_slope(const BundleCertificate& c) {
  if (c.sigma == 0) throw Error(c.id + " has signature 0");
  return Rational(c.g - 1) / Rational(abs_long(c.sigma) / 4);
}

AsymptoticBound fiberwise_cover(const BundleCertificate& c, long d) {
  if (c.h != 3) throw Error("fiberwise covers start from a genus-3 bundle");
  if (d < 1) throw Error("cover degree must be positive");
  AsymptoticBound b;
  b.h = 2 * d + 1;
  b.upper = pullback_slope(c) / Rational(d);
  b.source = "degree-" + std::to_string(d) + " fiberwise cover of pullbacks of " + c.id;
  b.witnesses = {c.id};
  return b;
}

AsymptoticBound even_genus_bound(Eigen::Index h, const BundleCertificate& y3) {
  if (h < 4 || h % 2 != 0) throw Error("the even-genus construction needs even h >= 4");
  if (y3.h != 3) throw Error("the even-genus construction starts from a genus-3 bundle");
  // Z: fiber genus h-1 = 2d+1, signature d times that of the pullback of Y_3.
  const long d = static_cast<long>(h - 2) / 2;
  FibrationRecord z = as_record(y3);
  z.id = "Z" + std::to_string(h - 1);
  z.fiber_genus = h - 1;
  z.signature = d * y3.sigma;
  z.section = SectionData::declared(0, "lift of the zero section of " + y3.id);
  z.provenance.push_back("degree-" + std::to_string(d) + " fiberwise cover of a pullback of " + y3.id +
                         " (asymptotic witness only)");
  const FibrationRecord sum = fiber_sum(z, trivial_bundle(1, z.base_genus()));
  AsymptoticBound b;
  b.h = h;
  b.upper = Rational(sum.base_genus() - 1) / Rational(abs_long(sum.signature) / 4);
  b.source = "fiber sum of " + z.id + " with a torus-fiber product";
  b.witnesses = {y3.id};
  return b;
}

AsymptoticBound sum_bound(Eigen::Index h, const BundleCertificate& sh) {
  AsymptoticBound b;
  b.h = h;
  b.upper = pullback_slope(sh);
  b.source = "pullbacks of " + sh.id;
  b.witnesses = {sh.id};
  return b;
}

std::vector<BoundRow> genus_bound_table(Eigen::Index h_max, Convention conv) {
  if (h_max < 3) throw Error("h_max must be at least 3");
  const BundleCertificate y3 = build_Yh(3, conv);
  std::vector<BoundRow> rows;
  for (Eigen::Index h = 3; h <= h_max; ++h) {
    BoundRow row;
    row.h = h;
    row.lower = Rational(2) / Rational(h - 1);
    const AsymptoticBound cover = h % 2 == 1 ? fiberwise_cover(y3, static_cast<long>(h - 1) / 2) : even_genus_bound(h, y3);
    const BundleCertificate sh = build_Sh(h, conv);
    const AsymptoticBound summed = sum_bound(h, sh);
    row.covering_bound = cover.upper;
    row.sum_bound = summed.upper;
    row.historical = Rational(110);
    row.kodaira = Rational(44) / Rational(5 * (h - 1));
    row.upper = cover.upper;
    row.upper_source = cover.source;
    if (summed.upper < row.upper) {
      row.upper = summed.upper;
      row.upper_source = summed.source;
    }
    if (row.historical < row.upper) {
      row.upper = row.historical;
      row.upper_source = "genus-111 bundles and their pullbacks";
    }
    const BundleCertificate yh = h == 3 ? y3 : build_Yh(h, conv);
    row.g_at_one = yh.g;
    row.witnesses = {yh.id, sh.id};
    if (h != 3) row.witnesses.push_back(y3.id);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace surfsig
