#include "surfsig/bounds.hpp"

#include <doctest.h>

using namespace surfsig;

namespace {

BundleCertificate cert(Eigen::Index h, long g, long sigma) {
  BundleCertificate c;
  c.id = "test";
  c.h = h;
  c.g = g;
  c.sigma = sigma;
  return c;
}

}  // namespace

TEST_CASE("certificates respect the lower bound") {
  CHECK_NOTHROW(check_certificate(cert(3, 9, 4)));
  CHECK_NOTHROW(check_certificate(cert(3, 2, 4)));
  CHECK_THROWS_AS(check_certificate(cert(3, 1, 4)), ConventionViolation);
  CHECK_THROWS_AS(check_certificate(cert(3, 9, 2)), ConventionViolation);
  CHECK_THROWS_AS(check_certificate(cert(1, 9, 4)), ConventionViolation);
}

TEST_CASE("Y_h and its pullbacks") {
  const auto y3 = build_Yh(3);
  CHECK(y3.g == 9);
  CHECK(y3.sigma == 4);
  for (long n = 1; n <= 5; ++n) {
    const auto p = pullback_cover(y3, n);
    CHECK(p.g == 8 * n + 1);
    CHECK(p.sigma == 4 * n);
  }
  // Covers compose.
  const auto a = pullback_cover(pullback_cover(y3, 2), 3), b = pullback_cover(y3, 6);
  CHECK(a.g == b.g);
  CHECK(a.sigma == b.sigma);
  CHECK(pullback_slope(y3) == Rational(8));
}

TEST_CASE("S_h has signature 4 floor(h/3)") {
  for (Eigen::Index h = 3; h <= 9; ++h) {
    const auto s = build_Sh(h);
    CHECK(s.h == h);
    CHECK(s.sigma == 4 * (h / 3));
    CHECK(s.g == 9);
  }
}

TEST_CASE("asymptotic bounds") {
  const auto y3 = build_Yh(3);
  CHECK(fiberwise_cover(y3, 1).upper == Rational(8));
  CHECK(fiberwise_cover(y3, 2).upper == Rational(4));
  CHECK(fiberwise_cover(y3, 3).upper == Rational(8, 3));
  CHECK(even_genus_bound(4, y3).upper == Rational(8));
  CHECK(even_genus_bound(6, y3).upper == Rational(4));
  CHECK(sum_bound(7, build_Sh(7)).upper == Rational(4));
}

TEST_CASE("the bound table") {
  const auto rows = genus_bound_table(8);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CAPTURE(r.h);
    CHECK(r.lower <= r.upper);
    CHECK(r.lower == Rational(2, r.h - 1));
    CHECK(r.kodaira == Rational(44, 5 * (r.h - 1)));
    CHECK(r.historical == Rational(110));
    CHECK(r.g_at_one == 9);
  }
  CHECK(rows[0].upper == Rational(8));
  CHECK(rows[0].kodaira == Rational(22, 5));
  CHECK(format_rational(Rational(8, 3)) == "8/3");
  CHECK(format_rational(Rational(4)) == "4");
}
