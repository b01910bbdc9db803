// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "surfsig/atlas.hpp"
#include "surfsig/bounds.hpp"
#include "surfsig/fibration.hpp"
#include "surfsig/meyer.hpp"
#include "surfsig/pipeline.hpp"
#include "surfsig/reproduce.hpp"
#include "surfsig/shipped.hpp"

#include "generators.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <iostream>
#include <random>
#include <sstream>

using namespace surfsig;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream why;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) why << what;
    pass = false;
  }
};

const std::vector<std::string> relator_files{"prop43_nonsep.fib", "prop43_sep.fib", "prop44.fib", "prop45.fib",
                                             "prop46_xprime.fib"};

IntMatrix naive_inverse(const IntMatrix& m) {
  const auto q = oracle::inverse(oracle::from_int(m));
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = numerator(q[i][j]);
  return out;
}

// 1. Cocycle identities on random elements of Sp(6,Z), with every value also
// checked against the definition oracle.
void cocycle_properties(Outcome& out) {
  std::mt19937 rng(1001);
  const IntMatrix id = IntMatrix::Identity(6, 6);
  for (int trial = 0; trial < 200 && out.pass; ++trial) {
    const IntMatrix a = oracle::random_symplectic(rng, 6), b = oracle::random_symplectic(rng, 6),
                    c = oracle::random_symplectic(rng, 6), p = oracle::random_symplectic(rng, 6);
    const int ab = tau(a, b);
    const std::string at = " (trial " + std::to_string(trial) + ")";
    out.require(ab == oracle::tau(a, b), "tau disagrees with the definition oracle" + at);
    out.require(ab + tau((a * b).eval(), c) == tau(a, (b * c).eval()) + tau(b, c), "cocycle identity" + at);
    const IntMatrix pi = naive_inverse(p);
    out.require(tau((p * a * pi).eval(), (p * b * pi).eval()) == ab, "conjugation invariance" + at);
    out.require(tau(id, a) == 0 && tau(a, id) == 0, "normalization" + at);
    out.require(std::abs(ab) <= 6, "|tau| <= 6" + at);
  }
  if (out.pass) out.why << "200 triples, cocycle/conjugation/normalization/bound exact, oracle agrees";
}

// 2. tau([A,B], B) = 0.
void torus_canary(Outcome& out) {
  std::mt19937 rng(1002);
  int nonzero = 0, first = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix a = oracle::random_symplectic(rng, 6), b = oracle::random_symplectic(rng, 6);
    const int t = tau(commutator(a, b), b);
    if (t != oracle::tau(commutator(a, b), b)) out.require(false, "oracle disagrees on trial " + std::to_string(trial));
    if (t != 0 && nonzero++ == 0) first = trial;
  }
  out.require(nonzero == 0, std::to_string(nonzero) + "/200 pairs give tau([A,B],B) != 0 (first at trial " +
                                std::to_string(first) + "); the library and the definition oracle agree on every value");
  if (out.pass) out.why << "all 200 zero";
}

struct SigPair {
  int total, complement, split;
};

SigPair signatures_of(const std::string& file) {
  const Fibration f = load_fibration(file);
  int local = 0;
  for (const auto& l : factorization(f).letters) local += local_signature(l);
  const int total = signature(f);
  return {total, total - local, signature_split(f)};
}

// 3. Both one-fiber relators.
void one_fiber_relators(Outcome& out) {
  const auto ns = signatures_of("prop43_nonsep.fib"), s = signatures_of("prop43_sep.fib");
  out.require(ns.total == -1 && ns.split == -1, "nonseparating sigma " + std::to_string(ns.total));
  out.require(ns.complement == -1, "nonseparating complement " + std::to_string(ns.complement));
  out.require(s.total == -1 && s.split == -1, "separating sigma " + std::to_string(s.total));
  out.require(s.complement == 0, "separating complement " + std::to_string(s.complement));
  if (out.pass) out.why << "sigma -1/-1, complements -1/0, split route agrees";
}

// 4. The larger relators and the first subtraction out of X'.
void larger_relators(Outcome& out) {
  const auto p44 = signatures_of("prop44.fib"), p45 = signatures_of("prop45.fib"),
             xp = signatures_of("prop46_xprime.fib");
  out.require(p44.total == -2 && p44.split == -2, "prop44 sigma " + std::to_string(p44.total));
  out.require(p45.total == -4 && p45.split == -4, "prop45 sigma " + std::to_string(p45.total));
  out.require(xp.total == -6 && xp.split == -6, "X' sigma " + std::to_string(xp.total));
  const auto x1 = subtract(summarize(load_fibration("prop46_xprime.fib")), summarize(load_fibration("prop44.fib")),
                           parse_groups("9,10:1,2"), {.coinciding_lifts = true});
  out.require(x1.signature == -4, "X' - X sigma " + std::to_string(x1.signature));
  if (out.pass)
    out.why << "-2, -4, X' -6, difference -4 (g=" << x1.base_genus() << ", " << x1.fibers.size() << " fibers)";
}

// 5. Relators are identities, recomputed here by plain multiplication.
void relators(Outcome& out) {
  for (const auto& file : relator_files)
    for (Eigen::Index h : {3, 4, 5}) {
      const Fibration f = load_fibration(file, h);
      const auto n = 2 * h;
      IntMatrix p = IntMatrix::Identity(n, n);
      for (const auto& hd : f.handles) {
        const IntMatrix a = evaluate(hd.alpha, f.atlas, f.defs), b = evaluate(hd.beta, f.atlas, f.defs);
        p = (p * a * b * naive_inverse(a) * naive_inverse(b)).eval();
      }
      for (const auto& l : factorization(f).letters) p = (p * letter_matrix(l)).eval();
      const std::string where = file + " at h=" + std::to_string(h);
      out.require(exactly_equal(p, IntMatrix::Identity(n, n)), where + " is not the identity");
      const auto report = validate(f);
      out.require(report.ok(), where + ": " + (report.ok() ? "" : report.first_failure()->name));
    }
  if (out.pass) out.why << relator_files.size() << " relators at h=3,4,5";
}

// 6. Every shipped atlas.
void atlases(Outcome& out) {
  int count = 0, relations = 0;
  for (const auto& path : shipped_paths()) {
    if (path.rfind("atlases/", 0) != 0) continue;
    const CurveAtlas a = parse_atlas(*shipped_file(path), path);
    const auto report = check_constraints(a);
    out.require(report.ok(), path + ": " + (report.ok() ? "" : report.first_failure()->name));
    ++count;
    relations += static_cast<int>(a.relations().size());
  }
  out.require(count >= 5, "only " + std::to_string(count) + " atlases shipped");
  if (out.pass) out.why << count << " atlases, " << relations << " relations";
}

// 7. The signature-4 bundle and its pullbacks.
void signature_four_bundle(Outcome& out) {
  for (Eigen::Index h : {3, 4, 5}) {
    const auto run = run_pipeline(*shipped_file("pipelines/thm11_pipeline.txt"), h);
    const auto& y = run.result_record();
    out.require(run.expectations.ok() && y.is_bundle() && y.fiber_genus == h && y.base_genus() == 9 &&
                    y.signature == 4,
                "pipeline at h=" + std::to_string(h) + " gives g=" + std::to_string(y.base_genus()) +
                    " sigma=" + std::to_string(y.signature));
  }
  const auto y3 = build_Yh(3);
  for (long n = 1; n <= 5; ++n) {
    const auto c = pullback_cover(y3, n);
    out.require(c.g == 8 * n + 1 && c.sigma == 4 * n, "pullback n=" + std::to_string(n));
    try {
      check_certificate(c);
    } catch (const Error& e) {
      out.require(false, e.what());
    }
  }
  if (out.pass) out.why << "(h,9,4) for h=3,4,5; g3(n) <= 8n+1 for n=1..5";
}

// 8. Fiber sums of copies of Y_3.
void fiber_sums(Outcome& out) {
  for (Eigen::Index h = 3; h <= 12; ++h) {
    const auto s = build_Sh(h);
    const long k = h / 3;
    out.require(s.h == h && s.sigma == 4 * k, "S_" + std::to_string(h) + " sigma " + std::to_string(s.sigma));
    out.require(Rational(s.sigma) >= Rational(4 * (h - 2), 3), "S_" + std::to_string(h) + " below 4(h-2)/3");
    try {
      check_certificate(s);
    } catch (const Error& e) {
      out.require(false, e.what());
    }
  }
  if (out.pass) out.why << "sigma(S_h) = 4 floor(h/3) for h=3..12";
}

// 9. The bound table.
void bound_table(Outcome& out) {
  for (const auto& row : genus_bound_table(12)) {
    const Rational expected = row.h % 2 == 1 ? Rational(16, row.h - 1) : Rational(16, row.h - 2);
    out.require(row.upper == expected,
                "h=" + std::to_string(row.h) + " upper " + format_rational(row.upper) + ", expected " +
                    format_rational(expected));
    out.require(row.lower <= row.upper, "h=" + std::to_string(row.h) + " lower > upper");
  }
  if (out.pass) out.why << "16/(h-1) odd, 16/(h-2) even, h=3..12";
}

int disk_signature(const Factorization& f) {
  // Bundle over a disk with one hole per letter.
  int s = 0;
  IntMatrix p = IntMatrix::Identity(2 * f.genus, 2 * f.genus);
  for (const auto& l : f.letters) {
    const IntMatrix m = letter_matrix(l);
    s -= tau(p, m);
    p = (p * m).eval();
  }
  return s;
}

Factorization random_moves(std::mt19937& rng, Factorization f, int moves) {
  if (f.size() < 2) return f;
  std::uniform_int_distribution<std::size_t> pos(0, f.size() - 2);
  std::uniform_int_distribution<int> dir(0, 1);
  for (int k = 0; k < moves; ++k) f = hurwitz_move(f, pos(rng), dir(rng) ? Direction::right : Direction::left);
  return f;
}

// 10. Property suites.
void properties(Outcome& out) {
  std::mt19937 rng(1010);
  const CurveAtlas atlas = load_atlas("feners");
  for (int trial = 0; trial < 100; ++trial) {
    const Factorization f = gen::random_factorization(rng, atlas, 2 + trial % 6);
    const Factorization g = random_moves(rng, f, 1 + trial % 5);
    const std::string at = " (factorization " + std::to_string(trial) + ")";
    out.require(exactly_equal(evaluate(f), evaluate(g)), "product changed" + at);
    out.require(mu_comb(f.letters, f.genus) == mu_comb(g.letters, g.genus), "mu_comb changed" + at);
    out.require(disk_signature(f) == disk_signature(g), "signature over the holed disk changed" + at);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const Fibration f = load_fibration(relator_files[trial % relator_files.size()]);
    const Factorization g = random_moves(rng, factorization(f), 1 + trial % 7);
    std::vector<IntMatrix> gammas;
    int local = 0;
    for (const auto& l : g.letters) {
      gammas.push_back(letter_matrix(l));
      local += local_signature(l);
    }
    out.require(signature_boundary(f, gammas) + local == signature(f),
                "closed signature changed for " + f.id + " (trial " + std::to_string(trial) + ")");
  }
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = gen::random_word(rng, 4);
    out.require(parse_word(print_word(w)) == w, "round trip failed on " + print_word(w));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> len(1, 6), type(0, 1), genus(0, 5), sig(-8, 8);
    auto letter = [&](int t) {
      IntVector v = IntVector::Zero(6);
      if (t == 0) v(0) = 1;
      return Letter{"l", v, t, Chirality::right};
    };
    FibrationRecord f1, f2;
    f1.id = "f1";
    f2.id = "f2";
    f1.fiber_genus = f2.fiber_genus = 3;
    f1.base_euler = 2 - 2 * genus(rng);
    f2.base_euler = 2 - 2 * genus(rng);
    f1.signature = sig(rng);
    f2.signature = sig(rng);
    for (int i = len(rng); i > 0; --i) f2.fibers.push_back(letter(type(rng)));
    f1.fibers = f2.fibers;
    for (int i = len(rng) - 1; i > 0; --i) f1.fibers.push_back(letter(type(rng)));
    std::shuffle(f1.fibers.begin(), f1.fibers.end(), rng);
    // Random partition of the matched fibers into groups of sizes 1 and 2.
    std::vector<std::size_t> order2(f2.fibers.size());
    std::iota(order2.begin(), order2.end(), 0);
    std::shuffle(order2.begin(), order2.end(), rng);
    std::vector<bool> used(f1.fibers.size(), false);
    std::vector<FiberGroup> groups;
    for (std::size_t k = 0; k < order2.size();) {
      const std::size_t size = (k + 1 < order2.size() && std::uniform_int_distribution<int>(0, 1)(rng)) ? 2 : 1;
      FiberGroup g;
      for (std::size_t s = 0; s < size; ++s, ++k) {
        const auto j = order2[k];
        for (std::size_t i = 0; i < f1.fibers.size(); ++i)
          if (!used[i] && f1.fibers[i].sep_type == f2.fibers[j].sep_type) {
            used[i] = true;
            g.first.push_back(i);
            g.second.push_back(j);
            break;
          }
      }
      groups.push_back(g);
    }
    const auto r = subtract(f1, f2, groups, {.assert_isomorphic = true});
    const long m = static_cast<long>(groups.size());
    out.require(r.base_genus() == f1.base_genus() + f2.base_genus() + m - 1, "g != g1 + g2 + m - 1");
    out.require(r.signature == f1.signature - f2.signature, "sigma != sigma1 - sigma2");
  }
  if (out.pass) out.why << "Hurwitz 100+100, round trip 200, subtraction 100";
}

// 11. Calibration.
void calibration(Outcome& out) {
  const Convention pos{TwistSign::positive}, neg{TwistSign::negative};
  const bool p = signature_claims_pass(pos), n = signature_claims_pass(neg);
  out.require(p != n, std::string("positive ") + (p ? "passes" : "fails") + ", negative " + (n ? "passes" : "fails"));
  const auto cal = calibrate(neg);
  out.require(cal.selected && signature_claims_pass(*cal.selected), "calibration selected nothing usable");
  const auto cache = (std::filesystem::temp_directory_path() / "surfsig_acceptance_calibration.json").string();
  std::remove(cache.c_str());
  calibrate_cached(cache);
  const auto again = calibrate_cached(cache);
  out.require(again.from_cache && again.selected && cal.selected && *again.selected == *cal.selected,
              "cached calibration differs");
  std::remove(cache.c_str());
  const std::string cmd = std::string(SURFSIG_CLI) + " reproduce > /dev/null";
  const int status = std::system(cmd.c_str());
  out.require(status == 0, "reproduce exited with status " + std::to_string(status));
  if (out.pass && cal.selected) out.why << "selected " << to_string(cal.selected->twist_sign) << ", reproduce exits 0";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"meyer cocycle properties", cocycle_properties},
      {"torus canary", torus_canary},
      {"one-fiber relators", one_fiber_relators},
      {"larger relators and X'", larger_relators},
      {"relators are identities at h=3,4,5", relators},
      {"atlas certification", atlases},
      {"signature-4 bundle and pullbacks", signature_four_bundle},
      {"fiber sums S_h", fiber_sums},
      {"bound table", bound_table},
      {"property suites", properties},
      {"calibration determinism", calibration},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::printf("%s %2zu %-38s %6.2fs  %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                out.why.str().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
