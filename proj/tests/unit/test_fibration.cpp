#include "surfsig/fibration.hpp"
#include "surfsig/meyer.hpp"
#include "surfsig/pipeline.hpp"
#include "surfsig/shipped.hpp"

#include "../oracle.hpp"

#include <doctest.h>

#include <random>

using namespace surfsig;

namespace {

const std::vector<std::string> shipped_fibs{"prop43_nonsep.fib", "prop43_sep.fib", "prop44.fib", "prop45.fib",
                                            "prop46_xprime.fib"};

Letter synthetic(int type, Chirality c = Chirality::right) {
  IntVector v = IntVector::Zero(6);
  if (type == 0) v(0) = 1;
  return {"l" + std::to_string(type), v, type, c};
}

FibrationRecord synthetic_record(const std::string& id, long base_genus, long sigma, std::vector<Letter> fibers) {
  FibrationRecord r;
  r.id = id;
  r.fiber_genus = 3;
  r.base_euler = 2 - 2 * base_genus;
  r.signature = sigma;
  r.fibers = std::move(fibers);
  return r;
}

}  // namespace

TEST_CASE("shipped fibrations validate and the two signature routes agree") {
  for (const auto& name : shipped_fibs)
    for (Eigen::Index h : {3, 4}) {
      CAPTURE(name);
      CAPTURE(h);
      const Fibration f = load_fibration(name, h);
      const auto report = validate(f);
      for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
      }
      CHECK(signature(f) == signature_split(f));
    }
}

TEST_CASE("signature values of the shipped fibrations") {
  CHECK(signature(load_fibration("prop43_nonsep.fib")) == -1);
  CHECK(signature(load_fibration("prop43_sep.fib")) == -1);
  CHECK(signature(load_fibration("prop44.fib")) == -2);
  CHECK(signature(load_fibration("prop45.fib")) == -4);
  CHECK(signature(load_fibration("prop46_xprime.fib")) == -6);
}

TEST_CASE("Meyer signature equals the oracle sum of cocycles") {
  const Fibration f = load_fibration("prop44.fib");
  std::vector<IntMatrix> alphas, betas, gammas;
  for (const auto& h : f.handles) {
    alphas.push_back(evaluate(h.alpha, f.atlas, f.defs));
    betas.push_back(evaluate(h.beta, f.atlas, f.defs));
  }
  for (const auto& l : factorization(f).letters) gammas.push_back(letter_matrix(l));
  // Oracle: minus the sum of tau(prefix, next letter) over the relator spelled
  // out letter by letter, a1 b1 a1^-1 b1^-1 ... g1 ... gr.
  std::vector<IntMatrix> word;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    word.push_back(alphas[i]);
    word.push_back(betas[i]);
    word.push_back(symplectic_inverse(alphas[i]));
    word.push_back(symplectic_inverse(betas[i]));
  }
  word.insert(word.end(), gammas.begin(), gammas.end());
  int sigma = 0;
  IntMatrix prefix = word.front();
  for (std::size_t k = 1; k < word.size(); ++k) {
    sigma -= oracle::tau(prefix, word[k]);
    prefix = (prefix * word[k]).eval();
  }
  CHECK(meyer_signature(alphas, betas, gammas) == sigma);
}

TEST_CASE("relator violations are named") {
  const Fibration f = load_fibration(std::string(SURFSIG_TEST_DATA) + "/broken_relator.fib");
  const auto report = validate(f);
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->name == "relator");
  CHECK_THROWS_AS(signature(f), RelatorViolation);
}

TEST_CASE("fibration parse errors") {
  CHECK_THROWS_AS(parse_fibration("fiber_genus 3\natlas ko\nsingular t(a) colour=red\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_fibration("fiber_genus 3\natlas ko\nhandle t(a)\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_fibration("atlas ko\n", "x"), FormatError);
  CHECK_THROWS_AS(parse_fibration("fiber_genus 3\natlas nowhere\n", "x"), UnknownAtlas);
  const Fibration left = parse_fibration("fiber_genus 3\natlas ko\nsingular t(a) chirality=left\n", "x");
  CHECK_FALSE(validate(left).ok());
}

TEST_CASE("local signatures") {
  CHECK(local_signature(synthetic(0)) == 0);
  CHECK(local_signature(synthetic(1)) == -1);
  CHECK(local_signature(synthetic(1, Chirality::left)) == 1);
  CHECK(local_signature(synthetic(0, Chirality::left)) == 0);
}

TEST_CASE("Euler characteristic and mu_comb") {
  const Fibration f = load_fibration("prop45.fib");
  CHECK(euler_characteristic(f) == 4 * (3 - 1) * (3 - 1) + 4);
  CHECK(mu_comb(f) == std::vector<long>{4, 0});
  CHECK(mu_comb(load_fibration("prop43_sep.fib")) == std::vector<long>{0, 1});
  CHECK(euler_characteristic(trivial_fibration(3, 2)) == (2 - 2 * 3) * (2 - 2 * 2));
}

TEST_CASE("subtraction bookkeeping") {
  const auto f1 = synthetic_record("f1", 2, -3, {synthetic(0), synthetic(1), synthetic(0)});
  const auto f2 = synthetic_record("f2", 1, -1, {synthetic(0), synthetic(1)});
  const auto r = subtract(f1, f2, parse_groups("1:1;2:2"));
  CHECK(r.base_genus() == 2 + 1 + 2 - 1);
  CHECK(r.signature == -2);
  CHECK(r.fibers.size() == 1);
  CHECK(subtract_full(f2, f2).signature == 0);
  CHECK(subtract_full(f2, f2).is_bundle());
  CHECK_THROWS_AS(subtract(f1, f2, parse_groups("1:2;2:1")), IncompatibleGrouping);
  CHECK_THROWS_AS(subtract(f1, f2, parse_groups("1:1")), IncompatibleGrouping);
  CHECK_THROWS_AS(subtract(f1, f2, parse_groups("1:1;1:2")), IncompatibleGrouping);
  CHECK_THROWS_AS(subtract(f1, f2, parse_groups("9:1;2:2")), IndexOutOfRange);
  CHECK_THROWS_AS(subtract_full(f1, f2), CombinatorialMismatch);
  CHECK_THROWS_AS(parse_groups("1,2"), FormatError);
  CHECK_THROWS_AS(parse_groups("0:1"), FormatError);
}

TEST_CASE("multi-fiber groups need matching configurations") {
  IntVector x = IntVector::Zero(6), y = IntVector::Zero(6), z = IntVector::Zero(6);
  x(0) = 1;
  y(1) = 1;
  z(2) = 1;
  const auto f1 = synthetic_record("f1", 1, 0, {{"x", x, 0, Chirality::right}, {"y", y, 0, Chirality::right}});
  const auto f2 = synthetic_record("f2", 1, 0, {{"x", x, 0, Chirality::right}, {"z", z, 0, Chirality::right}});
  const auto flipped = synthetic_record("f3", 1, 0, {{"x", (-x).eval(), 0, Chirality::right}, {"y", y, 0, Chirality::right}});
  CHECK_THROWS_AS(subtract(f1, f2, parse_groups("1,2:1,2")), IncompatibleGrouping);
  CHECK_NOTHROW(subtract(f1, f2, parse_groups("1,2:1,2"), {.assert_isomorphic = true}));
  CHECK_NOTHROW(subtract(f1, flipped, parse_groups("1,2:1,2")));
  CHECK_NOTHROW(subtract(f1, f1, parse_groups("1,2:1,2")));
}

TEST_CASE("section propagation through subtraction") {
  auto f1 = synthetic_record("f1", 1, -2, {synthetic(0)});
  auto f2 = synthetic_record("f2", 1, -1, {synthetic(0)});
  f1.section = SectionData::declared(-1, "");
  f2.section = SectionData::declared(-1, "");
  CHECK_FALSE(subtract(f1, f2, parse_groups("1:1")).section.exists);
  const auto r = subtract(f1, f2, parse_groups("1:1"), {.coinciding_lifts = true});
  REQUIRE(r.section.exists);
  CHECK(*r.section.self_intersection == 0);
}

TEST_CASE("fiber sums") {
  auto a = trivial_bundle(3, 9);
  a.signature = 4;
  const auto b = trivial_bundle(2, 9);
  const auto s = fiber_sum(a, b);
  CHECK(s.fiber_genus == 5);
  CHECK(s.base_genus() == 9);
  CHECK(s.signature == 4);
  CHECK_FALSE(s.section.exists);
  CHECK(fiber_sum(a, b, SectionData::declared(0, "copy")).section.exists);
  CHECK_THROWS_AS(fiber_sum(a, trivial_bundle(2, 8)), BaseMismatch);
  auto no_section = b;
  no_section.section = {};
  CHECK_THROWS_AS(fiber_sum(a, no_section), MissingZeroSection);
}

TEST_CASE("random subtraction bookkeeping") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> len(1, 6), type(0, 1), genus(0, 4), sig(-8, 8);
    std::vector<Letter> l2(len(rng));
    for (auto& l : l2) l = synthetic(type(rng));
    std::vector<Letter> l1 = l2;
    for (int extra = len(rng) - 1; extra > 0; --extra) l1.push_back(synthetic(type(rng)));
    std::shuffle(l1.begin(), l1.end(), rng);
    const auto f1 = synthetic_record("f1", genus(rng), sig(rng), l1);
    const auto f2 = synthetic_record("f2", genus(rng), sig(rng), l2);
    std::vector<FiberGroup> groups;
    std::vector<bool> used(l1.size(), false);
    for (std::size_t j = 0; j < l2.size(); ++j)
      for (std::size_t i = 0; i < l1.size(); ++i)
        if (!used[i] && l1[i].sep_type == l2[j].sep_type) {
          used[i] = true;
          groups.push_back({{i}, {j}});
          break;
        }
    const auto r = subtract(f1, f2, groups);
    const long m = static_cast<long>(groups.size());
    CHECK(r.base_genus() == f1.base_genus() + f2.base_genus() + m - 1);
    CHECK(r.signature == f1.signature - f2.signature);
    CHECK(r.fibers.size() == l1.size() - l2.size());
  }
}

TEST_CASE("the shipped pipeline") {
  const auto run = run_pipeline(*shipped_file("pipelines/thm11_pipeline.txt"));
  CHECK(run.expectations.ok());
  const auto& y = run.result_record();
  CHECK(y.is_bundle());
  CHECK(y.base_genus() == 9);
  CHECK(y.signature == 4);
  CHECK(run.values.at("x1").fibers.size() == 8);
}

TEST_CASE("pipeline expectations that fail are reported, not thrown") {
  const auto run = run_pipeline(
      "let p = fib prop45.fib\n"
      "expect p genus 3 signature -5 fibers 4\n"
      "result p\n");
  CHECK_FALSE(run.expectations.ok());
  CHECK_THROWS_AS(run_pipeline("let p = fib prop45.fib\nlet q = subtract p r groups 1:1\n"), Error);
  CHECK_THROWS_AS(run_pipeline("frobnicate\n"), ParseError);
}
