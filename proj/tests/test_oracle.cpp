#include <cstdio>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "nncomp/oracle.hpp"

using namespace nncomp;

namespace {

// Independent reference for majority over unpacked bits.
bool ref_maj(std::uint64_t x, int n) {
  int s = 0;
  for (int i = 0; i < n; ++i) s += (x >> i) & 1u;
  return 2 * s > n;
}

}  // namespace

TEST_CASE("equiv_check reports EQUAL for matching evaluators") {
  auto fam = make_evaluator(parse_family_spec("maj", 5));
  Evaluator ref = [](std::uint64_t x) { return tri(ref_maj(x, 5)); };
  for (int jobs : {1, 3, 8}) {
    auto r = equiv_check(fam, ref, 5, jobs);
    CHECK(r.equal());
    CHECK(r.inputs_checked == 32);
    CHECK(!r.witness.has_value());
    CHECK(to_string(r.status) == "EQUAL");
  }
}

TEST_CASE("equiv_check finds the earliest mismatch index") {
  BoolFn f = BoolFn::from_hex("n=3:8e");  // maj3
  BoolFn g = f;
  g.set(3, !g.eval(3));
  g.set(6, !g.eval(6));
  for (int jobs : {1, 4}) {
    auto r = equiv_check(make_evaluator(f), make_evaluator(g), 3, jobs);
    CHECK(r.status == EquivReport::Status::Mismatch);
    CHECK(r.witness == 3);
    CHECK(to_string(r.status) == "MISMATCH");
  }
}

TEST_CASE("equiv_check: an undefined value at the earliest problem index wins") {
  BoolFn f = BoolFn::from_hex("n=2:6");  // xor2
  BoolFn g = f;
  g.set(3, true);  // mismatch at index 3
  Evaluator undef_at_1 = [&](std::uint64_t x) {
    if (x == 1) return TriBool::Undefined;
    return tri(f.eval(x));
  };
  auto r = equiv_check(undef_at_1, make_evaluator(g), 2, 1);
  CHECK(r.status == EquivReport::Status::IllDefined);
  CHECK(r.witness == 1);
  CHECK(to_string(r.status) == "ILL_DEFINED");
}

TEST_CASE("min_hnn_search: maj3 needs exactly two Boolean anchors") {
  BoolFn f = family(parse_family_spec("maj", 3));
  auto res = min_hnn_search(f);
  REQUIRE(res.found);
  CHECK(res.min_anchors == 2);
  CHECK(!res.budget_exhausted);
  auto r = equiv_check(make_evaluator(res.witness), make_evaluator(f), 3, 1);
  CHECK(r.equal());
  CHECK(component_bound_check(f, res.witness));
}

TEST_CASE("min_hnn_search: xor2 needs all four corners") {
  BoolFn f = family(parse_family_spec("xor", 2));
  auto res = min_hnn_search(f);
  REQUIRE(res.found);
  CHECK(res.min_anchors == 4);
  auto r = equiv_check(make_evaluator(res.witness), make_evaluator(f), 2, 1);
  CHECK(r.equal());
  // The lower bound from one-set components (2 for xor2) is respected.
  CHECK(component_bound_check(f, res.witness));
  // A two-anchor rep cannot satisfy the component bound for xor3 (4 parts).
  BoolFn x3 = family(parse_family_spec("xor", 3));
  NNRep tiny;
  tiny.embedding = Substitution::identity(3);
  tiny.pos.push_back(Anchor(3, Rational(0)));
  tiny.neg.push_back(Anchor(3, Rational(1)));
  CHECK(!component_bound_check(x3, tiny));
}

TEST_CASE("min_hnn_search rejects constant functions and large arity") {
  BoolFn c(2);  // all zero
  CHECK_THROWS_AS(min_hnn_search(c), std::invalid_argument);
  BoolFn big(5);
  big.set(0, true);
  CHECK_THROWS_AS(min_hnn_search(big), std::invalid_argument);
}

TEST_CASE("min_hnn_search: budget exhaustion checkpoints and resumes") {
  BoolFn f = family(parse_family_spec("xor", 2));
  auto path = std::filesystem::temp_directory_path() / "nncomp_search_ckpt.json";
  std::filesystem::remove(path);

  SearchOptions opts;
  opts.budget = 3;
  opts.checkpoint_path = path.string();
  auto partial = min_hnn_search(f, opts);
  CHECK(!partial.found);
  CHECK(partial.budget_exhausted);
  CHECK(std::filesystem::exists(path));

  // Resume with a generous budget; the final answer matches a fresh search.
  SearchOptions rest;
  rest.budget = 1'000'000;
  rest.checkpoint_path = path.string();
  auto resumed = min_hnn_search(f, rest);
  REQUIRE(resumed.found);
  CHECK(resumed.min_anchors == 4);
  auto fresh = min_hnn_search(f);
  CHECK(resumed.witness.pos == fresh.witness.pos);
  CHECK(resumed.witness.neg == fresh.witness.neg);
  std::filesystem::remove(path);
}

TEST_CASE("four_square: exact decompositions") {
  for (Int v : {Int(0), Int(1), Int(7), Int(15), Int(2026), Int(999999)}) {
    auto sq = four_square(Rational(v));
    Rational sum = 0;
    for (const auto& r : sq) sum += r * r;
    CHECK(sum == Rational(v));
    for (const auto& r : sq) CHECK(is_integer(r));
  }
  auto sq = four_square(Rational(7, 4));
  Rational sum = 0;
  for (const auto& r : sq) sum += r * r;
  CHECK(sum == Rational(7, 4));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Rational v(rng() % 5000, 1 + rng() % 40);
    auto d = four_square(v);
    Rational s = 0;
    for (const auto& r : d) s += r * r;
    CHECK(s == v);
  }
  CHECK_THROWS_AS(four_square(Rational(-1)), std::invalid_argument);
}
