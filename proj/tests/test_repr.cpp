#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "nncomp/repr.hpp"

using namespace nncomp;

namespace {

LinearForm lf(std::vector<Rational> c, Rational k) { return LinearForm(std::move(c), std::move(k)); }

}  // namespace

TEST_CASE("nearest neighbor evaluation, ties, and validation") {
  // AND_2: one positive anchor at the all-ones corner, negatives elsewhere.
  NNRep andrep{Substitution::identity(2), {{1, 1}}, {{0, 0}, {1, 0}, {0, 1}}};
  andrep.validate();
  CHECK(andrep.boolean_anchors());
  CHECK(bit_complexity(andrep) == 2);
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(eval_nn(andrep, x) == tri(x == 3));
  CHECK(well_defined(andrep).ok());

  // Equidistant cross-set anchors make the query undefined.
  NNRep tie{Substitution::identity(2), {{0, 0}}, {{1, 1}}};
  CHECK(eval_nn(tie, 0b01) == TriBool::Undefined);
  CHECK(eval_nn(tie, 0b00) == TriBool::True);
  auto report = well_defined(tie, 2);
  CHECK(report.inputs_checked == 4);
  CHECK(report.undefined_inputs == std::vector<std::uint64_t>{1, 2});

  CHECK_THROWS_AS((NNRep{Substitution::identity(2), {{1, 1}}, {}}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((NNRep{Substitution::identity(2), {{1, 1}}, {{1, 1}}}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((NNRep{Substitution::identity(2), {{1}}, {{0, 0}}}.validate()),
                  std::invalid_argument);
}

TEST_CASE("embedding composes with distances") {
  // Target dims: (x1, x1, 1). Anchor geometry sees duplicated coordinates.
  NNRep r{Substitution{1, {1, 1, -1}}, {{1, 1, 1}}, {{0, 0, 1}}};
  r.validate();
  CHECK(anchor_distance(r, r.pos[0], 0) == 2);
  CHECK(anchor_distance(r, r.pos[0], 1) == 0);
  CHECK(eval_nn(r, 1) == TriBool::True);
  CHECK(eval_nn(r, 0) == TriBool::False);
}

TEST_CASE("rational anchors and bit complexity") {
  NNRep r{Substitution::identity(1), {{Rational(3, 2)}}, {{Rational(-1, 4)}}};
  CHECK_FALSE(r.boolean_anchors());
  // 3/2 takes 2+2 bits, -1/4 takes 1+3 bits.
  CHECK(bit_complexity(r) == 4);
  CHECK(anchor_distance(r, r.pos[0], 0) == Rational(9, 4));
}

namespace {

// Reference kNN semantics by brute force over anchor subsets: f(x) is the
// majority label of a size-k set S whose members are all strictly closer than
// every anchor outside S; Undefined when no such S exists.
TriBool ref_knn(const KNNRep& r, std::uint64_t x) {
  std::vector<std::pair<Rational, bool>> a;
  for (const auto& p : r.rep.pos) a.emplace_back(anchor_distance(r.rep, p, x), true);
  for (const auto& q : r.rep.neg) a.emplace_back(anchor_distance(r.rep, q, x), false);
  int m = static_cast<int>(a.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    if (std::popcount(mask) != r.k) continue;
    bool separated = true;
    int votes = 0;
    for (int i = 0; i < m && separated; ++i) {
      if (!((mask >> i) & 1u)) continue;
      votes += a[i].second;
      for (int j = 0; j < m; ++j)
        if (!((mask >> j) & 1u) && !(a[i].first < a[j].first)) separated = false;
    }
    if (separated) return tri(2 * votes >= r.k);
  }
  return TriBool::Undefined;
}

}  // namespace

TEST_CASE("k nearest neighbors with vote and tie rule") {
  // Deterministic duplicated-anchor example: defined only at the two corners.
  KNNRep dup{{Substitution::identity(2), {{1, 1}, {1, 1}, {1, 1}}, {{0, 0}, {0, 0}, {0, 0}}}, 3};
  dup.validate();
  CHECK(eval_knn(dup, 0b11) == TriBool::True);
  CHECK(eval_knn(dup, 0b00) == TriBool::False);
  CHECK(eval_knn(dup, 0b01) == TriBool::Undefined);
  CHECK(well_defined(dup).undefined_inputs == std::vector<std::uint64_t>{1, 2});

  // Cross-check against the subset-separation reference on pseudorandom
  // rational anchors.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    auto coord = [&] { return Rational(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 4)); };
    KNNRep r;
    r.rep.embedding = Substitution::identity(n);
    int np = 1 + static_cast<int>(rng() % 3), nq = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < np; ++i) {
      Anchor a(n);
      for (auto& c : a) c = coord();
      r.rep.pos.push_back(a);
    }
    for (int i = 0; i < nq; ++i) {
      Anchor a(n);
      for (auto& c : a) c = coord();
      r.rep.neg.push_back(a);
    }
    r.k = 1 + static_cast<int>(rng() % (np + nq));
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x)
      CHECK(eval_knn(r, x) == ref_knn(r, x));
  }

  // k-th and (k+1)-th distances equal: no strictly separated k-set.
  KNNRep amb{{Substitution::identity(1), {{1}}, {{0}, {0}}}, 2};
  CHECK(eval_knn(amb, 1) == TriBool::Undefined);
  // All anchors inside the k-set is fine even with internal ties.
  KNNRep all{{Substitution::identity(1), {{1}}, {{0}, {0}}}, 3};
  CHECK(eval_knn(all, 1) == TriBool::False);
  CHECK(eval_knn(all, 0) == TriBool::False);

  CHECK_THROWS_AS((KNNRep{{Substitution::identity(1), {{1}}, {{0}}}, 3}.validate()),
                  std::invalid_argument);
}

TEST_CASE("min-plus threshold: minimum comparison with ties going left") {
  // XOR_2 gadget: forms i^2 - 2i*(x1+x2), odd i on the left.
  MpPTF m{2, {lf({-2, -2}, 1)}, {lf({0, 0}, 0), lf({-4, -4}, 4)}};
  m.validate();
  for (std::uint64_t x = 0; x < 4; ++x)
    CHECK(eval_mpptf(m, x) == ((x == 1) || (x == 2)));

  MpPTF tie{1, {lf({0}, 5)}, {lf({0}, 5)}};
  CHECK(eval_mpptf(tie, 0));  // equal minima resolve to 1

  CHECK_THROWS_AS((MpPTF{1, {}, {lf({0}, 0)}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MpPTF{1, {lf({Rational(1, 2)}, 0)}, {lf({0}, 0)}}.validate()),
                  std::invalid_argument);
}

TEST_CASE("order statistic comparison") {
  // 2nd smallest of {x1, 2, 7-x2} vs 1st smallest of {4}.
  KStat s{2, {lf({1, 0}, 0), lf({0, 0}, 2), lf({0, -1}, 7)}, {lf({0, 0}, 4)}, 2, 1};
  s.validate();
  CHECK(eval_kstat(s, 0b00));        // stats: 2nd of {0,2,7} = 2 < 4
  CHECK(eval_kstat(s, 0b01));        // 2nd of {1,2,7} = 2 < 4
  CHECK(eval_kstat(s, 0b11));        // 2nd of {1,2,6} = 2 < 4
  CHECK_FALSE(eval_kstat(KStat{2, s.left, s.right, 3, 1}, 0b11));  // 3rd = 6
  CHECK_THROWS_AS((KStat{1, {lf({1}, 0)}, {lf({1}, 0)}, 2, 1}.validate()),
                  std::invalid_argument);
}

TEST_CASE("labeled order statistic with existential tie rule") {
  LabeledKStat s{1, {lf({0}, 3), lf({0}, 3), lf({1}, 3)}, {0, 1, 0}, 1};
  s.validate();
  // Minimum 3 is attained by a label-1 form regardless of x1.
  CHECK(eval_labeled_kstat(s, 0));
  CHECK(eval_labeled_kstat(s, 1));
  LabeledKStat s2{1, {lf({1}, 0), lf({0}, 1)}, {0, 1}, 1};
  CHECK_FALSE(eval_labeled_kstat(s2, 0));  // min 0 only from label-0 form
  CHECK(eval_labeled_kstat(s2, 1));        // tie at 1, label-1 form attains it
  CHECK_THROWS_AS((LabeledKStat{1, {lf({1}, 0)}, {0, 1}, 1}.validate()),
                  std::invalid_argument);
}

TEST_CASE("decision lists: first firing entry decides") {
  // LDL for XOR_2: x1+x2-2 >= 0 -> 0, x1+x2-1 >= 0 -> 1, default 0.
  DecisionList ldl{2, ListKind::Ldl, {{lf({1, 1}, -2), 0}, {lf({1, 1}, -1), 1}}};
  ldl.validate();
  for (std::uint64_t x = 0; x < 4; ++x)
    CHECK(eval_dlist(ldl, x) == ((x == 1) || (x == 2)));

  // ELDL entry fires on exact zero.
  DecisionList eldl{2, ListKind::Eldl, {{lf({1, 1}, -1), 1}}};
  for (std::uint64_t x = 0; x < 4; ++x)
    CHECK(eval_dlist(eldl, x) == ((x == 1) || (x == 2)));

  CHECK_THROWS_AS((DecisionList{2, ListKind::Ldl, {{lf({1, 1}, -2), 2}}}.validate()),
                  std::invalid_argument);
}

TEST_CASE("threshold circuits") {
  // Depth 2: XOR_2 = [x1+x2 >= 1] + [x1+x2 >= 2] compared as g1 - g2 >= 1.
  ThresholdCircuit c{2,
                     {Gate{{{0, 1}, {1, 1}}, 1, GateCmp::Ge},
                      Gate{{{0, 1}, {1, 1}}, 2, GateCmp::Ge},
                      Gate{{{2, 1}, {3, -1}}, 1, GateCmp::Ge}},
                     2};
  c.validate();
  CHECK(c.size() == 3);
  CHECK(c.depth() == 2);
  CHECK(c.max_weight() == 1);
  for (std::uint64_t x = 0; x < 4; ++x)
    CHECK(eval_circuit(c, x) == ((x == 1) || (x == 2)));

  // Exact-threshold gate.
  ThresholdCircuit eq{2, {Gate{{{0, 1}, {1, 1}}, 1, GateCmp::Eq}}, 0};
  CHECK(eval_circuit(eq, 0b01));
  CHECK_FALSE(eval_circuit(eq, 0b11));

  ThresholdCircuit bad{2, {Gate{{{3, 1}}, 0, GateCmp::Ge}}, 0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
