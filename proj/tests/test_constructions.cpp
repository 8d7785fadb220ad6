#include <random>

#include "doctest.h"
#include "nncomp/constructions.hpp"
#include "nncomp/oracle.hpp"

using namespace nncomp;

namespace {

void check_same_function(const Evaluator& a, const Evaluator& b, int n) {
  auto r = equiv_check(a, b, n);
  if (!r.equal()) {
    CAPTURE(to_string(r.status));
    CAPTURE(*r.witness);
  }
  CHECK(r.equal());
}

Evaluator cnf_evaluator(const CnfDnf& c) {
  return [c](std::uint64_t x) { return tri(cnf_eval(c, x)); };
}

CnfDnf random_clauses(std::mt19937_64& rng, int n, ClauseKind kind) {
  CnfDnf c;
  c.n = n;
  c.kind = kind;
  int m = 1 + rng() % 4;
  for (int i = 0; i < m; ++i) {
    std::vector<int> clause;
    for (int v = 1; v <= n; ++v) {
      switch (rng() % 3) {
        case 0: clause.push_back(v); break;
        case 1: clause.push_back(-v); break;
        default: break;
      }
    }
    if (clause.empty()) clause.push_back(1 + int(rng() % n));
    c.clauses.push_back(std::move(clause));
  }
  return c;
}

}  // namespace

TEST_CASE("cnf_to_nn: single-clause conjunction, frozen anchors") {
  CnfDnf d;
  d.n = 2;
  d.kind = ClauseKind::Dnf;
  d.clauses = {{1, 2}};
  PassReport rep;
  NNRep r = cnf_to_nn(d, &rep);
  REQUIRE(r.pos.size() == 1);
  REQUIRE(r.neg.size() == 1);
  CHECK(r.pos[0] == Anchor{Rational(1), Rational(3, 2)});
  CHECK(r.neg[0] == Anchor{Rational(1, 2), Rational(1, 2)});
  // x = (1,1): clause anchor at 1/4 beats the center at 1/2.
  CHECK(anchor_distance(r, r.pos[0], 3) == Rational(1, 4));
  CHECK(anchor_distance(r, r.neg[0], 3) == Rational(1, 2));
  CHECK(rep.metrics.at("anchors") == 2);
  check_same_function(make_evaluator(r), cnf_evaluator(d), 2);
}

TEST_CASE("cnf_to_nn: equality via a two-clause DNF") {
  CnfDnf d;
  d.n = 2;
  d.kind = ClauseKind::Dnf;
  d.clauses = {{1, 2}, {-1, -2}};
  NNRep r = cnf_to_nn(d);
  CHECK(r.anchor_count() == 3);
  check_same_function(make_evaluator(r), cnf_evaluator(d), 2);
}

TEST_CASE("cnf_to_nn: degenerate clause lists become constants") {
  CnfDnf d;
  d.n = 3;
  d.kind = ClauseKind::Dnf;
  NNRep r = cnf_to_nn(d);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(eval_nn(r, x) == TriBool::False);

  CnfDnf c;
  c.n = 3;
  c.kind = ClauseKind::Cnf;
  NNRep rc = cnf_to_nn(c);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(eval_nn(rc, x) == TriBool::True);

  CnfDnf bad;
  bad.n = 2;
  bad.kind = ClauseKind::Dnf;
  bad.clauses = {{}};
  CHECK_THROWS_AS(cnf_to_nn(bad), std::invalid_argument);
}

TEST_CASE("cnf_to_nn: random formulas, both kinds, constant bit complexity") {
  std::mt19937_64 rng(2121);
  for (int t = 0; t < 40; ++t) {
    int n = 2 + rng() % 3;
    CnfDnf c = random_clauses(rng, n, t % 2 ? ClauseKind::Cnf : ClauseKind::Dnf);
    NNRep r = cnf_to_nn(c);
    CHECK(int(r.anchor_count()) == int(c.clauses.size()) + 1);
    CHECK(well_defined(r).ok());
    check_same_function(make_evaluator(r), cnf_evaluator(c), n);
  }
  // Bit complexity does not grow with the arity or clause count.
  int reference = 0;
  for (int n = 2; n <= 10; ++n) {
    CnfDnf c;
    c.n = n;
    c.kind = ClauseKind::Dnf;
    c.clauses = {{1, 2}, {-1, -2}};
    int bits = bit_complexity(cnf_to_nn(c));
    if (reference == 0) reference = bits;
    CHECK(bits == reference);
  }
}

TEST_CASE("disj_hnn: 3n Boolean anchors computing disjointness") {
  for (int n = 1; n <= 4; ++n) {
    PassReport rep;
    NNRep r = disj_hnn(n, &rep);
    CHECK(r.anchor_count() == 3 * n);
    CHECK(r.boolean_anchors());
    CHECK(rep.bound_met);
    CHECK(well_defined(r).ok());
    check_same_function(make_evaluator(r), make_evaluator(parse_family_spec("disj", n)), 2 * n);
    // Lowered forms keep the Boolean-anchor weight bound.
    MpPTF m = nn_to_mpptf(r);
    CHECK(m.max_weight() <= 2 * n);
  }
}

TEST_CASE("disj_hnn: frozen distance traces at n = 2") {
  NNRep r = disj_hnn(2);
  // x = (1,0), y = (0,1) -> nearest anchor is the singleton e1 at distance 1.
  std::uint64_t disjoint = 0b1001;
  CHECK(anchor_distance(r, r.pos[0], disjoint) == 1);
  for (const auto& q : r.neg) CHECK(anchor_distance(r, q, disjoint) >= 2);
  CHECK(eval_nn(r, disjoint) == TriBool::True);
  // x = y = (1,0) -> the pair anchor (e1, e1) matches exactly.
  std::uint64_t meet = 0b0101;
  CHECK(anchor_distance(r, r.neg[0], meet) == 0);
  CHECK(eval_nn(r, meet) == TriBool::False);
}

TEST_CASE("xor_mpptf: n + 1 forms computing parity") {
  for (int n = 1; n <= 6; ++n) {
    PassReport rep;
    MpPTF m = xor_mpptf(n, &rep);
    CHECK(m.terms() == n + 1);
    CHECK(rep.bound_met);
    check_same_function(make_evaluator(m), make_evaluator(parse_family_spec("xor", n)), n);
  }
  // Frozen traces at n = 3.
  MpPTF m = xor_mpptf(3);
  std::uint64_t weight2 = 0b011;
  Rational min_left = m.left[0].eval(weight2);
  for (const auto& f : m.left) min_left = std::min(min_left, Rational(f.eval(weight2)));
  Rational min_right = m.right[0].eval(weight2);
  for (const auto& f : m.right) min_right = std::min(min_right, Rational(f.eval(weight2)));
  CHECK(min_left == -3);
  CHECK(min_right == -4);
  CHECK(!eval_mpptf(m, weight2));
  CHECK(eval_mpptf(m, 0b001));
}

TEST_CASE("omb_and2_mpptf: highest satisfied pair decides by parity") {
  for (int n = 1; n <= 4; ++n) {
    PassReport rep;
    MpPTF m = omb_and2_mpptf(n, &rep);
    CHECK(m.terms() == n + 1);
    CHECK(rep.bound_met);
    check_same_function(make_evaluator(m), make_evaluator(parse_family_spec("omb-and2", n)),
                        2 * n);
  }
  // Frozen traces at n = 2: inputs are (x1, x2, y1, y2).
  MpPTF m = omb_and2_mpptf(2);
  CHECK(eval_mpptf(m, 0b0101));   // pair 1 satisfied, odd -> 1
  CHECK(!eval_mpptf(m, 0b1111));  // pair 2 dominates, even -> 0
  CHECK(!eval_mpptf(m, 0));       // nothing satisfied -> 0
}

TEST_CASE("many_component_cnf: component counts certified by enumeration") {
  auto c42 = many_component_cnf(4, 2);
  CHECK(c42.expected_components == 4);
  CHECK(c42.ok());
  auto c62 = many_component_cnf(6, 2);
  CHECK(c62.expected_components == 8);
  CHECK(c62.ok());
  auto c44 = many_component_cnf(4, 4);
  CHECK(c44.expected_components == 6);  // C(4,2) in a single block
  CHECK(c44.ok());
  CHECK_THROWS_AS(many_component_cnf(5, 2), std::invalid_argument);
}

TEST_CASE("ip_sym_and: parity of pairwise conjunctions equals inner product") {
  for (int n = 1; n <= 3; ++n) {
    SymAndCircuit c = ip_sym_and(n);
    CHECK(int(c.clauses.size()) == n);
    check_same_function([&](std::uint64_t x) { return tri(eval_sym_and(c, x)); },
                        make_evaluator(parse_family_spec("ip", n)), 2 * n);
  }
}
