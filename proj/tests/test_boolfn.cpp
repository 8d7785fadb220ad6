#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nncomp/boolfn.hpp"

using namespace nncomp;

namespace {

// Independent reference evaluators, written straight from the definitions over
// an explicit bit vector, as a cross-check against the bitmask fast paths.
std::vector<bool> unpack(std::uint64_t x, int n) {
  std::vector<bool> v(n);
  for (int i = 0; i < n; ++i) v[i] = (x >> i) & 1u;
  return v;
}

bool ref_maj(const std::vector<bool>& x) {
  int s = 0;
  for (bool b : x) s += b;
  return 2 * s >= static_cast<int>(x.size());
}

bool ref_xor(const std::vector<bool>& x) {
  bool p = false;
  for (bool b : x) p = p != b;
  return p;
}

bool ref_ip(const std::vector<bool>& x) {
  int n = static_cast<int>(x.size()) / 2;
  bool p = false;
  for (int i = 0; i < n; ++i) p = p != (x[i] && x[n + i]);
  return p;
}

bool ref_disj(const std::vector<bool>& x) {
  int n = static_cast<int>(x.size()) / 2;
  for (int i = 0; i < n; ++i)
    if (x[i] && x[n + i]) return false;
  return true;
}

bool ref_omb(const std::vector<bool>& x) {
  for (int i = static_cast<int>(x.size()); i >= 1; --i)
    if (x[i - 1]) return i % 2 == 1;
  return false;
}

}  // namespace

TEST_CASE("truth table bit order and hex round trip") {
  // MAJ_3: ones exactly at the four points of weight >= 2.
  BoolFn maj = family({Family::Maj, 3});
  CHECK(maj.arity() == 3);
  CHECK(maj.ones_count() == 4);
  CHECK(maj.eval(0b011));
  CHECK(maj.eval(0b101));
  CHECK(maj.eval(0b110));
  CHECK(maj.eval(0b111));
  CHECK_FALSE(maj.eval(0b001));
  CHECK(maj.to_hex() == "n=3:8e");
  CHECK(BoolFn::from_hex("n=3:8e") == maj);

  BoolFn parity = family({Family::Xor, 3});
  CHECK(parity.to_hex() == "n=3:69");
  CHECK(BoolFn::from_hex(parity.to_hex()) == parity);

  CHECK_THROWS_AS(BoolFn::from_hex("n=3:8"), std::invalid_argument);
  CHECK_THROWS_AS(BoolFn::from_hex("8e"), std::invalid_argument);
  CHECK_THROWS_AS(BoolFn::from_hex("n=3:8g"), std::invalid_argument);
}

TEST_CASE("family evaluators match reference definitions") {
  struct Case {
    FamilySpec spec;
    bool (*ref)(const std::vector<bool>&);
  };
  const Case cases[] = {
      {{Family::Maj, 5}, ref_maj},   {{Family::Xor, 6}, ref_xor},
      {{Family::Ip, 4}, ref_ip},     {{Family::Disj, 4}, ref_disj},
      {{Family::Omb, 7}, ref_omb},
  };
  for (const auto& c : cases) {
    int arity = family_arity(c.spec);
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << arity); ++x)
      CHECK(family_eval(c.spec, x) == c.ref(unpack(x, arity)));
  }
}

TEST_CASE("OMB of the all-zeros point is 0") {
  for (int n : {1, 3, 8}) CHECK_FALSE(family_eval({Family::Omb, n}, 0));
}

TEST_CASE("OMB_AND2 is OMB composed with coordinate-wise AND") {
  FamilySpec spec{Family::OmbAnd2, 3};
  CHECK(family_arity(spec) == 6);
  for (std::uint64_t x = 0; x < 64; ++x) {
    auto bits = unpack(x, 6);
    std::vector<bool> ands(3);
    for (int i = 0; i < 3; ++i) ands[i] = bits[i] && bits[3 + i];
    CHECK(family_eval(spec, x) == ref_omb(ands));
  }
}

TEST_CASE("AND_OR_AND evaluates blockwise") {
  // n=2, inner=2: AND over 2 blocks of OR over 2 AND_2 pairs; like IP, the
  // two operands of each pair sit in opposite halves of the input.
  FamilySpec spec = parse_family_spec("and-or-and", 2, 0, 2);
  CHECK(family_arity(spec) == 8);
  for (std::uint64_t x = 0; x < 256; ++x) {
    auto v = unpack(x, 8);
    bool expect = true;
    for (int b = 0; b < 2; ++b) {
      bool inner = false;
      for (int j = 0; j < 2; ++j) inner = inner || (v[2 * b + j] && v[4 + 2 * b + j]);
      expect = expect && inner;
    }
    CHECK(family_eval(spec, x) == expect);
  }
}

TEST_CASE("family spec parsing and validation") {
  CHECK(parse_family_spec("maj", 5).name == Family::Maj);
  CHECK(family_arity(parse_family_spec("ip", 3)) == 6);
  CHECK_THROWS_AS(parse_family_spec("nope", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("maj", 0), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("exact-half-cnf", 6, 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_spec("exact-half-cnf", 6, 4), std::invalid_argument);
  CHECK(family_arity(parse_family_spec("exact-half-cnf", 6, 2)) == 6);
  // and-or-and inner defaults to n^2
  CHECK(family_arity(parse_family_spec("and-or-and", 3)) == 2 * 3 * 9);
}

TEST_CASE("cnf and dnf evaluation") {
  CnfDnf c{2, ClauseKind::Cnf, {{1, 2}, {-1, -2}}};  // XOR_2 as CNF
  c.validate();
  for (std::uint64_t x = 0; x < 4; ++x)
    CHECK(cnf_eval(c, x) == (std::popcount(x) == 1));

  CnfDnf d{2, ClauseKind::Dnf, {{1, -2}}};
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(cnf_eval(d, x) == (x == 1));

  CHECK(cnf_eval({2, ClauseKind::Cnf, {}}, 0));        // empty CNF is true
  CHECK_FALSE(cnf_eval({2, ClauseKind::Dnf, {}}, 0));  // empty DNF is false

  CHECK_THROWS_AS((CnfDnf{2, ClauseKind::Cnf, {{3}}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CnfDnf{2, ClauseKind::Cnf, {{1, -1}}}.validate()), std::invalid_argument);
}

TEST_CASE("substitution") {
  Substitution id = Substitution::identity(3);
  CHECK(id.is_identity());
  // Duplicate x2 twice, append constants 0 and 1.
  Substitution v{2, {1, 2, 2, 0, -1}};
  v.validate();
  CHECK(v.target_bit(0b10, 2));
  CHECK_FALSE(v.target_bit(0b10, 3));
  CHECK(v.target_bit(0b00, 4));
  CHECK_THROWS_AS((Substitution{2, {3}}.validate()), std::invalid_argument);
}

TEST_CASE("connected components of the one-set") {
  // Parity's one-set is an independent set: every point isolated.
  CHECK(components(family({Family::Xor, 3})) == 4);
  CHECK(components(family({Family::Xor, 5})) == 16);
  // Majority's one-set is connected through the all-ones point.
  CHECK(components(family({Family::Maj, 3})) == 1);
  // Constant 0 has no components.
  CHECK(components(BoolFn(3)) == 0);
}

TEST_CASE("exact-half CNF satisfied iff every block is balanced") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {4, 4}, {8, 4}, {6, 2}}) {
    CnfDnf c = exact_half_cnf(n, k);
    c.validate();
    FamilySpec spec{Family::ExactHalfCnf, n, k};
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
      bool expect = true;
      for (int b = 0; b < n / k; ++b) {
        std::uint64_t block = (x >> (b * k)) & ((std::uint64_t(1) << k) - 1);
        expect = expect && std::popcount(block) == k / 2;
      }
      CHECK(cnf_eval(c, x) == expect);
      CHECK(family_eval(spec, x) == expect);
    }
  }
}

TEST_CASE("exact-half CNF one-set splits into binom(k,k/2)^(n/k) components") {
  // Each satisfying point is isolated: flipping one bit unbalances a block.
  CHECK(components(cnf_table(exact_half_cnf(4, 2))) == 4);
  CHECK(components(cnf_table(exact_half_cnf(8, 4))) == 36);
  CHECK(components(cnf_table(exact_half_cnf(6, 2))) == 8);
}
