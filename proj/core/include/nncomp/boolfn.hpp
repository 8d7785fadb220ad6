#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nncomp {

/// Boolean function as a bit-packed truth table. The bit at index
/// sum x_i * 2^(i-1) (x_1 least significant) is f(x). Materialized tables are
/// capped at arity 24 (16 MiB of bits); larger arities are only reachable
/// through pointwise family evaluators.
class BoolFn {
 public:
  static constexpr int kMaxArity = 24;

  BoolFn() = default;
  explicit BoolFn(int n);

  static BoolFn from_truth_table(const std::vector<bool>& bits, int n);
  static BoolFn from_evaluator(int n, const std::function<bool(std::uint64_t)>& eval);

  int arity() const { return n_; }
  std::uint64_t num_points() const { return std::uint64_t(1) << n_; }

  bool eval(std::uint64_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void set(std::uint64_t x, bool v) {
    std::uint64_t m = std::uint64_t(1) << (x & 63);
    if (v) words_[x >> 6] |= m; else words_[x >> 6] &= ~m;
  }

  std::uint64_t ones_count() const;
  bool is_constant() const;

  BoolFn operator~() const;

  /// "n=<arity>:<hex>" with the most significant hex digit last.
  std::string to_hex() const;
  static BoolFn from_hex(const std::string& s);

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_{0};
};

enum class Family { Maj, Xor, Ip, Disj, Omb, OmbAnd2, ExactHalfCnf, AndOrAnd };

/// Named parametric family. `n` is the family parameter, not necessarily the
/// arity: IP/DISJ/OMB_AND2 have arity 2n, AND_OR_AND has arity 2*n*inner.
struct FamilySpec {
  Family name = Family::Maj;
  int n = 1;
  int k = 0;      // block size, EXACT_HALF_CNF only
  int inner = 0;  // inner OR width, AND_OR_AND only (default n*n)
};

FamilySpec parse_family_spec(const std::string& name, int n, int k = 0, int inner = 0);
std::string family_name(Family f);

int family_arity(const FamilySpec& spec);

/// Pointwise evaluation straight from the definition; works above the
/// materialization cap (arity <= 64).
bool family_eval(const FamilySpec& spec, std::uint64_t x);

/// Materialized truth table; arity must be <= kMaxArity.
BoolFn family(const FamilySpec& spec);

enum class ClauseKind { Cnf, Dnf };

/// Clause form; a literal is a signed 1-based variable index.
struct CnfDnf {
  int n = 0;
  ClauseKind kind = ClauseKind::Cnf;
  std::vector<std::vector<int>> clauses;

  void validate() const;
};

bool cnf_eval(const CnfDnf& c, std::uint64_t x);
BoolFn cnf_table(const CnfDnf& c);

/// Variable substitution (the closure operation): each target dimension is a
/// duplicated source variable or a constant. Entry encoding: i >= 1 is
/// Var(i), 0 is Const0, -1 is Const1.
struct Substitution {
  int source_arity = 0;
  std::vector<int> map;

  static Substitution identity(int n);

  int target_arity() const { return static_cast<int>(map.size()); }
  bool is_identity() const;
  void validate() const;

  /// Value of target dimension j under source input x.
  bool target_bit(std::uint64_t x, int j) const {
    int m = map[j];
    if (m == 0) return false;
    if (m == -1) return true;
    return (x >> (m - 1)) & 1u;
  }
};

/// f(x) = g(v(x)).
bool apply_substitution(const std::function<bool(const std::vector<bool>&)>& g,
                        const Substitution& v, std::uint64_t x);

/// Connected components of f^{-1}(1) under Hamming-distance-1 adjacency.
std::uint64_t components(const BoolFn& f);

/// CNF over n variables that is satisfied exactly when every block of k
/// consecutive variables has Hamming weight k/2. Encoded as all
/// (k/2+1)-subset not-all-one clauses plus all (k/2+1)-subset not-all-zero
/// clauses, per block.
CnfDnf exact_half_cnf(int n, int k);

}  // namespace nncomp
