#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nncomp/boolfn.hpp"
#include "nncomp/repr.hpp"

namespace nncomp {

using Evaluator = std::function<TriBool(std::uint64_t)>;

struct EquivReport {
  enum class Status { Equal, Mismatch, IllDefined };

  Status status = Status::Equal;
  std::optional<std::uint64_t> witness;
  std::uint64_t inputs_checked = 0;
  double seconds = 0.0;

  bool equal() const { return status == Status::Equal; }
};

std::string to_string(EquivReport::Status s);

/// Exhaustive comparison over all 2^n inputs. The reported witness is the
/// smallest input index at which anything goes wrong; an Undefined value on
/// either side at that index wins over a plain mismatch at a later one.
EquivReport equiv_check(const Evaluator& a, const Evaluator& b, int n, int jobs = 1);

inline Evaluator make_evaluator(const BoolFn& f) {
  return [f](std::uint64_t x) { return tri(f.eval(x)); };
}
inline Evaluator make_evaluator(const FamilySpec& s) {
  return [s](std::uint64_t x) { return tri(family_eval(s, x)); };
}
inline Evaluator make_evaluator(const NNRep& r) {
  return [r](std::uint64_t x) { return eval_nn(r, x); };
}
inline Evaluator make_evaluator(const KNNRep& r) {
  return [r](std::uint64_t x) { return eval_knn(r, x); };
}
inline Evaluator make_evaluator(const MpPTF& m) {
  return [m](std::uint64_t x) { return tri(eval_mpptf(m, x)); };
}
inline Evaluator make_evaluator(const KStat& s) {
  return [s](std::uint64_t x) { return tri(eval_kstat(s, x)); };
}
inline Evaluator make_evaluator(const LabeledKStat& s) {
  return [s](std::uint64_t x) { return tri(eval_labeled_kstat(s, x)); };
}
inline Evaluator make_evaluator(const DecisionList& d) {
  return [d](std::uint64_t x) { return tri(eval_dlist(d, x)); };
}
inline Evaluator make_evaluator(const ThresholdCircuit& c) {
  return [c](std::uint64_t x) { return tri(eval_circuit(c, x)); };
}

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000;  // candidate representations examined
  std::string checkpoint_path;           // resume / persist state when nonempty
};

struct SearchResult {
  bool found = false;
  int min_anchors = 0;
  NNRep witness;  // lexicographically first success at min_anchors
  std::vector<std::pair<int, std::uint64_t>> candidates_per_m;
  bool budget_exhausted = false;
};

/// Smallest Boolean-anchor representation of f, by enumerating anchor sets of
/// increasing size m and every nonempty positive/negative split in
/// lexicographic order. Every candidate below the returned m is exhausted,
/// which certifies minimality. Constant functions are rejected: a nonempty
/// negative anchor set always misclassifies its own anchor point.
SearchResult min_hnn_search(const BoolFn& f, const SearchOptions& opts = {});

/// Connected components of f's one-set lower-bound the Boolean anchor count.
/// Returns true when |P| + |N| >= components(f).
bool component_bound_check(const BoolFn& f, const NNRep& r);

/// Exact Lagrange decomposition: v = a^2 + b^2 + c^2 + d^2 over the
/// rationals. The identity is re-checked on every call.
std::array<Rational, 4> four_square(const Rational& v);

}  // namespace nncomp
