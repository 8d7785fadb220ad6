#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nncomp/boolfn.hpp"
#include "nncomp/linear_form.hpp"
#include "nncomp/rational.hpp"

namespace nncomp {

enum class TriBool : std::uint8_t { False = 0, True = 1, Undefined = 2 };

inline TriBool tri(bool b) { return b ? TriBool::True : TriBool::False; }

using Anchor = std::vector<Rational>;

/// Nearest-neighbor representation with an input embedding. Positive and
/// negative anchors live in the ambient (embedded) space; queries of the
/// source arity are mapped through the embedding before distances are taken.
/// An identity embedding recovers a plain NN representation.
struct NNRep {
  Substitution embedding;
  std::vector<Anchor> pos;
  std::vector<Anchor> neg;

  int source_arity() const { return embedding.source_arity; }
  int ambient_dim() const { return embedding.target_arity(); }
  int anchor_count() const { return static_cast<int>(pos.size() + neg.size()); }

  bool boolean_anchors() const;
  void validate() const;
};

struct KNNRep {
  NNRep rep;
  int k = 1;

  int source_arity() const { return rep.source_arity(); }
  int anchor_count() const { return rep.anchor_count(); }
  void validate() const;
};

/// min-plus polynomial threshold function over integer affine forms:
/// f(x) = 1 iff min over left forms <= min over right forms.
struct MpPTF {
  int n = 0;
  std::vector<LinearForm> left;
  std::vector<LinearForm> right;

  int terms() const { return static_cast<int>(left.size() + right.size()); }
  Int max_weight() const;
  void validate() const;
};

/// f(x) = 1 iff the k_l-th smallest left value is strictly below the k_r-th
/// smallest right value.
struct KStat {
  int n = 0;
  std::vector<LinearForm> left;
  std::vector<LinearForm> right;
  int k_l = 1;
  int k_r = 1;

  void validate() const;
};

/// Single labeled form list; f(x) = 1 iff some form achieving the k-th
/// statistic carries label 1 (existential tie rule).
struct LabeledKStat {
  int n = 0;
  std::vector<LinearForm> forms;
  std::vector<std::uint8_t> labels;
  int k = 1;

  void validate() const;
};

enum class ListKind { Ldl, Eldl };

/// Linear decision list. An LDL entry fires iff form(x) >= 0, an ELDL entry
/// iff form(x) == 0; the first firing entry decides, default output 0.
struct DecisionList {
  int n = 0;
  ListKind kind = ListKind::Ldl;
  std::vector<std::pair<LinearForm, std::uint8_t>> entries;

  int length() const { return static_cast<int>(entries.size()); }
  void validate() const;
};

enum class GateCmp { Ge, Eq };

/// Threshold gate over input variables and earlier gates. Node indices
/// 0..n-1 denote inputs, n+j denotes gate j.
struct Gate {
  std::vector<std::pair<int, Int>> wires;  // (node index, weight)
  Int threshold = 0;
  GateCmp cmp = GateCmp::Ge;
};

struct ThresholdCircuit {
  int n = 0;
  std::vector<Gate> gates;
  int output = 0;  // gate index

  int size() const { return static_cast<int>(gates.size()); }
  int depth() const;
  Int max_weight() const;
  void validate() const;
};

// --- evaluation --------------------------------------------------------

Rational anchor_distance(const NNRep& r, const Anchor& a, std::uint64_t x);

TriBool eval_nn(const NNRep& r, std::uint64_t x);
TriBool eval_knn(const KNNRep& r, std::uint64_t x);
bool eval_mpptf(const MpPTF& m, std::uint64_t x);
bool eval_kstat(const KStat& s, std::uint64_t x);
bool eval_labeled_kstat(const LabeledKStat& s, std::uint64_t x);
bool eval_dlist(const DecisionList& d, std::uint64_t x);
bool eval_circuit(const ThresholdCircuit& c, std::uint64_t x);

// --- metrics ------------------------------------------------------------

/// Max over anchor coordinates of bit_size(); 2 for all-Boolean anchors.
int bit_complexity(const NNRep& r);
int bit_complexity(const KNNRep& r);

struct WellDefinedReport {
  std::uint64_t inputs_checked = 0;
  std::vector<std::uint64_t> undefined_inputs;

  bool ok() const { return undefined_inputs.empty(); }
};

/// Exhaustive scan for inputs on which the representation is undefined.
WellDefinedReport well_defined(const NNRep& r, int jobs = 1);
WellDefinedReport well_defined(const KNNRep& r, int jobs = 1);

}  // namespace nncomp
