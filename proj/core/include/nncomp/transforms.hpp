#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nncomp/linear_form.hpp"
#include "nncomp/repr.hpp"

namespace nncomp {

/// Thrown when a pass requires a totally defined source representation and
/// the exhaustive scan found an input with no strict winner.
class IllDefinedError : public std::runtime_error {
 public:
  IllDefinedError(std::string what, std::uint64_t witness)
      : std::runtime_error(std::move(what)), witness_(witness) {}
  std::uint64_t witness() const { return witness_; }

 private:
  std::uint64_t witness_;
};

/// Size/weight accounting for a conversion. All metrics are recomputed from
/// the output object, never taken on faith from the pass.
struct PassReport {
  std::string pass;
  std::string source_model;
  std::string target_model;
  std::map<std::string, Int> metrics;
  std::optional<Int> bound;  // documented size bound, when one applies
  bool bound_met = true;
  std::string notes;
};

// --- NN / mpPTF -----------------------------------------------------------

/// Squared distance to an anchor, expanded through the embedding into an
/// affine form over the source variables.
LinearForm distance_form(const Substitution& embedding, const Anchor& a);

MpPTF nn_to_mpptf(const NNRep& r, PassReport* report = nullptr);

/// Block construction: Boolean anchors over duplicated variables and
/// constant-1 dimensions, ambient dimension <= 12nW + 8W.
NNRep mpptf_to_hnn(const MpPTF& m, PassReport* report = nullptr);

/// Rational anchors in n + 4 dimensions; per-form constants absorbed on the
/// constant dimensions via a rational four-square decomposition.
NNRep mpptf_to_nn(const MpPTF& m, PassReport* report = nullptr);

// --- kNN / kSTAT ----------------------------------------------------------

MpPTF knn_to_mpptf(const KNNRep& r, PassReport* report = nullptr);
KStat knn_to_kstat(const KNNRep& r, PassReport* report = nullptr);
KNNRep kstat_to_knn(const KStat& s, PassReport* report = nullptr);

/// Pads the side with the smaller statistic index using constant forms that
/// rank strictly below every genuine value, so that k_l = k_r.
KStat kstat_equalize(const KStat& s, PassReport* report = nullptr);

LabeledKStat twosided_to_labeled(const KStat& s, PassReport* report = nullptr);

/// Companion-form construction. The labeled tie rule is existential and is
/// not expressible positionally in general; this pass first perturbs the
/// forms so all values are distinct, which preserves the function exactly
/// when the source instance already has pointwise-distinct values.
KStat labeled_to_twosided(const LabeledKStat& s, PassReport* report = nullptr);

// --- decision lists -------------------------------------------------------

DecisionList mpptf_to_ldl(const MpPTF& m, PassReport* report = nullptr);
LabeledKStat eldl_to_kstat(const DecisionList& d, PassReport* report = nullptr);

// --- symmetric-top circuits ----------------------------------------------

/// Symmetric function of threshold gates. Gate i fires iff gates[i](x) > 0;
/// the output is top[t] where t is the number of firing gates.
struct SymMajCircuit {
  int n = 0;
  std::vector<LinearForm> gates;
  std::vector<std::uint8_t> top;  // size gates.size() + 1

  void validate() const;
};

/// Symmetric function of conjunctions. Clause i fires iff every variable in
/// positive[i] is 1 and every variable in negative[i] is 0 (1-based indices).
struct SymAndCircuit {
  struct Clause {
    std::vector<int> positive;
    std::vector<int> negative;
  };
  int n = 0;
  std::vector<Clause> clauses;
  std::vector<std::uint8_t> top;  // size clauses.size() + 1

  void validate() const;
};

bool eval_sym_maj(const SymMajCircuit& c, std::uint64_t x);
bool eval_sym_and(const SymAndCircuit& c, std::uint64_t x);

/// Rewrites [<w,x> >= theta] as a strict-positivity form [L(x) > 0].
LinearForm strict_positive_form(std::vector<Rational> w, const Rational& theta);

LabeledKStat sym_maj_to_kstat(const SymMajCircuit& c, PassReport* report = nullptr);
KNNRep sym_and_to_knn(const SymAndCircuit& c, PassReport* report = nullptr);

// --- threshold circuits from Boolean-anchor representations ---------------

enum class Depth3Variant { Auto, OrAndMaj, AndOrMaj };

ThresholdCircuit hnn_to_depth3(const NNRep& r, Depth3Variant variant = Depth3Variant::Auto,
                               PassReport* report = nullptr);
ThresholdCircuit hnn_to_depth3_slice(const NNRep& r, PassReport* report = nullptr);
ThresholdCircuit hnn_to_depth2(const NNRep& r, PassReport* report = nullptr);

}  // namespace nncomp
