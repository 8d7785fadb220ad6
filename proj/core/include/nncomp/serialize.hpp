#pragma once

#include <string>
#include <variant>

#include "nncomp/boolfn.hpp"
#include "nncomp/oracle.hpp"
#include "nncomp/repr.hpp"
#include "nncomp/transforms.hpp"

namespace nncomp {

/// Any representation the tool suite can read or write, tagged by the
/// "model" field of its JSON document.
using Representation =
    std::variant<NNRep, KNNRep, MpPTF, KStat, LabeledKStat, DecisionList, ThresholdCircuit>;

/// Thrown for malformed documents, unknown tags, or validation failures
/// while parsing. The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "nn", "knn", "mpptf", "kstat", "labeled_kstat", "ldl", "eldl", "circuit".
std::string model_tag(const Representation& r);

/// Source arity (number of input variables) of any representation.
int rep_arity(const Representation& r);

/// Pointwise evaluation dispatch.
TriBool rep_eval(const Representation& r, std::uint64_t x);

/// Serializes to a canonical, byte-deterministic JSON document (two-space
/// indentation, fixed key order, trailing newline). Rationals are written as
/// "p/q" strings ("p" when the denominator is one); no floating point ever
/// appears.
std::string to_json(const Representation& r);
std::string to_json(const NNRep& r);
std::string to_json(const KNNRep& r);
std::string to_json(const MpPTF& m);
std::string to_json(const KStat& s);
std::string to_json(const LabeledKStat& s);
std::string to_json(const DecisionList& d);
std::string to_json(const ThresholdCircuit& c);
std::string to_json(const PassReport& r);
std::string to_json(const EquivReport& r);
std::string to_json(const SearchResult& r);

/// Parses a representation document; throws ParseError on any problem and
/// runs the type's validate() before returning.
Representation parse_representation(const std::string& text);

/// Truth-table or family ground truth: either a "family:<name>:<n>" literal
/// (optionally "family:<name>:<n>:<k-or-inner>") or a truth-table string
/// "n=<arity>:<hex>".
struct GroundTruth {
  int arity = 0;
  std::function<bool(std::uint64_t)> eval;
};

/// Parses a ground-truth literal as accepted by `verify`; throws ParseError.
GroundTruth parse_ground_truth(const std::string& text);

/// DOT digraph for a threshold circuit, gate labels showing wire weights and
/// thresholds. Deterministic: nodes and edges in index order.
std::string to_dot(const ThresholdCircuit& c);

}  // namespace nncomp
