#pragma once

#include <cstdint>

#include "nncomp/boolfn.hpp"
#include "nncomp/repr.hpp"
#include "nncomp/transforms.hpp"

namespace nncomp {

/// Clause-list lowering: one rational anchor per clause around a center
/// anchor at (1/2, ..., 1/2). CNF inputs are DeMorgan'd into the DNF of the
/// negation and the anchor labels flipped. Constant bit complexity.
NNRep cnf_to_nn(const CnfDnf& c, PassReport* report = nullptr);

/// Boolean-anchor representation of set disjointness over pairs (i, n+i):
/// 2n positive singleton anchors and n negative pair anchors.
NNRep disj_hnn(int n, PassReport* report = nullptr);

/// Parity as a min-plus threshold function: forms i^2 - 2i(x_1+...+x_n),
/// odd-indexed forms on the left.
MpPTF xor_mpptf(int n, PassReport* report = nullptr);

/// "Odd max bit" of the pairwise ANDs (x_i AND y_i) as a min-plus threshold
/// function: forms (k+1)(1 - x_k - y_k) plus a constant -1 on the right.
MpPTF omb_and2_mpptf(int n, PassReport* report = nullptr);

/// Block CNF whose one-set splits into C(k, k/2)^(n/k) components, together
/// with the exhaustively counted component number. The component count lower
/// bounds the Boolean anchor count of any representation.
struct ComponentCertificate {
  CnfDnf cnf;
  Int expected_components;
  std::uint64_t counted_components = 0;

  bool ok() const { return Int(counted_components) == expected_components; }
};
ComponentCertificate many_component_cnf(int n, int k);

/// Inner product over pairs (i, n+i) as a parity of n two-literal clauses.
SymAndCircuit ip_sym_and(int n);

}  // namespace nncomp
