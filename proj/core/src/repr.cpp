#include "nncomp/repr.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace nncomp {

namespace {

void check_anchor_dims(const std::vector<Anchor>& anchors, int dim, const char* side) {
  for (const auto& a : anchors)
    if (static_cast<int>(a.size()) != dim)
      throw std::invalid_argument(std::string(side) + " anchor dimension mismatch");
}

bool is_boolean(const Anchor& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c == 0 || c == 1; });
}

/// k-th smallest of a multiset (k is 1-based).
Rational kth_statistic(std::vector<Rational> values, int k) {
  auto mid = values.begin() + (k - 1);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

void check_source_cap(int n) {
  if (n > BoolFn::kMaxArity)
    throw std::invalid_argument("source arity exceeds exhaustive-scan cap");
}

TriBool eval_impl(const NNRep& r, std::uint64_t x) { return eval_nn(r, x); }
TriBool eval_impl(const KNNRep& r, std::uint64_t x) { return eval_knn(r, x); }

template <typename Rep>
WellDefinedReport well_defined_impl(const Rep& r, int jobs) {
  check_source_cap(r.source_arity());
  const std::uint64_t size = std::uint64_t(1) << r.source_arity();
  WellDefinedReport report;
  report.inputs_checked = size;
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (std::uint64_t x = 0; x < size; ++x)
      if (eval_impl(r, x) == TriBool::Undefined) report.undefined_inputs.push_back(x);
    return report;
  }
  std::vector<std::vector<std::uint64_t>> partial(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      std::uint64_t lo = size * w / jobs, hi = size * (w + 1) / jobs;
      for (std::uint64_t x = lo; x < hi; ++x)
        if (eval_impl(r, x) == TriBool::Undefined) partial[w].push_back(x);
    });
  }
  for (auto& t : workers) t.join();
  for (auto& p : partial)
    report.undefined_inputs.insert(report.undefined_inputs.end(), p.begin(), p.end());
  return report;
}

}  // namespace

bool NNRep::boolean_anchors() const {
  return std::all_of(pos.begin(), pos.end(), is_boolean) &&
         std::all_of(neg.begin(), neg.end(), is_boolean);
}

void NNRep::validate() const {
  embedding.validate();
  if (pos.empty() || neg.empty())
    throw std::invalid_argument("both anchor sets must be nonempty");
  check_anchor_dims(pos, ambient_dim(), "positive");
  check_anchor_dims(neg, ambient_dim(), "negative");
  for (const auto& p : pos)
    for (const auto& q : neg)
      if (p == q) throw std::invalid_argument("positive and negative anchor sets intersect");
}

void KNNRep::validate() const {
  rep.validate();
  if (k < 1 || k > anchor_count())
    throw std::invalid_argument("k out of range for anchor count");
}

Int MpPTF::max_weight() const { return std::max(max_abs_coeff(left), max_abs_coeff(right)); }

void MpPTF::validate() const {
  if (left.empty() || right.empty())
    throw std::invalid_argument("mpPTF needs at least one form per side");
  for (const auto* side : {&left, &right})
    for (const auto& f : *side) {
      if (f.arity() != n) throw std::invalid_argument("form arity mismatch");
      if (!f.is_integral()) throw std::invalid_argument("mpPTF forms must be integral");
    }
}

void KStat::validate() const {
  if (k_l < 1 || k_l > static_cast<int>(left.size()) || k_r < 1 ||
      k_r > static_cast<int>(right.size()))
    throw std::invalid_argument("statistic index out of range");
  for (const auto* side : {&left, &right})
    for (const auto& f : *side) {
      if (f.arity() != n) throw std::invalid_argument("form arity mismatch");
      if (!f.is_integral()) throw std::invalid_argument("kSTAT forms must be integral");
    }
}

void LabeledKStat::validate() const {
  if (forms.empty()) throw std::invalid_argument("labeled kSTAT needs at least one form");
  if (forms.size() != labels.size()) throw std::invalid_argument("labels/forms size mismatch");
  if (k < 1 || k > static_cast<int>(forms.size()))
    throw std::invalid_argument("statistic index out of range");
  for (const auto& f : forms) {
    if (f.arity() != n) throw std::invalid_argument("form arity mismatch");
    if (!f.is_integral()) throw std::invalid_argument("kSTAT forms must be integral");
  }
}

void DecisionList::validate() const {
  for (const auto& [form, out] : entries) {
    if (form.arity() != n) throw std::invalid_argument("form arity mismatch");
    if (!form.is_integral()) throw std::invalid_argument("decision list forms must be integral");
    if (out > 1) throw std::invalid_argument("entry output must be a bit");
  }
}

int ThresholdCircuit::depth() const {
  std::vector<int> d(gates.size(), 0);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    int best = 0;
    for (const auto& [node, w] : gates[g].wires)
      if (node >= n) best = std::max(best, d[node - n]);
    d[g] = best + 1;
  }
  return gates.empty() ? 0 : d[output];
}

Int ThresholdCircuit::max_weight() const {
  Int w = 0;
  for (const auto& g : gates)
    for (const auto& [node, weight] : g.wires) w = std::max(w, Int(abs(weight)));
  return w;
}

void ThresholdCircuit::validate() const {
  for (std::size_t g = 0; g < gates.size(); ++g)
    for (const auto& [node, w] : gates[g].wires)
      if (node < 0 || node >= n + static_cast<int>(g))
        throw std::invalid_argument("gate wired to a non-earlier node");
  if (output < 0 || output >= static_cast<int>(gates.size()))
    throw std::invalid_argument("output gate out of range");
}

Rational anchor_distance(const NNRep& r, const Anchor& a, std::uint64_t x) {
  Rational d = 0;
  for (int j = 0; j < r.ambient_dim(); ++j) {
    Rational diff = Rational(r.embedding.target_bit(x, j) ? 1 : 0) - a[j];
    d += diff * diff;
  }
  return d;
}

TriBool eval_nn(const NNRep& r, std::uint64_t x) {
  Rational best_pos = anchor_distance(r, r.pos[0], x);
  for (std::size_t i = 1; i < r.pos.size(); ++i)
    best_pos = std::min(best_pos, anchor_distance(r, r.pos[i], x));
  Rational best_neg = anchor_distance(r, r.neg[0], x);
  for (std::size_t i = 1; i < r.neg.size(); ++i)
    best_neg = std::min(best_neg, anchor_distance(r, r.neg[i], x));
  if (best_pos < best_neg) return TriBool::True;
  if (best_neg < best_pos) return TriBool::False;
  return TriBool::Undefined;
}

TriBool eval_knn(const KNNRep& r, std::uint64_t x) {
  struct Entry {
    Rational dist;
    bool positive;
  };
  std::vector<Entry> entries;
  entries.reserve(r.anchor_count());
  for (const auto& p : r.rep.pos) entries.push_back({anchor_distance(r.rep, p, x), true});
  for (const auto& q : r.rep.neg) entries.push_back({anchor_distance(r.rep, q, x), false});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.dist < b.dist; });
  const int k = r.k;
  // A strictly separated k-set exists iff the k-th and (k+1)-th sorted
  // distances differ.
  if (k < static_cast<int>(entries.size()) && entries[k - 1].dist == entries[k].dist)
    return TriBool::Undefined;
  int pos_count = 0;
  for (int i = 0; i < k; ++i)
    if (entries[i].positive) ++pos_count;
  return tri(2 * pos_count >= k);
}

bool eval_mpptf(const MpPTF& m, std::uint64_t x) {
  Rational min_left = m.left[0].eval(x);
  for (std::size_t i = 1; i < m.left.size(); ++i)
    min_left = std::min(min_left, m.left[i].eval(x));
  Rational min_right = m.right[0].eval(x);
  for (std::size_t i = 1; i < m.right.size(); ++i)
    min_right = std::min(min_right, m.right[i].eval(x));
  return min_left <= min_right;  // ties go left
}

bool eval_kstat(const KStat& s, std::uint64_t x) {
  std::vector<Rational> lv, rv;
  lv.reserve(s.left.size());
  rv.reserve(s.right.size());
  for (const auto& f : s.left) lv.push_back(f.eval(x));
  for (const auto& f : s.right) rv.push_back(f.eval(x));
  return kth_statistic(std::move(lv), s.k_l) < kth_statistic(std::move(rv), s.k_r);
}

bool eval_labeled_kstat(const LabeledKStat& s, std::uint64_t x) {
  std::vector<Rational> values;
  values.reserve(s.forms.size());
  for (const auto& f : s.forms) values.push_back(f.eval(x));
  Rational pivot = kth_statistic(values, s.k);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (s.labels[i] && values[i] == pivot) return true;
  return false;
}

bool eval_dlist(const DecisionList& d, std::uint64_t x) {
  for (const auto& [form, out] : d.entries) {
    Rational v = form.eval(x);
    bool fires = d.kind == ListKind::Ldl ? v >= 0 : v == 0;
    if (fires) return out;
  }
  return false;
}

bool eval_circuit(const ThresholdCircuit& c, std::uint64_t x) {
  std::vector<bool> value(c.gates.size());
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    Int acc = 0;
    for (const auto& [node, w] : c.gates[g].wires) {
      bool bit = node < c.n ? ((x >> node) & 1u) : value[node - c.n];
      if (bit) acc += w;
    }
    value[g] = c.gates[g].cmp == GateCmp::Ge ? acc >= c.gates[g].threshold
                                             : acc == c.gates[g].threshold;
  }
  return value[c.output];
}

int bit_complexity(const NNRep& r) {
  int bits = 0;
  for (const auto* side : {&r.pos, &r.neg})
    for (const auto& a : *side)
      for (const auto& coord : a) bits = std::max(bits, bit_size(coord));
  return bits;
}

int bit_complexity(const KNNRep& r) { return bit_complexity(r.rep); }

WellDefinedReport well_defined(const NNRep& r, int jobs) { return well_defined_impl(r, jobs); }
WellDefinedReport well_defined(const KNNRep& r, int jobs) { return well_defined_impl(r, jobs); }

}  // namespace nncomp
