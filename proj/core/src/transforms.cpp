#include "nncomp/transforms.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "nncomp/oracle.hpp"

namespace nncomp {

namespace {

void require_well_defined(const WellDefinedReport& wd, const char* pass) {
  if (!wd.ok())
    throw IllDefinedError(std::string(pass) + ": source representation is undefined at input " +
                              std::to_string(wd.undefined_inputs.front()),
                          wd.undefined_inputs.front());
}

void fill_report(PassReport* r, std::string pass, std::string source, std::string target) {
  if (!r) return;
  r->pass = std::move(pass);
  r->source_model = std::move(source);
  r->target_model = std::move(target);
}

Int form_count_weight(const std::vector<LinearForm>& forms) { return max_abs_coeff(forms); }

std::vector<LinearForm*> all_form_ptrs(MpPTF& m) {
  std::vector<LinearForm*> ptrs;
  for (auto& f : m.left) ptrs.push_back(&f);
  for (auto& f : m.right) ptrs.push_back(&f);
  return ptrs;
}

/// Integer coefficient of x_k after the integrality precondition.
Int coeff(const LinearForm& f, int k) { return to_integer(f.coeffs[k]); }

}  // namespace

LinearForm distance_form(const Substitution& embedding, const Anchor& a) {
  LinearForm f(embedding.source_arity);
  for (int j = 0; j < embedding.target_arity(); ++j) {
    f.constant += a[j] * a[j];
    Rational slope = 1 - 2 * a[j];
    int entry = embedding.map[j];
    if (entry >= 1)
      f.coeffs[entry - 1] += slope;
    else if (entry == -1)
      f.constant += slope;
  }
  return f;
}

MpPTF nn_to_mpptf(const NNRep& r, PassReport* report) {
  r.validate();
  MpPTF out;
  out.n = r.source_arity();
  for (const auto& p : r.pos) out.left.push_back(distance_form(r.embedding, p));
  for (const auto& q : r.neg) out.right.push_back(distance_form(r.embedding, q));
  scale_to_integral(all_form_ptrs(out));

  fill_report(report, "nn-to-mpptf", "nn", "mpptf");
  if (report) {
    report->metrics["terms"] = out.terms();
    report->metrics["max_weight"] = out.max_weight();
    if (r.boolean_anchors()) {
      // Boolean anchors yield slopes in {-1, 1}; duplication through the
      // embedding caps every weight by the ambient dimension.
      report->bound = r.ambient_dim();
      report->bound_met = out.max_weight() <= *report->bound;
    }
  }
  return out;
}

NNRep mpptf_to_hnn(const MpPTF& m, PassReport* report) {
  m.validate();
  const int n = m.n;
  const Int input_weight = m.max_weight();

  // Preprocessing: double, then shift the right side by one so the two sides
  // can never tie; make every coefficient nonnegative by adding the same
  // multiple of each variable to all forms; double again so every block
  // length below is integral.
  MpPTF w = m;
  for (auto* f : all_form_ptrs(w)) *f *= 2;
  for (auto& f : w.right) f += 1;
  for (int k = 0; k < n; ++k) {
    Int cmin = coeff(w.left[0], k);
    for (auto* f : all_form_ptrs(w)) cmin = std::min(cmin, coeff(*f, k));
    if (cmin < 0)
      for (auto* f : all_form_ptrs(w)) f->coeffs[k] -= Rational(cmin);
  }
  for (auto* f : all_form_ptrs(w)) *f *= 2;

  std::vector<Int> t(n, 0);
  for (int k = 0; k < n; ++k)
    for (auto* f : all_form_ptrs(w)) t[k] = std::max(t[k], coeff(*f, k));

  // Half-gaps S_f = sum_k (t_k - a_k)/2 and the shared offset Theta chosen so
  // every constant-block length z_f = Theta + theta_f - S_f is nonnegative.
  auto half_gap = [&](const LinearForm& f) {
    Int s = 0;
    for (int k = 0; k < n; ++k) s += (t[k] - coeff(f, k)) / 2;
    return s;
  };
  Int theta_cap = 0;
  for (auto* f : all_form_ptrs(w)) theta_cap = std::max(theta_cap, half_gap(*f) - to_integer(f->constant));
  const Int big_theta = theta_cap;  // >= 0 by initialization, so anchor counts stay nonnegative
  auto z_of = [&](const LinearForm& f) { return big_theta + to_integer(f.constant) - half_gap(f); };
  // Constant-block size Theta + max constant; every z_f fits because the
  // half-gaps S_f are nonnegative.
  Int theta_max = to_integer(all_form_ptrs(w).front()->constant);
  for (auto* f : all_form_ptrs(w)) theta_max = std::max(theta_max, to_integer(f->constant));
  const Int C = big_theta + theta_max;

  NNRep out;
  out.embedding.source_arity = n;
  for (int k = 0; k < n; ++k)
    for (Int i = 0; i < t[k]; ++i) out.embedding.map.push_back(k + 1);
  for (Int i = 0; i < C; ++i) out.embedding.map.push_back(-1);

  auto anchor_for = [&](const LinearForm& f) {
    Anchor a;
    a.reserve(out.embedding.map.size());
    for (int k = 0; k < n; ++k) {
      Int zeros = (t[k] + coeff(f, k)) / 2;
      for (Int i = 0; i < t[k]; ++i) a.push_back(i < zeros ? 0 : 1);
    }
    Int z = z_of(f);
    for (Int i = 0; i < C; ++i) a.push_back(i < z ? 0 : 1);
    return a;
  };
  for (const auto& f : w.left) out.pos.push_back(anchor_for(f));
  for (const auto& f : w.right) out.neg.push_back(anchor_for(f));
  out.validate();

  fill_report(report, "mpptf-to-hnn", "mpptf", "hnn");
  if (report) {
    report->metrics["anchors"] = out.anchor_count();
    report->metrics["ambient_dim"] = out.ambient_dim();
    report->metrics["bit_complexity"] = bit_complexity(out);
    report->bound = 12 * input_weight * n + 8 * input_weight;
    report->bound_met = Int(out.ambient_dim()) <= *report->bound;
  }
  return out;
}

namespace {

/// Shared offset making every residual theta_f + Theta - sum (1-a_i)^2/4
/// nonnegative, for the rational-anchor constructions.
Rational shared_offset(const std::vector<const LinearForm*>& forms) {
  Rational theta = 0;
  for (const auto* f : forms) {
    Rational s = 0;
    for (const auto& c : f->coeffs) s += (1 - c) * (1 - c) / 4;
    theta = std::max(theta, Rational(s - f->constant));
  }
  return std::max(theta, Rational(0));
}

/// Anchor realizing distance = form + Theta: (1 - a_i)/2 on the variable
/// coordinates, constants absorbed on four constant-1 dimensions.
Anchor absorbing_anchor(const LinearForm& f, const Rational& big_theta) {
  Anchor a;
  a.reserve(f.coeffs.size() + 4);
  Rational residual = f.constant + big_theta;
  for (const auto& c : f.coeffs) {
    a.push_back((1 - c) / 2);
    residual -= (1 - c) * (1 - c) / 4;
  }
  for (const auto& r : four_square(residual)) a.push_back(1 - r);
  return a;
}

Substitution identity_plus_four_ones(int n) {
  Substitution v = Substitution::identity(n);
  v.map.insert(v.map.end(), 4, -1);
  return v;
}

}  // namespace

NNRep mpptf_to_nn(const MpPTF& m, PassReport* report) {
  m.validate();
  MpPTF w = m;
  for (auto* f : all_form_ptrs(w)) *f *= 2;
  for (auto& f : w.right) f += 1;

  std::vector<const LinearForm*> forms;
  for (auto* f : all_form_ptrs(w)) forms.push_back(f);
  const Rational big_theta = shared_offset(forms);

  NNRep out;
  out.embedding = identity_plus_four_ones(m.n);
  for (const auto& f : w.left) out.pos.push_back(absorbing_anchor(f, big_theta));
  for (const auto& f : w.right) out.neg.push_back(absorbing_anchor(f, big_theta));
  out.validate();

  fill_report(report, "mpptf-to-nn", "mpptf", "nn");
  if (report) {
    report->metrics["anchors"] = out.anchor_count();
    report->metrics["ambient_dim"] = out.ambient_dim();
    report->metrics["bit_complexity"] = bit_complexity(out);
    report->bound = m.n + 4;
    report->bound_met = out.ambient_dim() == m.n + 4;
  }
  return out;
}

MpPTF knn_to_mpptf(const KNNRep& r, PassReport* report) {
  r.validate();
  require_well_defined(well_defined(r), "knn-to-mpptf");

  std::vector<LinearForm> dist;
  std::vector<int> label;  // +1 positive, -1 negative
  for (const auto& p : r.rep.pos) {
    dist.push_back(distance_form(r.rep.embedding, p));
    label.push_back(1);
  }
  for (const auto& q : r.rep.neg) {
    dist.push_back(distance_form(r.rep.embedding, q));
    label.push_back(-1);
  }
  {
    std::vector<LinearForm*> ptrs;
    for (auto& f : dist) ptrs.push_back(&f);
    scale_to_integral(ptrs);
  }

  MpPTF out;
  out.n = r.source_arity();
  const int mcount = static_cast<int>(dist.size());
  std::vector<int> pick(r.k);
  for (int i = 0; i < r.k; ++i) pick[i] = i;
  // Enumerate k-subsets; the subset of the k nearest anchors uniquely
  // minimizes the summed distance whenever the representation is defined.
  while (true) {
    LinearForm sum(out.n);
    int votes = 0;
    for (int idx : pick) {
      for (int i = 0; i < out.n; ++i) sum.coeffs[i] += dist[idx].coeffs[i];
      sum.constant += dist[idx].constant;
      votes += label[idx];
    }
    (votes >= 0 ? out.left : out.right).push_back(std::move(sum));
    int i = r.k - 1;
    while (i >= 0 && pick[i] == mcount - (r.k - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < r.k; ++j) pick[j] = pick[j - 1] + 1;
  }
  // A side left empty (every subset voted the other way) means the function
  // is constant; a dummy form beyond every attainable value keeps it so.
  if (out.left.empty() || out.right.empty()) {
    Rational bound = 0;
    for (const auto* side : {&out.left, &out.right})
      for (const auto& f : *side) bound = std::max(bound, f.value_bound());
    auto& side = out.left.empty() ? out.left : out.right;
    side.push_back(LinearForm(std::vector<Rational>(out.n, 0), bound));
  }
  out.validate();

  fill_report(report, "knn-to-mpptf", "knn", "mpptf");
  if (report) {
    report->metrics["terms"] = out.terms();
    report->metrics["max_weight"] = out.max_weight();
  }
  return out;
}

KStat knn_to_kstat(const KNNRep& r, PassReport* report) {
  r.validate();
  require_well_defined(well_defined(r), "knn-to-kstat");

  KStat out;
  out.n = r.source_arity();
  for (const auto& p : r.rep.pos) out.left.push_back(distance_form(r.rep.embedding, p));
  for (const auto& q : r.rep.neg) out.right.push_back(distance_form(r.rep.embedding, q));
  {
    std::vector<LinearForm*> ptrs;
    for (auto& f : out.left) ptrs.push_back(&f);
    for (auto& f : out.right) ptrs.push_back(&f);
    scale_to_integral(ptrs);
  }
  // The vote is positive iff the t-th nearest positive beats the
  // (k - t + 1)-th nearest negative, t = floor((k+1)/2).
  out.k_l = (r.k + 1) / 2;
  out.k_r = r.k - out.k_l + 1;

  // A side shorter than its statistic index can never win the vote; pad it
  // with constants ranking strictly above every genuine value.
  Rational bound = 0;
  for (const auto* side : {&out.left, &out.right})
    for (const auto& f : *side) bound = std::max(bound, f.value_bound());
  Int pad = to_integer(bound);
  while (static_cast<int>(out.left.size()) < out.k_l)
    out.left.push_back(LinearForm(std::vector<Rational>(out.n, 0), Rational(++pad)));
  while (static_cast<int>(out.right.size()) < out.k_r)
    out.right.push_back(LinearForm(std::vector<Rational>(out.n, 0), Rational(++pad)));
  out.validate();
  // Even k leaves the two statistic indices one apart; equalize them with
  // always-below dummies so both sides use the same index.
  out = kstat_equalize(out);

  fill_report(report, "knn-to-kstat", "knn", "kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.left.size() + out.right.size());
    report->metrics["k_l"] = out.k_l;
    report->metrics["k_r"] = out.k_r;
  }
  return out;
}

KStat kstat_equalize(const KStat& s, PassReport* report) {
  s.validate();
  KStat out = s;
  if (out.k_l != out.k_r) {
    Rational bound = 0;
    for (const auto* side : {&out.left, &out.right})
      for (const auto& f : *side) bound = std::max(bound, f.value_bound());
    Int next = to_integer(bound);
    auto dummy = [&] { return LinearForm(std::vector<Rational>(out.n, 0), Rational(-(++next))); };
    // Dummies rank strictly below everything, shifting the statistic index.
    while (out.k_l < out.k_r) {
      out.left.push_back(dummy());
      ++out.k_l;
    }
    while (out.k_r < out.k_l) {
      out.right.push_back(dummy());
      ++out.k_r;
    }
  }
  fill_report(report, "kstat-equalize", "kstat", "kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.left.size() + out.right.size());
    report->metrics["k"] = out.k_l;
  }
  return out;
}

namespace {

/// Multiplies by `scale` and adds per-form residues so that no two forms can
/// ever take equal values. Residues must be < scale; lower residues win ties.
void make_distinct(std::vector<LinearForm*>& forms, const Int& scale) {
  Int residue = 0;
  for (auto* f : forms) {
    *f *= Rational(scale);
    *f += Rational(residue++);
  }
}

}  // namespace

KNNRep kstat_to_knn(const KStat& s, PassReport* report) {
  KStat eq = kstat_equalize(s);
  const int t = eq.k_l;
  // Right forms get the lower residues: a tied statistic must stay a loss
  // for the strict left-beats-right comparison.
  std::vector<LinearForm*> ordered;
  for (auto& f : eq.right) ordered.push_back(&f);
  for (auto& f : eq.left) ordered.push_back(&f);
  make_distinct(ordered, Int(ordered.size()));

  std::vector<const LinearForm*> all;
  for (auto* f : ordered) all.push_back(f);
  const Rational big_theta = shared_offset(all);

  KNNRep out;
  out.rep.embedding = identity_plus_four_ones(eq.n);
  for (const auto& f : eq.left) out.rep.pos.push_back(absorbing_anchor(f, big_theta));
  for (const auto& f : eq.right) out.rep.neg.push_back(absorbing_anchor(f, big_theta));
  out.k = 2 * t - 1;
  out.validate();

  fill_report(report, "kstat-to-knn", "kstat", "knn");
  if (report) {
    report->metrics["anchors"] = out.anchor_count();
    report->metrics["k"] = out.k;
    report->metrics["ambient_dim"] = out.rep.ambient_dim();
  }
  return out;
}

LabeledKStat twosided_to_labeled(const KStat& s, PassReport* report) {
  s.validate();
  KStat w = s;
  const int ell1 = static_cast<int>(w.left.size()), ell2 = static_cast<int>(w.right.size());
  std::vector<LinearForm*> ordered;
  for (auto& f : w.right) ordered.push_back(&f);
  for (auto& f : w.left) ordered.push_back(&f);
  make_distinct(ordered, Int(ell1 + ell2));

  const int sum_k = w.k_l + w.k_r;
  const Int q = Int(sum_k) * (sum_k + 1);
  LabeledKStat out;
  out.n = w.n;
  // Left forms expand to sum_k copies with strides sum_k + 1, right forms to
  // sum_k + 1 copies with strides sum_k; copy j is labeled [j >= k_l].
  for (const auto& f : w.left)
    for (int j = 0; j < sum_k; ++j) {
      LinearForm copy = f;
      copy *= Rational(q);
      copy += Rational(j * (sum_k + 1));
      out.forms.push_back(std::move(copy));
      out.labels.push_back(j >= w.k_l);
    }
  for (const auto& f : w.right)
    for (int j = 0; j <= sum_k; ++j) {
      LinearForm copy = f;
      copy *= Rational(q);
      copy += Rational(j * sum_k);
      out.forms.push_back(std::move(copy));
      out.labels.push_back(j >= w.k_l);
    }
  out.k = (sum_k - 1) * (sum_k + 1) + 1;
  out.validate();

  fill_report(report, "twosided-to-labeled", "kstat", "labeled_kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.forms.size());
    report->metrics["k"] = out.k;
    report->bound = Int(sum_k) * ell1 + Int(sum_k + 1) * ell2;
    report->bound_met = Int(out.forms.size()) == *report->bound;
  }
  return out;
}

KStat labeled_to_twosided(const LabeledKStat& s, PassReport* report) {
  s.validate();
  LabeledKStat w = s;
  {
    std::vector<LinearForm*> ordered;
    for (auto& f : w.forms) ordered.push_back(&f);
    // Even scale and even residues, so that the +1 companions below can
    // never collide with a primary form.
    Int scale = 2 * Int(w.forms.size());
    Int residue = 0;
    for (auto* f : ordered) {
      *f *= Rational(scale);
      *f += Rational(2 * residue++);
    }
  }

  KStat out;
  out.n = w.n;
  out.k_l = out.k_r = w.k;
  for (std::size_t i = 0; i < w.forms.size(); ++i) {
    LinearForm shifted = w.forms[i];
    shifted += 1;
    if (w.labels[i]) {
      out.left.push_back(w.forms[i]);
      out.right.push_back(std::move(shifted));
    } else {
      out.right.push_back(w.forms[i]);
      out.left.push_back(std::move(shifted));
    }
  }
  out.validate();

  fill_report(report, "labeled-to-twosided", "labeled_kstat", "kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.left.size() + out.right.size());
    report->metrics["k"] = out.k_l;
    report->notes =
        "exact for sources whose form values are pairwise distinct on every "
        "input; the existential tie rule is not positionally expressible";
  }
  return out;
}

DecisionList mpptf_to_ldl(const MpPTF& m, PassReport* report) {
  m.validate();
  MpPTF w = m;
  const int ell = w.terms();
  std::vector<LinearForm*> ordered;
  for (auto& f : w.left) ordered.push_back(&f);
  for (auto& f : w.right) ordered.push_back(&f);
  // Left forms take the lower residues so an original tie of minima keeps
  // resolving to output 1.
  make_distinct(ordered, 2 * Int(ell));

  struct Entry {
    Int value;
    int form;
    bool left;
  };
  std::vector<Entry> entries;
  Int total_values = 0;
  for (int idx = 0; idx < ell; ++idx) {
    const LinearForm& f = *ordered[idx];
    std::set<Int> attainable{to_integer(f.constant)};
    for (const auto& c : f.coeffs) {
      if (c == 0) continue;
      std::set<Int> next = attainable;
      for (const auto& v : attainable) next.insert(v + to_integer(c));
      attainable.swap(next);
    }
    total_values += Int(attainable.size());
    for (const auto& v : attainable)
      entries.push_back({v, idx, idx < static_cast<int>(w.left.size())});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.value != b.value ? a.value < b.value : a.form < b.form;
  });

  DecisionList out;
  out.n = w.n;
  out.kind = ListKind::Ldl;
  for (const auto& e : entries) {
    // Query [F(x) <= a] as the threshold form a - F(x) >= 0.
    LinearForm q(out.n);
    const LinearForm& f = *ordered[e.form];
    for (int i = 0; i < out.n; ++i) q.coeffs[i] = -f.coeffs[i];
    q.constant = Rational(e.value) - f.constant;
    out.entries.emplace_back(std::move(q), e.left ? 1 : 0);
  }
  while (!out.entries.empty() && out.entries.back().second == 0) out.entries.pop_back();
  out.validate();

  fill_report(report, "mpptf-to-ldl", "mpptf", "ldl");
  if (report) {
    report->metrics["length"] = out.length();
    report->bound = total_values;
    report->bound_met = Int(out.length()) <= total_values;
  }
  return out;
}

void SymMajCircuit::validate() const {
  if (gates.empty()) throw std::invalid_argument("circuit needs at least one gate");
  if (top.size() != gates.size() + 1)
    throw std::invalid_argument("top table must have one entry per firing count");
  for (const auto& g : gates) {
    if (g.arity() != n) throw std::invalid_argument("gate arity mismatch");
    if (!g.is_integral()) throw std::invalid_argument("gate forms must be integral");
  }
  for (auto b : top)
    if (b > 1) throw std::invalid_argument("top table entries must be bits");
}

void SymAndCircuit::validate() const {
  if (n < 1) throw std::invalid_argument("circuit needs at least one variable");
  if (clauses.empty()) throw std::invalid_argument("circuit needs at least one clause");
  if (top.size() != clauses.size() + 1)
    throw std::invalid_argument("top table must have one entry per firing count");
  for (const auto& c : clauses) {
    if (c.positive.empty() && c.negative.empty())
      throw std::invalid_argument("clause with no literals");
    for (const auto* lits : {&c.positive, &c.negative})
      for (int v : *lits)
        if (v < 1 || v > n) throw std::invalid_argument("clause variable out of range");
    for (int v : c.positive)
      if (std::find(c.negative.begin(), c.negative.end(), v) != c.negative.end())
        throw std::invalid_argument("variable appears with both polarities in a clause");
  }
  for (auto b : top)
    if (b > 1) throw std::invalid_argument("top table entries must be bits");
}

bool eval_sym_maj(const SymMajCircuit& c, std::uint64_t x) {
  int firing = 0;
  for (const auto& g : c.gates)
    if (g.eval(x) > 0) ++firing;
  return c.top[firing];
}

bool eval_sym_and(const SymAndCircuit& c, std::uint64_t x) {
  int firing = 0;
  for (const auto& cl : c.clauses) {
    bool fire = true;
    for (int v : cl.positive) fire = fire && ((x >> (v - 1)) & 1u);
    for (int v : cl.negative) fire = fire && !((x >> (v - 1)) & 1u);
    firing += fire;
  }
  return c.top[firing];
}

LinearForm strict_positive_form(std::vector<Rational> w, const Rational& theta) {
  // Over the integers, <w,x> >= theta iff <w,x> - theta + 1 > 0.
  return LinearForm(std::move(w), 1 - theta);
}

LabeledKStat sym_maj_to_kstat(const SymMajCircuit& c, PassReport* report) {
  c.validate();
  const int s = static_cast<int>(c.gates.size());
  LabeledKStat out;
  out.n = c.n;
  // Scaled gate forms can never land among the constants 1..s+1, so the
  // (s+1)-th statistic is always the constant indexed by the firing count.
  for (const auto& g : c.gates) {
    LinearForm f = g;
    f *= Rational(s + 2);
    out.forms.push_back(std::move(f));
    out.labels.push_back(0);
  }
  for (int i = 1; i <= s + 1; ++i) {
    out.forms.push_back(LinearForm(std::vector<Rational>(c.n, 0), Rational(i)));
    out.labels.push_back(c.top[i - 1]);
  }
  out.k = s + 1;
  out.validate();

  fill_report(report, "sym-maj-to-kstat", "sym_maj", "labeled_kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.forms.size());
    report->metrics["k"] = out.k;
    report->bound = 2 * s + 1;
    report->bound_met = Int(out.forms.size()) == *report->bound;
  }
  return out;
}

KNNRep sym_and_to_knn(const SymAndCircuit& c, PassReport* report) {
  c.validate();
  const int s = static_cast<int>(c.clauses.size());
  const int n = c.n;

  Int cmax = 1;
  for (const auto& cl : c.clauses)
    cmax = std::max(cmax, Int(cl.positive.size() + cl.negative.size()));

  // Margin schedule: clause anchors must fall strictly below the q band when
  // the clause fires and strictly above it otherwise.
  const Rational d_denom = 64 * (s + 2) * cmax * cmax;
  const Rational u = Rational(1, 8 * (2 * s + 3) * cmax);

  KNNRep out;
  out.rep.embedding = Substitution::identity(n);
  auto push = [&](Anchor a, bool positive) {
    (positive ? out.rep.pos : out.rep.neg).push_back(std::move(a));
  };

  Rational firing_margin_min;  // min over clauses of c (eps - eps^2)
  bool first = true;
  for (int i = 1; i <= s; ++i) {
    const auto& cl = c.clauses[i - 1];
    const Rational csize = Rational(cl.positive.size() + cl.negative.size());
    for (int j = 0; j <= 1; ++j) {
      Rational eps = Rational(1) / (2 * csize) - Rational(2 * i + j) / d_denom;
      if (!(eps > 0 && eps < Rational(1, 2)))
        throw std::logic_error("margin schedule violated: eps out of (0, 1/2)");
      Rational margin = csize * (eps - eps * eps);
      if (first || margin < firing_margin_min) firing_margin_min = margin;
      first = false;
      Anchor a(n, Rational(1, 2));
      for (int v : cl.positive) a[v - 1] = Rational(3, 2) - eps;
      for (int v : cl.negative) a[v - 1] = Rational(-1, 2) + eps;
      push(std::move(a), j == 1);
    }
  }
  Rational delta_max = Rational(2 * (s + 1) + 1) * u;
  if (!(delta_max - delta_max * delta_max < firing_margin_min) && s > 0)
    throw std::logic_error("margin schedule violated: q band overlaps firing distances");
  for (int i = 1; i <= s + 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int l = 0; l <= 1; ++l) {
        Anchor a(n, Rational(1, 2));
        Rational delta = Rational(2 * i + j) * u;
        a[0] += (l == 0 ? delta : -delta);
        bool label = j == 1 ? c.top[i - 1] != 0 : c.top[i - 1] == 0;
        push(std::move(a), label);
      }
  out.k = 2 * s + 1;
  out.rep.validate();

  fill_report(report, "sym-and-to-knn", "sym_and", "knn");
  if (report) {
    report->metrics["anchors"] = out.anchor_count();
    report->metrics["k"] = out.k;
    report->bound = 6 * s + 4;
    report->bound_met = Int(out.anchor_count()) == *report->bound;
  }
  return out;
}

LabeledKStat eldl_to_kstat(const DecisionList& d, PassReport* report) {
  d.validate();
  if (d.kind != ListKind::Eldl)
    throw std::invalid_argument("eldl-to-kstat requires an exact decision list");
  const int s = d.length();
  const Int m = 2 * s + 3;

  // Totalize with a sentinel always-firing query of output 0, then emit a
  // primary and a sign-flipped companion per query. Exactly s of the 2(s+1)
  // forms exceed the first firing query's primary value, which therefore is
  // the (s+2)-th statistic; its label is that query's output.
  LabeledKStat out;
  out.n = d.n;
  auto add_query = [&](const LinearForm& form, int index, bool output) {
    LinearForm primary = form;
    primary *= Rational(m);
    primary += Rational(index - 1);
    LinearForm companion = form;
    companion *= Rational(-m);
    companion += Rational(-(index - 1));
    out.forms.push_back(std::move(primary));
    out.labels.push_back(output);
    out.forms.push_back(std::move(companion));
    out.labels.push_back(0);
  };
  for (int i = 1; i <= s; ++i) add_query(d.entries[i - 1].first, i, d.entries[i - 1].second);
  add_query(LinearForm(d.n), s + 1, false);
  out.k = s + 2;
  out.validate();

  fill_report(report, "eldl-to-kstat", "eldl", "labeled_kstat");
  if (report) {
    report->metrics["forms"] = static_cast<int>(out.forms.size());
    report->metrics["k"] = out.k;
    report->notes = "statistic index and multiplier differ from the naive choice; see ledger";
  }
  return out;
}

namespace {

void require_boolean(const NNRep& r, const char* pass) {
  r.validate();
  if (!r.boolean_anchors())
    throw std::invalid_argument(std::string(pass) + " requires Boolean anchors");
}

/// Threshold gate [<w, emb(x)> >= theta] folded through the embedding into a
/// gate over the source inputs.
Gate fold_gate(const std::vector<Int>& ambient_w, Int theta, const Substitution& emb) {
  std::vector<Int> w(emb.source_arity, 0);
  for (int j = 0; j < emb.target_arity(); ++j) {
    int entry = emb.map[j];
    if (entry >= 1)
      w[entry - 1] += ambient_w[j];
    else if (entry == -1)
      theta -= ambient_w[j];
  }
  Gate g;
  for (int i = 0; i < emb.source_arity; ++i)
    if (w[i] != 0) g.wires.emplace_back(i, w[i]);
  g.threshold = theta;
  return g;
}

Int anchor_weight(const Anchor& a) {
  Int s = 0;
  for (const auto& c : a) s += to_integer(c);
  return s;
}

/// [Delta(x, p) < Delta(x, q)] as a threshold gate over the source inputs.
Gate comparator_gate(const NNRep& r, const Anchor& p, const Anchor& q) {
  std::vector<Int> w(r.ambient_dim());
  for (int j = 0; j < r.ambient_dim(); ++j) w[j] = 2 * to_integer(p[j] - q[j]);
  return fold_gate(w, anchor_weight(p) - anchor_weight(q) + 1, r.embedding);
}

/// [Delta(x, a) <= i] (or >= i when `at_most` is false).
Gate slice_gate(const NNRep& r, const Anchor& a, const Int& i, bool at_most) {
  std::vector<Int> w(r.ambient_dim());
  for (int j = 0; j < r.ambient_dim(); ++j)
    w[j] = at_most ? 2 * to_integer(a[j]) - 1 : 1 - 2 * to_integer(a[j]);
  Int theta = at_most ? anchor_weight(a) - i : i - anchor_weight(a);
  return fold_gate(w, theta, r.embedding);
}

void circuit_report(PassReport* report, const char* pass, const ThresholdCircuit& c,
                    std::optional<Int> bound) {
  fill_report(report, pass, "hnn", "circuit");
  if (!report) return;
  report->metrics["gates"] = c.size();
  report->metrics["depth"] = c.depth();
  report->metrics["max_weight"] = c.max_weight();
  report->bound = bound;
  if (bound) report->bound_met = Int(c.size()) <= *bound;
}

}  // namespace

ThresholdCircuit hnn_to_depth3(const NNRep& r, Depth3Variant variant, PassReport* report) {
  require_boolean(r, "hnn-to-depth3");
  if (variant == Depth3Variant::Auto)
    variant = r.pos.size() <= r.neg.size() ? Depth3Variant::OrAndMaj : Depth3Variant::AndOrMaj;

  ThresholdCircuit c;
  c.n = r.source_arity();
  const int np = static_cast<int>(r.pos.size()), nq = static_cast<int>(r.neg.size());
  for (const auto& p : r.pos)
    for (const auto& q : r.neg) c.gates.push_back(comparator_gate(r, p, q));
  auto middle = [&](int count, int fan_in, auto wire_of) {
    for (int i = 0; i < count; ++i) {
      Gate g;
      for (int j = 0; j < fan_in; ++j) g.wires.emplace_back(c.n + wire_of(i, j), 1);
      g.threshold = variant == Depth3Variant::OrAndMaj ? fan_in : 1;  // AND of wins / OR of wins
      c.gates.push_back(g);
    }
  };
  int first_mid = static_cast<int>(c.gates.size());
  if (variant == Depth3Variant::OrAndMaj)
    middle(np, nq, [&](int i, int j) { return i * nq + j; });
  else
    middle(nq, np, [&](int i, int j) { return j * nq + i; });
  Gate top;
  int mid_count = static_cast<int>(c.gates.size()) - first_mid;
  for (int i = 0; i < mid_count; ++i) top.wires.emplace_back(c.n + first_mid + i, 1);
  top.threshold = variant == Depth3Variant::OrAndMaj ? 1 : mid_count;
  c.gates.push_back(top);
  c.output = static_cast<int>(c.gates.size()) - 1;
  c.validate();

  circuit_report(report, "hnn-to-depth3", c, Int(np) * nq + std::min(np, nq) + 1);
  return c;
}

ThresholdCircuit hnn_to_depth3_slice(const NNRep& r, PassReport* report) {
  require_boolean(r, "hnn-to-depth3-slice");
  const int dim = r.ambient_dim();
  const int np = static_cast<int>(r.pos.size()), nq = static_cast<int>(r.neg.size());

  ThresholdCircuit c;
  c.n = r.source_arity();
  // Per slice i: one [Delta(x,p) <= i] gate per positive anchor, one
  // [Delta(x,q) >= i] gate per negative, then an AND per positive anchor.
  std::vector<int> and_gates;
  for (Int i = 0; i <= dim; ++i) {
    int base = static_cast<int>(c.gates.size());
    for (const auto& p : r.pos) c.gates.push_back(slice_gate(r, p, i, true));
    for (const auto& q : r.neg) c.gates.push_back(slice_gate(r, q, i, false));
    for (int pi = 0; pi < np; ++pi) {
      Gate g;
      g.wires.emplace_back(c.n + base + pi, 1);
      for (int qi = 0; qi < nq; ++qi) g.wires.emplace_back(c.n + base + np + qi, 1);
      g.threshold = 1 + nq;
      and_gates.push_back(static_cast<int>(c.gates.size()));
      c.gates.push_back(std::move(g));
    }
  }
  Gate top;
  for (int g : and_gates) top.wires.emplace_back(c.n + g, 1);
  top.threshold = 1;
  c.gates.push_back(std::move(top));
  c.output = static_cast<int>(c.gates.size()) - 1;
  c.validate();

  circuit_report(report, "hnn-to-depth3-slice", c,
                 Int(dim + 1) * (np + nq) + Int(dim + 1) * np + 1);
  return c;
}

ThresholdCircuit hnn_to_depth2(const NNRep& r, PassReport* report) {
  require_boolean(r, "hnn-to-depth2");
  const int dim = r.ambient_dim();
  const Int m = r.anchor_count();
  if (m < 2) throw std::invalid_argument("hnn-to-depth2 requires at least two anchors");

  ThresholdCircuit c;
  c.n = r.source_arity();
  Gate top;
  Int rhs = 0;  // accumulates the folded constants
  auto add_anchor = [&](const Anchor& a, bool positive) {
    const int sigma = positive ? 1 : 0;
    const Int sign = positive ? 1 : -1;
    Int w0 = pow(m, 3 * dim + sigma);
    rhs -= sign * w0;
    for (Int i = 1; i <= dim; ++i) {
      // weight for the pair of gates realizing [Delta = i], with the
      // distance-0 indicator folded in as 1 - sum of the others
      Int wi = pow(m, static_cast<unsigned>(3 * (dim - static_cast<int>(i)) + sigma));
      Int wire_weight = sign * (wi - w0);
      int base = static_cast<int>(c.gates.size());
      c.gates.push_back(slice_gate(r, a, i, true));
      c.gates.push_back(slice_gate(r, a, i, false));
      top.wires.emplace_back(c.n + base, wire_weight);
      top.wires.emplace_back(c.n + base + 1, wire_weight);
      rhs += wire_weight;  // from the -1 in f_<= + f_>= - 1
    }
  };
  for (const auto& p : r.pos) add_anchor(p, true);
  for (const auto& q : r.neg) add_anchor(q, false);
  top.threshold = rhs;
  c.gates.push_back(std::move(top));
  c.output = static_cast<int>(c.gates.size()) - 1;
  c.validate();

  circuit_report(report, "hnn-to-depth2", c, 2 * Int(dim) * m + 1);
  if (report) report->metrics["first_level_gates"] = c.size() - 1;
  return c;
}

}  // namespace nncomp
