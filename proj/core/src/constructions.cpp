#include "nncomp/constructions.hpp"

#include <cstdlib>
#include <stdexcept>

namespace nncomp {

namespace {

void fill_report(PassReport* r, std::string pass, std::string source, std::string target) {
  if (!r) return;
  r->pass = std::move(pass);
  r->source_model = std::move(source);
  r->target_model = std::move(target);
}

}  // namespace

NNRep cnf_to_nn(const CnfDnf& c, PassReport* report) {
  c.validate();
  // Work over the DNF whose one-set the clause anchors must capture: the
  // input itself, or the negation of a CNF with the anchor labels flipped.
  const bool flip = c.kind == ClauseKind::Cnf;
  std::vector<std::vector<int>> dnf = c.clauses;
  if (flip)
    for (auto& clause : dnf)
      for (auto& lit : clause) lit = -lit;
  for (const auto& clause : dnf) {
    if (clause.empty()) throw std::invalid_argument("cnf_to_nn: empty clause");
    for (std::size_t i = 0; i < clause.size(); ++i)
      for (std::size_t j = i + 1; j < clause.size(); ++j)
        if (std::abs(clause[i]) == std::abs(clause[j]))
          throw std::invalid_argument("cnf_to_nn: repeated variable in a clause");
  }

  NNRep r;
  r.embedding = Substitution::identity(c.n);
  std::vector<Anchor>& clause_side = flip ? r.neg : r.pos;
  std::vector<Anchor>& center_side = flip ? r.pos : r.neg;
  for (const auto& clause : dnf) {
    // A satisfied clause sits at distance (n-1)/4, beating the center's n/4;
    // any violated literal adds at least 3/4 beyond the center distance.
    Anchor a(c.n, Rational(1, 2));
    for (std::size_t i = 0; i < clause.size(); ++i) {
      int var = std::abs(clause[i]) - 1;
      if (i == 0)
        a[var] = clause[i] > 0 ? Rational(1) : Rational(0);
      else
        a[var] = clause[i] > 0 ? Rational(3, 2) : Rational(-1, 2);
    }
    clause_side.push_back(std::move(a));
  }
  if (dnf.empty()) {
    // Constant function: a dummy anchor strictly farther than the center
    // from every cube point keeps both sides nonempty.
    Anchor far(c.n, Rational(1, 2));
    far[0] = Rational(c.n + 2);
    clause_side.push_back(std::move(far));
  }
  center_side.push_back(Anchor(c.n, Rational(1, 2)));
  r.validate();

  fill_report(report, "cnf-to-nn", "cnf", "nn");
  if (report) {
    report->metrics["anchors"] = r.anchor_count();
    report->metrics["bit_complexity"] = bit_complexity(r);
    report->bound = static_cast<int>(c.clauses.size()) + 1;
    report->bound_met = dnf.empty() || Int(r.anchor_count()) == *report->bound;
  }
  return r;
}

NNRep disj_hnn(int n, PassReport* report) {
  if (n < 1) throw std::invalid_argument("disj_hnn requires n >= 1");
  NNRep r;
  r.embedding = Substitution::identity(2 * n);
  // Singleton anchors answer 1 (inputs with disjoint halves) and pair anchors
  // answer 0; an intersecting pair is always at least one step closer.
  for (int i = 0; i < 2 * n; ++i) {
    Anchor a(2 * n, Rational(0));
    a[i] = 1;
    r.pos.push_back(std::move(a));
  }
  for (int i = 0; i < n; ++i) {
    Anchor a(2 * n, Rational(0));
    a[i] = 1;
    a[n + i] = 1;
    r.neg.push_back(std::move(a));
  }
  r.validate();

  fill_report(report, "disj-hnn", "family", "hnn");
  if (report) {
    report->metrics["anchors"] = r.anchor_count();
    report->bound = 3 * n;
    report->bound_met = r.anchor_count() == 3 * n;
  }
  return r;
}

MpPTF xor_mpptf(int n, PassReport* report) {
  if (n < 1) throw std::invalid_argument("xor_mpptf requires n >= 1");
  MpPTF m;
  m.n = n;
  // Form i evaluates to (i - |x|)^2 - |x|^2; the unique minimum over i sits
  // at i = |x|, so the parity of |x| picks the winning side.
  for (int i = 0; i <= n; ++i) {
    LinearForm f(std::vector<Rational>(n, Rational(-2 * i)), Rational(i * i));
    (i % 2 == 1 ? m.left : m.right).push_back(std::move(f));
  }
  m.validate();

  fill_report(report, "xor-mpptf", "family", "mpptf");
  if (report) {
    report->metrics["terms"] = m.terms();
    report->metrics["max_weight"] = m.max_weight();
    report->bound = 2 * n;
    report->bound_met = m.max_weight() <= 2 * n;
  }
  return m;
}

MpPTF omb_and2_mpptf(int n, PassReport* report) {
  if (n < 1) throw std::invalid_argument("omb_and2_mpptf requires n >= 1");
  MpPTF m;
  m.n = 2 * n;
  // Form k reaches -(k+1) exactly when the pair (x_k, y_k) is satisfied, so
  // the most negative form marks the highest satisfied pair; the constant -1
  // beats every unsatisfied value.
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> coeffs(2 * n, Rational(0));
    coeffs[k - 1] = Rational(-(k + 1));
    coeffs[n + k - 1] = Rational(-(k + 1));
    LinearForm f(std::move(coeffs), Rational(k + 1));
    (k % 2 == 1 ? m.left : m.right).push_back(std::move(f));
  }
  m.right.push_back(LinearForm(std::vector<Rational>(2 * n, Rational(0)), Rational(-1)));
  m.validate();

  fill_report(report, "omb-and2-mpptf", "family", "mpptf");
  if (report) {
    report->metrics["terms"] = m.terms();
    report->bound = n + 1;
    report->bound_met = m.terms() == n + 1;
  }
  return m;
}

namespace {

Int binomial(int n, int k) {
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ComponentCertificate many_component_cnf(int n, int k) {
  ComponentCertificate cert;
  cert.cnf = exact_half_cnf(n, k);
  Int per_block = binomial(k, k / 2);
  cert.expected_components = 1;
  for (int b = 0; b < n / k; ++b) cert.expected_components *= per_block;
  cert.counted_components = components(cnf_table(cert.cnf));
  return cert;
}

SymAndCircuit ip_sym_and(int n) {
  if (n < 1) throw std::invalid_argument("ip_sym_and requires n >= 1");
  SymAndCircuit c;
  c.n = 2 * n;
  for (int i = 1; i <= n; ++i) c.clauses.push_back({{i, n + i}, {}});
  for (int t = 0; t <= n; ++t) c.top.push_back(t % 2);
  c.validate();
  return c;
}

}  // namespace nncomp
