#include "nncomp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace nncomp {

namespace {

struct Problem {
  std::uint64_t index;
  bool undefined;
};

std::optional<Problem> scan_range(const Evaluator& a, const Evaluator& b, std::uint64_t lo,
                                  std::uint64_t hi) {
  for (std::uint64_t x = lo; x < hi; ++x) {
    TriBool va = a(x), vb = b(x);
    if (va == TriBool::Undefined || vb == TriBool::Undefined) return Problem{x, true};
    if (va != vb) return Problem{x, false};
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(EquivReport::Status s) {
  switch (s) {
    case EquivReport::Status::Equal: return "EQUAL";
    case EquivReport::Status::Mismatch: return "MISMATCH";
    case EquivReport::Status::IllDefined: return "ILL_DEFINED";
  }
  return "?";
}

EquivReport equiv_check(const Evaluator& a, const Evaluator& b, int n, int jobs) {
  if (n < 0 || n > BoolFn::kMaxArity)
    throw std::invalid_argument("equiv_check arity out of range");
  auto start = std::chrono::steady_clock::now();
  const std::uint64_t size = std::uint64_t(1) << n;
  jobs = std::max(1, jobs);

  std::optional<Problem> first;
  if (jobs == 1) {
    first = scan_range(a, b, 0, size);
  } else {
    std::vector<std::optional<Problem>> partial(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] { partial[w] = scan_range(a, b, size * w / jobs, size * (w + 1) / jobs); });
    for (auto& t : workers) t.join();
    for (auto& p : partial)  // ranges are in index order; first hit wins
      if (p) { first = p; break; }
  }

  EquivReport report;
  report.inputs_checked = size;
  if (first) {
    report.status = first->undefined ? EquivReport::Status::IllDefined
                                     : EquivReport::Status::Mismatch;
    report.witness = first->index;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

/// Advance a k-combination of {0..limit-1} in lexicographic order.
bool next_combination(std::vector<int>& c, int limit) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < limit - (k - i)) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Anchor corner(std::uint64_t point, int n) {
  Anchor a(n);
  for (int i = 0; i < n; ++i) a[i] = (point >> i) & 1u;
  return a;
}

bool candidate_matches(const BoolFn& f, const std::vector<int>& points, std::uint64_t pos_mask,
                       int n) {
  NNRep r;
  r.embedding = Substitution::identity(n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Anchor a = corner(static_cast<std::uint64_t>(points[i]), n);
    if ((pos_mask >> i) & 1u)
      r.pos.push_back(std::move(a));
    else
      r.neg.push_back(std::move(a));
  }
  for (std::uint64_t x = 0; x < f.num_points(); ++x)
    if (eval_nn(r, x) != tri(f.eval(x))) return false;
  return true;
}

}  // namespace

SearchResult min_hnn_search(const BoolFn& f, const SearchOptions& opts) {
  const int n = f.arity();
  if (n > 4) throw std::invalid_argument("min_hnn_search supports arity <= 4 only");
  if (f.is_constant())
    throw std::invalid_argument(
        "constant functions have no Boolean-anchor representation "
        "(a negative anchor misclassifies its own point); model them with a "
        "far rational dummy anchor instead");

  const int points_total = 1 << n;
  SearchResult result;
  std::uint64_t spent = 0;

  int start_m = 2;
  std::vector<int> start_comb;
  std::uint64_t start_split = 1;
  if (!opts.checkpoint_path.empty()) {
    std::ifstream in(opts.checkpoint_path);
    if (in) {
      nlohmann::json j = nlohmann::json::parse(in);
      start_m = j.at("m").get<int>();
      start_comb = j.at("combination").get<std::vector<int>>();
      start_split = j.at("split").get<std::uint64_t>();
      result.candidates_per_m = j.at("candidates_per_m").get<decltype(result.candidates_per_m)>();
    }
  }

  for (int m = start_m; m <= points_total; ++m) {
    std::uint64_t examined = 0;
    std::vector<int> comb;
    std::uint64_t split_from = 1;
    if (m == start_m && !start_comb.empty()) {
      comb = start_comb;
      split_from = start_split;
    } else {
      comb.resize(m);
      for (int i = 0; i < m; ++i) comb[i] = i;
    }
    bool more = true;
    while (more) {
      const std::uint64_t splits = (std::uint64_t(1) << m) - 1;  // nonempty P, nonempty N
      for (std::uint64_t pos_mask = split_from; pos_mask < splits; ++pos_mask) {
        if (spent >= opts.budget) {
          if (!opts.checkpoint_path.empty()) {
            nlohmann::json j{{"m", m},
                             {"combination", comb},
                             {"split", pos_mask},
                             {"candidates_per_m", result.candidates_per_m}};
            std::ofstream(opts.checkpoint_path) << j.dump(2) << '\n';
          }
          result.budget_exhausted = true;
          result.candidates_per_m.emplace_back(m, examined);
          return result;
        }
        ++spent;
        ++examined;
        if (candidate_matches(f, comb, pos_mask, n)) {
          result.found = true;
          result.min_anchors = m;
          result.witness.embedding = Substitution::identity(n);
          for (int i = 0; i < m; ++i) {
            Anchor a = corner(static_cast<std::uint64_t>(comb[i]), n);
            if ((pos_mask >> i) & 1u)
              result.witness.pos.push_back(std::move(a));
            else
              result.witness.neg.push_back(std::move(a));
          }
          result.candidates_per_m.emplace_back(m, examined);
          return result;
        }
      }
      split_from = 1;
      more = next_combination(comb, points_total);
    }
    result.candidates_per_m.emplace_back(m, examined);
  }
  return result;  // unreachable for non-constant f: m = 2^n always succeeds
}

bool component_bound_check(const BoolFn& f, const NNRep& r) {
  return static_cast<std::uint64_t>(r.anchor_count()) >= components(f);
}

namespace {

bool four_square_int(const Int& n, int remaining, std::array<Int, 4>& out, int slot) {
  if (remaining == 1) {
    Int r = int_sqrt_floor(n);
    if (r * r == n) {
      out[slot] = r;
      return true;
    }
    return false;
  }
  for (Int a = int_sqrt_floor(n); a >= 0; --a) {
    out[slot] = a;
    if (four_square_int(n - a * a, remaining - 1, out, slot + 1)) return true;
  }
  return false;
}

}  // namespace

std::array<Rational, 4> four_square(const Rational& v) {
  if (v < 0) throw std::invalid_argument("four_square requires a nonnegative value");
  // v = p/q = pq / q^2; decompose the integer pq and divide by q.
  Int p = numerator(v), q = denominator(v);
  std::array<Int, 4> ints{};
  if (!four_square_int(p * q, 4, ints, 0))
    throw std::logic_error("four-square decomposition failed");  // impossible (Lagrange)
  std::array<Rational, 4> out;
  Rational check = 0;
  for (int i = 0; i < 4; ++i) {
    out[i] = Rational(ints[i], q);
    check += out[i] * out[i];
  }
  if (check != v) throw std::logic_error("four-square identity violated");
  return out;
}

}  // namespace nncomp
