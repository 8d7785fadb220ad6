#include "nncomp/boolfn.hpp"

#include <bit>
#include <stdexcept>

namespace nncomp {

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
}

void check_arity_cap(int n) {
  if (n < 0) throw std::invalid_argument("negative arity");
  if (n > BoolFn::kMaxArity)
    throw std::invalid_argument("arity " + std::to_string(n) + " exceeds materialization cap " +
                                std::to_string(BoolFn::kMaxArity));
}

// Visits all size-r subsets of [0, n); indices are passed 0-based.
template <typename F>
void for_each_subset(int n, int r, F&& visit) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

BoolFn::BoolFn(int n) : n_(n) {
  check_arity_cap(n);
  words_.assign((num_points() + 63) / 64, 0);
}

BoolFn BoolFn::from_truth_table(const std::vector<bool>& bits, int n) {
  check_arity_cap(n);
  if (bits.size() != (std::size_t(1) << n))
    throw std::invalid_argument("truth table length " + std::to_string(bits.size()) +
                                " does not match arity " + std::to_string(n));
  BoolFn f(n);
  for (std::uint64_t i = 0; i < f.num_points(); ++i)
    if (bits[i]) f.set(i, true);
  return f;
}

BoolFn BoolFn::from_evaluator(int n, const std::function<bool(std::uint64_t)>& eval) {
  BoolFn f(n);
  for (std::uint64_t i = 0; i < f.num_points(); ++i)
    if (eval(i)) f.set(i, true);
  return f;
}

std::uint64_t BoolFn::ones_count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool BoolFn::is_constant() const {
  std::uint64_t ones = ones_count();
  return ones == 0 || ones == num_points();
}

BoolFn BoolFn::operator~() const {
  BoolFn f(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) f.words_[i] = ~words_[i];
  // mask tail bits beyond 2^n
  std::uint64_t tail = num_points() & 63;
  if (tail) f.words_.back() &= (std::uint64_t(1) << tail) - 1;
  return f;
}

std::string BoolFn::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out = "n=" + std::to_string(n_) + ":";
  std::uint64_t nibbles = (num_points() + 3) / 4;
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    unsigned v = static_cast<unsigned>((words_[i / 16] >> ((i % 16) * 4)) & 0xf);
    out += digits[v];
  }
  return out;
}

BoolFn BoolFn::from_hex(const std::string& s) {
  if (s.rfind("n=", 0) != 0) throw std::invalid_argument("truth table literal must start with n=");
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("missing ':' in truth table literal");
  int n = std::stoi(s.substr(2, colon - 2));
  check_arity_cap(n);
  BoolFn f(n);
  std::string hex = s.substr(colon + 1);
  std::uint64_t nibbles = (f.num_points() + 3) / 4;
  if (hex.size() != nibbles)
    throw std::invalid_argument("truth table hex length mismatch");
  for (std::uint64_t i = 0; i < nibbles; ++i) {
    char c = hex[i];
    unsigned v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw std::invalid_argument("bad hex digit in truth table literal");
    f.words_[i / 16] |= std::uint64_t(v) << ((i % 16) * 4);
  }
  return f;
}

FamilySpec parse_family_spec(const std::string& name, int n, int k, int inner) {
  FamilySpec s;
  if (name == "maj") s.name = Family::Maj;
  else if (name == "xor") s.name = Family::Xor;
  else if (name == "ip") s.name = Family::Ip;
  else if (name == "disj") s.name = Family::Disj;
  else if (name == "omb") s.name = Family::Omb;
  else if (name == "omb-and2") s.name = Family::OmbAnd2;
  else if (name == "exact-half-cnf") s.name = Family::ExactHalfCnf;
  else if (name == "and-or-and") s.name = Family::AndOrAnd;
  else throw std::invalid_argument("unknown family: " + name);
  s.n = n;
  s.k = k;
  s.inner = inner;
  if (n < 1) throw std::invalid_argument("family parameter n must be >= 1");
  if (s.name == Family::ExactHalfCnf) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("exact-half-cnf requires even k >= 2");
    if (n % k != 0) throw std::invalid_argument("exact-half-cnf requires k | n");
  }
  if (s.name == Family::AndOrAnd && s.inner == 0) s.inner = n * n;
  return s;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Maj: return "maj";
    case Family::Xor: return "xor";
    case Family::Ip: return "ip";
    case Family::Disj: return "disj";
    case Family::Omb: return "omb";
    case Family::OmbAnd2: return "omb-and2";
    case Family::ExactHalfCnf: return "exact-half-cnf";
    case Family::AndOrAnd: return "and-or-and";
  }
  return "?";
}

int family_arity(const FamilySpec& spec) {
  switch (spec.name) {
    case Family::Maj:
    case Family::Xor:
    case Family::Omb:
    case Family::ExactHalfCnf:
      return spec.n;
    case Family::Ip:
    case Family::Disj:
    case Family::OmbAnd2:
      return 2 * spec.n;
    case Family::AndOrAnd:
      return 2 * spec.n * spec.inner;
  }
  return 0;
}

bool family_eval(const FamilySpec& spec, std::uint64_t x) {
  const int n = spec.n;
  switch (spec.name) {
    case Family::Maj: {
      int w = std::popcount(x & low_mask(n));
      return 2 * w >= n;
    }
    case Family::Xor:
      return std::popcount(x & low_mask(n)) & 1;
    case Family::Ip: {
      std::uint64_t lo = x & low_mask(n), hi = (x >> n) & low_mask(n);
      return std::popcount(lo & hi) & 1;
    }
    case Family::Disj: {
      std::uint64_t lo = x & low_mask(n), hi = (x >> n) & low_mask(n);
      return (lo & hi) == 0;
    }
    case Family::Omb: {
      std::uint64_t v = x & low_mask(n);
      if (v == 0) return false;  // max over the empty set treated as 0
      int top = 64 - std::countl_zero(v);  // 1-based index of highest set bit
      return top & 1;
    }
    case Family::OmbAnd2: {
      std::uint64_t lo = x & low_mask(n), hi = (x >> n) & low_mask(n);
      std::uint64_t v = lo & hi;
      if (v == 0) return false;
      int top = 64 - std::countl_zero(v);
      return top & 1;
    }
    case Family::ExactHalfCnf: {
      for (int b = 0; b < n / spec.k; ++b) {
        std::uint64_t block = (x >> (b * spec.k)) & low_mask(spec.k);
        if (2 * std::popcount(block) != spec.k) return false;
      }
      return true;
    }
    case Family::AndOrAnd: {
      const int m = spec.n * spec.inner;
      for (int i = 0; i < spec.n; ++i) {
        bool any = false;
        for (int j = 0; j < spec.inner; ++j) {
          int idx = i * spec.inner + j;
          if (((x >> idx) & 1u) && ((x >> (m + idx)) & 1u)) { any = true; break; }
        }
        if (!any) return false;
      }
      return true;
    }
  }
  return false;
}

BoolFn family(const FamilySpec& spec) {
  int arity = family_arity(spec);
  check_arity_cap(arity);
  return BoolFn::from_evaluator(arity, [&](std::uint64_t x) { return family_eval(spec, x); });
}

void CnfDnf::validate() const {
  for (const auto& clause : clauses) {
    for (int lit : clause) {
      if (lit == 0 || lit > n || lit < -n)
        throw std::invalid_argument("literal out of range: " + std::to_string(lit));
      for (int other : clause)
        if (other == -lit)
          throw std::invalid_argument("clause contains a variable and its negation");
    }
  }
}

bool cnf_eval(const CnfDnf& c, std::uint64_t x) {
  for (const auto& clause : c.clauses) {
    bool any = false;
    bool all = true;
    for (int lit : clause) {
      bool v = (x >> (std::abs(lit) - 1)) & 1u;
      if (lit < 0) v = !v;
      any |= v;
      all &= v;
    }
    if (c.kind == ClauseKind::Cnf && !any) return false;
    if (c.kind == ClauseKind::Dnf && all && !clause.empty()) return true;
  }
  // empty conjunction is 1, empty disjunction is 0
  return c.kind == ClauseKind::Cnf;
}

BoolFn cnf_table(const CnfDnf& c) {
  return BoolFn::from_evaluator(c.n, [&](std::uint64_t x) { return cnf_eval(c, x); });
}

Substitution Substitution::identity(int n) {
  Substitution s;
  s.source_arity = n;
  s.map.resize(n);
  for (int i = 0; i < n; ++i) s.map[i] = i + 1;
  return s;
}

bool Substitution::is_identity() const {
  if (target_arity() != source_arity) return false;
  for (int j = 0; j < target_arity(); ++j)
    if (map[j] != j + 1) return false;
  return true;
}

void Substitution::validate() const {
  if (source_arity < 0) throw std::invalid_argument("negative source arity");
  for (int m : map)
    if (m < -1 || m > source_arity)
      throw std::invalid_argument("substitution entry out of range");
}

bool apply_substitution(const std::function<bool(const std::vector<bool>&)>& g,
                        const Substitution& v, std::uint64_t x) {
  std::vector<bool> embedded(v.target_arity());
  for (int j = 0; j < v.target_arity(); ++j) embedded[j] = v.target_bit(x, j);
  return g(embedded);
}

std::uint64_t components(const BoolFn& f) {
  const std::uint64_t size = f.num_points();
  std::vector<bool> visited(size, false);
  std::uint64_t count = 0;
  std::vector<std::uint64_t> stack;
  for (std::uint64_t start = 0; start < size; ++start) {
    if (visited[start] || !f.eval(start)) continue;
    ++count;
    visited[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      std::uint64_t u = stack.back();
      stack.pop_back();
      for (int b = 0; b < f.arity(); ++b) {
        std::uint64_t w = u ^ (std::uint64_t(1) << b);
        if (!visited[w] && f.eval(w)) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

CnfDnf exact_half_cnf(int n, int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("exact_half_cnf requires even k >= 2");
  if (n % k != 0) throw std::invalid_argument("exact_half_cnf requires k | n");
  CnfDnf c;
  c.n = n;
  c.kind = ClauseKind::Cnf;
  const int r = k / 2 + 1;
  for (int b = 0; b < n / k; ++b) {
    for_each_subset(k, r, [&](const std::vector<int>& idx) {
      std::vector<int> not_all_one, not_all_zero;
      for (int i : idx) {
        int var = b * k + i + 1;
        not_all_one.push_back(-var);
        not_all_zero.push_back(var);
      }
      c.clauses.push_back(std::move(not_all_one));
      c.clauses.push_back(std::move(not_all_zero));
    });
  }
  return c;
}

}  // namespace nncomp
