#pragma once

#include <cstdint>
#include <vector>

#include "nncomp/rational.hpp"

namespace nncomp {

/// Affine form over n Boolean variables: <coeffs, x> + constant.
///
/// Boolean points are passed as bit masks with x_1 in the least significant
/// bit, matching the truth-table index convention.
struct LinearForm {
  std::vector<Rational> coeffs;
  Rational constant = 0;

  LinearForm() = default;
  explicit LinearForm(int arity) : coeffs(arity, Rational(0)) {}
  LinearForm(std::vector<Rational> c, Rational k) : coeffs(std::move(c)), constant(std::move(k)) {}

  int arity() const { return static_cast<int>(coeffs.size()); }

  Rational eval(std::uint64_t x) const {
    Rational acc = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if ((x >> i) & 1u) acc += coeffs[i];
    return acc;
  }

  bool is_integral() const {
    if (!is_integer(constant)) return false;
    for (const auto& c : coeffs)
      if (!is_integer(c)) return false;
    return true;
  }

  /// Largest |coefficient|; the mpPTF/kSTAT weight metric. Constants do not
  /// count as weights.
  Int max_abs_coeff() const {
    Int w = 0;
    for (const auto& c : coeffs) {
      Int a = abs(numerator(c));
      if (is_integer(c) && a > w) w = a;
    }
    return w;
  }

  /// 1 + |constant| + sum of |coefficients|; every attainable value lies
  /// strictly inside (-bound, bound).
  Rational value_bound() const {
    Rational b = 1 + abs(constant);
    for (const auto& c : coeffs) b += abs(c);
    return b;
  }

  LinearForm& operator*=(const Rational& s);
  LinearForm& operator+=(const Rational& s) { constant += s; return *this; }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Scales all forms by the lcm of every denominator appearing in them, so the
/// result is a set of integer forms defining the same comparisons.
void scale_to_integral(std::vector<LinearForm*> forms);

Int max_abs_coeff(const std::vector<LinearForm>& forms);

}  // namespace nncomp
