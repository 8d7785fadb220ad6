#include "nncomp/linear_form.hpp"

namespace nncomp {

LinearForm& LinearForm::operator*=(const Rational& s) {
  for (auto& c : coeffs) c *= s;
  constant *= s;
  return *this;
}

void scale_to_integral(std::vector<LinearForm*> forms) {
  Int l = 1;
  for (const auto* f : forms) {
    l = lcm(l, denominator(f->constant));
    for (const auto& c : f->coeffs) l = lcm(l, denominator(c));
  }
  if (l == 1) return;
  Rational s(l);
  for (auto* f : forms) *f *= s;
}

Int max_abs_coeff(const std::vector<LinearForm>& forms) {
  Int w = 0;
  for (const auto& f : forms) {
    Int fw = f.max_abs_coeff();
    if (fw > w) w = fw;
  }
  return w;
}

}  // namespace nncomp
