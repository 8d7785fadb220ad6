#include "nncomp/rational.hpp"

namespace nncomp {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

Int common_denominator(const std::vector<Rational>& values) {
  Int l = 1;
  for (const auto& v : values) l = lcm(l, denominator(v));
  return l;
}

}  // namespace nncomp
