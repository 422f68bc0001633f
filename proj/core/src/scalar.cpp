#include "circlekit/scalar.hpp"

#include <cctype>
#include <cmath>

namespace ck {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw input_error("non-finite value has no rational form");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  m = std::ldexp(m, 53);
  exp -= 53;
  Int num(static_cast<long long>(m));
  Rat r(num);
  if (exp > 0) {
    r *= Rat(Int(1) << exp);
  } else if (exp < 0) {
    r /= Rat(Int(1) << (-exp));
  }
  return r;
}

Rat rat_from_string(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (b == e) throw input_error("empty rational literal");
  std::string body = s.substr(b, e - b);
  auto slash = body.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(body));
    Int num(body.substr(0, slash));
    Int den(body.substr(slash + 1));
    if (den == 0) throw input_error("zero denominator in rational literal");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw input_error("malformed rational literal: " + body);
  }
}

std::string rat_to_string(const Rat& r) {
  const Int& num = boost::multiprecision::numerator(r);
  const Int& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat rat_mod1(const Rat& q) {
  const Int& num = boost::multiprecision::numerator(q);
  const Int& den = boost::multiprecision::denominator(q);
  Int fl = num / den;
  if (num < 0 && fl * den != num) --fl;  // floor division for negatives
  return q - Rat(fl);
}

}  // namespace ck
