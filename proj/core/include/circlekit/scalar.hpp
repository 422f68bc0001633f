#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ck {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Cd = std::complex<double>;

// Thrown on malformed input or violated preconditions; the CLI maps it to exit code 2.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Every finite double is a dyadic rational; the conversion is exact.
Rat rat_from_double(double x);

// Accepts "p/q", "p", optional sign, optional surrounding whitespace.
Rat rat_from_string(const std::string& s);

// Canonical form: "p" for integers, "p/q" otherwise, q > 0.
std::string rat_to_string(const Rat& r);

// Representative of q mod 1 in [0, 1).
Rat rat_mod1(const Rat& q);

// Complex number with exact rational real and imaginary parts.
struct RatC {
  Rat re{};
  Rat im{};

  RatC() = default;
  RatC(Rat r) : re(std::move(r)) {}
  RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  RatC(long r) : re(r) {}
  RatC(long r, long i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  RatC conj() const { return {re, -im}; }
  Cd to_cd() const { return {to_double(re), to_double(im)}; }

  RatC& operator+=(const RatC& o) { re += o.re; im += o.im; return *this; }
  RatC& operator-=(const RatC& o) { re -= o.re; im -= o.im; return *this; }
  friend RatC operator+(RatC a, const RatC& b) { a += b; return a; }
  friend RatC operator-(RatC a, const RatC& b) { a -= b; return a; }
  friend RatC operator-(const RatC& a) { return {-a.re, -a.im}; }
  friend RatC operator*(const RatC& a, const RatC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RatC& operator*=(const RatC& o) { *this = *this * o; return *this; }
  friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }
};

inline RatC mul_rat(const RatC& a, const Rat& s) { return {a.re * s, a.im * s}; }

inline RatC div_rat(const RatC& a, const Rat& s) {
  if (s == 0) throw input_error("division by zero rational");
  return {a.re / s, a.im / s};
}

inline RatC div_int(const RatC& a, long n) { return div_rat(a, Rat(n)); }

inline double abs_cd(const RatC& a) { return std::abs(a.to_cd()); }

}  // namespace ck
