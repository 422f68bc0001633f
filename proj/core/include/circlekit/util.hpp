#pragma once

#include "circlekit/scalar.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ck {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// e^{2 pi i t} for t in turns; the argument is reduced mod 1 first so equal
// angles produce bit-identical values.
Cd unit_turns(double t);
Cd unit_turns(const Rat& t);

// All products g1^a1 ... gs^as <= bound, including the empty product 1,
// sorted ascending and deduplicated. Generators must be >= 2.
std::vector<long long> products_up_to(const std::vector<int>& gens, long long bound);

// For pairwise coprime generators, sum of 1/N over all products N <= bound
// subtracted from the full sum prod_i Ni/(Ni-1); exact.
Rat tail_inverse_sum(const std::vector<int>& gens, long long bound);

void require_generators(const std::vector<int>& gens, bool coprime);

// Deterministic splitmix64-based generator: identical output on every
// platform, unlike the library distributions.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform in {0, ..., n-1}; n must be positive.
  long long below(long long n) {
    return static_cast<long long>(next() % static_cast<uint64_t>(n));
  }
  // Random rational p/q with q in [1, qmax], p in [0, q).
  Rat rat_in_unit(long long qmax) {
    long long q = 1 + below(qmax);
    long long p = below(q);
    return Rat(p, q);
  }
};

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 50);

}  // namespace ck
