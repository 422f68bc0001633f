#pragma once

#include <map>
#include <string>
#include <vector>

#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/scalar.hpp"
#include "circlekit/series.hpp"

// The semigroup ring of the monoid generated by circle rotations and the
// power maps z -> z^N, in the normal form rotation-after-power. Elements act
// on series, measure expressions, and mass functions from both sides: the
// left action is the image direction (contraction, pushforward), the right
// action is the substitution direction (rotation pullback, preimage).
namespace ck::algebra {

// The self map z -> e(rotation) z^power; rotation in turns, reduced mod 1.
// Products compose maps with the left factor applied last.
struct MonoidElem {
  Rat rotation;
  long long power = 1;
};

bool operator==(const MonoidElem& a, const MonoidElem& b);
bool operator<(const MonoidElem& a, const MonoidElem& b);

MonoidElem monoid_one();
MonoidElem monoid_mul(const MonoidElem& a, const MonoidElem& b);

// Finite rational combination of normal-form monoid elements; zero
// coefficients are pruned so equality is structural.
struct AlgebraElem {
  std::map<MonoidElem, Rat> terms;
};

bool operator==(const AlgebraElem& a, const AlgebraElem& b);

AlgebraElem algebra_zero();
AlgebraElem algebra_one();
AlgebraElem from_monoid(const MonoidElem& m, const Rat& coeff = Rat(1));
AlgebraElem rotation_term(const Rat& q_turns);
AlgebraElem power_term(long long N);

AlgebraElem add(const AlgebraElem& a, const AlgebraElem& b);
AlgebraElem sub(const AlgebraElem& a, const AlgebraElem& b);
AlgebraElem scale(const AlgebraElem& a, const Rat& s);
AlgebraElem mul(const AlgebraElem& a, const AlgebraElem& b);

// Sum of the N rotations by N-th roots of unity.
AlgebraElem build_trN(int N);
// The averaging idempotent: build_trN(N) scaled by 1/N.
AlgebraElem build_eN(int N);
// Product of (1 - X_i) over the pairwise coprime generators.
AlgebraElem build_phi_S(const std::vector<int>& gens);
// Product of (1 - e_i); annihilates every averaged direction.
AlgebraElem build_omega_S(const std::vector<int>& gens);
// Truncated sum of the power maps over all generator products <= bound. The
// untruncated sum lives in a completion, not in the algebra; pair this with
// build_phi_S only up to the bound.
AlgebraElem build_psi_S(const std::vector<int>& gens, long long bound);

// Keep only the terms whose power is <= bound (for truncated identities).
AlgebraElem truncate_power(const AlgebraElem& a, long long bound);

// Additive actions. Right: coefficient substitution f(e(q) z^N); left:
// index contraction then rotation, so the result order is the minimum of
// floor(order / power) over the terms.
series::TaylorSeries act_right(const series::TaylorSeries& h, const AlgebraElem& a);
series::TaylorSeries act_left(const AlgebraElem& a, const series::TaylorSeries& h);

// Multiplicative actions on series with constant term 1, via the logarithm.
series::TaylorSeries act_right_mult(const series::TaylorSeries& f,
                                    const AlgebraElem& a);
series::TaylorSeries act_left_mult(const AlgebraElem& a,
                                   const series::TaylorSeries& f);

measures::MPtr act_right(const measures::MPtr& mu, const AlgebraElem& a);
measures::MPtr act_left(const AlgebraElem& a, const measures::MPtr& mu);

mass::MassFunction act_right(const mass::MassFunction& f, const AlgebraElem& a);
mass::MassFunction act_left(const AlgebraElem& a, const mass::MassFunction& f);

// All products of the generators up to the bound, sorted, starting at 1.
std::vector<long long> enumerate_S(const std::vector<int>& gens, long long bound);

// Exact count of generator products <= x together with the analytic
// envelope: lower s^{-s} (log_{N1} x)^s with N1 the largest generator, upper
// a1 (1 + log^s x) with a1 frozen by calibration at x = N1^s.
struct CountBounds {
  long long count = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool within = false;
};
CountBounds count_bounds(const std::vector<int>& gens, double x);

// Rendering like "3/2·[1/6]φ_12 + 1"; the identity term prints as "1".
std::string to_string(const AlgebraElem& a);

}  // namespace ck::algebra
