#pragma once

#include <vector>

#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/series.hpp"

namespace ck::witt {

using series::TaylorSeries;

// Big Witt vectors carried as truncated power series with constant term one.
// Addition is series multiplication; the ghost map sends a vector to the
// power sums of its inverse roots, turning multiplication componentwise.
// Every operation preserves the scalar kind, so rational inputs stay exact.

// nu-th coefficient is the nu-th ghost component; index 0 is zero.
TaylorSeries ghost(const TaylorSeries& p);
// Inverse of ghost on series with vanishing constant coefficient.
TaylorSeries unghost(const TaylorSeries& g);

TaylorSeries w_add(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries w_neg(const TaylorSeries& a);
TaylorSeries w_mul(const TaylorSeries& a, const TaylorSeries& b);

// Multiplicative lift 1 - a z, the vector with ghost components a^nu.
TaylorSeries teichmuller(const RatC& a, int order);
TaylorSeries teichmuller_cd(Cd a, int order);

// Shifts ghost components by nu -> nu * n; the order drops to floor(order/n).
TaylorSeries frobenius(const TaylorSeries& p, int n);
// z -> z^n; ghost components spread to multiples of n, scaled by n.
TaylorSeries verschiebung(const TaylorSeries& p, int n);

// exp(sum_k z^{n^k} / n^k) truncated; exact in rational arithmetic.
TaylorSeries artin_hasse_base(int n, int order);
// exp(sum over the monoid generated by gens of z^m / m), m up to the order.
TaylorSeries artin_hasse_set(const std::vector<int>& gens, int order);

// True when every reduced coefficient denominator is coprime to the prime.
// Requires a rational-kind series.
bool p_integral(const TaylorSeries& p, int prime);

// Witt vector of a measure or premeasure: ghost components equal the
// Fourier coefficients c_nu, so the base-map image corresponds to frobenius
// and the normalized preimage (times n) to verschiebung.
TaylorSeries w_of_measure(const measures::MPtr& mu, int order, double tol);
TaylorSeries w_of_mass(const mass::MassFunction& f, int order);

}  // namespace ck::witt
