#pragma once

#include "circlekit/scalar.hpp"

#include <vector>

namespace ck::series {

enum class Kind { rational, floating };

// Truncated Taylor series: coefficients a_0..a_K of a formal power series,
// carried either as exact rational complex numbers or as complex doubles.
// The scalar kind is fixed per series; binary operations reject mixed kinds
// and truncate to the smaller order.
class TaylorSeries {
public:
  TaylorSeries() : kind_(Kind::rational), order_(0), rc_(1) {}
  TaylorSeries(Kind k, int order);

  static TaylorSeries from_rational(std::vector<RatC> coeffs);
  static TaylorSeries from_floating(std::vector<Cd> coeffs);

  Kind kind() const { return kind_; }
  int order() const { return order_; }

  const RatC& rat(int i) const;
  const Cd& flt(int i) const;
  void set(int i, RatC v);
  void set(int i, Cd v);
  Cd coeff_cd(int i) const;  // value as a complex double regardless of kind

  const std::vector<RatC>& rat_coeffs() const { return rc_; }
  const std::vector<Cd>& flt_coeffs() const { return fc_; }

  TaylorSeries to_floating() const;
  TaylorSeries truncated(int new_order) const;  // new_order <= order

private:
  Kind kind_;
  int order_;
  std::vector<RatC> rc_;
  std::vector<Cd> fc_;
};

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries neg(const TaylorSeries& a);
TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries scale(const TaylorSeries& a, const RatC& s);
TaylorSeries scale_cd(const TaylorSeries& a, Cd s);
TaylorSeries pow_int(const TaylorSeries& a, int n);  // n >= 0

// exp of a series with zero constant term.
TaylorSeries exp_series(const TaylorSeries& a);
// log of a series with constant term one; exp_series(log_series(f)) == f.
TaylorSeries log_series(const TaylorSeries& a);
// 1/f for f with constant term one.
TaylorSeries reciprocal(const TaylorSeries& a);
// Termwise derivative; order drops by one.
TaylorSeries derivative(const TaylorSeries& a);

// f(z^N) truncated at the original order.
TaylorSeries compose_zN(const TaylorSeries& f, int N);
// N * (sum over coefficients at indices divisible by N, indices kept).
TaylorSeries trace_N(const TaylorSeries& f, int N);
// Coefficients at indices divisible by N moved down to index nu/N; others dropped.
TaylorSeries contract_indices(const TaylorSeries& f, int N);
// exp(trace_N(log f)); multiplicative trace of f with f(0) = 1.
TaylorSeries mult_trace(const TaylorSeries& f, int N);
// Coefficients a_nu * zeta^nu for zeta = e^{2 pi i q}; floating result unless q = 0.
TaylorSeries rotate(const TaylorSeries& f, const Rat& q_turns);
TaylorSeries rotate_cd(const TaylorSeries& f, Cd zeta);

// max |coeff| of compose_zN(f,N)^N - mult_trace(f,N); zero iff f satisfies the
// multiplicative functional equation at level N up to the carried order.
double feq_residual(const TaylorSeries& f, int N);

// Product of compose_zN(alpha, N) over all monoid elements N <= order(alpha)
// generated by gens; exact at the carried order because larger N contribute 1.
TaylorSeries psi_S_product(const TaylorSeries& alpha, const std::vector<int>& gens);
// Inclusion-exclusion over subsets of gens on log f, then exp.
TaylorSeries phi_S(const TaylorSeries& f, const std::vector<int>& gens);
// Keeps log-coefficients at indices divisible by none of the gens, then exp.
TaylorSeries omega_S(const TaylorSeries& f, const std::vector<int>& gens);

// Comparison helpers; orders are truncated to the smaller one.
double max_abs_diff(const TaylorSeries& a, const TaylorSeries& b);
bool equal_exact(const TaylorSeries& a, const TaylorSeries& b);

}  // namespace ck::series
