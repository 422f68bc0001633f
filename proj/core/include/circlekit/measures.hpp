#pragma once

#include "circlekit/scalar.hpp"
#include "circlekit/series.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace ck::measures {

// Symbolic measure expressions on the circle. Angles are rational fractions
// of a full turn; weights and masses are exact rationals at the leaves.
// Coefficient conventions: c_nu(mu) = integral of zeta^{-nu} d mu.

struct MeasureExpr;
using MPtr = std::shared_ptr<const MeasureExpr>;

struct Haar {
  Rat mass;
};

struct AtomNode {
  Rat angle;  // turns, reduced to [0, 1)
  Rat weight;
};

struct DensityNode {
  // Trigonometric density: window c_{-W}..c_W of the density function,
  // index i holds c_{i - W}. Must be Hermitian for a real density.
  std::vector<Cd> window;
};

struct DigitBernoulliNode {
  int base;                  // >= 2
  std::vector<Rat> weights;  // size == base, nonnegative, sum 1
};

struct RotateNode {
  Rat angle;  // turns
  MPtr inner;
};

struct PushNode {
  int factor;  // image under zeta -> zeta^N
  MPtr inner;
};

struct PullNode {
  int factor;  // normalized preimage average under zeta -> zeta^N
  MPtr inner;
};

struct LinCombNode {
  std::vector<std::pair<Rat, MPtr>> terms;
};

struct MeasureExpr {
  std::variant<Haar, AtomNode, DensityNode, DigitBernoulliNode, RotateNode, PushNode,
               PullNode, LinCombNode>
      node;
};

MPtr haar(Rat mass);
MPtr atom(Rat angle_turns, Rat weight);
MPtr density(std::vector<Cd> window);
MPtr digit_bernoulli(int base, std::vector<Rat> weights);
MPtr rotate(Rat angle_turns, MPtr inner);
MPtr push(int N, MPtr inner);
MPtr pull(int N, MPtr inner);
MPtr lincomb(std::vector<std::pair<Rat, MPtr>> terms);

// Two-sided coefficient window c_{-K}..c_K with per-coefficient error bounds.
struct FourierWindow {
  int halfwidth = 0;
  std::vector<Cd> c;         // size 2K+1, index nu + K
  std::vector<double> err;   // certified absolute bounds, same layout

  explicit FourierWindow(int K)
      : halfwidth(K), c(2 * static_cast<size_t>(K) + 1), err(2 * static_cast<size_t>(K) + 1) {}
  Cd at(long long nu) const {
    return (nu < -halfwidth || nu > halfwidth) ? Cd{} : c[static_cast<size_t>(nu + halfwidth)];
  }
  double err_at(long long nu) const {
    return (nu < -halfwidth || nu > halfwidth) ? 0.0 : err[static_cast<size_t>(nu + halfwidth)];
  }
  void put(long long nu, Cd v, double e) {
    c[static_cast<size_t>(nu + halfwidth)] = v;
    err[static_cast<size_t>(nu + halfwidth)] = e;
  }
};

// Exact canonical atomic form: Haar component plus weighted atoms keyed by
// angle. Available when the expression tree has no density or digit leaves.
struct Flattened {
  Rat haar_mass;
  std::map<Rat, Rat> atoms;  // angle in [0,1) -> weight, zero weights pruned
};
std::optional<Flattened> flatten_atomic(const MPtr& mu);

FourierWindow fourier(const MPtr& mu, int K, double tol);

struct InvarianceReport {
  double max_deviation = 0.0;
  double err_allowance = 0.0;
  bool pass = false;
};
// Compares the window of mu with the window of its image under zeta -> zeta^N.
InvarianceReport invariance_check(const MPtr& mu, int N, int K, double tol);

// a_0 = c_0, a_nu = 2 c_nu: the disc transform whose real part recovers mu.
series::TaylorSeries herglotz_series(const MPtr& mu, int K, double tol);
// (herglotz + c_0) / 2, the plain geometric-kernel transform.
series::TaylorSeries cauchy_series(const MPtr& mu, int K, double tol);
// Primitive transform: a_nu = c_nu / (pi i nu), a_0 = 0.
series::TaylorSeries G_series(const MPtr& mu, int K, double tol);

// exp(-herglotz): returned as unit series (constant 1) plus the scalar
// prefactor exp(-c_0) that multiplies it.
struct FmuResult {
  Cd prefactor{1.0, 0.0};
  series::TaylorSeries unit;
};
FmuResult f_mu_series(const MPtr& mu, int K, double tol);

// Coefficients of the cumulative function theta -> mu[0, theta).
FourierWindow muhat_fourier(const MPtr& mu, int K, double tol);

// Coefficientwise product (transform of the multiplicative convolution).
FourierWindow convolve(const FourierWindow& a, const FourierWindow& b);

struct Cor9Report {
  bool hermitian = false;
  double hermitian_dev = 0.0;
  bool multiplicative_invariant = false;
  double invariance_dev = 0.0;
  std::vector<std::pair<int, double>> partial_l2;  // (order, sum of |b_n|^2)
  double tail_ratio = 1.0;
  bool likely_positive = false;  // advisory verdict, not a certificate
};
// Heuristic screen for "is this coefficient sequence an invariant positive
// measure": Hermitian symmetry, c_{nu N} = c_nu, and boundedness in L2 of
// exp(-eps sum c_nu z^nu) partial sums. magnitude_bound rejects unbounded data.
Cor9Report corollary9_check(const FourierWindow& c, int N, double eps,
                            const std::vector<int>& orders, double magnitude_bound = 1e3);

// Positive and negative parts of a purely atomic expression.
std::pair<MPtr, MPtr> jordan_parts(const MPtr& mu);

// Evaluates the disc transform at |z| < 1 with certified truncation error.
Cd eval_herglotz(const MPtr& mu, Cd z, double tol);

// Total variation upper bound used for evaluation tail control.
double total_variation_bound(const MPtr& mu);

// Total mass (the 0-th coefficient), exact along the tree; the rational form
// rejects density leaves, whose mass is a complex double.
Rat total_mass(const MPtr& mu);
Cd total_mass_cd(const MPtr& mu);

// Cumulative function mu[0, t) at t in turns within [0, 1).
double cumulative(const MPtr& mu, double t, double tol);

// Mean of the cumulative function over one turn.
double mu0(const MPtr& mu, double tol);

}  // namespace ck::measures
