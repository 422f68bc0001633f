#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "circlekit/mass.hpp"
#include "circlekit/scalar.hpp"

namespace ck::entropy {

// Modulus of continuity used to grade thin measures. The gamma family is
// kappa_gamma(x) = Gamma(gamma+1, log(1/x)) / Gamma(gamma+1), which for
// integer gamma collapses to x * sum_{v<=gamma} |log x|^v / v!. The power
// family is kappa(x) = x^alpha with 0 < alpha <= 1 (alpha = 1 coincides
// with gamma = 0).
struct Kappa {
  enum class Family { gamma_family, power_family };
  Family family = Family::gamma_family;
  double param = 0.0;
};

Kappa kappa_gamma(double gamma);  // gamma in [0, 30]
Kappa kappa_power(double alpha);  // alpha in (0, 1]

// kappa(x) for x in [0, 1]. Normalized so kappa(0) = 0 and kappa(1) = 1.
double kappa_eval(const Kappa& k, double x);

// Finite subset of the circle, angles in turns, sorted and distinct in [0,1).
struct FiniteCircleSet {
  std::vector<Rat> angles;
};

// Normalizes mod 1, sorts, removes duplicates.
FiniteCircleSet circle_set(std::vector<Rat> angles);

// Sum of kappa over the complementary arcs (total circle length 1).
// Empty set gives 0; any nonempty set gives at least kappa(1) = 1.
double entropy_finite(const FiniteCircleSet& e, const Kappa& k);

// Full preimage under t -> N t: all (t + j) / N.
FiniteCircleSet preimage_set(const FiniteCircleSet& e, int n);
// Image under t -> N t of the part of e in the closed arc [k/N, (k+1)/N].
FiniteCircleSet image_set(const FiniteCircleSet& e, int n, int k);

// Self-similar set: at each level keep the listed digits base `base`.
// Digits must be distinct, in [0, base), and leave at least one gap.
struct CantorDesc {
  int base = 3;
  std::vector<int> digits = {0, 2};
};

// Endpoint set of the depth-n truncation (both ends of every kept interval).
FiniteCircleSet cantor_endpoints(const CantorDesc& desc, int depth);

// Entropy of the limit set as the series
//   sum_{n>=1} |D|^{n-1} (base - |D|) kappa(base^{-n}),
// which counts every removed digit cell at every level as one gap. When two
// removed cells are adjacent the true gap structure merges them, so the
// series is an upper bound in general; it is exact whenever removed digits
// are isolated (as for the middle-thirds set). Truncation entropies
// entropy_finite(cantor_endpoints(d, n), k) then increase to the value.
struct CantorEntropy {
  double value = 0.0;       // partial sum actually accumulated
  double tail_bound = 0.0;  // certified bound on the omitted tail
  bool diverged = false;    // partial sums passed the ceiling
  long long terms = 0;
};

CantorEntropy entropy_cantor(const CantorDesc& desc, const Kappa& k, double tol,
                             double ceiling = 1e6);

// Lower-bound estimator for the kappa variation of a mass function: at each
// level the circle splits into 2^level arcs, shifted through `offsets`
// phases, and the largest sum of |mu(arc)| is kept.
struct VariationRow {
  int level = 0;
  double raw_sum = 0.0;    // max over offsets of sum |mu(C_j)|
  double kappa_sum = 0.0;  // 2^level * kappa(2^-level)
  double ratio = 0.0;
};

std::vector<VariationRow> variation_estimate(const mass::MassFunction& f,
                                             const Kappa& k,
                                             const std::vector<int>& levels,
                                             int offsets, double tol);

// Samples arcs (random dyadic lengths plus short arcs anchored at 0 and at
// every jump) and checks |mu(C)| <= bound * kappa(|C|). Advisory: a pass
// only says no sampled arc violated the bound.
struct BoundReport {
  bool pass = false;
  double worst_margin = 0.0;  // max over arcs of |mu(C)| - bound * kappa(|C|)
  double worst_length = 0.0;
  double worst_value = 0.0;
};

BoundReport kappa_bounded_check(const mass::MassFunction& f, const Kappa& k,
                                double bound, int samples, uint64_t seed,
                                double tol);

// Growth profile of a harmonic-part evaluator h(z): for each radius r the
// sup over a theta grid of Re h(r e(theta)), divided by |log(1-r)|^gamma.
struct GrowthRow {
  double r = 0.0;
  double sup_re = 0.0;
  double ratio = 0.0;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  bool bounded_envelope = false;  // second-half max <= first-half max (+slack)
  bool monotone_increase = false; // ratios strictly increase along the schedule
  bool evaluator_ok = true;       // evaluator succeeded at every radius
};

GrowthReport growth_class_check(const std::function<Cd(Cd, double)>& h,
                                double gamma, const std::vector<double>& radii,
                                int grid, double tol);

}  // namespace ck::entropy
