#pragma once

#include "circlekit/scalar.hpp"
#include "circlekit/series.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace ck::mass {

// Cumulative mass functions on the circle, normalized to one turn:
// F(t) = slope * t + sum_j w_j [t > t_j] + (S(t) - S(0)),  F(0) = 0,
// where slope = total_mass - sum_j w_j and S is an absolutely convergent
// zero-mean Fourier part. F is left-continuous at the jump angles. A zero
// total mass makes F periodic (a premeasure); otherwise F(t+1) = F(t) + mass.

// Names the generator a smooth part was built from, for serialization.
// An empty kind marks a transformed or combined part with no named form.
struct SmoothDesc {
  std::string kind;  // "zero", "trig", or "lacunary"
  int base = 0;
  double amplitude = 0.0;
  std::vector<Cd> window;
};

// Composable coefficient oracle for the smooth part. coeff(nu) is the
// nu-th Fourier coefficient of S with respect to e^{2 pi i nu t}, nu != 0;
// abs_tail(K) bounds sum_{|nu| > K} |coeff(nu)|; coeff_height() bounds
// sup_nu |nu * coeff(nu)| (finite for every generator and combinator here).
class SmoothPart {
public:
  virtual ~SmoothPart() = default;
  virtual Cd coeff(long long nu) const = 0;
  virtual double abs_tail(long long K) const = 0;
  virtual double coeff_height() const = 0;
  // Appends the nonzero coefficients with 0 < |nu| <= K as (nu, value) pairs;
  // sparse parts stay cheap even when abs_tail forces K very large.
  virtual void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const = 0;
  virtual SmoothDesc describe() const { return {}; }
};
using SmoothPtr = std::shared_ptr<const SmoothPart>;

SmoothPtr smooth_zero();
// Finite window s_{-W}..s_W of S itself; the center entry is ignored.
SmoothPtr smooth_trig(std::vector<Cd> window);
// S(t) = -(amplitude/pi) sum_k base^{-k} sin(2 pi base^k t), k >= 0.
SmoothPtr smooth_lacunary(int base, double amplitude);
SmoothPtr smooth_sum(std::vector<std::pair<double, SmoothPtr>> terms);
SmoothPtr smooth_rotate(const Rat& beta_turns, SmoothPtr inner);
SmoothPtr smooth_pull(int N, SmoothPtr inner);
SmoothPtr smooth_push(int N, SmoothPtr inner);

struct MassFunction {
  double total_mass = 0.0;
  std::vector<std::pair<Rat, double>> jumps;  // angle in turns [0,1) -> weight, sorted
  SmoothPtr smooth = smooth_zero();
};

MassFunction haar_mass(double mass);
MassFunction atomic_mass(std::vector<std::pair<Rat, double>> jumps);
// Premeasure fixed by the base map: F(t) = -(1/pi) sum base^{-k} sin(2 pi base^k t).
MassFunction lacunary_mass(int base, double amplitude = 1.0);
// Absolutely continuous part from a density window (coefficients of the
// density); the center coefficient becomes the total mass.
MassFunction density_mass(const std::vector<Cd>& density_window);

// Half-open arc [start, end) in turns; wraparound when end < start.
// A degenerate arc flagged as a point stands for the singleton {start}.
struct Arc {
  Rat start;
  Rat end;
  bool point = false;
};

double eval_turns(const MassFunction& f, double t, double tol);
double eval(const MassFunction& f, double theta_radians, double tol);
double arc_measure(const MassFunction& f, const Arc& arc, double tol);

// Pullback by rotation: the mass function of the rotated measure.
MassFunction act_rotation(const MassFunction& f, const Rat& beta_turns);
// Normalized preimage under t -> Nt.
MassFunction act_pull(const MassFunction& f, int N);
// Image under t -> Nt.
MassFunction act_push(const MassFunction& f, int N);
// Sum of the N unit-fraction rotations.
MassFunction act_trace(const MassFunction& f, int N);

MassFunction add(const MassFunction& a, const MassFunction& b);
MassFunction scale(const MassFunction& a, double s);

// Sum of act_pull over all monoid elements generated by gens, truncated at a
// cutoff chosen so the certified tail sup|F| * (remaining sum of 1/N) <= tol.
struct PsiResult {
  MassFunction value;
  long long cutoff = 0;
  double tail_bound = 0.0;
};
PsiResult psi_S_mass(const MassFunction& f, const std::vector<int>& gens, double tol);
// Inclusion-exclusion over subsets of gens (pull composed with scaling).
MassFunction phi_S_mass(const MassFunction& f, const std::vector<int>& gens);
// Product of (1 - mean over N_i-th rotations), expanded by coprimality.
MassFunction omega_S_mass(const MassFunction& f, const std::vector<int>& gens);

struct FeqReport {
  double max_residual = 0.0;
  double c0_from_mass = 0.0;  // (N-1) * mean of F
  double c0_from_sum = 0.0;   // sum_k F((t+k)/N) - F(t) averaged over the grid
  double c0_disagreement = 0.0;
  int grid_points = 0;
  int skipped = 0;
  bool pass = false;
};
// Checks the invariance identity F(t) + c0 = sum_{k<N} F((t+k)/N) on a
// jump-avoiding grid, with c0 = sum_{k<N} F(k/N); for an invariant mass
// function c0 also equals (N-1) times the mean of F, and the report carries
// both values.
FeqReport functional_eq_check(const MassFunction& f, int N, int grid, double tol);

std::vector<std::pair<Rat, double>> atoms(const MassFunction& f);

// Mean of F over one turn.
double mu0(const MassFunction& f, double tol);

// Disc transform built from the jump data and the smooth coefficients:
// a_0 = total_mass, a_nu = 2 sum_j w_j e^{-2 pi i nu t_j} + 4 pi i nu s_nu.
series::TaylorSeries herglotz_series(const MassFunction& f, int K);

// Certified evaluator for the disc transform of f; tol is absolute.
std::function<Cd(Cd, double)> herglotz_evaluator(const MassFunction& f);

struct RadialReport {
  std::vector<double> values;  // (1 - r_k)/2 * Re h(r_k eta), r_k = 1 - 2^{-k}
  bool converged = false;
  double limit = 0.0;
};
// Radial atom-weight detector along r_k = 1 - 2^{-k}.
RadialReport radial_atom(const std::function<Cd(Cd, double)>& h, Cd eta, int kmin,
                         int kmax, double tol);

struct KernelReport {
  double integral = 0.0;
  double closed_form = 0.0;
  double abs_error = 0.0;
  bool nonnegative = true;
  bool odd = true;
  bool pass = false;
};
// Quadrature check of the detector kernel r(1-r^2) sin(theta) / |e^{i theta} - r|^4:
// its integral over [0, pi] must equal 2r / (1 - r^2), it is nonnegative there,
// and it is odd in theta.
KernelReport kernel_psi_check(double r, double tol);

}  // namespace ck::mass
