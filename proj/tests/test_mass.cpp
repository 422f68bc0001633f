#include <cmath>
#include <complex>
#include <vector>

#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/scalar.hpp"
#include "circlekit/series.hpp"
#include "circlekit/util.hpp"
#include "doctest.h"

using namespace ck;
using namespace ck::mass;
using ck::series::TaylorSeries;

namespace {

// Atoms at 1/7 and 1/3 over a uniform background plus an unbounded-variation
// oscillation: exercises every component of the representation at once.
MassFunction mixed_mass() {
  MassFunction f = atomic_mass({{Rat(1, 7), 0.4}, {Rat(1, 3), 0.25}});
  f = add(f, lacunary_mass(2, 0.5));
  return add(f, haar_mass(0.6));
}

// Zero-mass seed with one oscillation: cumulative function of a trig density.
MassFunction seed_premeasure() {
  std::vector<Cd> w = {std::conj(Cd{0.25, -0.1}), Cd{0.0, 0.0}, Cd{0.25, -0.1}};
  return density_mass(w);
}

double grid_diff(const MassFunction& a, const MassFunction& b, int grid, double tol) {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    double t = (2.0 * i + 1.0) / (2.0 * grid);
    worst = std::max(worst, std::abs(eval_turns(a, t, tol) - eval_turns(b, t, tol)));
  }
  return worst;
}

}  // namespace

TEST_CASE("evaluation is left continuous and ends at the total mass") {
  MassFunction f = atomic_mass({{Rat(1, 2), 1.0}});
  CHECK(eval_turns(f, 0.5, 1e-12) == 0.0);
  CHECK(eval_turns(f, 0.5 + 1e-9, 1e-12) == 1.0);
  CHECK(eval_turns(f, 0.0, 1e-12) == 0.0);
  CHECK(eval_turns(f, 1.0, 1e-12) == doctest::Approx(1.0));
  CHECK_THROWS_AS(eval_turns(f, 1.5, 1e-12), input_error);
}

TEST_CASE("arc measure handles wraparound and point arcs") {
  MassFunction f = add(atomic_mass({{Rat(1, 6), 0.3}, {Rat(0), 0.2}}), haar_mass(2.0));
  CHECK(arc_measure(f, Arc{Rat(1, 6), Rat(1, 6), true}, 1e-12) == doctest::Approx(0.3));
  CHECK(arc_measure(f, Arc{Rat(1, 12), Rat(1, 12), true}, 1e-12) == 0.0);
  // [1/6, 1/2) holds the atom at 1/6 and a third of the uniform part.
  CHECK(arc_measure(f, Arc{Rat(1, 6), Rat(1, 2)}, 1e-12) ==
        doctest::Approx(0.3 + 2.0 / 3.0));
  // Wraparound [3/4, 1/4) holds both atoms and half the uniform part.
  CHECK(arc_measure(f, Arc{Rat(3, 4), Rat(1, 4)}, 1e-12) == doctest::Approx(0.5 + 1.0));
  // Full-turn complement splits the total mass.
  double a = arc_measure(f, Arc{Rat(1, 3), Rat(4, 5)}, 1e-12);
  double b = arc_measure(f, Arc{Rat(4, 5), Rat(1, 3)}, 1e-12);
  CHECK(a + b == doctest::Approx(f.total_mass));
}

TEST_CASE("image action matches the pointwise preimage sum") {
  MassFunction f = mixed_mass();
  const int N = 3;
  MassFunction g = act_push(f, N);
  CHECK(g.total_mass == doctest::Approx(f.total_mass));
  for (int i = 0; i < 64; ++i) {
    double t = (2.0 * i + 1.0) / 128.0;
    double direct = eval_turns(g, t, 1e-10);
    double sum = 0.0;
    for (int k = 0; k < N; ++k) {
      sum += eval_turns(f, (t + k) / N, 1e-10);
      sum -= eval_turns(f, static_cast<double>(k) / N, 1e-10);
    }
    CHECK(direct == doctest::Approx(sum).epsilon(1e-8));
  }
}

TEST_CASE("push after pull is the identity") {
  MassFunction f = mixed_mass();
  for (int N : {2, 5}) {
    MassFunction g = act_push(act_pull(f, N), N);
    CHECK(g.total_mass == doctest::Approx(f.total_mass));
    REQUIRE(g.jumps.size() == f.jumps.size());
    for (size_t j = 0; j < f.jumps.size(); ++j) {
      CHECK(g.jumps[j].first == f.jumps[j].first);
      CHECK(g.jumps[j].second == doctest::Approx(f.jumps[j].second));
    }
    CHECK(grid_diff(g, f, 64, 1e-10) <= 1e-8);
  }
}

TEST_CASE("pull after push averages the unit-fraction rotations") {
  MassFunction f = mixed_mass();
  const int N = 3;
  MassFunction lhs = act_pull(act_push(f, N), N);
  MassFunction rhs = scale(act_trace(f, N), 1.0 / N);
  CHECK(lhs.total_mass == doctest::Approx(rhs.total_mass));
  CHECK(grid_diff(lhs, rhs, 64, 1e-10) <= 1e-8);
}

TEST_CASE("trace is the sum of rotations and coprime pushes commute") {
  MassFunction f = mixed_mass();
  MassFunction tr = act_trace(f, 4);
  MassFunction man = act_rotation(f, Rat(0));
  for (int k = 1; k < 4; ++k) man = add(man, act_rotation(f, Rat(k, 4)));
  CHECK(grid_diff(tr, man, 32, 1e-10) <= 1e-8);

  MassFunction ab = act_push(act_push(f, 2), 3);
  MassFunction ba = act_push(act_push(f, 3), 2);
  CHECK(grid_diff(ab, ba, 64, 1e-10) <= 1e-8);
  MassFunction pab = act_pull(act_pull(f, 2), 3);
  MassFunction pba = act_pull(act_pull(f, 3), 2);
  CHECK(grid_diff(pab, pba, 64, 1e-10) <= 1e-8);
}

TEST_CASE("mean agrees with a midpoint quadrature") {
  MassFunction f = mixed_mass();
  const int G = 32768;
  double mean = 0.0;
  for (int i = 0; i < G; ++i)
    mean += eval_turns(f, (2.0 * i + 1.0) / (2.0 * G), 1e-8);
  mean /= G;
  CHECK(mu0(f, 1e-9) == doctest::Approx(mean).epsilon(1e-4));
}

TEST_CASE("lacunary premeasure is a fixed point of its base map image") {
  for (int N : {2, 3}) {
    MassFunction f = lacunary_mass(N);
    CHECK(f.total_mass == 0.0);
    CHECK(atoms(f).empty());
    CHECK(grid_diff(act_push(f, N), f, 64, 1e-10) <= 1e-8);
    FeqReport rep = functional_eq_check(f, N, 64, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.skipped == 0);
  }
  // Uniform mass functions satisfy the identity for every factor.
  CHECK(functional_eq_check(haar_mass(1.0), 5, 32, 1e-11).pass);
  // A stray atom breaks the identity by a visible margin.
  MassFunction bad = add(lacunary_mass(2), atomic_mass({{Rat(1, 5), 0.1}}));
  FeqReport rep = functional_eq_check(bad, 2, 64, 1e-9);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_residual > 1e-3);
}

TEST_CASE("disc transform of the lacunary premeasure is supported on base powers") {
  TaylorSeries h = herglotz_series(lacunary_mass(2), 40);
  for (int nu = 0; nu <= 40; ++nu) {
    Cd c = h.coeff_cd(nu);
    bool pow = nu == 1 || nu == 2 || nu == 4 || nu == 8 || nu == 16 || nu == 32;
    if (pow) {
      CHECK(c.real() == doctest::Approx(-2.0));
      CHECK(std::abs(c.imag()) < 1e-14);
    } else {
      CHECK(std::abs(c) < 1e-14);
    }
  }
}

TEST_CASE("disc transform agrees with the measure-tree coefficients") {
  std::vector<Cd> win = {std::conj(Cd{0.2, 0.05}), Cd{1.0, 0.0}, Cd{0.2, 0.05}};
  TaylorSeries from_mass = herglotz_series(density_mass(win), 6);
  TaylorSeries from_tree = measures::herglotz_series(measures::density(win), 6, 1e-14);
  CHECK(series::max_abs_diff(from_mass, from_tree) < 1e-12);
}

TEST_CASE("certified evaluator matches the coefficient sum") {
  MassFunction f = add(atomic_mass({{Rat(1, 6), 0.3}}), lacunary_mass(3, 0.8));
  f = add(f, haar_mass(0.4));
  auto h = herglotz_evaluator(f);
  TaylorSeries hs = herglotz_series(f, 240);
  for (Cd z : {Cd{0.25, 0.2}, Cd{-0.4, 0.1}, Cd{0.0, 0.55}}) {
    Cd direct = h(z, 1e-13);
    Cd acc{};
    for (int nu = 240; nu >= 0; --nu) acc = acc * z + hs.coeff_cd(nu);
    CHECK(std::abs(direct - acc) < 1e-11);
  }
  CHECK_THROWS_AS(h(Cd{1.0, 0.5}, 1e-10), input_error);
  CHECK_THROWS_AS(h(Cd{0.5, 0.0}, -1.0), input_error);
}

TEST_CASE("radial detector recovers an atom weight") {
  MassFunction f = add(atomic_mass({{Rat(1, 6), 0.3}}), haar_mass(0.7));
  auto h = herglotz_evaluator(f);
  RadialReport at = radial_atom(h, unit_turns(Rat(1, 6)), 4, 16, 1e-6);
  CHECK(at.converged);
  CHECK(std::abs(at.limit - 0.3) < 5e-3);
  RadialReport off = radial_atom(h, unit_turns(Rat(1, 3)), 4, 16, 1e-6);
  CHECK(off.converged);
  CHECK(std::abs(off.limit) < 5e-3);
  CHECK_THROWS_AS(radial_atom(h, Cd{0.5, 0.0}, 4, 16, 1e-6), input_error);
}

TEST_CASE("detector kernel integrates to its closed form") {
  for (double r : {0.5, 0.9, 0.99}) {
    KernelReport rep = kernel_psi_check(r, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.abs_error <= 1e-8);
    CHECK(rep.nonnegative);
    CHECK(rep.odd);
    CHECK(rep.closed_form == doctest::Approx(2.0 * r / (1.0 - r * r)));
  }
  CHECK_THROWS_AS(kernel_psi_check(1.0, 1e-8), input_error);
}

TEST_CASE("summed pullbacks of the sine seed rebuild the lacunary premeasure") {
  // The one-oscillation seed has coefficients -1 at frequencies +-1, so its
  // summed pullbacks over powers of 2 telescope into the base-2 premeasure.
  std::vector<Cd> w = {Cd{-1.0, 0.0}, Cd{0.0, 0.0}, Cd{-1.0, 0.0}};
  MassFunction sigma = density_mass(w);
  PsiResult psi = psi_S_mass(sigma, {2}, 1e-7);
  CHECK(psi.tail_bound <= 1e-7);
  CHECK(grid_diff(psi.value, lacunary_mass(2), 64, 1e-9) <= 1e-5);
  FeqReport rep = functional_eq_check(psi.value, 2, 32, 1e-5);
  CHECK(rep.pass);
}

TEST_CASE("inclusion-exclusion inverts the summed pullbacks on a grid") {
  MassFunction sigma = seed_premeasure();
  std::vector<int> gens = {2, 3};
  PsiResult psi = psi_S_mass(sigma, gens, 1e-6);
  MassFunction back = phi_S_mass(psi.value, gens);
  CHECK(back.total_mass == doctest::Approx(0.0));
  double budget = 10.0 * (psi.tail_bound + 1e-8) + 1e-9;
  CHECK(grid_diff(back, sigma, 64, 1e-9) <= budget);
  // The summed pullbacks satisfy the invariance identity for each generator.
  for (int N : gens) CHECK(functional_eq_check(psi.value, N, 32, 1e-5).pass);
}

TEST_CASE("idempotent complement annihilates invariant mass functions") {
  MassFunction om = omega_S_mass(haar_mass(1.0), {2, 3});
  CHECK(om.total_mass == 0.0);
  CHECK(grid_diff(om, haar_mass(0.0), 32, 1e-11) <= 1e-10);

  MassFunction f = omega_S_mass(atomic_mass({{Rat(1, 3), 1.0}}), {3});
  CHECK(f.total_mass == doctest::Approx(0.0));
  REQUIRE(f.jumps.size() == 3);
  CHECK(f.jumps[0].first == Rat(0));
  CHECK(f.jumps[0].second == doctest::Approx(-1.0 / 3.0));
  CHECK(f.jumps[1].first == Rat(1, 3));
  CHECK(f.jumps[1].second == doctest::Approx(2.0 / 3.0));
  CHECK(f.jumps[2].first == Rat(2, 3));
  CHECK(f.jumps[2].second == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("mass constructions reject malformed input") {
  CHECK_THROWS_AS(lacunary_mass(1), input_error);
  CHECK_THROWS_AS(density_mass({Cd{1.0, 0.0}, Cd{0.0, 0.0}}), input_error);
  CHECK_THROWS_AS(act_pull(mixed_mass(), 0), input_error);
  CHECK_THROWS_AS(act_push(mixed_mass(), -2), input_error);
  CHECK_THROWS_AS(functional_eq_check(haar_mass(1.0), 1, 8, 1e-9), input_error);
  CHECK_THROWS_AS(psi_S_mass(seed_premeasure(), {2, 4}, 1e-6), input_error);
  CHECK_THROWS_AS(psi_S_mass(seed_premeasure(), {2}, 0.0), input_error);
  CHECK_THROWS_AS(radial_atom(herglotz_evaluator(haar_mass(1.0)), Cd{1.0, 0.0}, 3, 2,
                              1e-6),
                  input_error);
}
