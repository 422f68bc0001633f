#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "circlekit/algebra.hpp"
#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/scalar.hpp"
#include "circlekit/series.hpp"
#include "circlekit/util.hpp"
#include "doctest.h"

using namespace ck;
using namespace ck::algebra;
using ck::series::Kind;
using ck::series::TaylorSeries;

namespace {

AlgebraElem random_elem(Rng& rng, bool rotations) {
  AlgebraElem out;
  int n = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < n; ++i) {
    Rat q = rotations ? Rat(static_cast<long long>(rng.below(12)), 12) : Rat(0);
    long long p = 1 + static_cast<long long>(rng.below(4));
    Rat c(static_cast<long long>(rng.below(7)) - 3, 1 + rng.below(4));
    out = add(out, from_monoid(MonoidElem{q, p}, c));
  }
  return out;
}

TaylorSeries random_unit_series(Rng& rng, int order) {
  TaylorSeries f(Kind::rational, order);
  f.set(0, RatC(1));
  for (int i = 1; i <= order; ++i)
    f.set(i, RatC(Rat(static_cast<long long>(rng.below(9)) - 4, 1 + rng.below(3))));
  return f;
}

}  // namespace

TEST_CASE("monoid composition matches the rotation-power relations") {
  MonoidElem phi2{Rat(0), 2};
  MonoidElem phi3{Rat(0), 3};
  MonoidElem quarter{Rat(1, 4), 1};
  CHECK(monoid_mul(phi2, phi3) == MonoidElem{Rat(0), 6});
  CHECK(monoid_mul(phi3, phi2) == MonoidElem{Rat(0), 6});
  // Moving a quarter rotation past the squaring map doubles the angle.
  CHECK(monoid_mul(phi2, quarter) == MonoidElem{Rat(1, 2), 2});
  CHECK(monoid_mul(quarter, phi2) == MonoidElem{Rat(1, 4), 2});
  CHECK(monoid_mul(quarter, MonoidElem{Rat(5, 6), 1}) ==
        MonoidElem{Rat(1, 12), 1});
  CHECK(monoid_mul(monoid_one(), quarter) == quarter);
  CHECK_THROWS_AS(monoid_mul(MonoidElem{Rat(0), 0}, phi2), input_error);
  MonoidElem huge{Rat(0), 1LL << 40};
  CHECK_THROWS_AS(monoid_mul(monoid_mul(huge, huge), huge), input_error);
}

TEST_CASE("algebra multiplication is associative and bilinear") {
  Rng rng{20240817};
  for (int trial = 0; trial < 40; ++trial) {
    AlgebraElem a = random_elem(rng, true);
    AlgebraElem b = random_elem(rng, true);
    AlgebraElem c = random_elem(rng, true);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
    CHECK(mul(add(a, b), c) == add(mul(a, c), mul(b, c)));
    CHECK(mul(a, algebra_one()) == a);
    CHECK(mul(algebra_one(), a) == a);
  }
}

TEST_CASE("averaging elements are idempotent and expand fully") {
  CHECK(build_trN(3).terms.size() == 3);
  for (int N : {2, 6}) {
    AlgebraElem e = build_eN(N);
    CHECK(e.terms.size() == static_cast<size_t>(N));
    CHECK(mul(e, e) == e);
  }
  AlgebraElem om = build_omega_S({2, 3});
  CHECK(mul(om, om) == om);
}

TEST_CASE("difference product against averaging, the exchange relation") {
  for (std::vector<int> gens : {std::vector<int>{2, 3}, std::vector<int>{2, 3, 5}}) {
    AlgebraElem phi = build_phi_S(gens);
    for (size_t i = 0; i < gens.size(); ++i) {
      AlgebraElem ei = build_eN(gens[i]);
      AlgebraElem rhs = sub(ei, power_term(gens[i]));
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) rhs = mul(rhs, sub(algebra_one(), power_term(gens[j])));
      CHECK(mul(phi, ei) == rhs);
    }
  }
}

TEST_CASE("idempotent complement annihilates every averaged direction") {
  AlgebraElem om = build_omega_S({2, 3});
  for (int g : {2, 3}) {
    CHECK(mul(om, build_eN(g)) == algebra_zero());
    CHECK(mul(build_eN(g), om) == algebra_zero());
  }
}

TEST_CASE("difference product inverts the truncated power sum") {
  AlgebraElem phi = build_phi_S({2, 3});
  AlgebraElem psi = build_psi_S({2, 3}, 64);
  CHECK(truncate_power(mul(phi, psi), 64) == algebra_one());
  CHECK(truncate_power(mul(psi, phi), 64) == algebra_one());
}

TEST_CASE("series actions realize the algebra product") {
  Rng rng{77};
  for (int trial = 0; trial < 12; ++trial) {
    TaylorSeries h = random_unit_series(rng, 48);
    AlgebraElem a = random_elem(rng, false);
    AlgebraElem b = random_elem(rng, false);
    // Rotation-free elements keep the rational kind, so equality is exact.
    CHECK(series::equal_exact(act_right(act_right(h, a), b),
                              act_right(h, mul(a, b))));
    CHECK(series::equal_exact(act_left(a, act_left(b, h)),
                              act_left(mul(a, b), h)));
  }
  TaylorSeries hf = random_unit_series(rng, 48).to_floating();
  for (int trial = 0; trial < 12; ++trial) {
    AlgebraElem a = random_elem(rng, true);
    AlgebraElem b = random_elem(rng, true);
    TaylorSeries lhs = act_right(act_right(hf, a), b);
    TaylorSeries rhs = act_right(hf, mul(a, b));
    CHECK(series::max_abs_diff(lhs, rhs) < 1e-11);
    TaylorSeries llhs = act_left(a, act_left(b, hf));
    TaylorSeries lrhs = act_left(mul(a, b), hf);
    CHECK(series::max_abs_diff(llhs, lrhs) < 1e-11);
  }
}

TEST_CASE("right action by the difference product is the quotient form") {
  Rng rng{501};
  for (int trial = 0; trial < 10; ++trial) {
    TaylorSeries f = random_unit_series(rng, 36);
    CHECK(series::equal_exact(act_right_mult(f, build_phi_S({2, 3})),
                              series::phi_S(f, {2, 3})));
  }
}

TEST_CASE("complement fixes series with no averaged frequencies") {
  TaylorSeries h(Kind::floating, 14);
  for (int i : {1, 5, 7, 11, 13}) h.set(i, Cd{0.3 * i, -0.1});
  TaylorSeries killed = act_right(h, build_eN(2));
  CHECK(series::max_abs_diff(killed, TaylorSeries(Kind::floating, 14)) < 1e-13);
  TaylorSeries fixed = act_right(h, build_omega_S({2, 3}));
  CHECK(series::max_abs_diff(fixed, h) < 1e-12);
}

TEST_CASE("pullback equals averaging on an image-invariant measure") {
  measures::MPtr mu = measures::lincomb({{Rat(1, 3), measures::atom(Rat(1, 7), Rat(1))},
                                         {Rat(1, 3), measures::atom(Rat(2, 7), Rat(1))},
                                         {Rat(1, 3), measures::atom(Rat(4, 7), Rat(1))}});
  measures::FourierWindow avg = measures::fourier(act_right(mu, build_eN(2)), 20, 1e-12);
  measures::FourierWindow pulled =
      measures::fourier(act_right(mu, power_term(2)), 20, 1e-12);
  for (long long nu = -20; nu <= 20; ++nu)
    CHECK(std::abs(avg.at(nu) - pulled.at(nu)) < 1e-13);
}

TEST_CASE("measure actions intertwine with the disc transform") {
  Rng rng{9321};
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<std::pair<Rat, measures::MPtr>> parts;
    for (int j = 0; j < 3; ++j) {
      Rat ang(static_cast<long long>(rng.below(12)), 12);
      Rat w(1 + rng.below(3), 1 + rng.below(4));
      parts.emplace_back(Rat(1), measures::atom(ang, w));
    }
    measures::MPtr mu = measures::lincomb(parts);
    AlgebraElem a = random_elem(rng, true);
    TaylorSeries h = measures::herglotz_series(mu, 24, 1e-13);
    TaylorSeries lhs = measures::herglotz_series(act_right(mu, a), 24, 1e-13);
    CHECK(series::max_abs_diff(lhs, act_right(h, a)) < 1e-11);
    TaylorSeries rhs_left = act_left(a, h);
    TaylorSeries lhs_left =
        measures::herglotz_series(act_left(a, mu), rhs_left.order(), 1e-13);
    CHECK(series::max_abs_diff(lhs_left, rhs_left) < 1e-11);
  }
}

TEST_CASE("mass actions intertwine with the disc transform") {
  Rng rng{414};
  mass::MassFunction f =
      mass::add(mass::atomic_mass({{Rat(1, 7), 0.4}, {Rat(5, 12), -0.4}}),
                mass::lacunary_mass(2, 0.5));
  for (int trial = 0; trial < 6; ++trial) {
    AlgebraElem a = random_elem(rng, true);
    TaylorSeries h = mass::herglotz_series(f, 24);
    TaylorSeries lhs = mass::herglotz_series(act_right(f, a), 24);
    CHECK(series::max_abs_diff(lhs, act_right(h, a)) < 1e-10);
    TaylorSeries lhs_left = mass::herglotz_series(act_left(a, f), 6);
    CHECK(series::max_abs_diff(lhs_left, act_left(a, h).truncated(6)) <
          1e-10);
  }
}

TEST_CASE("products of the generators enumerate and count as expected") {
  CHECK(enumerate_S({2, 3}, 10) == std::vector<long long>{1, 2, 3, 4, 6, 8, 9});
  CHECK(enumerate_S({2}, 8) == std::vector<long long>{1, 2, 4, 8});
  CountBounds ten = count_bounds({2, 3}, 10.0);
  CHECK(ten.count == 7);
  CHECK(ten.within);
  CountBounds one = count_bounds({2, 3}, 1.0);
  CHECK(one.count == 1);
  CHECK(one.within);
  long long expected[] = {20, 40, 67};
  double xs[] = {100.0, 1000.0, 10000.0};
  for (int i = 0; i < 3; ++i) {
    CountBounds cb = count_bounds({2, 3}, xs[i]);
    CHECK(cb.count == expected[i]);
    CHECK(cb.lower <= static_cast<double>(cb.count));
    CHECK(static_cast<double>(cb.count) <= cb.upper);
    CHECK(cb.within);
  }
  CHECK_THROWS_AS(count_bounds({2, 3}, 0.5), input_error);
  CHECK_THROWS_AS(enumerate_S({2, 4}, 10), input_error);
}

TEST_CASE("rendering uses the bracket-power normal form") {
  AlgebraElem x = from_monoid(MonoidElem{Rat(1, 6), 12}, Rat(3, 2));
  CHECK(to_string(x) == "3/2·[1/6]φ_12");
  CHECK(to_string(algebra_one()) == "1");
  CHECK(to_string(algebra_zero()) == "0");
  CHECK(to_string(power_term(6)) == "φ_6");
  CHECK(to_string(build_eN(2)) == "1/2·1 + 1/2·[1/2]");
  CHECK(to_string(sub(algebra_zero(), rotation_term(Rat(1, 4)))) == "-1·[1/4]");
}

TEST_CASE("algebra constructions reject malformed input") {
  CHECK_THROWS_AS(build_phi_S({2, 4}), input_error);
  CHECK_THROWS_AS(build_omega_S({1, 3}), input_error);
  CHECK_THROWS_AS(power_term(0), input_error);
  CHECK_THROWS_AS(build_trN(0), input_error);
  CHECK_THROWS_AS(build_psi_S({2, 3}, 0), input_error);
  TaylorSeries h(Kind::floating, 8);
  h.set(1, Cd{1.0, 0.0});
  CHECK_THROWS_AS(act_right(h, power_term(1LL << 33)), input_error);
}
