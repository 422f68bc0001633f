#include "circlekit/witt.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "circlekit/algebra.hpp"
#include "circlekit/util.hpp"

namespace ck::witt {

namespace {

using series::Kind;

void check_unit(const TaylorSeries& p) {
  bool ok = p.kind() == Kind::rational ? p.rat(0) == RatC(1L)
                                       : p.flt(0) == Cd{1.0, 0.0};
  if (!ok) throw input_error("witt vector must have constant term one");
}

void check_zero_head(const TaylorSeries& g) {
  bool ok = g.kind() == Kind::rational ? g.rat(0).is_zero()
                                       : g.flt(0) == Cd{};
  if (!ok) throw input_error("ghost series must start at index one");
}

}  // namespace

TaylorSeries ghost(const TaylorSeries& p) {
  check_unit(p);
  TaylorSeries l = series::log_series(p);
  TaylorSeries g(l.kind(), l.order());
  for (int v = 1; v <= l.order(); ++v) {
    if (l.kind() == Kind::rational)
      g.set(v, mul_rat(l.rat(v), Rat(-v)));
    else
      g.set(v, l.flt(v) * Cd{static_cast<double>(-v), 0.0});
  }
  return g;
}

TaylorSeries unghost(const TaylorSeries& g) {
  check_zero_head(g);
  TaylorSeries l(g.kind(), g.order());
  for (int v = 1; v <= g.order(); ++v) {
    if (g.kind() == Kind::rational)
      l.set(v, mul_rat(g.rat(v), Rat(-1, v)));
    else
      l.set(v, g.flt(v) * Cd{-1.0 / v, 0.0});
  }
  return series::exp_series(l);
}

TaylorSeries w_add(const TaylorSeries& a, const TaylorSeries& b) {
  check_unit(a);
  check_unit(b);
  return series::mul(a, b);
}

TaylorSeries w_neg(const TaylorSeries& a) {
  check_unit(a);
  return series::reciprocal(a);
}

TaylorSeries w_mul(const TaylorSeries& a, const TaylorSeries& b) {
  TaylorSeries ga = ghost(a);
  TaylorSeries gb = ghost(b);
  int order = std::min(ga.order(), gb.order());
  TaylorSeries g(ga.kind(), order);
  for (int v = 1; v <= order; ++v) {
    if (ga.kind() == Kind::rational)
      g.set(v, ga.rat(v) * gb.rat(v));
    else
      g.set(v, ga.flt(v) * gb.flt(v));
  }
  return unghost(g);
}

TaylorSeries teichmuller(const RatC& a, int order) {
  if (order < 1) throw input_error("teichmuller lift needs order at least 1");
  TaylorSeries p(Kind::rational, order);
  p.set(0, RatC(1L));
  p.set(1, -a);
  return p;
}

TaylorSeries teichmuller_cd(Cd a, int order) {
  if (order < 1) throw input_error("teichmuller lift needs order at least 1");
  TaylorSeries p(Kind::floating, order);
  p.set(0, Cd{1.0, 0.0});
  p.set(1, -a);
  return p;
}

TaylorSeries frobenius(const TaylorSeries& p, int n) {
  check_unit(p);
  if (n < 1) throw input_error("frobenius degree must be positive");
  if (p.order() < n) {
    TaylorSeries one(p.kind(), 0);
    if (p.kind() == Kind::rational) one.set(0, RatC(1L));
    else one.set(0, Cd{1.0, 0.0});
    return one;
  }
  TaylorSeries l = series::contract_indices(series::log_series(p), n);
  TaylorSeries scaled(l.kind(), l.order());
  for (int v = 1; v <= l.order(); ++v) {
    if (l.kind() == Kind::rational)
      scaled.set(v, mul_rat(l.rat(v), Rat(n)));
    else
      scaled.set(v, l.flt(v) * Cd{static_cast<double>(n), 0.0});
  }
  return series::exp_series(scaled);
}

TaylorSeries verschiebung(const TaylorSeries& p, int n) {
  check_unit(p);
  if (n < 1) throw input_error("verschiebung degree must be positive");
  return series::compose_zN(p, n);
}

TaylorSeries artin_hasse_base(int n, int order) {
  if (n < 2) throw input_error("artin-hasse base must be at least 2");
  if (order < 0) throw input_error("order must be nonnegative");
  TaylorSeries l(Kind::rational, order);
  long long power = 1;
  while (power <= order) {
    l.set(static_cast<int>(power), RatC(Rat(1, power)));
    if (power > order / n) break;
    power *= n;
  }
  return series::exp_series(l);
}

TaylorSeries artin_hasse_set(const std::vector<int>& gens, int order) {
  if (order < 0) throw input_error("order must be nonnegative");
  TaylorSeries l(Kind::rational, order);
  std::vector<long long> members = algebra::enumerate_S(gens, order);
  for (long long m : members) l.set(static_cast<int>(m), RatC(Rat(1, m)));
  return series::exp_series(l);
}

bool p_integral(const TaylorSeries& p, int prime) {
  if (prime < 2) throw input_error("prime must be at least 2");
  if (p.kind() != Kind::rational)
    throw input_error("integrality check needs exact coefficients");
  for (int v = 0; v <= p.order(); ++v) {
    const RatC& c = p.rat(v);
    if (boost::multiprecision::denominator(c.re) % prime == 0) return false;
    if (boost::multiprecision::denominator(c.im) % prime == 0) return false;
  }
  return true;
}

TaylorSeries w_of_measure(const measures::MPtr& mu, int order, double tol) {
  TaylorSeries h = measures::herglotz_series(mu, order, tol);
  TaylorSeries g(Kind::floating, order);
  for (int v = 1; v <= order; ++v) g.set(v, h.coeff_cd(v) * Cd{0.5, 0.0});
  return unghost(g);
}

TaylorSeries w_of_mass(const mass::MassFunction& f, int order) {
  TaylorSeries h = mass::herglotz_series(f, order);
  TaylorSeries g(Kind::floating, order);
  for (int v = 1; v <= order; ++v) g.set(v, h.coeff_cd(v) * Cd{0.5, 0.0});
  return unghost(g);
}

}  // namespace ck::witt
