#include "circlekit/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "circlekit/util.hpp"

namespace ck::algebra {

namespace {

MonoidElem normal(const MonoidElem& m) {
  if (m.power < 1) throw input_error("monoid power must be >= 1");
  return MonoidElem{rat_mod1(m.rotation), m.power};
}

int checked_int(long long power) {
  if (power > std::numeric_limits<int>::max())
    throw input_error("monoid power too large to act");
  return static_cast<int>(power);
}

void put(AlgebraElem& a, const MonoidElem& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = a.terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) a.terms.erase(it);
  }
}

}  // namespace

bool operator==(const MonoidElem& a, const MonoidElem& b) {
  return a.power == b.power && a.rotation == b.rotation;
}

bool operator<(const MonoidElem& a, const MonoidElem& b) {
  if (a.power != b.power) return a.power < b.power;
  return a.rotation < b.rotation;
}

MonoidElem monoid_one() { return MonoidElem{Rat(0), 1}; }

MonoidElem monoid_mul(const MonoidElem& a, const MonoidElem& b) {
  MonoidElem x = normal(a);
  MonoidElem y = normal(b);
  if (x.power > (1LL << 62) / y.power) throw input_error("monoid power overflow");
  // Composition of z -> e(q) z^N maps: the left rotation happens last, so the
  // right rotation is raised to the left power.
  return MonoidElem{rat_mod1(x.rotation + Rat(x.power) * y.rotation),
                    x.power * y.power};
}

bool operator==(const AlgebraElem& a, const AlgebraElem& b) {
  return a.terms == b.terms;
}

AlgebraElem algebra_zero() { return {}; }

AlgebraElem algebra_one() { return from_monoid(monoid_one()); }

AlgebraElem from_monoid(const MonoidElem& m, const Rat& coeff) {
  AlgebraElem a;
  put(a, normal(m), coeff);
  return a;
}

AlgebraElem rotation_term(const Rat& q_turns) {
  return from_monoid(MonoidElem{q_turns, 1});
}

AlgebraElem power_term(long long N) {
  return from_monoid(MonoidElem{Rat(0), N});
}

AlgebraElem add(const AlgebraElem& a, const AlgebraElem& b) {
  AlgebraElem out = a;
  for (const auto& [m, c] : b.terms) put(out, m, c);
  return out;
}

AlgebraElem sub(const AlgebraElem& a, const AlgebraElem& b) {
  AlgebraElem out = a;
  for (const auto& [m, c] : b.terms) put(out, m, -c);
  return out;
}

AlgebraElem scale(const AlgebraElem& a, const Rat& s) {
  AlgebraElem out;
  if (s == 0) return out;
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, c * s);
  return out;
}

AlgebraElem mul(const AlgebraElem& a, const AlgebraElem& b) {
  AlgebraElem out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) put(out, monoid_mul(ma, mb), ca * cb);
  return out;
}

AlgebraElem build_trN(int N) {
  if (N < 1) throw input_error("trace order must be >= 1");
  AlgebraElem out;
  for (int k = 0; k < N; ++k) put(out, MonoidElem{Rat(k, N), 1}, Rat(1));
  return out;
}

AlgebraElem build_eN(int N) { return scale(build_trN(N), Rat(1, N)); }

AlgebraElem build_phi_S(const std::vector<int>& gens) {
  require_generators(gens, true);
  AlgebraElem out = algebra_one();
  for (int g : gens) out = mul(out, sub(algebra_one(), power_term(g)));
  return out;
}

AlgebraElem build_omega_S(const std::vector<int>& gens) {
  require_generators(gens, true);
  AlgebraElem out = algebra_one();
  for (int g : gens) out = mul(out, sub(algebra_one(), build_eN(g)));
  return out;
}

AlgebraElem build_psi_S(const std::vector<int>& gens, long long bound) {
  require_generators(gens, true);
  if (bound < 1) throw input_error("bound must be >= 1");
  AlgebraElem out;
  for (long long n : products_up_to(gens, bound)) put(out, MonoidElem{Rat(0), n}, Rat(1));
  return out;
}

AlgebraElem truncate_power(const AlgebraElem& a, long long bound) {
  AlgebraElem out;
  for (const auto& [m, c] : a.terms)
    if (m.power <= bound) out.terms.emplace(m, c);
  return out;
}

namespace {

series::TaylorSeries series_term_right(const series::TaylorSeries& h,
                                       const MonoidElem& m) {
  series::TaylorSeries g = series::rotate(h, m.rotation);
  return m.power == 1 ? g : series::compose_zN(g, checked_int(m.power));
}

series::TaylorSeries series_term_left(const MonoidElem& m,
                                      const series::TaylorSeries& h) {
  series::TaylorSeries g =
      m.power == 1 ? h : series::contract_indices(h, checked_int(m.power));
  return series::rotate(g, -m.rotation);
}

bool needs_float(const AlgebraElem& a, const series::TaylorSeries& h) {
  if (h.kind() == series::Kind::floating) return false;
  for (const auto& [m, c] : a.terms)
    if (rat_mod1(m.rotation) != 0) return true;
  return false;
}

template <typename Term>
series::TaylorSeries series_combine(const AlgebraElem& a,
                                    const series::TaylorSeries& h, Term term) {
  series::TaylorSeries base =
      needs_float(a, h) ? h.to_floating() : h;
  bool first = true;
  series::TaylorSeries acc(base.kind(), base.order());
  for (const auto& [m, c] : a.terms) {
    series::TaylorSeries t = term(m, base);
    t = base.kind() == series::Kind::rational
            ? series::scale(t, RatC(c))
            : series::scale_cd(t, Cd{to_double(c), 0.0});
    acc = first ? t : series::add(acc, t);
    first = false;
  }
  if (first) return series::TaylorSeries(h.kind(), h.order());
  return acc;
}

}  // namespace

series::TaylorSeries act_right(const series::TaylorSeries& h, const AlgebraElem& a) {
  return series_combine(a, h, [](const MonoidElem& m, const series::TaylorSeries& b) {
    return series_term_right(b, m);
  });
}

series::TaylorSeries act_left(const AlgebraElem& a, const series::TaylorSeries& h) {
  return series_combine(a, h, [](const MonoidElem& m, const series::TaylorSeries& b) {
    return series_term_left(m, b);
  });
}

series::TaylorSeries act_right_mult(const series::TaylorSeries& f,
                                    const AlgebraElem& a) {
  return series::exp_series(act_right(series::log_series(f), a));
}

series::TaylorSeries act_left_mult(const AlgebraElem& a,
                                   const series::TaylorSeries& f) {
  return series::exp_series(act_left(a, series::log_series(f)));
}

measures::MPtr act_right(const measures::MPtr& mu, const AlgebraElem& a) {
  std::vector<std::pair<Rat, measures::MPtr>> terms;
  for (const auto& [m, c] : a.terms) {
    measures::MPtr x = mu;
    if (m.rotation != 0) x = measures::rotate(-m.rotation, x);
    if (m.power != 1) x = measures::pull(checked_int(m.power), x);
    terms.emplace_back(c, std::move(x));
  }
  if (terms.size() == 1 && terms[0].first == 1) return terms[0].second;
  return measures::lincomb(std::move(terms));
}

measures::MPtr act_left(const AlgebraElem& a, const measures::MPtr& mu) {
  std::vector<std::pair<Rat, measures::MPtr>> terms;
  for (const auto& [m, c] : a.terms) {
    measures::MPtr x = mu;
    if (m.power != 1) x = measures::push(checked_int(m.power), x);
    if (m.rotation != 0) x = measures::rotate(m.rotation, x);
    terms.emplace_back(c, std::move(x));
  }
  if (terms.size() == 1 && terms[0].first == 1) return terms[0].second;
  return measures::lincomb(std::move(terms));
}

mass::MassFunction act_right(const mass::MassFunction& f, const AlgebraElem& a) {
  mass::MassFunction acc = mass::haar_mass(0.0);
  for (const auto& [m, c] : a.terms) {
    mass::MassFunction x = f;
    if (m.rotation != 0) x = mass::act_rotation(x, -m.rotation);
    if (m.power != 1) x = mass::act_pull(x, checked_int(m.power));
    acc = mass::add(acc, mass::scale(x, to_double(c)));
  }
  return acc;
}

mass::MassFunction act_left(const AlgebraElem& a, const mass::MassFunction& f) {
  mass::MassFunction acc = mass::haar_mass(0.0);
  for (const auto& [m, c] : a.terms) {
    mass::MassFunction x = f;
    if (m.power != 1) x = mass::act_push(x, checked_int(m.power));
    if (m.rotation != 0) x = mass::act_rotation(x, m.rotation);
    acc = mass::add(acc, mass::scale(x, to_double(c)));
  }
  return acc;
}

std::vector<long long> enumerate_S(const std::vector<int>& gens, long long bound) {
  require_generators(gens, true);
  if (bound < 1) throw input_error("bound must be >= 1");
  return products_up_to(gens, bound);
}

CountBounds count_bounds(const std::vector<int>& gens, double x) {
  require_generators(gens, true);
  if (x < 1.0) throw input_error("count argument must be >= 1");
  const double s = static_cast<double>(gens.size());
  int n1 = 0;
  for (int g : gens) n1 = std::max(n1, g);
  CountBounds out;
  out.count = static_cast<long long>(
      products_up_to(gens, static_cast<long long>(std::floor(x))).size());
  out.lower = std::pow(s, -s) * std::pow(std::log(x) / std::log(n1), s);
  // The envelope constant is frozen by matching the exact count where the
  // largest generator reaches its s-th power.
  double xc = std::pow(n1, s);
  double cc = static_cast<double>(
      products_up_to(gens, static_cast<long long>(std::llround(xc))).size());
  double a1 = cc / (1.0 + std::pow(std::log(xc), s));
  out.upper = a1 * (1.0 + std::pow(std::log(x), s));
  out.within = out.lower <= static_cast<double>(out.count) &&
               static_cast<double>(out.count) <= out.upper;
  return out;
}

std::string to_string(const AlgebraElem& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    bool unit_coeff = c == 1;
    if (!unit_coeff) os << rat_to_string(c);
    std::string body;
    if (m.rotation != 0) body += "[" + rat_to_string(m.rotation) + "]";
    if (m.power != 1) body += "φ_" + std::to_string(m.power);
    if (body.empty()) body = "1";
    if (!unit_coeff) os << "·";
    os << body;
  }
  return os.str();
}

}  // namespace ck::algebra
