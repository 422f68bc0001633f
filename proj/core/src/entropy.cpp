#include "circlekit/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "circlekit/util.hpp"

namespace ck::entropy {

namespace {

constexpr double kIntSlack = 1e-12;

bool integer_order(double gamma, int* out) {
  double r = std::round(gamma);
  if (std::abs(gamma - r) < kIntSlack && r >= 0 && r <= 60) {
    *out = static_cast<int>(r);
    return true;
  }
  return false;
}

// x * sum_{v<=g} L^v / v! with L = -log x; the integer-order closed form.
double kappa_int(int g, double x) {
  if (x <= 0) return 0.0;
  double l = -std::log(x);
  double term = 1.0;
  double s = 1.0;
  for (int v = 1; v <= g; ++v) {
    term *= l / v;
    s += term;
  }
  return x * s;
}

// Gamma(a, z) * exp(z). Direct for moderate z; for large z the asymptotic
// expansion z^{a-1} (1 + (a-1)/z + ...) whose error is below the first
// omitted term once z dominates a.
double upper_gamma_scaled(double a, double z) {
  if (z <= 600.0) return boost::math::tgamma(a, z) * std::exp(z);
  double term = std::pow(z, a - 1.0);
  double s = term;
  for (int k = 1; k <= 40; ++k) {
    term *= (a - k) / z;
    s += term;
    if (std::abs(term) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

// kappa_gamma(e^-l) * e^l, stable when e^-l underflows.
double kappa_scaled(double gamma, double l) {
  int g = 0;
  if (integer_order(gamma, &g)) {
    double term = 1.0;
    double s = 1.0;
    for (int v = 1; v <= g; ++v) {
      term *= l / v;
      s += term;
    }
    return s;
  }
  double a = gamma + 1.0;
  return upper_gamma_scaled(a, l) / boost::math::tgamma(a);
}

double kappa_gamma_eval(double gamma, double x) {
  int g = 0;
  if (integer_order(gamma, &g)) return kappa_int(g, x);
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  double l = -std::log(x);
  double a = gamma + 1.0;
  if (l <= 600.0) return boost::math::tgamma(a, l) / boost::math::tgamma(a);
  return std::exp(-l) * upper_gamma_scaled(a, l) / boost::math::tgamma(a);
}

void validate_desc(const CantorDesc& d) {
  if (d.base < 2) throw input_error("cantor base must be at least 2");
  if (d.digits.empty()) throw input_error("cantor digit set is empty");
  std::vector<int> sorted = d.digits;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= d.base)
      throw input_error("cantor digit out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw input_error("cantor digit repeated");
  }
  if (static_cast<int>(sorted.size()) >= d.base)
    throw input_error("cantor digit set must leave a gap");
}

}  // namespace

Kappa kappa_gamma(double gamma) {
  if (!(gamma >= 0.0) || gamma > 30.0)
    throw input_error("kappa order must lie in [0, 30]");
  return {Kappa::Family::gamma_family, gamma};
}

Kappa kappa_power(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw input_error("kappa exponent must lie in (0, 1]");
  return {Kappa::Family::power_family, alpha};
}

double kappa_eval(const Kappa& k, double x) {
  if (!(x >= -1e-15) || x > 1.0 + 1e-15)
    throw input_error("kappa argument must lie in [0, 1]");
  x = std::min(1.0, std::max(0.0, x));
  if (k.family == Kappa::Family::power_family) return std::pow(x, k.param);
  return kappa_gamma_eval(k.param, x);
}

FiniteCircleSet circle_set(std::vector<Rat> angles) {
  for (auto& a : angles) a = rat_mod1(a);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  return {std::move(angles)};
}

double entropy_finite(const FiniteCircleSet& e, const Kappa& k) {
  const auto& a = e.angles;
  if (a.empty()) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i + 1 < a.size(); ++i)
    s += kappa_eval(k, to_double(a[i + 1] - a[i]));
  s += kappa_eval(k, to_double(Rat(1) - a.back() + a.front()));
  return s;
}

FiniteCircleSet preimage_set(const FiniteCircleSet& e, int n) {
  if (n < 1) throw input_error("preimage degree must be positive");
  std::vector<Rat> out;
  out.reserve(e.angles.size() * static_cast<size_t>(n));
  for (const auto& t : e.angles)
    for (int j = 0; j < n; ++j) out.push_back((t + j) / n);
  return circle_set(std::move(out));
}

FiniteCircleSet image_set(const FiniteCircleSet& e, int n, int k) {
  if (n < 1) throw input_error("image degree must be positive");
  if (k < 0 || k >= n) throw input_error("sector index out of range");
  Rat lo(k, n), hi(k + 1, n);
  std::vector<Rat> out;
  for (const auto& t : e.angles)
    if (t >= lo && t <= hi) out.push_back(rat_mod1(t * n));
  return circle_set(std::move(out));
}

FiniteCircleSet cantor_endpoints(const CantorDesc& desc, int depth) {
  validate_desc(desc);
  if (depth < 0 || depth > 20) throw input_error("cantor depth out of range");
  double cells = std::pow(static_cast<double>(desc.digits.size()), depth);
  if (cells > 2e6) throw input_error("cantor truncation too large");
  std::vector<int> digits = desc.digits;
  std::sort(digits.begin(), digits.end());
  std::vector<Int> prefixes{Int(0)};
  for (int lev = 0; lev < depth; ++lev) {
    std::vector<Int> next;
    next.reserve(prefixes.size() * digits.size());
    for (const auto& p : prefixes)
      for (int d : digits) next.push_back(p * desc.base + d);
    prefixes = std::move(next);
  }
  Int den = boost::multiprecision::pow(Int(desc.base), static_cast<unsigned>(depth));
  std::vector<Rat> pts;
  pts.reserve(prefixes.size() * 2);
  for (const auto& p : prefixes) {
    pts.emplace_back(p, den);
    pts.emplace_back(p + 1, den);
  }
  return circle_set(std::move(pts));
}

CantorEntropy entropy_cantor(const CantorDesc& desc, const Kappa& k, double tol,
                             double ceiling) {
  validate_desc(desc);
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  const double nn = desc.base;
  const double dd = static_cast<double>(desc.digits.size());
  const double gaps = nn - dd;
  CantorEntropy out;

  if (k.family == Kappa::Family::power_family) {
    // Terms are exactly geometric with ratio |D| * base^-alpha.
    const double q = dd * std::pow(nn, -k.param);
    double term = gaps * std::pow(nn, -k.param);
    if (q >= 1.0 - 1e-13) {
      out.diverged = true;
      out.tail_bound = std::numeric_limits<double>::infinity();
      if (std::abs(q - 1.0) < 1e-13) {
        out.terms = static_cast<long long>(std::ceil(ceiling / term)) + 1;
        out.value = term * static_cast<double>(out.terms);
      } else {
        while (out.value <= ceiling && out.terms < 100000000LL) {
          out.value += term;
          term *= q;
          ++out.terms;
        }
      }
      return out;
    }
    while (true) {
      out.value += term;
      ++out.terms;
      out.tail_bound = term * q / (1.0 - q);
      if (out.tail_bound <= tol) return out;
      term *= q;
      if (out.terms > 1000000) throw input_error("cantor series stalled");
    }
  }

  // Gamma family: always summable since |D| < base. The tail is certified
  // through the integer majorant of order ceil(gamma), whose term ratio is
  // at most (|D|/base) ((n+1)/n)^ceil(gamma) and decreases with n.
  const double gamma = k.param;
  const int gc = static_cast<int>(std::ceil(gamma - kIntSlack));
  const double logn = std::log(nn);
  double u = 1.0 / nn;  // |D|^{n-1} * base^{-n}
  long long n = 1;
  while (true) {
    double l = static_cast<double>(n) * logn;
    out.value += gaps * u * kappa_scaled(gamma, l);
    out.terms = n;
    if (out.value > ceiling) {
      out.diverged = true;
      out.tail_bound = std::numeric_limits<double>::infinity();
      return out;
    }
    double smaj = kappa_scaled(gc, l);
    double rho = (dd / nn) * std::pow((n + 1.0) / n, gc);
    if (rho < 1.0) {
      out.tail_bound = gaps * u * smaj * rho / (1.0 - rho);
      if (out.tail_bound <= tol) return out;
    }
    u *= dd / nn;
    ++n;
    if (n > 200000) throw input_error("cantor series stalled");
  }
}

std::vector<VariationRow> variation_estimate(const mass::MassFunction& f,
                                             const Kappa& k,
                                             const std::vector<int>& levels,
                                             int offsets, double tol) {
  if (offsets < 1) throw input_error("offset count must be positive");
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  std::vector<VariationRow> rows;
  rows.reserve(levels.size());
  for (int lev : levels) {
    if (lev < 0 || lev > 22) throw input_error("variation level out of range");
    const long long m = 1LL << lev;
    const double arc_tol = tol / static_cast<double>(m);
    double best = 0.0;
    for (int off = 0; off < offsets; ++off) {
      Rat base_shift(off, m * offsets);
      double s = 0.0;
      for (long long j = 0; j < m; ++j) {
        mass::Arc c{rat_mod1(base_shift + Rat(j, m)),
                    rat_mod1(base_shift + Rat(j + 1, m)), false};
        s += std::abs(mass::arc_measure(f, c, arc_tol));
      }
      best = std::max(best, s);
    }
    double ks = static_cast<double>(m) * kappa_eval(k, 1.0 / static_cast<double>(m));
    rows.push_back({lev, best, ks, best / ks});
  }
  return rows;
}

BoundReport kappa_bounded_check(const mass::MassFunction& f, const Kappa& k,
                                double bound, int samples, uint64_t seed,
                                double tol) {
  if (!(bound > 0)) throw input_error("bound must be positive");
  BoundReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  auto probe = [&](const Rat& start, int lev) {
    Rat len(1, 1LL << lev);
    mass::Arc c{rat_mod1(start), rat_mod1(start + len), false};
    double val = std::abs(mass::arc_measure(f, c, tol));
    double margin = val - bound * kappa_eval(k, to_double(len));
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_length = to_double(len);
      rep.worst_value = val;
    }
  };
  Rng rng{seed};
  for (int i = 0; i < samples; ++i)
    probe(rng.rat_in_unit(1 << 20), 1 + static_cast<int>(rng.below(26)));
  // Short arcs anchored where lacunary oscillations align, and at jumps.
  for (int lev = 1; lev <= 28; ++lev) {
    probe(Rat(0), lev);
    for (const auto& [t, w] : f.jumps) {
      probe(t, lev);
      probe(t - Rat(1, 1LL << lev), lev);
    }
  }
  rep.pass = rep.worst_margin <= 1e-9 * std::max(1.0, bound);
  return rep;
}

GrowthReport growth_class_check(const std::function<Cd(Cd, double)>& h,
                                double gamma, const std::vector<double>& radii,
                                int grid, double tol) {
  if (grid < 8) throw input_error("growth grid too small");
  if (radii.size() < 4) throw input_error("growth schedule too short");
  GrowthReport rep;
  for (double r : radii) {
    if (!(r > 0.0) || r >= 1.0) throw input_error("radius must lie in (0, 1)");
    double denom = std::pow(-std::log(1.0 - r), gamma);
    if (!(denom > 0)) throw input_error("radius too small for growth grading");
    double sup = -std::numeric_limits<double>::infinity();
    try {
      for (int j = 0; j < grid; ++j) {
        double theta = two_pi * j / grid;
        Cd z = r * Cd{std::cos(theta), std::sin(theta)};
        sup = std::max(sup, h(z, tol).real());
      }
    } catch (const input_error&) {
      rep.evaluator_ok = false;
      break;
    }
    rep.rows.push_back({r, sup, sup / denom});
  }
  if (rep.rows.size() >= 4) {
    size_t half = rep.rows.size() / 2;
    double first = -std::numeric_limits<double>::infinity();
    double second = first;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
      double& side = i < half ? first : second;
      side = std::max(side, rep.rows[i].ratio);
    }
    rep.bounded_envelope = second <= first * (1.0 + 1e-6) + 1e-12;
    rep.monotone_increase = true;
    for (size_t i = 1; i < rep.rows.size(); ++i)
      if (!(rep.rows[i].ratio > rep.rows[i - 1].ratio))
        rep.monotone_increase = false;
  }
  return rep;
}

}  // namespace ck::entropy
