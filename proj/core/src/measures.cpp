#include "circlekit/measures.hpp"

#include "circlekit/util.hpp"

#include <algorithm>
#include <cmath>

namespace ck::measures {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr long long kWindowCap = 1'000'000;
constexpr double kEps = 2.220446049250313e-16;

double digit_mean(const DigitBernoulliNode& d) {
  Rat m(0);
  for (size_t k = 0; k < d.weights.size(); ++k) m += Rat(k) * d.weights[k];
  return to_double(m);
}

}  // namespace

MPtr haar(Rat mass) { return std::make_shared<MeasureExpr>(MeasureExpr{Haar{std::move(mass)}}); }

MPtr atom(Rat angle_turns, Rat weight) {
  return std::make_shared<MeasureExpr>(
      MeasureExpr{AtomNode{rat_mod1(angle_turns), std::move(weight)}});
}

MPtr density(std::vector<Cd> window) {
  if (window.size() % 2 == 0) throw input_error("density window must have odd length");
  return std::make_shared<MeasureExpr>(MeasureExpr{DensityNode{std::move(window)}});
}

MPtr digit_bernoulli(int base, std::vector<Rat> weights) {
  if (base < 2) throw input_error("digit base must be >= 2");
  if (weights.size() != static_cast<size_t>(base))
    throw input_error("digit weight count must equal the base");
  Rat sum(0);
  for (const Rat& w : weights) {
    if (w < 0) throw input_error("digit weights must be nonnegative");
    sum += w;
  }
  if (sum != 1) throw input_error("digit weights must sum to one");
  return std::make_shared<MeasureExpr>(MeasureExpr{DigitBernoulliNode{base, std::move(weights)}});
}

MPtr rotate(Rat angle_turns, MPtr inner) {
  if (!inner) throw input_error("null measure operand");
  return std::make_shared<MeasureExpr>(
      MeasureExpr{RotateNode{rat_mod1(angle_turns), std::move(inner)}});
}

MPtr push(int N, MPtr inner) {
  if (N < 1) throw input_error("push factor must be >= 1");
  if (!inner) throw input_error("null measure operand");
  return std::make_shared<MeasureExpr>(MeasureExpr{PushNode{N, std::move(inner)}});
}

MPtr pull(int N, MPtr inner) {
  if (N < 1) throw input_error("pull factor must be >= 1");
  if (!inner) throw input_error("null measure operand");
  return std::make_shared<MeasureExpr>(MeasureExpr{PullNode{N, std::move(inner)}});
}

MPtr lincomb(std::vector<std::pair<Rat, MPtr>> terms) {
  for (const auto& [s, m] : terms)
    if (!m) throw input_error("null measure operand");
  return std::make_shared<MeasureExpr>(MeasureExpr{LinCombNode{std::move(terms)}});
}

std::optional<Flattened> flatten_atomic(const MPtr& mu) {
  return std::visit(
      overloaded{
          [](const Haar& h) -> std::optional<Flattened> {
            return Flattened{h.mass, {}};
          },
          [](const AtomNode& a) -> std::optional<Flattened> {
            Flattened f{Rat(0), {}};
            if (a.weight != 0) f.atoms.emplace(a.angle, a.weight);
            return f;
          },
          [](const DensityNode&) -> std::optional<Flattened> { return std::nullopt; },
          [](const DigitBernoulliNode&) -> std::optional<Flattened> { return std::nullopt; },
          [](const RotateNode& r) -> std::optional<Flattened> {
            auto in = flatten_atomic(r.inner);
            if (!in) return std::nullopt;
            Flattened f{in->haar_mass, {}};
            for (const auto& [ang, w] : in->atoms) f.atoms[rat_mod1(ang + r.angle)] += w;
            return f;
          },
          [](const PushNode& p) -> std::optional<Flattened> {
            auto in = flatten_atomic(p.inner);
            if (!in) return std::nullopt;
            Flattened f{in->haar_mass, {}};
            for (const auto& [ang, w] : in->atoms) f.atoms[rat_mod1(ang * p.factor)] += w;
            return f;
          },
          [](const PullNode& p) -> std::optional<Flattened> {
            auto in = flatten_atomic(p.inner);
            if (!in) return std::nullopt;
            Flattened f{in->haar_mass, {}};
            Rat invN(1, p.factor);
            for (const auto& [ang, w] : in->atoms)
              for (int k = 0; k < p.factor; ++k)
                f.atoms[rat_mod1((ang + k) * invN)] += w * invN;
            return f;
          },
          [](const LinCombNode& l) -> std::optional<Flattened> {
            Flattened f{Rat(0), {}};
            for (const auto& [s, m] : l.terms) {
              auto in = flatten_atomic(m);
              if (!in) return std::nullopt;
              f.haar_mass += s * in->haar_mass;
              for (const auto& [ang, w] : in->atoms) f.atoms[ang] += s * w;
            }
            return f;
          },
      },
      mu->node);
}

namespace {

// Clears exact zeros introduced by cancellation so canonical forms compare equal.
void prune(Flattened& f) {
  for (auto it = f.atoms.begin(); it != f.atoms.end();)
    it = it->second == 0 ? f.atoms.erase(it) : std::next(it);
}

// Transform of the digit distribution at frequency t: sum_d p_d e^{-2 pi i d t}.
Cd digit_symbol(const DigitBernoulliNode& d, double t) {
  Cd acc{};
  for (size_t k = 0; k < d.weights.size(); ++k)
    acc += to_double(d.weights[k]) * unit_turns(-t * static_cast<double>(k));
  return acc;
}

// c_nu of the digit measure with certified truncation error.
std::pair<Cd, double> digit_coeff(const DigitBernoulliNode& d, long long nu, double tol) {
  if (nu == 0) return {Cd{1.0, 0.0}, 0.0};
  double m1 = digit_mean(d);
  if (m1 == 0.0) return {Cd{1.0, 0.0}, 0.0};  // all mass on digit 0: the unit atom
  int N = d.base;
  double budget = std::log1p(std::max(tol, 1e-15));
  // Smallest depth D with 2 pi |nu| m1 / ((N-1) N^D) below the budget.
  int D = 1;
  double sigma = two_pi * std::abs(static_cast<double>(nu)) * m1 / (N - 1);
  double scale = 1.0 / N;
  sigma *= scale;
  while (sigma > budget && D < 4000) {
    sigma *= scale;
    ++D;
  }
  Cd prod{1.0, 0.0};
  double t = static_cast<double>(nu);
  for (int k = 1; k <= D; ++k) {
    t /= N;
    prod *= digit_symbol(d, t);
  }
  return {prod, std::expm1(sigma)};
}

FourierWindow window_from_flat(const Flattened& f, int K) {
  FourierWindow w(K);
  double wsum = 0.0;
  for (const auto& [ang, wt] : f.atoms) wsum += std::abs(to_double(wt));
  double rnd = 8.0 * kEps * wsum;
  for (long long nu = -K; nu <= K; ++nu) {
    Cd acc{};
    for (const auto& [ang, wt] : f.atoms) acc += to_double(wt) * unit_turns(-Rat(nu) * ang);
    if (nu == 0) acc += to_double(f.haar_mass);
    w.put(nu, acc, rnd);
  }
  return w;
}

}  // namespace

FourierWindow fourier(const MPtr& mu, int K, double tol) {
  if (K < 0) throw input_error("window halfwidth must be >= 0");
  if (K > kWindowCap) throw input_error("window halfwidth exceeds the expansion cap");
  if (auto flat = flatten_atomic(mu)) {
    prune(*flat);
    return window_from_flat(*flat, K);
  }
  return std::visit(
      overloaded{
          [&](const Haar& h) {
            FourierWindow w(K);
            w.put(0, Cd{to_double(h.mass), 0.0}, 0.0);
            return w;
          },
          [&](const AtomNode& a) {
            FourierWindow w(K);
            double rnd = 8.0 * kEps * std::abs(to_double(a.weight));
            for (long long nu = -K; nu <= K; ++nu)
              w.put(nu, to_double(a.weight) * unit_turns(-Rat(nu) * a.angle), rnd);
            return w;
          },
          [&](const DensityNode& d) {
            FourierWindow w(K);
            int W = static_cast<int>(d.window.size() / 2);
            for (long long nu = -K; nu <= K; ++nu)
              if (nu >= -W && nu <= W) w.put(nu, d.window[static_cast<size_t>(nu + W)], 0.0);
            return w;
          },
          [&](const DigitBernoulliNode& d) {
            FourierWindow w(K);
            for (long long nu = -K; nu <= K; ++nu) {
              auto [v, e] = digit_coeff(d, nu, tol);
              w.put(nu, v, e);
            }
            return w;
          },
          [&](const RotateNode& r) {
            FourierWindow in = fourier(r.inner, K, tol);
            FourierWindow w(K);
            for (long long nu = -K; nu <= K; ++nu)
              w.put(nu, in.at(nu) * unit_turns(-Rat(nu) * r.angle), in.err_at(nu));
            return w;
          },
          [&](const PushNode& p) {
            long long needed = static_cast<long long>(K) * p.factor;
            if (needed > kWindowCap)
              throw input_error("push expansion exceeds the window cap");
            FourierWindow in = fourier(p.inner, static_cast<int>(needed), tol);
            FourierWindow w(K);
            for (long long nu = -K; nu <= K; ++nu)
              w.put(nu, in.at(nu * p.factor), in.err_at(nu * p.factor));
            return w;
          },
          [&](const PullNode& p) {
            FourierWindow in = fourier(p.inner, K, tol);
            FourierWindow w(K);
            for (long long nu = -K; nu <= K; ++nu)
              if (nu % p.factor == 0)
                w.put(nu, in.at(nu / p.factor), in.err_at(nu / p.factor));
            return w;
          },
          [&](const LinCombNode& l) {
            FourierWindow w(K);
            double spread = 0.0;
            for (const auto& [s, m] : l.terms) spread += std::abs(to_double(s));
            double child_tol = tol / std::max(1.0, spread);
            for (const auto& [s, m] : l.terms) {
              FourierWindow in = fourier(m, K, child_tol);
              double sd = to_double(s);
              for (long long nu = -K; nu <= K; ++nu)
                w.put(nu, w.at(nu) + sd * in.at(nu),
                      w.err_at(nu) + std::abs(sd) * in.err_at(nu));
            }
            return w;
          },
      },
      mu->node);
}

InvarianceReport invariance_check(const MPtr& mu, int N, int K, double tol) {
  FourierWindow a = fourier(mu, K, tol * 0.25);
  FourierWindow b = fourier(push(N, mu), K, tol * 0.25);
  InvarianceReport rep;
  for (long long nu = -K; nu <= K; ++nu) {
    rep.max_deviation = std::max(rep.max_deviation, std::abs(a.at(nu) - b.at(nu)));
    rep.err_allowance = std::max(rep.err_allowance, a.err_at(nu) + b.err_at(nu));
  }
  rep.pass = rep.max_deviation <= tol + rep.err_allowance;
  return rep;
}

series::TaylorSeries herglotz_series(const MPtr& mu, int K, double tol) {
  FourierWindow w = fourier(mu, K, tol);
  series::TaylorSeries h(series::Kind::floating, K);
  h.set(0, w.at(0));
  for (int nu = 1; nu <= K; ++nu) h.set(nu, 2.0 * w.at(nu));
  return h;
}

series::TaylorSeries cauchy_series(const MPtr& mu, int K, double tol) {
  FourierWindow w = fourier(mu, K, tol);
  series::TaylorSeries h(series::Kind::floating, K);
  for (int nu = 0; nu <= K; ++nu) h.set(nu, w.at(nu));
  return h;
}

series::TaylorSeries G_series(const MPtr& mu, int K, double tol) {
  FourierWindow w = fourier(mu, K, tol);
  series::TaylorSeries g(series::Kind::floating, K);
  const Cd pii{0.0, pi};
  for (int nu = 1; nu <= K; ++nu) g.set(nu, w.at(nu) / (pii * static_cast<double>(nu)));
  return g;
}

FmuResult f_mu_series(const MPtr& mu, int K, double tol) {
  series::TaylorSeries h = herglotz_series(mu, K, tol);
  Cd a0 = h.flt(0);
  h.set(0, Cd{});
  FmuResult out{std::exp(-a0), series::exp_series(series::neg(h))};
  return out;
}

namespace {

Cd mass_of(const MPtr& mu) { return total_mass_cd(mu); }

}  // namespace

Cd total_mass_cd(const MPtr& mu) {
  return std::visit(
      overloaded{
          [](const Haar& h) { return Cd{to_double(h.mass), 0.0}; },
          [](const AtomNode& a) { return Cd{to_double(a.weight), 0.0}; },
          [](const DensityNode& d) { return d.window[d.window.size() / 2]; },
          [](const DigitBernoulliNode&) { return Cd{1.0, 0.0}; },
          [](const RotateNode& r) { return mass_of(r.inner); },
          [](const PushNode& p) { return mass_of(p.inner); },
          [](const PullNode& p) { return mass_of(p.inner); },
          [](const LinCombNode& l) {
            Cd acc{};
            for (const auto& [s, m] : l.terms) acc += to_double(s) * mass_of(m);
            return acc;
          },
      },
      mu->node);
}

Rat total_mass(const MPtr& mu) {
  return std::visit(
      overloaded{
          [](const Haar& h) { return h.mass; },
          [](const AtomNode& a) { return a.weight; },
          [](const DensityNode&) -> Rat {
            throw input_error("density mass is not exactly rational");
          },
          [](const DigitBernoulliNode&) { return Rat(1); },
          [](const RotateNode& r) { return total_mass(r.inner); },
          [](const PushNode& p) { return total_mass(p.inner); },
          [](const PullNode& p) { return total_mass(p.inner); },
          [](const LinCombNode& l) {
            Rat acc(0);
            for (const auto& [s, m] : l.terms) acc += s * total_mass(m);
            return acc;
          },
      },
      mu->node);
}

double cumulative(const MPtr& mu, double t, double tol) {
  if (t < 0.0 || t > 1.0) throw input_error("cumulative argument must lie in [0, 1]");
  return std::visit(
      overloaded{
          [&](const Haar& h) { return to_double(h.mass) * t; },
          [&](const AtomNode& a) {
            return to_double(a.angle) < t ? to_double(a.weight) : 0.0;
          },
          [&](const DensityNode& d) {
            int W = static_cast<int>(d.window.size() / 2);
            double acc = d.window[static_cast<size_t>(W)].real() * t;
            for (int m = -W; m <= W; ++m) {
              if (m == 0) continue;
              Cd cm = d.window[static_cast<size_t>(m + W)];
              Cd val = cm * (unit_turns(m * t) - 1.0) / Cd{0.0, two_pi * m};
              acc += val.real();
            }
            return acc;
          },
          [&](const DigitBernoulliNode& d) {
            for (size_t k = 0; k < d.weights.size(); ++k)
              if (d.weights[k] == 1) {
                double fixed = static_cast<double>(k) / (d.base - 1);
                return fixed < t ? 1.0 : 0.0;
              }
            // Digit walk: P[x < t] accumulated digit by digit.
            std::vector<double> p(d.weights.size());
            std::vector<double> cump(d.weights.size(), 0.0);
            for (size_t k = 0; k < p.size(); ++k) {
              p[k] = to_double(d.weights[k]);
              cump[k] = (k ? cump[k - 1] + p[k - 1] : 0.0);
            }
            double acc = 0.0, prefix = 1.0, frac = t;
            for (int depth = 0; depth < 2048 && prefix > tol * 0.5; ++depth) {
              frac *= d.base;
              int digit = std::min(static_cast<int>(frac), d.base - 1);
              frac -= digit;
              acc += prefix * cump[static_cast<size_t>(digit)];
              prefix *= p[static_cast<size_t>(digit)];
            }
            return acc;
          },
          [&](const RotateNode& r) {
            double mass = total_mass_cd(r.inner).real();
            double beta = to_double(r.angle);
            auto ext = [&](double u) {
              return u <= 1.0 ? cumulative(r.inner, u, tol)
                              : mass + cumulative(r.inner, u - 1.0, tol);
            };
            return ext(t + 1.0 - beta) - ext(1.0 - beta);
          },
          [&](const PushNode& p) {
            double acc = 0.0;
            for (int k = 0; k < p.factor; ++k)
              acc += cumulative(p.inner, (t + k) / p.factor, tol) -
                     cumulative(p.inner, static_cast<double>(k) / p.factor, tol);
            return acc;
          },
          [&](const PullNode& p) {
            double mass = total_mass_cd(p.inner).real();
            double scaled = t * p.factor;
            double whole = std::floor(scaled);
            if (whole >= p.factor) whole = p.factor - 1, scaled = whole + 1.0;
            return (cumulative(p.inner, scaled - whole, tol) + mass * whole) / p.factor;
          },
          [&](const LinCombNode& l) {
            double acc = 0.0;
            for (const auto& [s, m] : l.terms) acc += to_double(s) * cumulative(m, t, tol);
            return acc;
          },
      },
      mu->node);
}

double mu0(const MPtr& mu, double tol) {
  return std::visit(
      overloaded{
          [&](const Haar& h) { return to_double(h.mass) / 2.0; },
          [&](const AtomNode& a) { return to_double(a.weight) * (1.0 - to_double(a.angle)); },
          [&](const DensityNode& d) {
            int W = static_cast<int>(d.window.size() / 2);
            double acc = d.window[static_cast<size_t>(W)].real() / 2.0;
            for (int m = -W; m <= W; ++m) {
              if (m == 0) continue;
              Cd cm = d.window[static_cast<size_t>(m + W)];
              acc -= (cm / Cd{0.0, two_pi * m}).real();
            }
            return acc;
          },
          [&](const DigitBernoulliNode& d) { return 1.0 - digit_mean(d) / (d.base - 1); },
          [&](const RotateNode& r) {
            double mass = total_mass_cd(r.inner).real();
            double beta = to_double(r.angle);
            double wrapped = mass - cumulative(r.inner, 1.0 - beta, tol);
            return mu0(r.inner, tol) - mass * beta + wrapped;
          },
          [&](const PushNode& p) {
            double acc = p.factor * mu0(p.inner, tol);
            for (int k = 1; k < p.factor; ++k)
              acc -= cumulative(p.inner, static_cast<double>(k) / p.factor, tol);
            return acc;
          },
          [&](const PullNode& p) {
            double mass = total_mass_cd(p.inner).real();
            return mu0(p.inner, tol) / p.factor + mass * (p.factor - 1) / (2.0 * p.factor);
          },
          [&](const LinCombNode& l) {
            double acc = 0.0;
            for (const auto& [s, m] : l.terms) acc += to_double(s) * mu0(m, tol);
            return acc;
          },
      },
      mu->node);
}

FourierWindow muhat_fourier(const MPtr& mu, int K, double tol) {
  FourierWindow w = fourier(mu, K, tol);
  Cd mass = total_mass_cd(mu);
  FourierWindow out(K);
  out.put(0, Cd{mu0(mu, tol), 0.0}, tol);
  for (long long nu = -K; nu <= K; ++nu) {
    if (nu == 0) continue;
    Cd denom{0.0, two_pi * static_cast<double>(nu)};
    out.put(nu, (w.at(nu) - mass) / denom, w.err_at(nu) / (two_pi * std::abs(nu)));
  }
  return out;
}

FourierWindow convolve(const FourierWindow& a, const FourierWindow& b) {
  int K = std::min(a.halfwidth, b.halfwidth);
  FourierWindow out(K);
  for (long long nu = -K; nu <= K; ++nu) {
    Cd va = a.at(nu), vb = b.at(nu);
    double ea = a.err_at(nu), eb = b.err_at(nu);
    out.put(nu, va * vb, std::abs(va) * eb + std::abs(vb) * ea + ea * eb);
  }
  return out;
}

Cor9Report corollary9_check(const FourierWindow& c, int N, double eps,
                            const std::vector<int>& orders, double magnitude_bound) {
  if (N < 2) throw input_error("invariance factor must be >= 2");
  if (eps <= 0) throw input_error("epsilon must be positive");
  if (orders.empty()) throw input_error("at least one partial-sum order is required");
  int K = c.halfwidth;
  double peak = 0.0;
  for (long long nu = -K; nu <= K; ++nu) peak = std::max(peak, std::abs(c.at(nu)));
  if (peak > magnitude_bound)
    throw input_error("coefficient sequence exceeds the declared bound");

  Cor9Report rep;
  for (long long nu = 0; nu <= K; ++nu)
    rep.hermitian_dev = std::max(rep.hermitian_dev, std::abs(c.at(-nu) - std::conj(c.at(nu))));
  rep.hermitian = rep.hermitian_dev <= 1e-9;
  for (long long nu = 1; nu * N <= K; ++nu)
    rep.invariance_dev = std::max(rep.invariance_dev, std::abs(c.at(nu * N) - c.at(nu)));
  rep.multiplicative_invariant = rep.invariance_dev <= 1e-9;

  int maxorder = *std::max_element(orders.begin(), orders.end());
  if (maxorder > K) throw input_error("partial-sum order exceeds the window halfwidth");
  series::TaylorSeries h(series::Kind::floating, maxorder);
  for (int nu = 1; nu <= maxorder; ++nu) h.set(nu, -eps * c.at(nu));
  series::TaylorSeries b = series::exp_series(h);
  double run = 0.0;
  std::vector<double> at_order(static_cast<size_t>(maxorder) + 1);
  for (int n = 0; n <= maxorder; ++n) {
    run += std::norm(b.flt(n));
    at_order[static_cast<size_t>(n)] = run;
  }
  for (int o : orders) {
    if (o < 0) throw input_error("negative partial-sum order");
    rep.partial_l2.emplace_back(o, at_order[static_cast<size_t>(o)]);
  }
  if (rep.partial_l2.size() >= 2) {
    double last = rep.partial_l2.back().second;
    double prev = rep.partial_l2[rep.partial_l2.size() - 2].second;
    rep.tail_ratio = last > 0 ? (last - prev) / last : 0.0;
  }
  rep.likely_positive =
      rep.hermitian && rep.multiplicative_invariant && rep.tail_ratio <= 0.05;
  return rep;
}

std::pair<MPtr, MPtr> jordan_parts(const MPtr& mu) {
  auto flat = flatten_atomic(mu);
  if (!flat) throw input_error("jordan_parts needs a purely atomic expression");
  prune(*flat);
  if (flat->haar_mass != 0)
    throw input_error("jordan_parts needs a purely atomic expression");
  std::vector<std::pair<Rat, MPtr>> pos, neg;
  for (const auto& [ang, w] : flat->atoms) {
    if (w > 0) pos.emplace_back(Rat(1), atom(ang, w));
    if (w < 0) neg.emplace_back(Rat(1), atom(ang, -w));
  }
  return {lincomb(std::move(pos)), lincomb(std::move(neg))};
}

double total_variation_bound(const MPtr& mu) {
  return std::visit(
      overloaded{
          [](const Haar& h) { return std::abs(to_double(h.mass)); },
          [](const AtomNode& a) { return std::abs(to_double(a.weight)); },
          [](const DensityNode& d) {
            double acc = 0.0;
            for (Cd v : d.window) acc += std::abs(v);
            return acc;
          },
          [](const DigitBernoulliNode&) { return 1.0; },
          [](const RotateNode& r) { return total_variation_bound(r.inner); },
          [](const PushNode& p) { return total_variation_bound(p.inner); },
          [](const PullNode& p) { return total_variation_bound(p.inner); },
          [](const LinCombNode& l) {
            double acc = 0.0;
            for (const auto& [s, m] : l.terms)
              acc += std::abs(to_double(s)) * total_variation_bound(m);
            return acc;
          },
      },
      mu->node);
}

namespace {

Cd eval_h(const MPtr& mu, Cd z, double tol);

Cd eval_digit_h(const DigitBernoulliNode& d, Cd z, double tol) {
  double r = std::abs(z);
  // |c_nu| <= 1, so the tail beyond order K is at most 2 r^{K+1} / (1-r).
  double target = std::max(tol * (1.0 - r) / 4.0, 1e-300);
  long long K = static_cast<long long>(std::ceil(std::log(target) / std::log(r)));
  K = std::max<long long>(K, 4);
  if (K > 2'000'000) throw input_error("evaluation point too close to the boundary");
  double coeff_tol = tol * (1.0 - r) / 8.0;
  Cd acc{1.0, 0.0};  // c_0 contribution to the transform
  Cd zp{1.0, 0.0};
  for (long long nu = 1; nu <= K; ++nu) {
    zp *= z;
    acc += 2.0 * digit_coeff(d, nu, coeff_tol).first * zp;
  }
  return acc;
}

Cd eval_h(const MPtr& mu, Cd z, double tol) {
  return std::visit(
      overloaded{
          [&](const Haar& h) { return Cd{to_double(h.mass), 0.0}; },
          [&](const AtomNode& a) {
            Cd zeta = unit_turns(a.angle);
            return to_double(a.weight) * (zeta + z) / (zeta - z);
          },
          [&](const DensityNode& d) {
            int W = static_cast<int>(d.window.size() / 2);
            Cd acc = d.window[static_cast<size_t>(W)];
            Cd zp{1.0, 0.0};
            for (int nu = 1; nu <= W; ++nu) {
              zp *= z;
              acc += 2.0 * d.window[static_cast<size_t>(nu + W)] * zp;
            }
            return acc;
          },
          [&](const DigitBernoulliNode& d) { return eval_digit_h(d, z, tol); },
          [&](const RotateNode& r) {
            return eval_h(r.inner, z * unit_turns(-r.angle), tol);
          },
          [&](const PullNode& p) {
            Cd w{1.0, 0.0};
            for (int i = 0; i < p.factor; ++i) w *= z;
            return eval_h(p.inner, w, tol);
          },
          [&](const PushNode& p) {
            // Mean of the transform over the N-th roots of z.
            double rr = std::pow(std::abs(z), 1.0 / p.factor);
            double base = std::arg(z) / two_pi / p.factor;
            Cd acc{};
            for (int k = 0; k < p.factor; ++k)
              acc += eval_h(p.inner,
                            rr * unit_turns(base + static_cast<double>(k) / p.factor), tol);
            return acc / static_cast<double>(p.factor);
          },
          [&](const LinCombNode& l) {
            double spread = 0.0;
            for (const auto& [s, m] : l.terms) spread += std::abs(to_double(s));
            double child = tol / std::max(1.0, spread);
            Cd acc{};
            for (const auto& [s, m] : l.terms) acc += to_double(s) * eval_h(m, z, child);
            return acc;
          },
      },
      mu->node);
}

}  // namespace

Cd eval_herglotz(const MPtr& mu, Cd z, double tol) {
  if (std::abs(z) >= 1.0) throw input_error("evaluation point must lie inside the disc");
  return eval_h(mu, z, tol);
}

}  // namespace ck::measures
