#include "circlekit/mass.hpp"

#include "circlekit/util.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ck::mass {

namespace {

constexpr long long kCoeffCap = 1LL << 44;

class ZeroSmooth final : public SmoothPart {
public:
  Cd coeff(long long) const override { return {}; }
  double abs_tail(long long) const override { return 0.0; }
  double coeff_height() const override { return 0.0; }
  void collect(long long, std::vector<std::pair<long long, Cd>>&) const override {}
  SmoothDesc describe() const override { return {"zero", 0, 0.0, {}}; }
};

class TrigSmooth final : public SmoothPart {
public:
  explicit TrigSmooth(std::vector<Cd> window) : window_(std::move(window)) {
    if (window_.size() % 2 == 0) throw input_error("smooth window must have odd length");
    w_ = static_cast<long long>(window_.size() / 2);
  }
  Cd coeff(long long nu) const override {
    if (nu == 0 || nu < -w_ || nu > w_) return {};
    return window_[static_cast<size_t>(nu + w_)];
  }
  double abs_tail(long long K) const override {
    double acc = 0.0;
    for (long long nu = -w_; nu <= w_; ++nu)
      if (nu != 0 && std::llabs(nu) > K) acc += std::abs(coeff(nu));
    return acc;
  }
  double coeff_height() const override {
    double h = 0.0;
    for (long long nu = -w_; nu <= w_; ++nu)
      h = std::max(h, std::abs(nu) * std::abs(coeff(nu)));
    return h;
  }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    for (long long nu = -w_; nu <= w_; ++nu) {
      if (nu == 0 || std::llabs(nu) > K) continue;
      Cd c = coeff(nu);
      if (c != Cd{}) out.emplace_back(nu, c);
    }
  }

  SmoothDesc describe() const override { return {"trig", 0, 0.0, window_}; }

private:
  std::vector<Cd> window_;
  long long w_ = 0;
};

class LacunarySmooth final : public SmoothPart {
public:
  LacunarySmooth(int base, double amplitude) : base_(base), amp_(amplitude) {
    if (base < 2) throw input_error("lacunary base must be >= 2");
  }
  SmoothDesc describe() const override { return {"lacunary", base_, amp_, {}}; }
  Cd coeff(long long nu) const override {
    if (nu == 0) return {};
    long long a = std::llabs(nu);
    // Powers of the base (k >= 0, so including 1) carry +- i * amp / (2 pi base^k);
    // the k = 0 term makes the function a fixed point of the base-map image.
    long long p = 1;
    while (p < a) {
      if (p > (1LL << 60) / base_) return {};
      p *= base_;
    }
    if (p != a) return {};
    double mag = amp_ / (two_pi * static_cast<double>(a));
    return nu > 0 ? Cd{0.0, mag} : Cd{0.0, -mag};
  }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    for (long long p = 1; p <= K; ) {
      double mag = amp_ / (two_pi * static_cast<double>(p));
      out.emplace_back(p, Cd{0.0, mag});
      out.emplace_back(-p, Cd{0.0, -mag});
      if (p > K / base_) break;
      p *= base_;
    }
  }
  double abs_tail(long long K) const override {
    double p = 1.0;
    while (p <= static_cast<double>(K)) p *= base_;
    // Two coefficients (+-nu) per surviving power; geometric sum over powers.
    return std::abs(amp_) / (pi * p) * base_ / (base_ - 1.0);
  }
  double coeff_height() const override { return std::abs(amp_) / two_pi * 2.0; }

private:
  int base_;
  double amp_;
};

class SumSmooth final : public SmoothPart {
public:
  explicit SumSmooth(std::vector<std::pair<double, SmoothPtr>> terms)
      : terms_(std::move(terms)) {
    for (auto& [s, p] : terms_)
      if (!p) throw input_error("null smooth operand");
  }
  Cd coeff(long long nu) const override {
    Cd acc{};
    for (const auto& [s, p] : terms_) acc += s * p->coeff(nu);
    return acc;
  }
  double abs_tail(long long K) const override {
    double acc = 0.0;
    for (const auto& [s, p] : terms_) acc += std::abs(s) * p->abs_tail(K);
    return acc;
  }
  double coeff_height() const override {
    double acc = 0.0;
    for (const auto& [s, p] : terms_) acc += std::abs(s) * p->coeff_height();
    return acc;
  }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    std::map<long long, Cd> merged;
    std::vector<std::pair<long long, Cd>> child;
    for (const auto& [s, p] : terms_) {
      child.clear();
      p->collect(K, child);
      for (const auto& [nu, c] : child) merged[nu] += s * c;
    }
    for (const auto& [nu, c] : merged)
      if (c != Cd{}) out.emplace_back(nu, c);
  }

private:
  std::vector<std::pair<double, SmoothPtr>> terms_;
};

class RotateSmooth final : public SmoothPart {
public:
  RotateSmooth(Rat beta, SmoothPtr inner) : beta_(rat_mod1(beta)), inner_(std::move(inner)) {
    if (!inner_) throw input_error("null smooth operand");
  }
  Cd coeff(long long nu) const override {
    return inner_->coeff(nu) * unit_turns(-Rat(nu) * beta_);
  }
  double abs_tail(long long K) const override { return inner_->abs_tail(K); }
  double coeff_height() const override { return inner_->coeff_height(); }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    std::vector<std::pair<long long, Cd>> child;
    inner_->collect(K, child);
    for (const auto& [nu, c] : child)
      out.emplace_back(nu, c * unit_turns(-Rat(nu) * beta_));
  }

private:
  Rat beta_;
  SmoothPtr inner_;
};

class PullSmooth final : public SmoothPart {
public:
  PullSmooth(int N, SmoothPtr inner) : n_(N), inner_(std::move(inner)) {
    if (N < 1) throw input_error("pull factor must be >= 1");
    if (!inner_) throw input_error("null smooth operand");
  }
  Cd coeff(long long nu) const override {
    if (nu % n_ != 0) return {};
    return inner_->coeff(nu / n_) / static_cast<double>(n_);
  }
  double abs_tail(long long K) const override { return inner_->abs_tail(K / n_) / n_; }
  double coeff_height() const override { return inner_->coeff_height(); }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    std::vector<std::pair<long long, Cd>> child;
    inner_->collect(K / n_, child);
    for (const auto& [nu, c] : child)
      out.emplace_back(nu * n_, c / static_cast<double>(n_));
  }

private:
  int n_;
  SmoothPtr inner_;
};

class PushSmooth final : public SmoothPart {
public:
  PushSmooth(int N, SmoothPtr inner) : n_(N), inner_(std::move(inner)) {
    if (N < 1) throw input_error("push factor must be >= 1");
    if (!inner_) throw input_error("null smooth operand");
  }
  Cd coeff(long long nu) const override {
    if (std::llabs(nu) > (1LL << 60) / n_) return {};
    return static_cast<double>(n_) * inner_->coeff(nu * n_);
  }
  double abs_tail(long long K) const override {
    if (K > (1LL << 60) / n_) return 0.0;
    return n_ * inner_->abs_tail(K * n_);
  }
  double coeff_height() const override { return inner_->coeff_height(); }
  void collect(long long K, std::vector<std::pair<long long, Cd>>& out) const override {
    std::vector<std::pair<long long, Cd>> child;
    inner_->collect(std::min(K, (1LL << 60) / n_) * n_, child);
    for (const auto& [nu, c] : child)
      if (nu % n_ == 0) out.emplace_back(nu / n_, static_cast<double>(n_) * c);
  }

private:
  int n_;
  SmoothPtr inner_;
};

double jump_abs_sum(const MassFunction& f) {
  double acc = 0.0;
  for (const auto& [t, w] : f.jumps) acc += std::abs(w);
  return acc;
}

double jump_sum(const MassFunction& f) {
  double acc = 0.0;
  for (const auto& [t, w] : f.jumps) acc += w;
  return acc;
}

double slope_of(const MassFunction& f) { return f.total_mass - jump_sum(f); }

// Uniform bound on |F| over one period.
double sup_bound(const MassFunction& f) {
  return std::abs(slope_of(f)) + jump_abs_sum(f) + 2.0 * f.smooth->abs_tail(0);
}

long long tail_cut(const SmoothPtr& s, double budget) {
  long long K = 8;
  while (s->abs_tail(K) > budget) {
    if (K > kCoeffCap) throw input_error("smooth part converges too slowly");
    K *= 2;
  }
  return K;
}

// S(t) - S(0) with absolute error below tol.
double smooth_delta(const SmoothPtr& s, double t, double tol) {
  long long K = tail_cut(s, tol / 4.0);
  std::vector<std::pair<long long, Cd>> coeffs;
  s->collect(K, coeffs);
  Cd acc{};
  for (const auto& [nu, c] : coeffs) acc += c * (unit_turns(nu * t) - 1.0);
  return acc.real();
}

// S(0) with absolute error below tol.
double smooth_at_zero(const SmoothPtr& s, double tol) {
  long long K = tail_cut(s, tol / 2.0);
  std::vector<std::pair<long long, Cd>> coeffs;
  s->collect(K, coeffs);
  Cd acc{};
  for (const auto& [nu, c] : coeffs) acc += c;
  return acc.real();
}

std::vector<std::pair<Rat, double>> sorted_jumps(std::map<Rat, double>&& m) {
  std::vector<std::pair<Rat, double>> out;
  out.reserve(m.size());
  for (auto& [t, w] : m)
    if (w != 0.0) out.emplace_back(t, w);
  return out;
}

}  // namespace

SmoothPtr smooth_zero() { return std::make_shared<ZeroSmooth>(); }
SmoothPtr smooth_trig(std::vector<Cd> window) {
  return std::make_shared<TrigSmooth>(std::move(window));
}
SmoothPtr smooth_lacunary(int base, double amplitude) {
  return std::make_shared<LacunarySmooth>(base, amplitude);
}
SmoothPtr smooth_sum(std::vector<std::pair<double, SmoothPtr>> terms) {
  return std::make_shared<SumSmooth>(std::move(terms));
}
SmoothPtr smooth_rotate(const Rat& beta_turns, SmoothPtr inner) {
  return std::make_shared<RotateSmooth>(beta_turns, std::move(inner));
}
SmoothPtr smooth_pull(int N, SmoothPtr inner) {
  return std::make_shared<PullSmooth>(N, std::move(inner));
}
SmoothPtr smooth_push(int N, SmoothPtr inner) {
  return std::make_shared<PushSmooth>(N, std::move(inner));
}

MassFunction haar_mass(double mass) { return MassFunction{mass, {}, smooth_zero()}; }

MassFunction atomic_mass(std::vector<std::pair<Rat, double>> jumps) {
  std::map<Rat, double> merged;
  double total = 0.0;
  for (auto& [t, w] : jumps) {
    merged[rat_mod1(t)] += w;
    total += w;
  }
  return MassFunction{total, sorted_jumps(std::move(merged)), smooth_zero()};
}

MassFunction lacunary_mass(int base, double amplitude) {
  return MassFunction{0.0, {}, smooth_lacunary(base, amplitude)};
}

MassFunction density_mass(const std::vector<Cd>& density_window) {
  if (density_window.size() % 2 == 0)
    throw input_error("density window must have odd length");
  size_t w = density_window.size() / 2;
  std::vector<Cd> s(density_window.size());
  for (size_t i = 0; i < density_window.size(); ++i) {
    long long nu = static_cast<long long>(i) - static_cast<long long>(w);
    // Antiderivative of the density's oscillating part.
    s[i] = nu == 0 ? Cd{} : density_window[i] / Cd{0.0, two_pi * static_cast<double>(nu)};
  }
  return MassFunction{density_window[w].real(), {}, smooth_trig(std::move(s))};
}

double eval_turns(const MassFunction& f, double t, double tol) {
  if (t < 0.0 || t > 1.0) throw input_error("evaluation argument must lie in [0, 1]");
  double acc = slope_of(f) * t;
  for (const auto& [tj, w] : f.jumps)
    if (to_double(tj) < t) acc += w;
  acc += smooth_delta(f.smooth, t, tol);
  return acc;
}

double eval(const MassFunction& f, double theta_radians, double tol) {
  return eval_turns(f, theta_radians / two_pi, tol);
}

double arc_measure(const MassFunction& f, const Arc& arc, double tol) {
  Rat a = rat_mod1(arc.start);
  if (arc.point) {
    for (const auto& [tj, w] : f.jumps)
      if (tj == a) return w;
    return 0.0;
  }
  Rat b = rat_mod1(arc.end);
  double fa = eval_turns(f, to_double(a), tol / 2);
  double fb = eval_turns(f, to_double(b), tol / 2);
  if (a <= b) return fb - fa;
  return f.total_mass - (fa - fb);
}

MassFunction act_rotation(const MassFunction& f, const Rat& beta_turns) {
  Rat beta = rat_mod1(beta_turns);
  std::map<Rat, double> jumps;
  for (const auto& [t, w] : f.jumps) jumps[rat_mod1(t + beta)] += w;
  return MassFunction{f.total_mass, sorted_jumps(std::move(jumps)),
                      beta == 0 ? f.smooth : smooth_rotate(beta, f.smooth)};
}

MassFunction act_pull(const MassFunction& f, int N) {
  if (N < 1) throw input_error("pull factor must be >= 1");
  if (N == 1) return f;
  std::map<Rat, double> jumps;
  Rat invN(1, N);
  for (const auto& [t, w] : f.jumps)
    for (int k = 0; k < N; ++k) jumps[rat_mod1((t + k) * invN)] += w / N;
  return MassFunction{f.total_mass, sorted_jumps(std::move(jumps)),
                      smooth_pull(N, f.smooth)};
}

MassFunction act_push(const MassFunction& f, int N) {
  if (N < 1) throw input_error("push factor must be >= 1");
  if (N == 1) return f;
  std::map<Rat, double> jumps;
  for (const auto& [t, w] : f.jumps) jumps[rat_mod1(t * N)] += w;
  return MassFunction{f.total_mass, sorted_jumps(std::move(jumps)),
                      smooth_push(N, f.smooth)};
}

MassFunction act_trace(const MassFunction& f, int N) {
  if (N < 1) throw input_error("trace factor must be >= 1");
  MassFunction acc = act_rotation(f, Rat(0));
  for (int k = 1; k < N; ++k) acc = add(acc, act_rotation(f, Rat(k, N)));
  return acc;
}

MassFunction add(const MassFunction& a, const MassFunction& b) {
  std::map<Rat, double> jumps;
  for (const auto& [t, w] : a.jumps) jumps[t] += w;
  for (const auto& [t, w] : b.jumps) jumps[t] += w;
  return MassFunction{a.total_mass + b.total_mass, sorted_jumps(std::move(jumps)),
                      smooth_sum({{1.0, a.smooth}, {1.0, b.smooth}})};
}

MassFunction scale(const MassFunction& a, double s) {
  MassFunction out;
  out.total_mass = s * a.total_mass;
  out.jumps = a.jumps;
  for (auto& [t, w] : out.jumps) w *= s;
  out.smooth = s == 1.0 ? a.smooth : smooth_sum({{s, a.smooth}});
  return out;
}

PsiResult psi_S_mass(const MassFunction& f, const std::vector<int>& gens, double tol) {
  require_generators(gens, true);
  if (tol <= 0) throw input_error("tolerance must be positive");
  double bound = sup_bound(f);
  long long cutoff = 4;
  Rat tail = tail_inverse_sum(gens, cutoff);
  while (bound * to_double(tail) > tol) {
    if (cutoff > (1LL << 26)) throw input_error("series cutoff exceeds the cap");
    cutoff *= 2;
    tail = tail_inverse_sum(gens, cutoff);
  }
  MassFunction acc = haar_mass(0.0);
  for (long long n : products_up_to(gens, cutoff))
    acc = add(acc, act_pull(f, static_cast<int>(n)));
  return PsiResult{std::move(acc), cutoff, bound * to_double(tail)};
}

MassFunction phi_S_mass(const MassFunction& f, const std::vector<int>& gens) {
  require_generators(gens, true);
  size_t s = gens.size();
  MassFunction acc = haar_mass(0.0);
  for (size_t mask = 0; mask < (size_t{1} << s); ++mask) {
    long long m = 1;
    int bits = 0;
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) {
        m *= gens[i];
        ++bits;
      }
    MassFunction term = act_pull(f, static_cast<int>(m));
    acc = add(acc, bits % 2 == 0 ? term : scale(term, -1.0));
  }
  return acc;
}

MassFunction omega_S_mass(const MassFunction& f, const std::vector<int>& gens) {
  require_generators(gens, true);
  size_t s = gens.size();
  MassFunction acc = haar_mass(0.0);
  for (size_t mask = 0; mask < (size_t{1} << s); ++mask) {
    long long m = 1;
    int bits = 0;
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) {
        m *= gens[i];
        ++bits;
      }
    // Coprime idempotents merge: the subset acts as the mean over m rotations.
    MassFunction term = scale(act_trace(f, static_cast<int>(m)), 1.0 / m);
    acc = add(acc, bits % 2 == 0 ? term : scale(term, -1.0));
  }
  return acc;
}

FeqReport functional_eq_check(const MassFunction& f, int N, int grid, double tol) {
  if (N < 2) throw input_error("functional equation factor must be >= 2");
  if (grid < 1) throw input_error("grid must be positive");
  std::set<Rat> angles;
  for (const auto& [t, w] : f.jumps) angles.insert(t);
  FeqReport rep;
  rep.c0_from_mass = (N - 1) * mu0(f, tol);
  double c0 = 0.0;
  for (int k = 0; k < N; ++k) c0 += eval_turns(f, static_cast<double>(k) / N, tol);
  rep.c0_from_sum = c0;
  rep.c0_disagreement = std::abs(rep.c0_from_mass - rep.c0_from_sum);
  for (int i = 0; i < grid; ++i) {
    Rat t(2 * i + 1, 2 * grid);
    bool bad = angles.count(t) > 0;
    for (int k = 0; k < N && !bad; ++k) bad = angles.count(rat_mod1((t + k) / N)) > 0;
    if (bad) {
      ++rep.skipped;
      continue;
    }
    ++rep.grid_points;
    double lhs = eval_turns(f, to_double(t), tol);
    double rhs = -c0;
    for (int k = 0; k < N; ++k)
      rhs += eval_turns(f, to_double((t + Rat(k)) / N), tol);
    rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
  }
  rep.pass = rep.max_residual <= tol * (N + 2) && rep.c0_disagreement <= tol * (N + 2);
  return rep;
}

std::vector<std::pair<Rat, double>> atoms(const MassFunction& f) { return f.jumps; }

double mu0(const MassFunction& f, double tol) {
  double acc = slope_of(f) / 2.0;
  for (const auto& [t, w] : f.jumps) acc += w * (1.0 - to_double(t));
  acc -= smooth_at_zero(f.smooth, tol);
  return acc;
}

series::TaylorSeries herglotz_series(const MassFunction& f, int K) {
  series::TaylorSeries h(series::Kind::floating, K);
  h.set(0, Cd{f.total_mass, 0.0});
  for (int nu = 1; nu <= K; ++nu) {
    Cd acc{};
    for (const auto& [t, w] : f.jumps) acc += 2.0 * w * unit_turns(-Rat(nu) * t);
    acc += Cd{0.0, 2.0 * two_pi * nu} * f.smooth->coeff(nu);
    h.set(nu, acc);
  }
  return h;
}

std::function<Cd(Cd, double)> herglotz_evaluator(const MassFunction& f) {
  // The jump part has the exact closed form sum_j w_j (zeta_j + z)/(zeta_j - z);
  // the smooth part is summed sparsely with tail bound 4 pi H r^{K+1}/(1 - r),
  // where H = sup |nu s_nu|.
  double height = 2.0 * two_pi * f.smooth->coeff_height();
  MassFunction copy = f;
  return [copy, height](Cd z, double tol) -> Cd {
    double r = std::abs(z);
    if (r >= 1.0) throw input_error("evaluation point must lie inside the disc");
    if (tol <= 0) throw input_error("tolerance must be positive");
    Cd acc{slope_of(copy), 0.0};
    for (const auto& [t, w] : copy.jumps) {
      Cd zeta = unit_turns(t);
      acc += w * (zeta + z) / (zeta - z);
    }
    if (height > 0.0) {
      double target = tol * (1.0 - r) / height;
      long long K = 8;
      if (target < 1.0)
        K = std::max<long long>(
            8, static_cast<long long>(std::ceil(std::log(target) / std::log(r))));
      if (K > (1LL << 44)) throw input_error("evaluation point too close to the boundary");
      std::vector<std::pair<long long, Cd>> coeffs;
      copy.smooth->collect(K, coeffs);
      double argz = std::arg(z);
      for (const auto& [nu, s] : coeffs) {
        if (nu <= 0) continue;
        Cd a = Cd{0.0, 2.0 * two_pi * static_cast<double>(nu)} * s;
        acc += a * std::polar(std::pow(r, static_cast<double>(nu)),
                              argz * static_cast<double>(nu));
      }
    }
    return acc;
  };
}

RadialReport radial_atom(const std::function<Cd(Cd, double)>& h, Cd eta, int kmin,
                         int kmax, double tol) {
  if (kmin < 1 || kmax < kmin) throw input_error("bad radial schedule");
  if (std::abs(std::abs(eta) - 1.0) > 1e-12)
    throw input_error("detector direction must lie on the circle");
  RadialReport rep;
  for (int k = kmin; k <= kmax; ++k) {
    double r = 1.0 - std::ldexp(1.0, -k);
    Cd val = h(r * eta, tol);
    rep.values.push_back((1.0 - r) / 2.0 * val.real());
  }
  size_t n = rep.values.size();
  if (n >= 3) {
    double d1 = std::abs(rep.values[n - 2] - rep.values[n - 3]);
    double d2 = std::abs(rep.values[n - 1] - rep.values[n - 2]);
    rep.converged = d2 <= 0.6 * d1 + 0.5 * tol;
  }
  rep.limit = rep.values.empty() ? 0.0 : rep.values.back();
  return rep;
}

KernelReport kernel_psi_check(double r, double tol) {
  if (r <= 0.0 || r >= 1.0) throw input_error("kernel radius must lie in (0, 1)");
  auto psi = [r](double theta) {
    double d2 = 1.0 - 2.0 * r * std::cos(theta) + r * r;
    return r * (1.0 - r * r) * std::sin(theta) / (d2 * d2);
  };
  KernelReport rep;
  rep.integral = adaptive_simpson(psi, 0.0, pi, tol / 4.0, 60);
  rep.closed_form = 2.0 * r / (1.0 - r * r);
  rep.abs_error = std::abs(rep.integral - rep.closed_form);
  for (int i = 0; i <= 2000; ++i) {
    double theta = pi * i / 2000.0;
    if (psi(theta) < -1e-13) rep.nonnegative = false;
    if (std::abs(psi(theta) + psi(-theta)) > 1e-12 * (1.0 + std::abs(psi(theta))))
      rep.odd = false;
  }
  rep.pass = rep.abs_error <= tol && rep.nonnegative && rep.odd;
  return rep;
}

}  // namespace ck::mass
