#include "circlekit/series.hpp"

#include "circlekit/util.hpp"

#include <algorithm>
#include <cmath>

namespace ck::series {

namespace {

template <class T>
struct ops;

template <>
struct ops<RatC> {
  static RatC zero() { return {}; }
  static RatC one() { return RatC(1); }
  static RatC divn(const RatC& a, long n) { return div_int(a, n); }
  static RatC muln(const RatC& a, long n) { return mul_rat(a, Rat(n)); }
  static bool is_zero(const RatC& a) { return a.is_zero(); }
  static bool is_one(const RatC& a) { return a.re == 1 && a.im == 0; }
};

template <>
struct ops<Cd> {
  static Cd zero() { return {}; }
  static Cd one() { return {1.0, 0.0}; }
  static Cd divn(const Cd& a, long n) { return a / static_cast<double>(n); }
  static Cd muln(const Cd& a, long n) { return a * static_cast<double>(n); }
  static bool is_zero(const Cd& a) { return a == Cd{}; }
  static bool is_one(const Cd& a) { return a == Cd{1.0, 0.0}; }
};

template <class T>
std::vector<T> mul_vec(const std::vector<T>& a, const std::vector<T>& b, size_t n) {
  std::vector<T> c(n, ops<T>::zero());
  for (size_t i = 0; i < n && i < a.size(); ++i) {
    if (ops<T>::is_zero(a[i])) continue;
    size_t jmax = std::min(n - i, b.size());
    for (size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// g = exp(h) for h with h_0 = 0:  n g_n = sum_{k=1..n} k h_k g_{n-k}.
template <class T>
std::vector<T> exp_vec(const std::vector<T>& h) {
  size_t n = h.size();
  std::vector<T> g(n, ops<T>::zero());
  g[0] = ops<T>::one();
  for (size_t m = 1; m < n; ++m) {
    T acc = ops<T>::zero();
    for (size_t k = 1; k <= m; ++k)
      acc += ops<T>::muln(h[k], static_cast<long>(k)) * g[m - k];
    g[m] = ops<T>::divn(acc, static_cast<long>(m));
  }
  return g;
}

// h = log(a) for a with a_0 = 1:  h_n = a_n - (1/n) sum_{k<n} k h_k a_{n-k}.
template <class T>
std::vector<T> log_vec(const std::vector<T>& a) {
  size_t n = a.size();
  std::vector<T> h(n, ops<T>::zero());
  for (size_t m = 1; m < n; ++m) {
    T acc = ops<T>::zero();
    for (size_t k = 1; k < m; ++k)
      acc += ops<T>::muln(h[k], static_cast<long>(k)) * a[m - k];
    h[m] = a[m] - ops<T>::divn(acc, static_cast<long>(m));
  }
  return h;
}

// b = 1/a for a with a_0 = 1:  b_n = -sum_{k=1..n} a_k b_{n-k}.
template <class T>
std::vector<T> recip_vec(const std::vector<T>& a) {
  size_t n = a.size();
  std::vector<T> b(n, ops<T>::zero());
  b[0] = ops<T>::one();
  for (size_t m = 1; m < n; ++m) {
    T acc = ops<T>::zero();
    for (size_t k = 1; k <= m; ++k) acc += a[k] * b[m - k];
    b[m] = -acc;
  }
  return b;
}

void require_same_kind(const TaylorSeries& a, const TaylorSeries& b) {
  if (a.kind() != b.kind()) throw input_error("mixed series kinds");
}

int common_order(const TaylorSeries& a, const TaylorSeries& b) {
  return std::min(a.order(), b.order());
}

void require_constant_zero(const TaylorSeries& a, const char* what) {
  bool ok = a.kind() == Kind::rational ? a.rat(0).is_zero() : a.flt(0) == Cd{};
  if (!ok) throw input_error(std::string(what) + " requires zero constant term");
}

void require_constant_one(const TaylorSeries& a, const char* what) {
  bool ok = a.kind() == Kind::rational ? ops<RatC>::is_one(a.rat(0)) : ops<Cd>::is_one(a.flt(0));
  if (!ok) throw input_error(std::string(what) + " requires constant term one");
}

}  // namespace

TaylorSeries::TaylorSeries(Kind k, int order) : kind_(k), order_(order) {
  if (order < 0) throw input_error("series order must be >= 0");
  if (k == Kind::rational)
    rc_.assign(order + 1, RatC{});
  else
    fc_.assign(order + 1, Cd{});
}

TaylorSeries TaylorSeries::from_rational(std::vector<RatC> coeffs) {
  if (coeffs.empty()) throw input_error("series needs at least the constant term");
  TaylorSeries s(Kind::rational, static_cast<int>(coeffs.size()) - 1);
  s.rc_ = std::move(coeffs);
  return s;
}

TaylorSeries TaylorSeries::from_floating(std::vector<Cd> coeffs) {
  if (coeffs.empty()) throw input_error("series needs at least the constant term");
  TaylorSeries s(Kind::floating, static_cast<int>(coeffs.size()) - 1);
  s.fc_ = std::move(coeffs);
  return s;
}

const RatC& TaylorSeries::rat(int i) const {
  if (kind_ != Kind::rational) throw input_error("series is not rational");
  return rc_.at(i);
}

const Cd& TaylorSeries::flt(int i) const {
  if (kind_ != Kind::floating) throw input_error("series is not floating");
  return fc_.at(i);
}

void TaylorSeries::set(int i, RatC v) {
  if (kind_ != Kind::rational) throw input_error("series is not rational");
  rc_.at(i) = std::move(v);
}

void TaylorSeries::set(int i, Cd v) {
  if (kind_ != Kind::floating) throw input_error("series is not floating");
  fc_.at(i) = v;
}

Cd TaylorSeries::coeff_cd(int i) const {
  return kind_ == Kind::rational ? rc_.at(i).to_cd() : fc_.at(i);
}

TaylorSeries TaylorSeries::to_floating() const {
  if (kind_ == Kind::floating) return *this;
  std::vector<Cd> c(rc_.size());
  for (size_t i = 0; i < rc_.size(); ++i) c[i] = rc_[i].to_cd();
  return from_floating(std::move(c));
}

TaylorSeries TaylorSeries::truncated(int new_order) const {
  if (new_order < 0 || new_order > order_) throw input_error("bad truncation order");
  if (new_order == order_) return *this;
  if (kind_ == Kind::rational)
    return from_rational({rc_.begin(), rc_.begin() + new_order + 1});
  return from_floating({fc_.begin(), fc_.begin() + new_order + 1});
}

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b) {
  require_same_kind(a, b);
  int k = common_order(a, b);
  TaylorSeries out(a.kind(), k);
  for (int i = 0; i <= k; ++i) {
    if (a.kind() == Kind::rational)
      out.set(i, a.rat(i) + b.rat(i));
    else
      out.set(i, a.flt(i) + b.flt(i));
  }
  return out;
}

TaylorSeries neg(const TaylorSeries& a) {
  TaylorSeries out(a.kind(), a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a.kind() == Kind::rational)
      out.set(i, -a.rat(i));
    else
      out.set(i, -a.flt(i));
  }
  return out;
}

TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b) { return add(a, neg(b)); }

TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b) {
  require_same_kind(a, b);
  size_t n = static_cast<size_t>(common_order(a, b)) + 1;
  if (a.kind() == Kind::rational)
    return TaylorSeries::from_rational(mul_vec(a.rat_coeffs(), b.rat_coeffs(), n));
  return TaylorSeries::from_floating(mul_vec(a.flt_coeffs(), b.flt_coeffs(), n));
}

TaylorSeries scale(const TaylorSeries& a, const RatC& s) {
  if (a.kind() == Kind::floating) return scale_cd(a, s.to_cd());
  TaylorSeries out(Kind::rational, a.order());
  for (int i = 0; i <= a.order(); ++i) out.set(i, a.rat(i) * s);
  return out;
}

TaylorSeries scale_cd(const TaylorSeries& a, Cd s) {
  TaylorSeries f = a.to_floating();
  TaylorSeries out(Kind::floating, f.order());
  for (int i = 0; i <= f.order(); ++i) out.set(i, f.flt(i) * s);
  return out;
}

TaylorSeries pow_int(const TaylorSeries& a, int n) {
  if (n < 0) throw input_error("negative power");
  TaylorSeries acc(a.kind(), a.order());
  if (a.kind() == Kind::rational)
    acc.set(0, RatC(1));
  else
    acc.set(0, Cd{1.0, 0.0});
  TaylorSeries base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

TaylorSeries exp_series(const TaylorSeries& a) {
  require_constant_zero(a, "exp_series");
  if (a.kind() == Kind::rational)
    return TaylorSeries::from_rational(exp_vec(a.rat_coeffs()));
  return TaylorSeries::from_floating(exp_vec(a.flt_coeffs()));
}

TaylorSeries log_series(const TaylorSeries& a) {
  require_constant_one(a, "log_series");
  if (a.kind() == Kind::rational)
    return TaylorSeries::from_rational(log_vec(a.rat_coeffs()));
  return TaylorSeries::from_floating(log_vec(a.flt_coeffs()));
}

TaylorSeries reciprocal(const TaylorSeries& a) {
  require_constant_one(a, "reciprocal");
  if (a.kind() == Kind::rational)
    return TaylorSeries::from_rational(recip_vec(a.rat_coeffs()));
  return TaylorSeries::from_floating(recip_vec(a.flt_coeffs()));
}

TaylorSeries derivative(const TaylorSeries& a) {
  int k = std::max(a.order() - 1, 0);
  TaylorSeries out(a.kind(), k);
  for (int i = 0; i + 1 <= a.order() && i <= k; ++i) {
    if (a.kind() == Kind::rational)
      out.set(i, ops<RatC>::muln(a.rat(i + 1), i + 1));
    else
      out.set(i, ops<Cd>::muln(a.flt(i + 1), i + 1));
  }
  return out;
}

TaylorSeries compose_zN(const TaylorSeries& f, int N) {
  if (N < 1) throw input_error("compose_zN needs N >= 1");
  if (N == 1) return f;
  TaylorSeries out(f.kind(), f.order());
  for (int m = 0; static_cast<long long>(m) * N <= f.order(); ++m) {
    if (f.kind() == Kind::rational)
      out.set(m * N, f.rat(m));
    else
      out.set(m * N, f.flt(m));
  }
  return out;
}

TaylorSeries trace_N(const TaylorSeries& f, int N) {
  if (N < 1) throw input_error("trace_N needs N >= 1");
  TaylorSeries out(f.kind(), f.order());
  for (int i = 0; i <= f.order(); i += N) {
    if (f.kind() == Kind::rational)
      out.set(i, ops<RatC>::muln(f.rat(i), N));
    else
      out.set(i, ops<Cd>::muln(f.flt(i), N));
  }
  return out;
}

TaylorSeries contract_indices(const TaylorSeries& f, int N) {
  if (N < 1) throw input_error("contract_indices needs N >= 1");
  int k = f.order() / N;
  TaylorSeries out(f.kind(), k);
  for (int m = 0; m <= k; ++m) {
    if (f.kind() == Kind::rational)
      out.set(m, f.rat(m * N));
    else
      out.set(m, f.flt(m * N));
  }
  return out;
}

TaylorSeries mult_trace(const TaylorSeries& f, int N) {
  require_constant_one(f, "mult_trace");
  return exp_series(trace_N(log_series(f), N));
}

TaylorSeries rotate(const TaylorSeries& f, const Rat& q_turns) {
  Rat q = rat_mod1(q_turns);
  if (q == 0) return f;
  TaylorSeries g = f.to_floating();
  TaylorSeries out(Kind::floating, g.order());
  for (int i = 0; i <= g.order(); ++i) out.set(i, g.flt(i) * unit_turns(q * Rat(i)));
  return out;
}

TaylorSeries rotate_cd(const TaylorSeries& f, Cd zeta) {
  TaylorSeries g = f.to_floating();
  TaylorSeries out(Kind::floating, g.order());
  Cd p{1.0, 0.0};
  for (int i = 0; i <= g.order(); ++i) {
    out.set(i, g.flt(i) * p);
    p *= zeta;
  }
  return out;
}

double feq_residual(const TaylorSeries& f, int N) {
  if (N < 1) throw input_error("feq_residual needs N >= 1");
  TaylorSeries lhs = pow_int(compose_zN(f, N), N);
  TaylorSeries rhs = mult_trace(f, N);
  return max_abs_diff(lhs, rhs);
}

TaylorSeries psi_S_product(const TaylorSeries& alpha, const std::vector<int>& gens) {
  require_generators(gens, true);
  int k = alpha.order();
  TaylorSeries acc(alpha.kind(), k);
  if (alpha.kind() == Kind::rational)
    acc.set(0, RatC(1));
  else
    acc.set(0, Cd{1.0, 0.0});
  for (long long n : products_up_to(gens, k))
    acc = mul(acc, compose_zN(alpha, static_cast<int>(n)));
  return acc;
}

TaylorSeries phi_S(const TaylorSeries& f, const std::vector<int>& gens) {
  require_generators(gens, true);
  require_constant_one(f, "phi_S");
  int k = f.order();
  TaylorSeries g = log_series(f);
  TaylorSeries acc(f.kind(), k);
  size_t s = gens.size();
  for (size_t mask = 0; mask < (size_t{1} << s); ++mask) {
    long long m = 1;
    int bits = 0;
    for (size_t i = 0; i < s; ++i)
      if (mask & (size_t{1} << i)) {
        m *= gens[i];
        ++bits;
      }
    if (m > k && m != 1) continue;  // contributes only to the zero constant term
    TaylorSeries term = compose_zN(g, static_cast<int>(m));
    acc = (bits % 2 == 0) ? add(acc, term) : sub(acc, term);
  }
  return exp_series(acc);
}

TaylorSeries omega_S(const TaylorSeries& f, const std::vector<int>& gens) {
  require_generators(gens, true);
  require_constant_one(f, "omega_S");
  TaylorSeries g = log_series(f);
  TaylorSeries out(f.kind(), f.order());
  for (int i = 1; i <= f.order(); ++i) {
    bool divisible = false;
    for (int n : gens)
      if (i % n == 0) {
        divisible = true;
        break;
      }
    if (divisible) continue;
    if (f.kind() == Kind::rational)
      out.set(i, g.rat(i));
    else
      out.set(i, g.flt(i));
  }
  return exp_series(out);
}

double max_abs_diff(const TaylorSeries& a, const TaylorSeries& b) {
  require_same_kind(a, b);
  int k = common_order(a, b);
  double worst = 0.0;
  for (int i = 0; i <= k; ++i) {
    double d = a.kind() == Kind::rational ? abs_cd(a.rat(i) - b.rat(i))
                                          : std::abs(a.flt(i) - b.flt(i));
    worst = std::max(worst, d);
  }
  return worst;
}

bool equal_exact(const TaylorSeries& a, const TaylorSeries& b) {
  require_same_kind(a, b);
  int k = common_order(a, b);
  for (int i = 0; i <= k; ++i) {
    if (a.kind() == Kind::rational) {
      if (a.rat(i) != b.rat(i)) return false;
    } else {
      if (a.flt(i) != b.flt(i)) return false;
    }
  }
  return true;
}

}  // namespace ck::series
