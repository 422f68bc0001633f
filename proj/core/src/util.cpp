#include "circlekit/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ck {

Cd unit_turns(double t) {
  double f = t - std::floor(t);
  return {std::cos(two_pi * f), std::sin(two_pi * f)};
}

Cd unit_turns(const Rat& t) { return unit_turns(to_double(rat_mod1(t))); }

void require_generators(const std::vector<int>& gens, bool coprime) {
  if (gens.empty()) throw input_error("generator list is empty");
  for (int g : gens)
    if (g < 2) throw input_error("generators must be >= 2");
  if (coprime) {
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j)
        if (std::gcd(gens[i], gens[j]) != 1)
          throw input_error("generators must be pairwise coprime");
  }
}

std::vector<long long> products_up_to(const std::vector<int>& gens, long long bound) {
  require_generators(gens, false);
  std::vector<long long> out{1};
  if (bound < 1) return {};
  for (int g : gens) {
    std::vector<long long> grown;
    for (long long v : out) {
      long long w = v;
      while (w <= bound) {
        grown.push_back(w);
        if (w > bound / g) break;
        w *= g;
      }
    }
    out = std::move(grown);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rat tail_inverse_sum(const std::vector<int>& gens, long long bound) {
  require_generators(gens, true);
  Rat full(1);
  for (int g : gens) full *= Rat(g, g - 1);
  Rat partial(0);
  for (long long v : products_up_to(gens, bound)) partial += Rat(1, v);
  return full - partial;
}

namespace {

double simpson_rule(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_rule(fa, flm, fm, m - a);
  double right = simpson_rule(fm, frm, fb, b - m);
  double delta = left + right - whole;
  // Below rounding noise the delta test can never pass; splitting further
  // would visit the whole depth-limited tree without improving the estimate.
  double noise =
      std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || tol < noise)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson_rule(fa, fm, fb, b - a);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace ck
