// circlekit command line tool: build objects from json descriptions, run
// checks, and emit csv/json artifacts. Exit code 0 means every selected check
// passed, 1 means a check failed, 2 means the input was malformed.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlekit/algebra.hpp"
#include "circlekit/entropy.hpp"
#include "circlekit/io.hpp"
#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/series.hpp"
#include "circlekit/util.hpp"
#include "circlekit/witt.hpp"

namespace {

using json = nlohmann::json;
using namespace ck;

struct Flags {
  std::string in_path;
  std::string inline_doc;
  std::string out_path;
  std::string kappa_spec = "gamma=0";
  std::vector<int> gens = {2};
  int order = 32;
  double tol = 1e-9;
  uint64_t seed = 1;
};

// Shared options; each subcommand picks the ones it documents.
void add_input_flags(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--in", fl.in_path, "Path of the input json document");
  cmd->add_option("--inline", fl.inline_doc, "Input json given on the command line");
}

void add_out_flag(CLI::App* cmd, Flags& fl) {
  cmd->add_option("--out", fl.out_path, "Write the artifact here instead of stdout");
}

std::string read_input(const Flags& fl) {
  if (!fl.inline_doc.empty()) return fl.inline_doc;
  if (fl.in_path.empty()) throw input_error("no input: pass --in or --inline");
  std::ifstream in(fl.in_path, std::ios::binary);
  if (!in) throw input_error("cannot open input file: " + fl.in_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Flags& fl, const std::string& text) {
  if (fl.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(fl.out_path, std::ios::binary);
  if (!out) throw input_error("cannot open output file: " + fl.out_path);
  out << text;
}

entropy::Kappa parse_kappa(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw input_error("kappa selector must look like gamma=<g> or power=<alpha>");
  const std::string head = spec.substr(0, eq);
  double value = 0.0;
  try {
    size_t used = 0;
    value = std::stod(spec.substr(eq + 1), &used);
    if (used != spec.size() - eq - 1) throw input_error("trailing junk");
  } catch (const std::exception&) {
    throw input_error("bad kappa parameter in: " + spec);
  }
  if (head == "gamma") return entropy::kappa_gamma(value);
  if (head == "power") return entropy::kappa_power(value);
  throw input_error("unknown kappa family: " + head);
}

void require_gens(const std::vector<int>& gens) {
  if (gens.empty()) throw input_error("at least one generator is required");
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] < 2) throw input_error("generators must be >= 2");
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (std::gcd(gens[i], gens[j]) != 1)
        throw input_error("generators must be pairwise coprime");
  }
}

// nlohmann orders object keys alphabetically, so dumps are byte deterministic.
int emit_verdict(const Flags& fl, json j, bool pass) {
  j["pass"] = pass;
  emit(fl, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int run_fourier(const Flags& fl) {
  measures::MPtr mu = io::measure_from_json(read_input(fl));
  measures::FourierWindow w = measures::fourier(mu, fl.order, fl.tol);
  emit(fl, io::fourier_csv(w));
  return 0;
}

int run_check_invariance(const Flags& fl) {
  require_gens(fl.gens);
  measures::MPtr mu = io::measure_from_json(read_input(fl));
  json factors = json::array();
  bool pass = true;
  double worst = 0.0;
  for (int n : fl.gens) {
    measures::InvarianceReport rep = measures::invariance_check(mu, n, fl.order, fl.tol);
    pass = pass && rep.pass;
    worst = std::max(worst, rep.max_deviation);
    factors.push_back(json{{"factor", n},
                           {"max_deviation", rep.max_deviation},
                           {"err_allowance", rep.err_allowance},
                           {"pass", rep.pass}});
  }
  json j{{"check", "invariance"}, {"factors", std::move(factors)},
         {"max_deviation", worst}};
  return emit_verdict(fl, std::move(j), pass);
}

int run_check_feq(const Flags& fl) {
  require_gens(fl.gens);
  measures::MPtr mu = io::measure_from_json(read_input(fl));
  measures::FmuResult f = measures::f_mu_series(mu, fl.order, fl.tol);
  json factors = json::array();
  bool pass = true;
  double worst = 0.0;
  for (int n : fl.gens) {
    double res = series::feq_residual(f.unit, n);
    bool ok = res <= fl.tol;
    pass = pass && ok;
    worst = std::max(worst, res);
    factors.push_back(json{{"factor", n}, {"residual", res}, {"pass", ok}});
  }
  json j{{"check", "feq"}, {"order", fl.order}, {"factors", std::move(factors)},
         {"max_residual", worst}};
  return emit_verdict(fl, std::move(j), pass);
}

int run_check_masseq(const Flags& fl, int grid) {
  require_gens(fl.gens);
  if (grid < 8) throw input_error("grid must be >= 8");
  mass::MassFunction f = io::mass_from_json(read_input(fl));
  json factors = json::array();
  bool pass = true;
  double worst = 0.0;
  for (int n : fl.gens) {
    mass::MassFunction pushed = mass::act_push(f, n);
    double res = 0.0;
    for (int i = 0; i < grid; ++i) {
      double t = (i + 0.5) / grid;
      res = std::max(res, std::abs(mass::eval_turns(pushed, t, fl.tol / 4) -
                                   mass::eval_turns(f, t, fl.tol / 4)));
    }
    bool ok = res <= fl.tol;
    pass = pass && ok;
    worst = std::max(worst, res);
    factors.push_back(json{{"factor", n}, {"max_residual", res}, {"pass", ok}});
  }
  json j{{"check", "masseq"}, {"grid", grid}, {"factors", std::move(factors)},
         {"max_residual", worst}};
  return emit_verdict(fl, std::move(j), pass);
}

int run_entropy(const Flags& fl) {
  json doc = json::parse(read_input(fl), nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw input_error("entropy input must be a json object");
  entropy::Kappa k = parse_kappa(fl.kappa_spec);
  json j{{"kappa", fl.kappa_spec}};
  if (doc.contains("angles")) {
    std::vector<Rat> angles;
    try {
      for (const auto& e : doc.at("angles"))
        angles.push_back(Rat(e.get<std::string>()));
    } catch (const std::exception&) {
      throw input_error("angles must be an array of p/q strings");
    }
    entropy::FiniteCircleSet set = entropy::circle_set(std::move(angles));
    j["kind"] = "finite";
    j["points"] = set.angles.size();
    j["value"] = entropy::entropy_finite(set, k);
    emit(fl, j.dump(2) + "\n");
    return 0;
  }
  if (doc.contains("base") && doc.contains("digits")) {
    entropy::CantorDesc desc;
    try {
      desc.base = doc.at("base").get<int>();
      desc.digits = doc.at("digits").get<std::vector<int>>();
    } catch (const json::exception&) {
      throw input_error("cantor input needs integer base and digit array");
    }
    entropy::CantorEntropy rep = entropy::entropy_cantor(desc, k, fl.tol);
    j["kind"] = "cantor";
    j["value"] = rep.value;
    j["tail_bound"] = rep.tail_bound;
    j["diverged"] = rep.diverged;
    j["terms"] = rep.terms;
    emit(fl, j.dump(2) + "\n");
    return 0;
  }
  throw input_error("entropy input needs either angles or base+digits");
}

series::TaylorSeries random_unit(Rng& rng, int order) {
  series::TaylorSeries p(series::Kind::rational, order);
  p.set(0, RatC(1));
  for (int i = 1; i <= order; ++i)
    p.set(i, RatC(Rat(rng.below(9) - 4, 1 + rng.below(4)),
                  Rat(rng.below(9) - 4, 1 + rng.below(4))));
  return p;
}

int run_witt_identities(const Flags& fl, int trials) {
  Rng rng{fl.seed};
  int failures = 0;
  double worst_float = 0.0;
  const series::TaylorSeries one = witt::teichmuller(RatC(1), fl.order);
  for (int t = 0; t < trials; ++t) {
    series::TaylorSeries a = random_unit(rng, fl.order);
    series::TaylorSeries b = random_unit(rng, fl.order);
    series::TaylorSeries c = random_unit(rng, fl.order);
    bool ok = true;
    ok = ok && series::equal_exact(witt::w_add(a, b), witt::w_add(b, a));
    ok = ok && series::equal_exact(witt::w_mul(a, b), witt::w_mul(b, a));
    ok = ok && series::equal_exact(witt::w_mul(a, witt::w_mul(b, c)),
                                   witt::w_mul(witt::w_mul(a, b), c));
    ok = ok && series::equal_exact(
                   witt::w_mul(a, witt::w_add(b, c)),
                   witt::w_add(witt::w_mul(a, b), witt::w_mul(a, c)));
    ok = ok && series::equal_exact(witt::w_mul(a, one), a);
    ok = ok && series::equal_exact(witt::w_add(a, witt::w_neg(a)),
                                   witt::teichmuller(RatC(Rat(0)), fl.order));
    // The ghost map lands in the componentwise ring.
    series::TaylorSeries ga = witt::ghost(a);
    series::TaylorSeries gb = witt::ghost(b);
    series::TaylorSeries had(series::Kind::rational, fl.order);
    for (int i = 0; i <= fl.order; ++i) had.set(i, ga.rat(i) * gb.rat(i));
    ok = ok && series::equal_exact(witt::ghost(witt::w_add(a, b)),
                                   series::add(ga, gb));
    ok = ok && series::equal_exact(witt::ghost(witt::w_mul(a, b)), had);
    // Frobenius relations; the composite orders drop, equal_exact truncates.
    ok = ok && series::equal_exact(witt::frobenius(witt::frobenius(a, 2), 3),
                                   witt::frobenius(a, 6));
    ok = ok && series::equal_exact(witt::frobenius(witt::verschiebung(a, 3), 3),
                                   series::pow_int(a, 3));
    double res = series::max_abs_diff(
        witt::verschiebung(witt::frobenius(a, 2), 2).to_floating(),
        series::mult_trace(a, 2).to_floating());
    worst_float = std::max(worst_float, res);
    ok = ok && res <= fl.tol;
    if (!ok) ++failures;
  }
  json j{{"suite", "identities"}, {"order", fl.order}, {"trials", trials},
         {"failures", failures}, {"max_float_residual", worst_float}};
  return emit_verdict(fl, std::move(j), failures == 0);
}

int run_witt_artin_hasse(const Flags& fl, const std::vector<int>& primes) {
  require_gens(fl.gens);
  series::TaylorSeries e = witt::artin_hasse_set(fl.gens, fl.order);
  series::TaylorSeries g = witt::ghost(e);
  json coeffs = json::array();
  json ghosts = json::array();
  for (int i = 0; i <= e.order(); ++i) {
    coeffs.push_back(rat_to_string(e.rat(i).re));
    ghosts.push_back(rat_to_string(g.rat(i).re));
  }
  json table = json::object();
  for (int p : primes) {
    if (p < 2) throw input_error("integrality primes must be >= 2");
    table[std::to_string(p)] = witt::p_integral(e, p);
  }
  json j{{"suite", "artin-hasse"}, {"generators", fl.gens}, {"order", fl.order},
         {"coefficients", std::move(coeffs)}, {"ghost", std::move(ghosts)},
         {"integral", std::move(table)}};
  emit(fl, j.dump(2) + "\n");
  return 0;
}

int run_witt_idempotency(const Flags& fl) {
  require_gens(fl.gens);
  if (fl.gens.size() != 1)
    throw input_error("idempotency report takes a single generator");
  series::TaylorSeries e = witt::artin_hasse_base(fl.gens[0], fl.order);
  series::TaylorSeries n = witt::w_neg(e);
  bool base_idem = series::equal_exact(witt::w_mul(e, e), e);
  bool neg_idem = series::equal_exact(witt::w_mul(n, n), n);
  bool square_is_neg = series::equal_exact(witt::w_mul(e, e), n);
  json j{{"suite", "idempotency"}, {"generator", fl.gens[0]},
         {"order", fl.order}, {"base_idempotent", base_idem},
         {"negation_idempotent", neg_idem},
         {"base_square_equals_negation", square_is_neg}};
  return emit_verdict(fl, std::move(j), base_idem || neg_idem);
}

int run_trace_radial(const Flags& fl, const std::string& at, int kmin, int kmax) {
  mass::MassFunction f = io::mass_from_json(read_input(fl));
  Rat angle;
  try {
    angle = Rat(at);
  } catch (const std::exception&) {
    throw input_error("bad angle in turns: " + at);
  }
  double theta = two_pi * static_cast<double>(rat_mod1(angle));
  Cd eta{std::cos(theta), std::sin(theta)};
  mass::RadialReport rep =
      mass::radial_atom(mass::herglotz_evaluator(f), eta, kmin, kmax, fl.tol);
  emit(fl, io::radial_csv(rep, kmin));
  return 0;
}

// Growth evaluator: the oscillatory part of h summed over the monoid. A series
// document is taken as h itself; a mass document contributes h - h(0) so the
// monoid sum converges. Products above the cutoff contribute below tol.
int run_trace_growth(const Flags& fl, int kmin, int kmax, int grid) {
  require_gens(fl.gens);
  if (kmin < 1 || kmax < kmin) throw input_error("need 1 <= kmin <= kmax");
  const std::string text = read_input(fl);
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw input_error("growth input must be a json object");

  std::function<Cd(Cd, double)> base;
  if (doc.contains("kind")) {
    series::TaylorSeries h = io::series_from_json(text).to_floating();
    base = [h](Cd z, double) {
      Cd acc{0.0, 0.0};
      for (int i = h.order(); i >= 0; --i) acc = acc * z + h.flt(i);
      return acc;
    };
  } else {
    mass::MassFunction f = io::mass_from_json(text);
    auto ev = mass::herglotz_evaluator(f);
    base = [ev](Cd z, double tol) { return ev(z, tol) - ev(Cd{0.0, 0.0}, tol); };
  }

  const double rmax = 1.0 - std::pow(2.0, -kmax);
  long long cutoff = static_cast<long long>(std::log(fl.tol / 16.0) / std::log(rmax));
  cutoff = std::max<long long>(cutoff, 64);
  std::vector<long long> members = algebra::enumerate_S(fl.gens, cutoff);
  auto summed = [&base, members](Cd z, double tol) {
    Cd acc{0.0, 0.0};
    double scale = tol / static_cast<double>(members.size());
    for (long long n : members) acc += base(std::pow(z, static_cast<double>(n)), scale);
    return acc;
  };

  entropy::Kappa k = parse_kappa(fl.kappa_spec);
  if (k.family != entropy::Kappa::Family::gamma_family)
    throw input_error("growth profiles use the gamma kappa family");
  std::vector<double> radii;
  for (int kk = kmin; kk <= kmax; ++kk) radii.push_back(1.0 - std::pow(2.0, -kk));
  entropy::GrowthReport rep =
      entropy::growth_class_check(summed, k.param, radii, grid, fl.tol);
  emit(fl, io::growth_csv(rep.rows));
  if (!rep.evaluator_ok) throw input_error("evaluator failed inside the radius grid");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circlekit: transforms, checks, and artifacts for circle measures"};
  app.require_subcommand(1);
  Flags fl;

  CLI::App* fourier = app.add_subcommand("fourier", "Fourier window of a measure as csv");
  add_input_flags(fourier, fl);
  add_out_flag(fourier, fl);
  fourier->add_option("--order", fl.order, "Window halfwidth K");
  fourier->add_option("--tol", fl.tol, "Certified bound per coefficient");

  CLI::App* check = app.add_subcommand("check", "Run a verdict check, exit 1 on failure");
  check->require_subcommand(1);
  int grid = 512;
  CLI::App* inv = check->add_subcommand("invariance", "Window of the pushforward vs the window");
  CLI::App* feq = check->add_subcommand("feq", "Multiplicative functional equation residual");
  CLI::App* masseq = check->add_subcommand("masseq", "Pushforward fixes the mass function");
  for (CLI::App* c : {inv, feq, masseq}) {
    add_input_flags(c, fl);
    add_out_flag(c, fl);
    c->add_option("--gens", fl.gens, "Factors N to check")->delimiter(',');
    c->add_option("--tol", fl.tol, "Residual tolerance");
  }
  inv->add_option("--order", fl.order, "Window halfwidth K");
  feq->add_option("--order", fl.order, "Series order");
  masseq->add_option("--grid", grid, "Evaluation grid size");

  CLI::App* ent = app.add_subcommand("entropy", "Entropy of a finite set or Cantor residual set");
  add_input_flags(ent, fl);
  add_out_flag(ent, fl);
  ent->add_option("--kappa", fl.kappa_spec, "gamma=<g> or power=<alpha>");
  ent->add_option("--tol", fl.tol, "Series tail tolerance");

  CLI::App* witt = app.add_subcommand("witt", "Witt vector suites and reports");
  witt->require_subcommand(1);
  int trials = 25;
  std::vector<int> primes = {2, 3, 5};
  CLI::App* wid = witt->add_subcommand("identities", "Random exact identity suite");
  CLI::App* wah = witt->add_subcommand("artin-hasse", "Coefficient and ghost views plus integrality");
  CLI::App* wip = witt->add_subcommand("idempotency", "Which of the base vector and its negation squares to itself");
  for (CLI::App* c : {wid, wah, wip}) {
    add_out_flag(c, fl);
    c->add_option("--order", fl.order, "Series order");
  }
  wid->add_option("--trials", trials, "Number of random vectors");
  wid->add_option("--seed", fl.seed, "Random seed");
  wid->add_option("--tol", fl.tol, "Float path tolerance");
  wah->add_option("--gens", fl.gens, "Monoid generators")->delimiter(',');
  wah->add_option("--primes", primes, "Primes for the integrality table")->delimiter(',');
  wip->add_option("--gens", fl.gens, "Single base generator")->delimiter(',');

  CLI::App* trace = app.add_subcommand("trace", "Radial traces and growth profiles as csv");
  trace->require_subcommand(1);
  std::string at = "0";
  int kmin = 3, kmax = 16;
  CLI::App* rad = trace->add_subcommand("radial", "Atom weight detector along r = 1 - 2^-k");
  CLI::App* gro = trace->add_subcommand("growth", "Scaled sup Re of the monoid-summed transform");
  for (CLI::App* c : {rad, gro}) {
    add_input_flags(c, fl);
    add_out_flag(c, fl);
    c->add_option("--kmin", kmin, "First radius index");
    c->add_option("--kmax", kmax, "Last radius index");
    c->add_option("--tol", fl.tol, "Evaluator tolerance");
  }
  gro->add_option("--gens", fl.gens, "Monoid generators")->delimiter(',');
  gro->add_option("--kappa", fl.kappa_spec, "gamma=<g> scaling exponent");
  gro->add_option("--grid", grid, "Angular grid size");
  rad->add_option("--at", at, "Boundary angle in turns, as p/q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fourier->parsed()) return run_fourier(fl);
    if (inv->parsed()) return run_check_invariance(fl);
    if (feq->parsed()) return run_check_feq(fl);
    if (masseq->parsed()) return run_check_masseq(fl, grid);
    if (ent->parsed()) return run_entropy(fl);
    if (wid->parsed()) return run_witt_identities(fl, trials);
    if (wah->parsed()) return run_witt_artin_hasse(fl, primes);
    if (wip->parsed()) return run_witt_idempotency(fl);
    if (rad->parsed()) return run_trace_radial(fl, at, kmin, kmax);
    if (gro->parsed()) return run_trace_growth(fl, kmin, kmax, grid);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
