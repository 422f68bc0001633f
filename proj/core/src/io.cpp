#include "circlekit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <variant>

#include <json.hpp>

#include "circlekit/util.hpp"

namespace ck::io {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw input_error("bad rational literal: " + s);
  }
}

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_field(const json& j) {
  if (!j.is_string()) throw input_error("rational fields must be p/q strings");
  return parse_rat(j.get<std::string>());
}

json cd_json(Cd v) { return json::array({v.real(), v.imag()}); }

Cd cd_field(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw input_error("complex fields must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json parse_doc(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed json document");
  return j;
}

json measure_node(const measures::MPtr& mu) {
  if (!mu) throw input_error("null measure node");
  json j;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, measures::Haar>) {
          j["type"] = "haar";
          j["mass"] = rat_json(node.mass);
        } else if constexpr (std::is_same_v<T, measures::AtomNode>) {
          j["type"] = "atom";
          j["angle"] = rat_json(node.angle);
          j["weight"] = rat_json(node.weight);
        } else if constexpr (std::is_same_v<T, measures::DensityNode>) {
          j["type"] = "density";
          json w = json::array();
          for (Cd c : node.window) w.push_back(cd_json(c));
          j["window"] = std::move(w);
        } else if constexpr (std::is_same_v<T, measures::DigitBernoulliNode>) {
          j["type"] = "digit";
          j["base"] = node.base;
          json w = json::array();
          for (const Rat& r : node.weights) w.push_back(rat_json(r));
          j["weights"] = std::move(w);
        } else if constexpr (std::is_same_v<T, measures::RotateNode>) {
          j["type"] = "rotate";
          j["angle"] = rat_json(node.angle);
          j["inner"] = measure_node(node.inner);
        } else if constexpr (std::is_same_v<T, measures::PushNode>) {
          j["type"] = "push";
          j["factor"] = node.factor;
          j["inner"] = measure_node(node.inner);
        } else if constexpr (std::is_same_v<T, measures::PullNode>) {
          j["type"] = "pull";
          j["factor"] = node.factor;
          j["inner"] = measure_node(node.inner);
        } else {
          j["type"] = "lincomb";
          json terms = json::array();
          for (const auto& [c, m] : node.terms)
            terms.push_back(json{{"coeff", rat_json(c)}, {"inner", measure_node(m)}});
          j["terms"] = std::move(terms);
        }
      },
      mu->node);
  return j;
}

measures::MPtr measure_parse(const json& j, int depth) {
  if (depth > 64) throw input_error("measure tree too deep");
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw input_error("measure nodes need a type tag");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "haar") return measures::haar(rat_field(j.at("mass")));
    if (type == "atom")
      return measures::atom(rat_field(j.at("angle")), rat_field(j.at("weight")));
    if (type == "density") {
      std::vector<Cd> window;
      for (const auto& e : j.at("window")) window.push_back(cd_field(e));
      return measures::density(std::move(window));
    }
    if (type == "digit") {
      std::vector<Rat> weights;
      for (const auto& e : j.at("weights")) weights.push_back(rat_field(e));
      return measures::digit_bernoulli(j.at("base").get<int>(), std::move(weights));
    }
    if (type == "rotate")
      return measures::rotate(rat_field(j.at("angle")),
                              measure_parse(j.at("inner"), depth + 1));
    if (type == "push")
      return measures::push(j.at("factor").get<int>(),
                            measure_parse(j.at("inner"), depth + 1));
    if (type == "pull")
      return measures::pull(j.at("factor").get<int>(),
                            measure_parse(j.at("inner"), depth + 1));
    if (type == "lincomb") {
      std::vector<std::pair<Rat, measures::MPtr>> terms;
      for (const auto& e : j.at("terms"))
        terms.emplace_back(rat_field(e.at("coeff")),
                           measure_parse(e.at("inner"), depth + 1));
      return measures::lincomb(std::move(terms));
    }
  } catch (const json::exception&) {
    throw input_error("malformed measure node of type " + type);
  }
  throw input_error("unknown measure node type: " + type);
}

}  // namespace

std::string series_to_json(const series::TaylorSeries& s) {
  json j;
  j["order"] = s.order();
  json coeffs = json::array();
  if (s.kind() == series::Kind::rational) {
    j["kind"] = "rational";
    for (int i = 0; i <= s.order(); ++i) {
      const RatC& c = s.rat(i);
      coeffs.push_back(json::array({rat_to_string(c.re), rat_to_string(c.im)}));
    }
  } else {
    j["kind"] = "floating";
    for (int i = 0; i <= s.order(); ++i) coeffs.push_back(cd_json(s.flt(i)));
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

series::TaylorSeries series_from_json(const std::string& text) {
  json j = parse_doc(text);
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int order = j.at("order").get<int>();
    const json& coeffs = j.at("coeffs");
    if (order < 0 || !coeffs.is_array() ||
        coeffs.size() != static_cast<size_t>(order) + 1)
      throw input_error("series coefficient count must be order + 1");
    if (kind == "rational") {
      series::TaylorSeries s(series::Kind::rational, order);
      for (int i = 0; i <= order; ++i) {
        const json& e = coeffs[static_cast<size_t>(i)];
        if (!e.is_array() || e.size() != 2)
          throw input_error("rational coefficients are [re, im] string pairs");
        s.set(i, RatC(rat_field(e[0]), rat_field(e[1])));
      }
      return s;
    }
    if (kind == "floating") {
      series::TaylorSeries s(series::Kind::floating, order);
      for (int i = 0; i <= order; ++i)
        s.set(i, cd_field(coeffs[static_cast<size_t>(i)]));
      return s;
    }
    throw input_error("series kind must be rational or floating");
  } catch (const json::exception&) {
    throw input_error("malformed series document");
  }
}

std::string measure_to_json(const measures::MPtr& mu) {
  return measure_node(mu).dump();
}

measures::MPtr measure_from_json(const std::string& text) {
  return measure_parse(parse_doc(text), 0);
}

std::string mass_to_json(const mass::MassFunction& f) {
  mass::SmoothDesc d = f.smooth ? f.smooth->describe() : mass::SmoothDesc{"zero"};
  if (d.kind.empty())
    throw input_error("smooth part has no named serialized form");
  json j;
  j["total_mass"] = f.total_mass;
  json jumps = json::array();
  for (const auto& [t, w] : f.jumps)
    jumps.push_back(json::array({rat_to_string(t), w}));
  j["jumps"] = std::move(jumps);
  json sm;
  sm["type"] = d.kind;
  if (d.kind == "lacunary") {
    sm["base"] = d.base;
    sm["amplitude"] = d.amplitude;
  } else if (d.kind == "trig") {
    json w = json::array();
    for (Cd c : d.window) w.push_back(cd_json(c));
    sm["window"] = std::move(w);
  }
  j["smooth"] = std::move(sm);
  return j.dump();
}

mass::MassFunction mass_from_json(const std::string& text) {
  json j = parse_doc(text);
  try {
    mass::MassFunction f;
    f.total_mass = j.at("total_mass").get<double>();
    for (const auto& e : j.at("jumps")) {
      if (!e.is_array() || e.size() != 2 || !e[1].is_number())
        throw input_error("jumps are [angle, weight] pairs");
      f.jumps.emplace_back(rat_mod1(rat_field(e[0])), e[1].get<double>());
    }
    std::sort(f.jumps.begin(), f.jumps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Rat, double>> merged;
    for (const auto& [t, w] : f.jumps) {
      if (!merged.empty() && merged.back().first == t) merged.back().second += w;
      else merged.emplace_back(t, w);
    }
    std::erase_if(merged, [](const auto& p) { return p.second == 0.0; });
    f.jumps = std::move(merged);
    const json& sm = j.at("smooth");
    const std::string type = sm.at("type").get<std::string>();
    if (type == "zero") {
      f.smooth = mass::smooth_zero();
    } else if (type == "lacunary") {
      f.smooth = mass::smooth_lacunary(sm.at("base").get<int>(),
                                       sm.at("amplitude").get<double>());
    } else if (type == "trig") {
      std::vector<Cd> window;
      for (const auto& e : sm.at("window")) window.push_back(cd_field(e));
      f.smooth = mass::smooth_trig(std::move(window));
    } else {
      throw input_error("unknown smooth part type: " + type);
    }
    return f;
  } catch (const json::exception&) {
    throw input_error("malformed mass document");
  }
}

std::string algebra_to_json(const algebra::AlgebraElem& a) {
  json terms = json::array();
  for (const auto& [m, c] : a.terms)
    terms.push_back(json{{"coeff", rat_to_string(c)},
                         {"rotation", rat_to_string(m.rotation)},
                         {"power", m.power}});
  json j;
  j["terms"] = std::move(terms);
  return j.dump();
}

algebra::AlgebraElem algebra_from_json(const std::string& text) {
  json j = parse_doc(text);
  try {
    algebra::AlgebraElem out;
    for (const auto& e : j.at("terms")) {
      Rat coeff = rat_field(e.at("coeff"));
      algebra::MonoidElem m{rat_field(e.at("rotation")),
                            e.at("power").get<long long>()};
      algebra::AlgebraElem term = algebra::from_monoid(m, coeff);
      out = algebra::add(out, term);
    }
    return out;
  } catch (const json::exception&) {
    throw input_error("malformed algebra document");
  }
}

std::string fourier_csv(const measures::FourierWindow& w) {
  std::string out = "nu,re,im,errbound\r\n";
  for (long long nu = -w.halfwidth; nu <= w.halfwidth; ++nu) {
    Cd c = w.at(nu);
    out += std::to_string(nu) + "," + fmt_double(c.real()) + "," +
           fmt_double(c.imag()) + "," + fmt_double(w.err_at(nu)) + "\r\n";
  }
  return out;
}

std::string variation_csv(const std::vector<entropy::VariationRow>& rows) {
  std::string out = "level,raw_sum,kappa_sum,ratio\r\n";
  for (const auto& r : rows)
    out += std::to_string(r.level) + "," + fmt_double(r.raw_sum) + "," +
           fmt_double(r.kappa_sum) + "," + fmt_double(r.ratio) + "\r\n";
  return out;
}

std::string growth_csv(const std::vector<entropy::GrowthRow>& rows) {
  std::string out = "r,sup_re,ratio\r\n";
  for (const auto& r : rows)
    out += fmt_double(r.r) + "," + fmt_double(r.sup_re) + "," +
           fmt_double(r.ratio) + "\r\n";
  return out;
}

std::string radial_csv(const mass::RadialReport& rep, int kmin) {
  std::string out = "k,r,scaled_re\r\n";
  for (size_t i = 0; i < rep.values.size(); ++i) {
    int k = kmin + static_cast<int>(i);
    double r = 1.0 - std::pow(2.0, -k);
    out += std::to_string(k) + "," + fmt_double(r) + "," +
           fmt_double(rep.values[i]) + "\r\n";
  }
  return out;
}

}  // namespace ck::io
