#pragma once

#include <string>
#include <vector>

#include "circlekit/algebra.hpp"
#include "circlekit/entropy.hpp"
#include "circlekit/mass.hpp"
#include "circlekit/measures.hpp"
#include "circlekit/series.hpp"

namespace ck::io {

// JSON round-trips. Rational numbers travel as "p/q" strings, complex values
// as [re, im] pairs. Parsers throw input_error on malformed documents, and
// every from_json(to_json(x)) restores x exactly.

std::string series_to_json(const series::TaylorSeries& s);
series::TaylorSeries series_from_json(const std::string& text);

std::string measure_to_json(const measures::MPtr& mu);
measures::MPtr measure_from_json(const std::string& text);

// The smooth part must be a named generator (zero, trig window, lacunary);
// transformed or combined smooth parts have no serialized form and throw.
std::string mass_to_json(const mass::MassFunction& f);
mass::MassFunction mass_from_json(const std::string& text);

std::string algebra_to_json(const algebra::AlgebraElem& a);
algebra::AlgebraElem algebra_from_json(const std::string& text);

// CSV tables, RFC 4180: CRLF line ends, one header row, no trailing newline
// variations. Doubles print in shortest round-trip form.

std::string fourier_csv(const measures::FourierWindow& w);
std::string variation_csv(const std::vector<entropy::VariationRow>& rows);
std::string growth_csv(const std::vector<entropy::GrowthRow>& rows);
// Rows k = kmin, kmin+1, ... along radii r = 1 - 2^-k.
std::string radial_csv(const mass::RadialReport& rep, int kmin);

}  // namespace ck::io
