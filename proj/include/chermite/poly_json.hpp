#ifndef CHERMITE_POLY_JSON_HPP
#define CHERMITE_POLY_JSON_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"

#include "chermite/poly.hpp"

namespace chermite {

using Json = nlohmann::ordered_json;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational &r);

/// Accepts "p", "-p", "p/q". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with ordinary float syntax.
Complex parse_complex(std::string_view text);

/// Accepts a JSON number, an "a+bi" string, or {"re":..,"im":..}.
Complex complex_from_json(const Json &j);
Json complex_to_json(const Complex &v);

/// Integral doubles become JSON integers, everything else stays a double.
Json number_to_json(double v);

/// [{"exps":[...],"coeff":"p/q"}, ...] in graded-lex order.
Json poly_to_json(const SparsePoly &p);

/// Inverse of poly_to_json. `arity` is required so that the zero polynomial
/// (an empty array) keeps its variable count.
SparsePoly poly_from_json(const Json &j, std::size_t arity);

} // namespace chermite

#endif // CHERMITE_POLY_JSON_HPP
