#include "chermite/poly_json.hpp"

#include <charconv>
#include <cstdint>
#include <cmath>
#include <limits>

#include "chermite/errors.hpp"

namespace chermite {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty())
    return false;
  for (char c : s)
    if (c < '0' || c > '9')
      return false;
  return true;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("malformed complex literal '" + std::string(whole) + "'");
  return v;
}

} // namespace

std::string format_rational(const Rational &r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view("1")
                                                    : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  Integer d(std::string(den), 10);
  if (d == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Complex parse_complex(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  if (s.empty())
    throw ParseError("empty complex literal");

  if (s.back() != 'i' && s.back() != 'j')
    return {parse_real(s, text), 0.0};

  s.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  auto im_part = split == std::string_view::npos ? s : s.substr(split);

  double im = 0.0;
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else
    im = parse_real(im_part, text);
  const double re = re_part.empty() ? 0.0 : parse_real(re_part, text);
  return {re, im};
}

Complex complex_from_json(const Json &j) {
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_string())
    return parse_complex(j.get<std::string>());
  if (j.is_object()) {
    auto component = [&](const char *key) {
      if (!j.contains(key))
        return 0.0;
      const auto &v = j.at(key);
      if (!v.is_number())
        throw ParseError(std::string("complex component '") + key +
                         "' is not a number");
      return v.get<double>();
    };
    if (!j.contains("re") && !j.contains("im"))
      throw ParseError("complex object needs \"re\" and/or \"im\"");
    Complex v{component("re"), component("im")};
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ParseError("non-finite complex value");
    return v;
  }
  throw ParseError("expected a complex value, got " + j.dump());
}

Json number_to_json(double v) {
  // Integral values print without a trailing ".0".
  if (std::isfinite(v) && std::abs(v) < 9007199254740992.0 && v == std::trunc(v))
    return static_cast<std::int64_t>(v);
  return v;
}

Json complex_to_json(const Complex &v) {
  return Json{{"re", number_to_json(v.real())}, {"im", number_to_json(v.imag())}};
}

Json poly_to_json(const SparsePoly &p) {
  Json arr = Json::array();
  for (const auto &[e, c] : p.terms())
    arr.push_back(Json{{"exps", e}, {"coeff", format_rational(c)}});
  return arr;
}

SparsePoly poly_from_json(const Json &j, std::size_t arity) {
  if (!j.is_array())
    throw ParseError("polynomial JSON must be an array");
  SparsePoly p(arity);
  for (const auto &t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coeff") ||
        !t.at("exps").is_array() || !t.at("coeff").is_string())
      throw ParseError("polynomial term must be {\"exps\":[...],\"coeff\":\"p/q\"}");
    Exponents e;
    for (const auto &x : t.at("exps")) {
      if (!x.is_number_unsigned())
        throw ParseError("exponents must be non-negative integers");
      e.push_back(x.get<std::uint32_t>());
    }
    if (e.size() != arity)
      throw ArityError("term has " + std::to_string(e.size()) +
                       " exponents, expected " + std::to_string(arity));
    p.add_term(e, parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

} // namespace chermite
