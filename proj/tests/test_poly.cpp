#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "chermite/errors.hpp"
#include "chermite/poly.hpp"
#include "chermite/poly_json.hpp"
#include "oracles.hpp"

using namespace chermite;
enum : std::size_t { X = 0, Y = 1, Z = 2 };

namespace {

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

SparsePoly var(std::size_t i, std::size_t arity = 3) {
  return SparsePoly::variable(arity, i);
}

// Dense brute-force product for arity <= 3, exponents < 16.
SparsePoly convolve(const SparsePoly &a, const SparsePoly &b) {
  std::map<std::array<std::uint32_t, 3>, Rational> acc;
  for (const auto &[ea, ca] : a.terms())
    for (const auto &[eb, cb] : b.terms()) {
      std::array<std::uint32_t, 3> e{};
      for (std::size_t i = 0; i < a.arity(); ++i)
        e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  SparsePoly r(a.arity());
  for (const auto &[e, c] : acc)
    r.add_term(Exponents(e.begin(), e.begin() + static_cast<long>(a.arity())), c);
  return r;
}

} // namespace

TEST_CASE("construction and term bookkeeping") {
  SparsePoly p(2);
  CHECK(p.is_zero());
  CHECK(p.total_degree() == 0);
  p.add_term({1, 0}, Rational(3, 2));
  p.add_term({1, 0}, Rational(-3, 2));
  CHECK(p.is_zero());
  CHECK_THROWS_AS(p.add_term({1}, 1), ArityError);
  CHECK_THROWS_AS(SparsePoly::variable(2, 2), ArityError);
  CHECK_THROWS_AS(SparsePoly::monomial(2, {1, 2, 3}), ArityError);

  const auto q = SparsePoly::monomial(3, {2, 1, 0}, 5) + SparsePoly::constant(3, -1);
  CHECK(q.total_degree() == 3);
  CHECK(q.degree_in(X) == 2);
  CHECK(q.coeff({2, 1, 0}) == 5);
  CHECK(q.coeff({0, 0, 1}) == 0);
}

TEST_CASE("graded order puts x^2 before xy before y^2") {
  SparsePoly p(2);
  p.add_term({0, 2}, 1);
  p.add_term({1, 1}, 1);
  p.add_term({2, 0}, 1);
  p.add_term({0, 0}, 1);
  std::vector<Exponents> order;
  for (const auto &[e, c] : p.terms())
    order.push_back(e);
  CHECK(order == std::vector<Exponents>{{0, 0}, {2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("multiplication examples") {
  const auto x = var(X, 2), y = var(Y, 2);
  CHECK(poly_mul(x + y, x - y) == poly_mul(x, x) - poly_mul(y, y));

  const auto p = SparsePoly::monomial(3, {1, 1, 0}) + var(Z);
  CHECK(poly_mul(p, SparsePoly::constant(3, 1)) == p);
  const auto sq = poly_mul(p, p);
  CHECK(sq == convolve(p, p));
  CHECK(sq.coeff({2, 2, 0}) == 1);
  CHECK(sq.coeff({1, 1, 1}) == 2);
  CHECK(sq.coeff({0, 0, 2}) == 1);
  CHECK(sq.size() == 3);
  CHECK_THROWS_AS(poly_mul(x, var(X)), ArityError);
  CHECK_THROWS_AS(x + var(X), ArityError);
}

TEST_CASE("differentiation examples") {
  const auto p = SparsePoly::monomial(3, {2, 1, 0});
  CHECK(poly_diff(p, X) == SparsePoly::monomial(3, {1, 1, 0}, 2));
  CHECK(poly_diff(SparsePoly::constant(3, 7), Z).is_zero());
  const auto h22 = SparsePoly::monomial(3, {2, 2, 0}) +
                   SparsePoly::monomial(3, {1, 1, 1}, 4) +
                   SparsePoly::monomial(3, {0, 0, 2}, 2);
  CHECK(poly_diff(poly_diff(h22, X), Y) ==
        SparsePoly::monomial(3, {1, 1, 0}, 4) + SparsePoly::monomial(3, {0, 0, 1}, 4));
  CHECK_THROWS_AS(poly_diff(p, 3), ArityError);
}

TEST_CASE("evaluation examples") {
  const auto p = SparsePoly::monomial(3, {1, 1, 0}) + var(Z);
  const Complex ones[] = {1.0, 1.0, 1.0};
  CHECK(poly_eval(p, ones) == Complex(2.0));
  const auto h22 = SparsePoly::monomial(3, {2, 2, 0}) +
                   SparsePoly::monomial(3, {1, 1, 1}, 4) +
                   SparsePoly::monomial(3, {0, 0, 2}, 2);
  CHECK(poly_eval(h22, ones) == Complex(7.0));
  const Complex zeros[] = {0.0, 0.0, 0.0};
  CHECK(poly_eval(h22 + SparsePoly::constant(3, Rational(-5, 3)), zeros).real() ==
        doctest::Approx(-5.0 / 3.0));
  const Rational half[] = {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  CHECK(poly_eval_exact(h22, half) == Rational(1, 16) + Rational(1, 2) + Rational(1, 2));

  const Complex two[] = {1.0, 1.0};
  CHECK_THROWS_AS(poly_eval(p, two), ArityError);
  const Complex big[] = {1e200, 1e200, 0.0};
  CHECK_THROWS_AS(poly_eval(h22, big), EvalOverflow);
  const Complex nan[] = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
  CHECK_THROWS_AS(poly_eval(p, nan), EvalOverflow);
}

TEST_CASE("substitution, embedding, truncation, power") {
  const auto x = var(X, 2), y = var(Y, 2);
  const auto p = poly_mul(x, y) + SparsePoly::constant(2, 3);
  // x -> a + b, y -> a - b in arity 2
  const SparsePoly images[] = {x + y, x - y};
  CHECK(poly_substitute(p, images) ==
        poly_mul(x, x) - poly_mul(y, y) + SparsePoly::constant(2, 3));
  // images into a larger arity: the unit must carry the output arity
  const SparsePoly lifted[] = {var(Z), var(X)};
  CHECK(poly_substitute(p, lifted) ==
        SparsePoly::monomial(3, {1, 0, 1}) + SparsePoly::constant(3, 3));

  const auto e = poly_embed(x, 4, 2);
  CHECK(e == SparsePoly::variable(4, 2));
  CHECK_THROWS_AS(poly_embed(x, 2, 1), ArityError);

  const auto q = poly_pow(x + y, 4);
  CHECK(q.coeff({2, 2}) == 6);
  const std::size_t both[] = {0, 1};
  CHECK(poly_truncate(q + x, both, 1) == x);
  CHECK(poly_pow(x, 0) == SparsePoly::constant(2, 1));
}

TEST_CASE("to_string") {
  const auto p = SparsePoly::monomial(3, {2, 2, 0}) +
                 SparsePoly::monomial(3, {1, 1, 1}, 4) -
                 SparsePoly::constant(3, Rational(1, 2));
  const std::string names[] = {"x", "y", "z"};
  CHECK(p.to_string(names) == "-1/2 + 4*x*y*z + x^2*y^2");
  CHECK(SparsePoly(2).to_string() == "0");
}

TEST_CASE("json: rationals, complex values, polynomials") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  Rational r(6, -4);
  r.canonicalize();
  CHECK(format_rational(r) == "-3/2");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);

  CHECK(parse_complex("2-3i") == Complex(2, -3));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1e-1+2.5i") == Complex(0.1, 2.5));
  CHECK(parse_complex("4i") == Complex(0, 4));
  CHECK_THROWS_AS(parse_complex("abc"), ParseError);
  CHECK_THROWS_AS(parse_complex("1+2"), ParseError);
  CHECK(complex_from_json(Json::parse(R"({"re":1,"im":-2})")) == Complex(1, -2));
  CHECK(complex_from_json(Json(0.5)) == Complex(0.5));
  CHECK(complex_to_json(Complex(7, 0)).dump() == R"({"re":7,"im":0})");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_poly(rng, 3, 4, 6);
    CHECK(poly_from_json(poly_to_json(p), 3) == p);
  }
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"exps":[1,2],"coeff":"1"}])"), 3),
                  ArityError);
}

TEST_CASE("property: ring axioms on random polynomials") {
  std::mt19937_64 rng(0x5eed);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = oracle::random_poly(rng, 3, 3, 5);
    const auto b = oracle::random_poly(rng, 3, 3, 5);
    const auto c = oracle::random_poly(rng, 3, 3, 4);
    CHECK(a + b == b + a);
    CHECK(poly_mul(a, b) == poly_mul(b, a));
    CHECK(poly_mul(a, b) == convolve(a, b));
    CHECK(poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c)));
    CHECK(poly_mul(a, b + c) == poly_mul(a, b) + poly_mul(a, c));
    CHECK((a - a).is_zero());
    CHECK(a + SparsePoly(3) == a);
    // product rule
    CHECK(poly_diff(poly_mul(a, b), X) ==
          poly_mul(poly_diff(a, X), b) + poly_mul(a, poly_diff(b, X)));
  }
}

TEST_CASE("property: mixed partials commute") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = oracle::random_poly(rng, 3, 5, 8);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(poly_diff(poly_diff(p, i), j) == poly_diff(poly_diff(p, j), i));
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  // Relative error is measured against sum |c| |pt|^e, the natural scale of
  // floating evaluation; plain |value| is meaningless under cancellation.
  auto magnitude = [](const SparsePoly &p, std::span<const Complex> pt) {
    double s = 0.0;
    for (const auto &[e, c] : p.terms()) {
      double t = std::abs(c.get_d());
      for (std::size_t i = 0; i < e.size(); ++i)
        t *= std::pow(std::abs(pt[i]), e[i]);
      s += t;
    }
    return s;
  };
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-1000, 1000);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = oracle::random_poly(rng, 3, 4, 6);
    auto b = oracle::random_poly(rng, 3, 4, 6);
    a *= q(coeff(rng), 9);
    b *= q(coeff(rng), 9);
    const double r = trial < 30 ? 1.5 : 10.0 / std::sqrt(2.0);
    const Complex pt[] = {oracle::random_complex(rng, r), oracle::random_complex(rng, r),
                          oracle::random_complex(rng, r)};
    const Complex lhs = poly_eval(poly_mul(a, b), pt);
    const Complex rhs = poly_eval(a, pt) * poly_eval(b, pt);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * magnitude(a, pt) * magnitude(b, pt));

    const Rational qpt[] = {q(trial % 5 - 2, 3), q(1, 1 + trial % 4), q(-(trial % 3), 2)};
    CHECK(poly_eval_exact(poly_mul(a, b), qpt) ==
          poly_eval_exact(a, qpt) * poly_eval_exact(b, qpt));
  }
}
