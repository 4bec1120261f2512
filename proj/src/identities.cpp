#include "chermite/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "chermite/errors.hpp"

namespace chermite {

namespace {

Json index_params(std::uint32_t m1, std::uint32_t n1, std::uint32_t m2,
                  std::uint32_t n2) {
  return Json{{"m1", m1}, {"n1", n1}, {"m2", m2}, {"n2", n2}};
}

Json rationals_to_json(std::span<const Rational> v) {
  Json arr = Json::array();
  for (const auto &r : v)
    arr.push_back(format_rational(r));
  return arr;
}

// 1/j! with the reciprocal-gamma convention 1/j! = 0 for negative j.
Rational inv_factorial(std::int64_t j) {
  if (j < 0)
    return 0;
  return Rational(Integer(1), factorial(static_cast<std::uint32_t>(j)));
}

SparsePoly z_power(std::uint32_t j, const Rational &c) {
  return SparsePoly::monomial(3, {0, 0, j}, c);
}

} // namespace

Json VerificationReport::to_json() const {
  return Json{{"identity", identity},
              {"params", params},
              {"status", passed ? "pass" : "fail"},
              {"witness", witness ? *witness : Json(nullptr)}};
}

VerificationReport make_report(std::string identity, Json params,
                               const SparsePoly &diff) {
  VerificationReport r{std::move(identity), std::move(params), diff.is_zero(),
                       std::nullopt};
  if (!r.passed)
    r.witness = poly_to_json(diff);
  return r;
}

// ---------------------------------------------------------------------------

Compositions::Compositions(std::uint32_t total, std::uint32_t parts)
    : total_(total), current_(parts, 0) {
  if (parts == 0)
    throw ArityError("a composition needs at least one part");
  current_[0] = total;
}

bool Compositions::advance() {
  const std::size_t k = current_.size();
  const std::uint32_t last = current_[k - 1];
  current_[k - 1] = 0;
  for (std::size_t i = k - 1; i-- > 0;) {
    if (current_[i] > 0) {
      --current_[i];
      current_[i + 1] = last + 1;
      return true;
    }
  }
  current_[k - 1] = last;
  return false;
}

Integer Compositions::count(std::uint32_t total, std::uint32_t parts) {
  if (parts == 0)
    throw ArityError("a composition needs at least one part");
  return binomial(total + parts - 1, parts - 1);
}

// ---------------------------------------------------------------------------

SparsePoly nielsen_linearization_rhs(std::uint32_t m1, std::uint32_t n1,
                                     std::uint32_t m2, std::uint32_t n2) {
  SparsePoly rhs(3);
  for (std::uint32_t p1 = 0; p1 <= std::min(m1, n2); ++p1) {
    for (std::uint32_t p2 = 0; p2 <= std::min(n1, m2); ++p2) {
      const Rational w = inv_factorial(p1) * inv_factorial(p2) *
                         inv_factorial(m1 - p1) * inv_factorial(m2 - p2) *
                         inv_factorial(n1 - p2) * inv_factorial(n2 - p1);
      rhs += hermite_poly({m1 - p1, n1 - p2}) *
             hermite_poly({m2 - p2, n2 - p1}) * z_power(p1 + p2, w);
    }
  }
  return rhs;
}

VerificationReport verify_nielsen_linearization(std::uint32_t m1, std::uint32_t n1,
                                                std::uint32_t m2, std::uint32_t n2) {
  const Rational scale = inv_factorial(m1) * inv_factorial(m2) *
                         inv_factorial(n1) * inv_factorial(n2);
  const SparsePoly lhs = hermite_poly({m1 + m2, n1 + n2}) * scale;
  return make_report("nielsen-lin", index_params(m1, n1, m2, n2),
                     lhs - nielsen_linearization_rhs(m1, n1, m2, n2));
}

SparsePoly nielsen_product_rhs(std::uint32_t m1, std::uint32_t n1, std::uint32_t m2,
                               std::uint32_t n2, ProductReading reading) {
  if (reading == ProductReading::Auto)
    throw std::invalid_argument("nielsen_product_rhs needs a concrete reading");
  const std::int64_t M1 = m1, N1 = n1, M2 = m2, N2 = n2;
  SparsePoly rhs(3);
  for (std::uint32_t p1 = 0; p1 <= std::min(m1, n2); ++p1) {
    for (std::uint32_t p2 = 0; p2 <= std::min(n1, m2); ++p2) {
      const Rational tail = reading == ProductReading::AsPrinted
                                ? inv_factorial(N1 - p1) * inv_factorial(N2 - p2)
                                : inv_factorial(N1 - p2) * inv_factorial(N2 - p1);
      Rational w = inv_factorial(p1) * inv_factorial(p2) * inv_factorial(M1 - p1) *
                   inv_factorial(M2 - p2) * tail;
      if ((p1 + p2) % 2 == 1)
        w = -w;
      rhs += hermite_poly({m1 + m2 - p1 - p2, n1 + n2 - p1 - p2}) *
             z_power(p1 + p2, w);
    }
  }
  return rhs;
}

VerificationReport verify_nielsen_product(std::uint32_t m1, std::uint32_t n1,
                                          std::uint32_t m2, std::uint32_t n2,
                                          ProductReading reading) {
  const Rational scale = inv_factorial(m1) * inv_factorial(m2) *
                         inv_factorial(n1) * inv_factorial(n2);
  const SparsePoly lhs =
      hermite_poly({m1, n1}) * hermite_poly({m2, n2}) * scale;
  Json params = index_params(m1, n1, m2, n2);

  auto diff_for = [&](ProductReading r) {
    return lhs - nielsen_product_rhs(m1, n1, m2, n2, r);
  };

  if (reading != ProductReading::Auto) {
    params["reading"] =
        reading == ProductReading::AsPrinted ? "as-printed" : "transposed";
    return make_report("nielsen-prod", std::move(params), diff_for(reading));
  }

  const SparsePoly printed = diff_for(ProductReading::AsPrinted);
  params["as_printed"] = printed.is_zero() ? "pass" : "fail";
  if (printed.is_zero()) {
    params["reading"] = "as-printed";
    return make_report("nielsen-prod", std::move(params), printed);
  }
  const SparsePoly transposed = diff_for(ProductReading::Transposed);
  params["reading"] = transposed.is_zero() ? "transposed" : "none";
  return make_report("nielsen-prod", std::move(params), transposed);
}

HermiteCombination nielsen_round_trip(std::uint32_t m1, std::uint32_t n1,
                                      std::uint32_t m2, std::uint32_t n2) {
  HermiteCombination out;
  const Rational outer = Rational(factorial(m1) * factorial(m2) *
                                  factorial(n1) * factorial(n2));
  for (std::uint32_t p1 = 0; p1 <= std::min(m1, n2); ++p1) {
    for (std::uint32_t p2 = 0; p2 <= std::min(n1, m2); ++p2) {
      const std::uint32_t a = m1 - p1, b = n1 - p2, c = m2 - p2, d = n2 - p1;
      const Rational lin = outer * inv_factorial(p1) * inv_factorial(p2) *
                           inv_factorial(a) * inv_factorial(c) *
                           inv_factorial(b) * inv_factorial(d);
      // H_{a,b} H_{c,d} rewritten as a sum of single-index polynomials.
      const Rational prod_scale =
          Rational(factorial(a) * factorial(b) * factorial(c) * factorial(d));
      for (std::uint32_t q1 = 0; q1 <= std::min(a, d); ++q1) {
        for (std::uint32_t q2 = 0; q2 <= std::min(b, c); ++q2) {
          Rational w = prod_scale * inv_factorial(q1) * inv_factorial(q2) *
                       inv_factorial(a - q1) * inv_factorial(c - q2) *
                       inv_factorial(b - q2) * inv_factorial(d - q1);
          if ((q1 + q2) % 2 == 1)
            w = -w;
          const HermiteTerm key{a + c - q1 - q2, b + d - q1 - q2,
                                p1 + p2 + q1 + q2};
          Rational &slot = out[key];
          slot += lin * w;
          if (sgn(slot) == 0)
            out.erase(key);
        }
      }
    }
  }
  return out;
}

SparsePoly materialize(const HermiteCombination &comb) {
  SparsePoly r(3);
  for (const auto &[t, c] : comb)
    r += hermite_poly({t.K, t.L}) * z_power(t.zpow, c);
  return r;
}

VerificationReport verify_nielsen_duality(std::uint32_t m1, std::uint32_t n1,
                                          std::uint32_t m2, std::uint32_t n2) {
  const HermiteCombination comb = nielsen_round_trip(m1, n1, m2, n2);
  const HermiteIndex target{m1 + m2, n1 + n2};
  const bool formal_ok = comb.size() == 1 && comb.begin()->first ==
                                                 HermiteTerm{target.m, target.n, 0} &&
                         comb.begin()->second == 1;
  Json params = index_params(m1, n1, m2, n2);
  params["formal_terms"] = comb.size();
  VerificationReport r = make_report("nielsen-duality", std::move(params),
                                     materialize(comb) - hermite_poly(target));
  if (!formal_ok && r.passed) {
    r.passed = false;
    Json w = Json::array();
    for (const auto &[t, c] : comb)
      w.push_back(Json{{"K", t.K}, {"L", t.L}, {"zpow", t.zpow},
                       {"coeff", format_rational(c)}});
    r.witness = std::move(w);
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Rational multinomial_weight(std::uint32_t M, std::uint32_t N,
                            const std::vector<std::uint32_t> &ms,
                            const std::vector<std::uint32_t> &ns,
                            std::span<const Rational> a,
                            std::span<const Rational> b) {
  Rational w = Rational(factorial(M) * factorial(N));
  for (std::size_t j = 0; j < ms.size(); ++j) {
    w /= Rational(factorial(ms[j]) * factorial(ns[j]));
    for (std::uint32_t e = 0; e < ms[j]; ++e)
      w *= a[j];
    for (std::uint32_t e = 0; e < ns[j]; ++e)
      w *= b[j];
  }
  return w;
}

Rational random_small_rational(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

} // namespace

VerificationReport verify_addition(std::uint32_t M, std::uint32_t N,
                                   std::span<const Rational> a,
                                   std::span<const Rational> b,
                                   std::uint64_t seed, std::uint32_t points) {
  if (a.size() != b.size())
    throw ArityError("addition formula: a has " + std::to_string(a.size()) +
                     " entries, b has " + std::to_string(b.size()));
  if (a.empty())
    throw ArityError("addition formula needs k >= 1");
  const auto k = static_cast<std::uint32_t>(a.size());
  const CompositionSet comps{M, N, k};

  Json params{{"M", M}, {"N", N}, {"k", k}, {"a", rationals_to_json(a)},
              {"b", rationals_to_json(b)}};

  if (k <= kSymbolicAdditionMaxParts) {
    params["method"] = "symbolic";
    const std::size_t arity = 3 * k;
    SparsePoly X(arity), Y(arity), Zs(arity);
    for (std::size_t j = 0; j < k; ++j) {
      X += SparsePoly::variable(arity, 3 * j) * a[j];
      Y += SparsePoly::variable(arity, 3 * j + 1) * b[j];
      Zs += SparsePoly::variable(arity, 3 * j + 2) * (a[j] * b[j]);
    }
    const SparsePoly images[] = {X, Y, Zs};
    const SparsePoly lhs = poly_substitute(hermite_poly({M, N}), images);

    SparsePoly rhs(arity);
    comps.for_each([&](const auto &ms, const auto &ns) {
      const Rational w = multinomial_weight(M, N, ms, ns, a, b);
      if (sgn(w) == 0)
        return;
      SparsePoly term = SparsePoly::constant(arity, w);
      for (std::size_t j = 0; j < k; ++j)
        term = term * poly_embed(hermite_poly({ms[j], ns[j]}), arity, 3 * j);
      rhs += term;
    });
    return make_report("addition", std::move(params), lhs - rhs);
  }

  params["method"] = "pointwise";
  params["seed"] = seed;
  params["points"] = points;
  std::mt19937_64 rng(seed);
  for (std::uint32_t pt = 0; pt < points; ++pt) {
    std::vector<Rational> xs(k), ys(k), zs(k);
    for (std::size_t j = 0; j < k; ++j) {
      xs[j] = random_small_rational(rng);
      ys[j] = random_small_rational(rng);
      zs[j] = random_small_rational(rng);
    }
    Rational X = 0, Y = 0, Zs = 0;
    for (std::size_t j = 0; j < k; ++j) {
      X += a[j] * xs[j];
      Y += b[j] * ys[j];
      Zs += a[j] * b[j] * zs[j];
    }
    const Rational lhs = hermite_eval_exact({M, N}, X, Y, Zs);
    Rational rhs = 0;
    comps.for_each([&](const auto &ms, const auto &ns) {
      Rational term = multinomial_weight(M, N, ms, ns, a, b);
      for (std::size_t j = 0; j < k && sgn(term) != 0; ++j)
        term *= hermite_eval_exact({ms[j], ns[j]}, xs[j], ys[j], zs[j]);
      rhs += term;
    });
    if (lhs != rhs) {
      VerificationReport r{"addition", std::move(params), false, std::nullopt};
      r.witness = Json{{"point", Json{{"x", rationals_to_json(xs)},
                                      {"y", rationals_to_json(ys)},
                                      {"z", rationals_to_json(zs)}}},
                       {"difference", format_rational(lhs - rhs)}};
      return r;
    }
  }
  return VerificationReport{"addition", std::move(params), true, std::nullopt};
}

// ---------------------------------------------------------------------------

VerificationReport verify_fourvar_genfn(std::uint32_t order) {
  // Variables: x y z s1 s2 t1 t2.
  constexpr std::size_t arity = 7;
  constexpr std::size_t st_vars[] = {3, 4, 5, 6};
  auto v = [](std::size_t i) { return SparsePoly::variable(arity, i); };
  const SparsePoly s = v(3) + v(4);
  const SparsePoly t = v(5) + v(6);
  const SparsePoly exponent = s * v(0) + t * v(1) + s * t * v(2);

  // exp(E) to total (s,t)-degree `order`: every power of E has (s,t)-degree
  // at least its exponent, so powers beyond `order` contribute nothing.
  SparsePoly lhs = SparsePoly::constant(arity, 1);
  SparsePoly power = SparsePoly::constant(arity, 1);
  for (std::uint32_t j = 1; j <= order; ++j) {
    power = poly_truncate(power * exponent, st_vars, order) * Rational(1, j);
    lhs += power;
  }

  SparsePoly rhs(arity);
  for (std::uint32_t total = 0; total <= order; ++total) {
    Compositions c(total, 4);
    do {
      const auto &e = c.current();
      const std::uint32_t m1 = e[0], m2 = e[1], n1 = e[2], n2 = e[3];
      const Rational w = Rational(Integer(1), factorial(m1) * factorial(m2) *
                                                  factorial(n1) * factorial(n2));
      rhs += poly_embed(hermite_poly({m1 + m2, n1 + n2}), arity, 0) *
             SparsePoly::monomial(arity, {0, 0, 0, m1, m2, n1, n2}, w);
    } while (c.advance());
  }
  return make_report("fourvar", Json{{"order", order}}, lhs - rhs);
}

VerificationReport verify_pde(HermiteIndex idx) {
  const SparsePoly h = hermite_poly(idx);
  return make_report("pde", Json{{"m", idx.m}, {"n", idx.n}},
                     poly_diff(h, Z) - poly_diff(poly_diff(h, X), Y));
}

VerificationReport verify_operator(HermiteIndex idx) {
  const SparsePoly mono = SparsePoly::monomial(3, {idx.m, idx.n, 0});
  return make_report("operator", Json{{"m", idx.m}, {"n", idx.n}},
                     heat_operator_apply_formal(mono) - hermite_poly(idx));
}

VerificationReport verify_inversion(HermiteIndex idx) {
  const SparsePoly mono = SparsePoly::monomial(3, {idx.m, idx.n, 0});
  return make_report("inversion", Json{{"m", idx.m}, {"n", idx.n}},
                     expand_inversion(monomial_in_hermite(idx.m, idx.n)) - mono);
}

VerificationReport verify_scaling(HermiteIndex idx, std::uint64_t seed,
                                  std::uint32_t points, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(-3.141592653589793, 3.141592653589793);

  double worst = 0.0;
  Json worst_point;
  for (std::uint32_t i = 0; i < points; ++i) {
    const Complex x{coord(rng), coord(rng)};
    const Complex y{coord(rng), coord(rng)};
    const Complex z = std::polar(radius(rng), angle(rng));
    const Complex direct = hermite_eval(idx, x, y, z);
    const Complex scaled = scaling_map(idx, x, y, z);
    const double err = std::abs(scaled - direct) / std::max(1.0, std::abs(direct));
    if (err > worst || worst_point.is_null()) {
      worst = std::max(worst, err);
      worst_point = Json{{"x", complex_to_json(x)}, {"y", complex_to_json(y)},
                         {"z", complex_to_json(z)}, {"direct", complex_to_json(direct)},
                         {"scaled", complex_to_json(scaled)}};
    }
  }
  VerificationReport r{"scaling",
                       Json{{"m", idx.m}, {"n", idx.n}, {"seed", seed},
                            {"points", points}, {"max_rel_error", worst}},
                       worst <= tol, std::nullopt};
  if (!r.passed)
    r.witness = worst_point;
  return r;
}

} // namespace chermite
