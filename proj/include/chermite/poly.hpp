#ifndef CHERMITE_POLY_HPP
#define CHERMITE_POLY_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace chermite {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order: lower total degree first, ties broken so that
/// a larger power of an earlier variable sorts first (x^2 < xy < y^2).
struct GradedLex {
  bool operator()(const Exponents &a, const Exponents &b) const;
};

/// Throws EvalOverflow if either component of `v` is NaN or infinite.
void require_finite(const Complex &v, const char *what);

/// Exact multivariate polynomial with rational coefficients in a fixed number
/// of formal variables. Zero coefficients are never stored, so two
/// polynomials are equal iff their term maps are equal.
class SparsePoly {
public:
  using Terms = std::map<Exponents, Rational, GradedLex>;

  explicit SparsePoly(std::size_t arity = 0) : arity_(arity) {}

  static SparsePoly constant(std::size_t arity, const Rational &c);
  static SparsePoly variable(std::size_t arity, std::size_t var);
  static SparsePoly monomial(std::size_t arity, Exponents exps,
                             const Rational &c = 1);

  std::size_t arity() const { return arity_; }
  const Terms &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of the given monomial; zero if absent.
  Rational coeff(const Exponents &exps) const;

  /// Largest total degree among stored terms; 0 for the zero polynomial.
  std::uint32_t total_degree() const;

  /// Largest power of variable `var` among stored terms.
  std::uint32_t degree_in(std::size_t var) const;

  /// Accumulates c * monomial(exps) into this polynomial.
  void add_term(const Exponents &exps, const Rational &c);

  SparsePoly &operator+=(const SparsePoly &other);
  SparsePoly &operator-=(const SparsePoly &other);
  SparsePoly &operator*=(const Rational &c);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly &b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly &b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational &c) { return a *= c; }
  friend SparsePoly operator*(const Rational &c, SparsePoly a) { return a *= c; }
  SparsePoly operator-() const;

  friend bool operator==(const SparsePoly &a, const SparsePoly &b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  /// Human-readable rendering with variables named by `names` (or x0, x1, ...).
  std::string to_string(std::span<const std::string> names = {}) const;

private:
  void check_same_arity(const SparsePoly &other, const char *op) const;

  std::size_t arity_;
  Terms terms_;
};

SparsePoly poly_mul(const SparsePoly &a, const SparsePoly &b);
inline SparsePoly operator*(const SparsePoly &a, const SparsePoly &b) {
  return poly_mul(a, b);
}

SparsePoly poly_pow(const SparsePoly &p, std::uint32_t e);

/// Formal partial derivative with respect to variable `var`.
SparsePoly poly_diff(const SparsePoly &p, std::size_t var);

/// Numeric value at `point`. Coefficients are converted to double only here.
Complex poly_eval(const SparsePoly &p, std::span<const Complex> point);

/// Exact value at a rational point.
Rational poly_eval_exact(const SparsePoly &p, std::span<const Rational> point);

/// Composition p(images[0], ..., images[arity-1]). All images must share one
/// arity, which becomes the arity of the result.
SparsePoly poly_substitute(const SparsePoly &p,
                           std::span<const SparsePoly> images);

/// Re-homes `p` into a wider variable space: variable i of `p` becomes
/// variable offset + i of the result.
SparsePoly poly_embed(const SparsePoly &p, std::size_t arity,
                      std::size_t offset);

/// Drops every term whose exponents restricted to `vars` have total degree
/// greater than `max_degree`.
SparsePoly poly_truncate(const SparsePoly &p, std::span<const std::size_t> vars,
                         std::uint32_t max_degree);

} // namespace chermite

#endif // CHERMITE_POLY_HPP
