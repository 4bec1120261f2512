#include "chermite/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chermite/errors.hpp"

namespace chermite {

namespace {

std::uint64_t degree_sum(const Exponents &e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// Powers base^0 .. base^max_exp, built by repeated multiplication.
template <class T> T unit_like(const T &) { return T(1); }
SparsePoly unit_like(const SparsePoly &base) {
  return SparsePoly::constant(base.arity(), 1);
}

template <class T> std::vector<T> power_table(const T &base, std::uint32_t max_exp) {
  std::vector<T> pw;
  pw.reserve(max_exp + 1);
  pw.push_back(unit_like(base));
  for (std::uint32_t j = 1; j <= max_exp; ++j)
    pw.push_back(pw.back() * base);
  return pw;
}

} // namespace

bool GradedLex::operator()(const Exponents &a, const Exponents &b) const {
  const auto da = degree_sum(a);
  const auto db = degree_sum(b);
  if (da != db)
    return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void require_finite(const Complex &v, const char *what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalOverflow(std::string("non-finite value in ") + what);
}

SparsePoly SparsePoly::constant(std::size_t arity, const Rational &c) {
  SparsePoly p(arity);
  p.add_term(Exponents(arity, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t arity, std::size_t var) {
  if (var >= arity)
    throw ArityError("variable index " + std::to_string(var) +
                     " out of range for arity " + std::to_string(arity));
  Exponents e(arity, 0);
  e[var] = 1;
  return monomial(arity, std::move(e));
}

SparsePoly SparsePoly::monomial(std::size_t arity, Exponents exps,
                                const Rational &c) {
  if (exps.size() != arity)
    throw ArityError("monomial exponent vector has length " +
                     std::to_string(exps.size()) + ", expected " +
                     std::to_string(arity));
  SparsePoly p(arity);
  p.add_term(exps, c);
  return p;
}

Rational SparsePoly::coeff(const Exponents &exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t SparsePoly::total_degree() const {
  // Graded order: the last term has the largest total degree.
  return terms_.empty() ? 0 : static_cast<std::uint32_t>(degree_sum(terms_.rbegin()->first));
}

std::uint32_t SparsePoly::degree_in(std::size_t var) const {
  if (var >= arity_)
    throw ArityError("variable index out of range");
  std::uint32_t d = 0;
  for (const auto &[e, c] : terms_)
    d = std::max(d, e[var]);
  return d;
}

void SparsePoly::add_term(const Exponents &exps, const Rational &c) {
  if (exps.size() != arity_)
    throw ArityError("term exponent vector has length " +
                     std::to_string(exps.size()) + ", expected " +
                     std::to_string(arity_));
  if (sgn(c) == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0)
      terms_.erase(it);
  }
}

void SparsePoly::check_same_arity(const SparsePoly &other, const char *op) const {
  if (arity_ != other.arity_)
    throw ArityError(std::string(op) + ": arity " + std::to_string(arity_) +
                     " vs " + std::to_string(other.arity_));
}

SparsePoly &SparsePoly::operator+=(const SparsePoly &other) {
  check_same_arity(other, "add");
  for (const auto &[e, c] : other.terms_)
    add_term(e, c);
  return *this;
}

SparsePoly &SparsePoly::operator-=(const SparsePoly &other) {
  check_same_arity(other, "sub");
  for (const auto &[e, c] : other.terms_)
    add_term(e, -c);
  return *this;
}

SparsePoly &SparsePoly::operator*=(const Rational &c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, v] : terms_)
    v *= c;
  return *this;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r = *this;
  for (auto &[e, v] : r.terms_)
    v = -v;
  return r;
}

std::string SparsePoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    const bool unit = mag == 1;
    bool any_var = false;
    for (std::size_t i = 0; i < arity_; ++i)
      any_var = any_var || e[i] != 0;
    if (!unit || !any_var)
      os << mag.get_str();
    bool need_sep = !unit || !any_var;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] == 0)
        continue;
      if (need_sep)
        os << '*';
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1)
        os << '^' << e[i];
      need_sep = true;
    }
  }
  return os.str();
}

SparsePoly poly_mul(const SparsePoly &a, const SparsePoly &b) {
  if (a.arity() != b.arity())
    throw ArityError("mul: arity " + std::to_string(a.arity()) + " vs " +
                     std::to_string(b.arity()));
  SparsePoly r(a.arity());
  Exponents e(a.arity());
  for (const auto &[ea, ca] : a.terms()) {
    for (const auto &[eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly poly_pow(const SparsePoly &p, std::uint32_t e) {
  SparsePoly result = SparsePoly::constant(p.arity(), 1);
  SparsePoly base = p;
  while (e != 0) {
    if (e & 1u)
      result = poly_mul(result, base);
    e >>= 1;
    if (e != 0)
      base = poly_mul(base, base);
  }
  return result;
}

SparsePoly poly_diff(const SparsePoly &p, std::size_t var) {
  if (var >= p.arity())
    throw ArityError("diff: variable " + std::to_string(var) +
                     " out of range for arity " + std::to_string(p.arity()));
  SparsePoly r(p.arity());
  for (const auto &[e, c] : p.terms()) {
    if (e[var] == 0)
      continue;
    Exponents d = e;
    --d[var];
    r.add_term(d, c * e[var]);
  }
  return r;
}

Complex poly_eval(const SparsePoly &p, std::span<const Complex> point) {
  if (point.size() != p.arity())
    throw ArityError("eval: point has " + std::to_string(point.size()) +
                     " components, polynomial arity is " +
                     std::to_string(p.arity()));
  for (const auto &v : point)
    require_finite(v, "poly_eval argument");

  std::vector<std::vector<Complex>> powers;
  powers.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i)
    powers.push_back(power_table(point[i], p.degree_in(i)));

  Complex sum = 0.0;
  for (const auto &[e, c] : p.terms()) {
    Complex term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        term *= powers[i][e[i]];
    sum += term;
  }
  require_finite(sum, "poly_eval");
  return sum;
}

Rational poly_eval_exact(const SparsePoly &p, std::span<const Rational> point) {
  if (point.size() != p.arity())
    throw ArityError("eval: point has " + std::to_string(point.size()) +
                     " components, polynomial arity is " +
                     std::to_string(p.arity()));
  std::vector<std::vector<Rational>> powers;
  powers.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i)
    powers.push_back(power_table(point[i], p.degree_in(i)));

  Rational sum = 0;
  for (const auto &[e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        term *= powers[i][e[i]];
    sum += term;
  }
  return sum;
}

SparsePoly poly_substitute(const SparsePoly &p,
                           std::span<const SparsePoly> images) {
  if (images.size() != p.arity())
    throw ArityError("substitute: " + std::to_string(images.size()) +
                     " images for arity " + std::to_string(p.arity()));
  if (images.empty())
    return SparsePoly::constant(0, p.coeff({}));
  const std::size_t out_arity = images.front().arity();
  for (const auto &img : images)
    if (img.arity() != out_arity)
      throw ArityError("substitute: images have differing arities");

  std::vector<std::vector<SparsePoly>> powers;
  powers.reserve(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i)
    powers.push_back(
        power_table(images[i], p.is_zero() ? 0 : p.degree_in(i)));

  SparsePoly r(out_arity);
  for (const auto &[e, c] : p.terms()) {
    SparsePoly term = SparsePoly::constant(out_arity, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0)
        term = poly_mul(term, powers[i][e[i]]);
    r += term;
  }
  return r;
}

SparsePoly poly_embed(const SparsePoly &p, std::size_t arity,
                      std::size_t offset) {
  if (offset + p.arity() > arity)
    throw ArityError("embed: target arity too small");
  SparsePoly r(arity);
  Exponents e(arity, 0);
  for (const auto &[src, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    std::copy(src.begin(), src.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
    r.add_term(e, c);
  }
  return r;
}

SparsePoly poly_truncate(const SparsePoly &p, std::span<const std::size_t> vars,
                         std::uint32_t max_degree) {
  SparsePoly r(p.arity());
  for (const auto &[e, c] : p.terms()) {
    std::uint64_t d = 0;
    for (auto v : vars) {
      if (v >= p.arity())
        throw ArityError("truncate: variable index out of range");
      d += e[v];
    }
    if (d <= max_degree)
      r.add_term(e, c);
  }
  return r;
}

} // namespace chermite
