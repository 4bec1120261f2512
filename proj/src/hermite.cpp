#include "chermite/hermite.hpp"

#include <cmath>
#include <mutex>

#include "chermite/errors.hpp"

namespace chermite {

Integer factorial(std::uint32_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n)
    return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

SparsePoly hermite_poly(HermiteIndex idx) {
  const auto [m, n] = idx;
  SparsePoly p(3);
  // k! C(m,k) C(n,k), updated by the ratio (m-k)(n-k)/(k+1).
  Integer c = 1;
  for (std::uint32_t k = 0; k <= idx.min(); ++k) {
    p.add_term({m - k, n - k, k}, Rational(c));
    if (k < idx.min())
      c = c * (m - k) * (n - k) / (k + 1);
  }
  return p;
}

Complex hermite_eval(HermiteIndex idx, Complex x, Complex y, Complex z) {
  require_finite(x, "hermite_eval x");
  require_finite(y, "hermite_eval y");
  require_finite(z, "hermite_eval z");
  const auto [m, n] = idx;
  const auto kmax = idx.min();

  std::vector<Complex> xp(m + 1), yp(n + 1);
  xp[0] = yp[0] = 1.0;
  for (std::uint32_t j = 1; j <= m; ++j)
    xp[j] = xp[j - 1] * x;
  for (std::uint32_t j = 1; j <= n; ++j)
    yp[j] = yp[j - 1] * y;

  Complex sum = 0.0;
  Complex zk = 1.0;
  double c = 1.0;
  for (std::uint32_t k = 0; k <= kmax; ++k) {
    sum += c * xp[m - k] * yp[n - k] * zk;
    zk *= z;
    c *= static_cast<double>(m - k) * static_cast<double>(n - k) /
         static_cast<double>(k + 1);
  }
  require_finite(sum, "hermite_eval");
  return sum;
}

namespace {

Rational rational_pow(const Rational &base, std::uint32_t e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

} // namespace

Rational hermite_eval_exact(HermiteIndex idx, const Rational &x,
                            const Rational &y, const Rational &z) {
  const auto [m, n] = idx;
  Rational sum = 0;
  Integer c = 1;
  for (std::uint32_t k = 0; k <= idx.min(); ++k) {
    sum += Rational(c) * rational_pow(x, m - k) * rational_pow(y, n - k) *
           rational_pow(z, k);
    if (k < idx.min())
      c = c * (m - k) * (n - k) / (k + 1);
  }
  return sum;
}

SparsePoly classical_hermite_poly(std::uint32_t n) {
  SparsePoly p(1);
  for (std::uint32_t k = 0; 2 * k <= n; ++k) {
    Integer c = factorial(n) / (factorial(k) * factorial(n - 2 * k));
    c <<= (n - 2 * k);
    if (k % 2 == 1)
      c = -c;
    p.add_term({n - 2 * k}, Rational(c));
  }
  return p;
}

Complex classical_hermite_eval(std::uint32_t n, Complex u) {
  require_finite(u, "classical_hermite_eval u");
  const SparsePoly p = classical_hermite_poly(n);
  const Complex point[] = {u};
  return poly_eval(p, point);
}

namespace {

SparsePoly promote_to_xyz(const SparsePoly &p) {
  if (p.arity() == 3)
    return p;
  if (p.arity() == 2)
    return poly_embed(p, 3, 0);
  throw ArityError("heat operator expects a polynomial in (x, y) or (x, y, z)");
}

SparsePoly mixed_xy_derivative(const SparsePoly &p) {
  return poly_diff(poly_diff(p, X), Y);
}

} // namespace

SparsePoly heat_operator_apply(const SparsePoly &p, const Rational &zc) {
  SparsePoly cur = promote_to_xyz(p);
  SparsePoly result(3);
  Rational weight = 1; // zc^k / k!
  for (std::uint32_t k = 0; !cur.is_zero(); ++k) {
    result += cur * weight;
    cur = mixed_xy_derivative(cur);
    weight = weight * zc / (k + 1);
  }
  return result;
}

SparsePoly heat_operator_apply_formal(const SparsePoly &p, const Rational &scale) {
  SparsePoly cur = promote_to_xyz(p);
  SparsePoly result(3);
  Rational weight = 1;
  for (std::uint32_t k = 0; !cur.is_zero(); ++k) {
    result += poly_mul(cur, SparsePoly::monomial(3, {0, 0, k}, weight));
    cur = mixed_xy_derivative(cur);
    weight = weight * scale / (k + 1);
  }
  return result;
}

std::vector<InversionTerm> monomial_in_hermite(std::uint32_t m, std::uint32_t n) {
  std::vector<InversionTerm> out;
  const std::uint32_t kmax = m < n ? m : n;
  Integer c = 1;
  for (std::uint32_t k = 0; k <= kmax; ++k) {
    Rational w = c;
    if (k % 2 == 1)
      w = -w;
    out.push_back({SparsePoly::monomial(3, {0, 0, k}, w), {m - k, n - k}});
    if (k < kmax)
      c = c * (m - k) * (n - k) / (k + 1);
  }
  return out;
}

SparsePoly expand_inversion(const std::vector<InversionTerm> &terms) {
  SparsePoly r(3);
  for (const auto &t : terms)
    r += poly_mul(t.z_coeff, hermite_poly(t.index));
  return r;
}

Complex scaling_map(HermiteIndex idx, Complex x, Complex y, Complex z) {
  require_finite(x, "scaling_map x");
  require_finite(y, "scaling_map y");
  require_finite(z, "scaling_map z");
  if (z == Complex(0.0))
    throw SingularScaling("scaling relation is undefined at z = 0");
  const Complex root = std::sqrt(-z);
  Complex scale = 1.0;
  for (std::uint32_t j = 0; j < idx.m + idx.n; ++j)
    scale *= root;
  const Complex v = scale * hermite_eval(idx, x / root, y / root, -1.0);
  require_finite(v, "scaling_map");
  return v;
}

SparsePoly HermiteCache::get(HermiteIndex idx) const {
  if (idx.m + idx.n > max_degree_)
    return hermite_poly(idx);
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(idx); it != table_.end())
      return it->second;
  }
  SparsePoly built = hermite_poly(idx);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = table_.try_emplace(idx, std::move(built));
  return it->second;
}

Integer HermiteCache::factorial(std::uint32_t n) const {
  {
    std::shared_lock lock(mutex_);
    if (n < factorials_.size())
      return factorials_[n];
  }
  std::unique_lock lock(mutex_);
  while (factorials_.size() <= n)
    factorials_.push_back(factorials_.back() * factorials_.size());
  return factorials_[n];
}

std::size_t HermiteCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

} // namespace chermite
