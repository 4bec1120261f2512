#ifndef CHERMITE_HERMITE_HPP
#define CHERMITE_HERMITE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <vector>

#include "chermite/poly.hpp"

namespace chermite {

/// Slots of the trivariate polynomials H_{m,n}(x, y, z).
enum Var : std::size_t { X = 0, Y = 1, Z = 2 };

struct HermiteIndex {
  std::uint32_t m = 0;
  std::uint32_t n = 0;

  std::uint32_t min() const { return m < n ? m : n; }
  friend auto operator<=>(const HermiteIndex &, const HermiteIndex &) = default;
};

Integer factorial(std::uint32_t n);
Integer binomial(std::uint32_t n, std::uint32_t k);

/// H_{m,n}(x,y,z) = sum_{k<=min(m,n)} k! C(m,k) C(n,k) x^{m-k} y^{n-k} z^k,
/// as an exact arity-3 polynomial.
SparsePoly hermite_poly(HermiteIndex idx);

/// Same polynomial evaluated by direct summation, without materializing it.
Complex hermite_eval(HermiteIndex idx, Complex x, Complex y, Complex z);

/// Exact value at rational arguments.
Rational hermite_eval_exact(HermiteIndex idx, const Rational &x,
                            const Rational &y, const Rational &z);

/// Physicists' Hermite polynomial H_n(u) = sum_k (-1)^k n!/(k!(n-2k)!) (2u)^{n-2k}.
SparsePoly classical_hermite_poly(std::uint32_t n);
Complex classical_hermite_eval(std::uint32_t n, Complex u);

/// exp(zc * d^2/dxdy) applied to `p`. The sum terminates because every
/// application lowers both the x- and the y-degree. Arity-2 inputs are
/// promoted to arity 3 with an empty z slot.
SparsePoly heat_operator_apply(const SparsePoly &p, const Rational &zc);

/// exp(scale * z * d^2/dxdy) with z the formal third variable.
SparsePoly heat_operator_apply_formal(const SparsePoly &p,
                                      const Rational &scale = 1);

struct InversionTerm {
  SparsePoly z_coeff; ///< arity 3, depends on z only
  HermiteIndex index;
};

/// x^m y^n = sum_k k! C(m,k) C(n,k) (-z)^k H_{m-k,n-k}(x,y,z).
std::vector<InversionTerm> monomial_in_hermite(std::uint32_t m, std::uint32_t n);

/// Sum of z_coeff * hermite_poly(index) over the terms.
SparsePoly expand_inversion(const std::vector<InversionTerm> &terms);

/// (sqrt(-z))^{m+n} H_{m,n}(x/sqrt(-z), y/sqrt(-z), -1) on the principal
/// branch. Throws SingularScaling at z == 0.
Complex scaling_map(HermiteIndex idx, Complex x, Complex y, Complex z);

/// Build-on-demand table of H_{m,n} polynomials. Reads may run concurrently;
/// inserts are serialized. Indices with m + n above `max_degree` are built
/// fresh and never stored.
class HermiteCache {
public:
  explicit HermiteCache(std::uint32_t max_degree = 64) : max_degree_(max_degree) {}

  SparsePoly get(HermiteIndex idx) const;
  Integer factorial(std::uint32_t n) const;

  std::uint32_t max_degree() const { return max_degree_; }
  std::size_t size() const;

private:
  std::uint32_t max_degree_;
  mutable std::shared_mutex mutex_;
  mutable std::map<HermiteIndex, SparsePoly> table_;
  mutable std::vector<Integer> factorials_{Integer(1)};
};

} // namespace chermite

#endif // CHERMITE_HERMITE_HPP
