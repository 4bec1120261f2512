#ifndef CHERMITE_EXPANSION_HPP
#define CHERMITE_EXPANSION_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <variant>

#include "chermite/hermite.hpp"
#include "chermite/identities.hpp"
#include "chermite/poly.hpp"
#include "chermite/poly_json.hpp"

namespace chermite {

struct TensorIndex {
  std::uint32_t m = 0, n = 0, p = 0;
  /// Weight used for truncation: each z power counts like an x and a y.
  std::uint64_t weight() const { return std::uint64_t{m} + n + 2ull * p; }
  friend auto operator<=>(const TensorIndex &, const TensorIndex &) = default;
};

/// Truncated Maclaurin coefficients lambda_{m,n,p} of a function of (x, y, z),
/// keeping indices with m + n + 2p <= max_degree. Absent entries are zero.
template <class Scalar> class CoeffTensor {
public:
  explicit CoeffTensor(std::uint32_t max_degree = 0) : max_degree_(max_degree) {}

  std::uint32_t max_degree() const { return max_degree_; }
  const std::map<TensorIndex, Scalar> &entries() const { return entries_; }

  bool within(const TensorIndex &i) const { return i.weight() <= max_degree_; }

  /// Throws ArityError for indices outside the declared bound.
  void set(const TensorIndex &i, const Scalar &value);
  Scalar get(const TensorIndex &i) const;

  CoeffTensor &operator+=(const CoeffTensor &other);
  CoeffTensor &operator*=(const Scalar &c);

  friend bool operator==(const CoeffTensor &, const CoeffTensor &) = default;

private:
  std::uint32_t max_degree_;
  std::map<TensorIndex, Scalar> entries_;
};

/// Coefficients of sum lambda_{m,n} H_{m,n}(x, y, z), m + n <= max_degree.
template <class Scalar> struct HermiteExpansion {
  std::uint32_t max_degree = 0;
  std::map<HermiteIndex, Scalar> coeffs;

  friend bool operator==(const HermiteExpansion &, const HermiteExpansion &) = default;
};

using RationalTensor = CoeffTensor<Rational>;
using ComplexTensor = CoeffTensor<Complex>;
using RationalExpansion = HermiteExpansion<Rational>;
using ComplexExpansion = HermiteExpansion<Complex>;

/// Checks p * lambda_{m,n,p} == (m+1)(n+1) * lambda_{m+1,n+1,p-1} wherever
/// both sides are within the bound. Exact for rationals; complex entries use
/// a 1e-12 relative tolerance with a 1e-15 absolute floor.
VerificationReport pde_check(const RationalTensor &t);
VerificationReport pde_check(const ComplexTensor &t);

/// The z = 0 layer lambda_{m,n,0}. Throws NotHermiteExpandable when the
/// tensor fails pde_check.
RationalExpansion hermite_expand(const RationalTensor &t);
ComplexExpansion hermite_expand(const ComplexTensor &t);

/// Full tensor implied by an expansion:
/// lambda_{m,n,p} = (m+p)! (n+p)! / (m! n! p!) * lambda_{m+p,n+p,0}.
RationalTensor expansion_tensor(const RationalExpansion &e);
ComplexTensor expansion_tensor(const ComplexExpansion &e);

/// sum lambda_{m,n} H_{m,n}(x, y, z), summed in blocks of constant m + n.
Complex reconstruct_eval(const RationalExpansion &e, Complex x, Complex y, Complex z);
Complex reconstruct_eval(const ComplexExpansion &e, Complex x, Complex y, Complex z);

/// The same sum as an exact arity-3 polynomial.
SparsePoly reconstruct_poly(const RationalExpansion &e);

/// Coefficients of an arity-3 polynomial. Throws ArityError if a term lies
/// beyond `max_degree`.
RationalTensor tensor_from_poly(const SparsePoly &p, std::uint32_t max_degree);

ComplexTensor to_complex(const RationalTensor &t);

// JSON: {"max_degree":D,"entries":[{"m":..,"n":..,"p":..,"coeff":"p/q" | {"re":..,"im":..}}]}
// A file whose coefficients are all rational strings loads as a RationalTensor.
using AnyTensor = std::variant<RationalTensor, ComplexTensor>;
AnyTensor tensor_from_json(const Json &j);
Json tensor_to_json(const RationalTensor &t);
Json tensor_to_json(const ComplexTensor &t);

Json expansion_to_json(const RationalExpansion &e);
Json expansion_to_json(const ComplexExpansion &e);

extern template class CoeffTensor<Rational>;
extern template class CoeffTensor<Complex>;

} // namespace chermite

#endif // CHERMITE_EXPANSION_HPP
