#ifndef CHERMITE_IDENTITIES_HPP
#define CHERMITE_IDENTITIES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chermite/hermite.hpp"
#include "chermite/poly.hpp"
#include "chermite/poly_json.hpp"

namespace chermite {

/// Outcome of one exact identity check. `witness` holds the serialized
/// difference (left minus right) and is present exactly when the check failed.
struct VerificationReport {
  std::string identity;
  Json params = Json::object();
  bool passed = false;
  std::optional<Json> witness;

  Json to_json() const;
};

/// Builds a report from a computed difference: passes iff `diff` is zero.
VerificationReport make_report(std::string identity, Json params,
                               const SparsePoly &diff);

/// Lazily enumerated ordered tuples of `parts` non-negative integers with a
/// fixed sum, in lexicographic order with the first slot largest first.
///
///   Compositions c(2, 2);   // (2,0) (1,1) (0,2)
///   do { use(c.current()); } while (c.advance());
class Compositions {
public:
  Compositions(std::uint32_t total, std::uint32_t parts);

  const std::vector<std::uint32_t> &current() const { return current_; }
  /// Steps to the next composition; false once the enumeration is exhausted.
  bool advance();

  /// C(total + parts - 1, parts - 1).
  static Integer count(std::uint32_t total, std::uint32_t parts);

private:
  std::uint32_t total_;
  std::vector<std::uint32_t> current_;
};

/// Pairs of compositions (m_1..m_k) of M and (n_1..n_k) of N.
struct CompositionSet {
  std::uint32_t M = 0;
  std::uint32_t N = 0;
  std::uint32_t parts = 1;

  template <class F> void for_each(F &&f) const {
    Compositions ms(M, parts);
    do {
      Compositions ns(N, parts);
      do {
        f(ms.current(), ns.current());
      } while (ns.advance());
    } while (ms.advance());
  }
};

/// H_{m1+m2,n1+n2}/(m1!m2!n1!n2!) against its product expansion.
VerificationReport verify_nielsen_linearization(std::uint32_t m1, std::uint32_t n1,
                                                std::uint32_t m2, std::uint32_t n2);

/// Which denominator pairing to use in the product-to-sum formula.
///  - AsPrinted:  (n1-p1)! (n2-p2)!
///  - Transposed: (n1-p2)! (n2-p1)!
///  - Auto:       try AsPrinted, then Transposed; the report records both.
enum class ProductReading { AsPrinted, Transposed, Auto };

/// H_{m1,n1} H_{m2,n2}/(m1!m2!n1!n2!) against the single-index sum with
/// weights (-z)^{p1+p2}.
VerificationReport verify_nielsen_product(std::uint32_t m1, std::uint32_t n1,
                                          std::uint32_t m2, std::uint32_t n2,
                                          ProductReading reading = ProductReading::Auto);

/// Right-hand side of the product formula as an exact polynomial.
SparsePoly nielsen_product_rhs(std::uint32_t m1, std::uint32_t n1, std::uint32_t m2,
                               std::uint32_t n2, ProductReading reading);

/// Right-hand side of the linearization formula as an exact polynomial.
SparsePoly nielsen_linearization_rhs(std::uint32_t m1, std::uint32_t n1,
                                     std::uint32_t m2, std::uint32_t n2);

/// Formal sum of c * z^j * H_{K,L}, keyed by (K, L, j).
struct HermiteTerm {
  std::uint32_t K = 0, L = 0, zpow = 0;
  friend auto operator<=>(const HermiteTerm &, const HermiteTerm &) = default;
};
using HermiteCombination = std::map<HermiteTerm, Rational>;

/// Expands H_{m1+m2,n1+n2} with the linearization formula, rewrites every
/// resulting product with the (transposed) product formula, and collects the
/// outcome in the formal basis z^j H_{K,L}.
HermiteCombination nielsen_round_trip(std::uint32_t m1, std::uint32_t n1,
                                      std::uint32_t m2, std::uint32_t n2);

SparsePoly materialize(const HermiteCombination &comb);

/// Round trip passes iff the formal result is exactly {(M,N,0): 1} and its
/// materialized polynomial equals H_{M,N}.
VerificationReport verify_nielsen_duality(std::uint32_t m1, std::uint32_t n1,
                                          std::uint32_t m2, std::uint32_t n2);

/// H_{M,N}(sum a_j x_j, sum b_j y_j, sum a_j b_j z_j) against the
/// multinomial composition sum. For k <= kSymbolicAdditionMaxParts the check
/// is a full expansion in 3k variables; above it both sides are evaluated
/// exactly at `points` seeded pseudo-random rational points.
inline constexpr std::size_t kSymbolicAdditionMaxParts = 3;
VerificationReport verify_addition(std::uint32_t M, std::uint32_t N,
                                   std::span<const Rational> a,
                                   std::span<const Rational> b,
                                   std::uint64_t seed = 0, std::uint32_t points = 4);

/// Taylor coefficients of exp((s1+s2)x + (t1+t2)y + (s1+s2)(t1+t2)z) in
/// (s1, s2, t1, t2) up to total degree `order` against
/// H_{m1+m2,n1+n2}/(m1!m2!n1!n2!).
VerificationReport verify_fourvar_genfn(std::uint32_t order);

/// dH/dz == d^2H/dxdy.
VerificationReport verify_pde(HermiteIndex idx);

/// exp(z d^2/dxdy){x^m y^n} == H_{m,n}.
VerificationReport verify_operator(HermiteIndex idx);

/// Expanding monomial_in_hermite(m, n) reproduces x^m y^n.
VerificationReport verify_inversion(HermiteIndex idx);

/// Scaling relation against direct evaluation at `points` seeded complex
/// points with |z| in [1/2, 2]; passes iff every relative error (against
/// max(1, |H|)) is at most `tol`.
VerificationReport verify_scaling(HermiteIndex idx, std::uint64_t seed,
                                  std::uint32_t points = 20, double tol = 1e-10);

} // namespace chermite

#endif // CHERMITE_IDENTITIES_HPP
