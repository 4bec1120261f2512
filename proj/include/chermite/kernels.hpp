#ifndef CHERMITE_KERNELS_HPP
#define CHERMITE_KERNELS_HPP

#include <cstdint>
#include <vector>

#include "chermite/poly.hpp"
#include "chermite/series.hpp"

namespace chermite {

/// Slack subtracted from every convergence bound: a series is only summed
/// when its controlling modulus is below 1 - kDomainMargin.
inline constexpr double kDomainMargin = 1e-9;

struct GenfnParams {
  Complex x, y, z, s, t;
};

struct MehlerParams {
  Complex x1, y1, z1, x2, y2, z2, s, t;
};

/// Point (x, y, z) plus r coordinate triples with their (s_j, t_j) weights.
struct MultilinearParams {
  Complex x, y, z;
  std::vector<Complex> xs, ys, zs, ss, ts;
};

struct MixedParams {
  Complex x, y, z, u, v, s, t;
};

struct ClassicalParams {
  Complex u, v, t;
};

// Closed forms ---------------------------------------------------------------

/// exp(sx + ty + stz).
Complex genfn_closed(const GenfnParams &p);

/// (1/(1 - s t z1 z2)) exp((s x1 x2 + t y1 y2 + (z1 x2 y2 + z2 x1 y1) s t)
///                         / (1 - s t z1 z2)); requires |s t z1 z2| < 1.
Complex mehler_closed(const MehlerParams &p);

/// With a = sum s_j x_j, b = sum t_j y_j, c = sum s_j t_j z_j:
/// (1/(1 - cz)) exp((ax + by + cxy + abz)/(1 - cz)); requires |cz| < 1.
Complex multilinear_closed(const MultilinearParams &p);

/// exp(u^2 + v^2)/sqrt(D) exp((4stz(sx+u)(ty+v) - (sx+u)^2 - (ty+v)^2)/D)
/// with D = 1 - 4 s^2 t^2 z^2; requires |2stz| < 1.
Complex mixed_kernel_closed(const MixedParams &p);

/// Shifted mixed kernel: the unshifted closed form divided by sqrt(D)^k and
/// multiplied by H_k((u + sx - 2stz(v + ty))/sqrt(D)).
Complex mixed_kernel_shifted_closed(std::uint32_t k, const MixedParams &p);

/// (1/sqrt(1 - 4t^2)) exp((4tuv - 4(u^2 + v^2)t^2)/(1 - 4t^2)); |2t| < 1.
Complex classical_mehler_closed(const ClassicalParams &p);

/// (1 - 4t^2)^{-(k+1)/2} H_k((u - 2tv)/sqrt(1 - 4t^2)) exp(...); |2t| < 1.
Complex weisner_closed(std::uint32_t k, const ClassicalParams &p);

// Series, summed in blocks of constant total degree --------------------------

SeriesResult genfn_series(const GenfnParams &p, const SeriesPolicy &policy = {});
SeriesResult mehler_series(const MehlerParams &p, const SeriesPolicy &policy = {});
SeriesResult multilinear_series(const MultilinearParams &p,
                                const SeriesPolicy &policy = {});
SeriesResult mixed_kernel_series(const MixedParams &p,
                                 const SeriesPolicy &policy = {});
SeriesResult mixed_kernel_shifted_series(std::uint32_t k, const MixedParams &p,
                                         const SeriesPolicy &policy = {});
SeriesResult classical_mehler_series(const ClassicalParams &p,
                                     const SeriesPolicy &policy = {});
SeriesResult weisner_series(std::uint32_t k, const ClassicalParams &p,
                            const SeriesPolicy &policy = {});

// Domain diagnostics ---------------------------------------------------------

struct MultilinearDomain {
  Complex c;        ///< sum s_j t_j z_j
  double cz = 0.0;  ///< |c z|, the enforced modulus
  bool c_below_one = false;
};
MultilinearDomain multilinear_domain(const MultilinearParams &p);

/// Series and closed form side by side. `agrees` requires convergence and
/// |series - closed| <= tol * max(1, |closed|).
struct KernelComparison {
  Complex closed;
  SeriesResult series;
  double abs_diff = 0.0;
  bool agrees = false;
};
KernelComparison compare_kernel(const Complex &closed, SeriesResult series,
                                double tol);

/// H_{m,n}(x,y,z)/sqrt(m! n!), summed with log-factorial weights so that
/// neither the factorials nor the polynomial overflow at moderate degree.
Complex hermite_eval_sqrt_normalized(std::uint32_t m, std::uint32_t n, Complex x,
                                     Complex y, Complex z);

/// H_n(u)/sqrt(n!) for n = 0..max_n via the normalized three-term recurrence.
std::vector<Complex> classical_hermite_sqrt_normalized(std::uint32_t max_n,
                                                       Complex u);

} // namespace chermite

#endif // CHERMITE_KERNELS_HPP
