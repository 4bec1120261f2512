#include "chermite/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chermite/errors.hpp"
#include "chermite/hermite.hpp"
#include "chermite/identities.hpp"

namespace chermite {

namespace {

double log_factorial(std::uint32_t j) { return std::lgamma(j + 1.0); }

std::vector<Complex> powers(Complex base, std::uint32_t max_exp) {
  std::vector<Complex> pw(max_exp + 1);
  pw[0] = 1.0;
  for (std::uint32_t j = 1; j <= max_exp; ++j)
    pw[j] = pw[j - 1] * base;
  return pw;
}

Complex sqrt_normalized_sum(std::uint32_t m, std::uint32_t n,
                            const std::vector<Complex> &xp,
                            const std::vector<Complex> &yp,
                            const std::vector<Complex> &zp) {
  const double half = 0.5 * (log_factorial(m) + log_factorial(n));
  const std::uint32_t kmax = m < n ? m : n;
  Complex sum = 0.0;
  for (std::uint32_t k = 0; k <= kmax; ++k) {
    const double w = std::exp(half - log_factorial(k) - log_factorial(m - k) -
                              log_factorial(n - k));
    sum += w * xp[m - k] * yp[n - k] * zp[k];
  }
  return sum;
}

// Memoized H_{m,n}/sqrt(m!n!) at one point for m, n <= bound.
class NormalizedHermiteTable {
public:
  NormalizedHermiteTable(Complex x, Complex y, Complex z, std::uint32_t bound)
      : bound_(bound), xp_(powers(x, bound)), yp_(powers(y, bound)),
        zp_(powers(z, bound)), values_((bound + 1) * (bound + 1)),
        known_((bound + 1) * (bound + 1), false) {}

  Complex operator()(std::uint32_t m, std::uint32_t n) {
    const std::size_t slot = static_cast<std::size_t>(m) * (bound_ + 1) + n;
    if (!known_[slot]) {
      values_[slot] = sqrt_normalized_sum(m, n, xp_, yp_, zp_);
      known_[slot] = true;
    }
    return values_[slot];
  }

private:
  std::uint32_t bound_;
  std::vector<Complex> xp_, yp_, zp_;
  std::vector<Complex> values_;
  std::vector<bool> known_;
};

// base^j / sqrt(j!) for j = 0..max.
std::vector<Complex> scaled_powers(Complex base, std::uint32_t max_exp) {
  std::vector<Complex> pw = powers(base, max_exp);
  for (std::uint32_t j = 0; j <= max_exp; ++j)
    pw[j] *= std::exp(-0.5 * log_factorial(j));
  return pw;
}

void require_all_finite(std::initializer_list<Complex> values, const char *what) {
  for (const auto &v : values)
    require_finite(v, what);
}

void require_inside(double modulus, const std::string &condition) {
  if (!(modulus < 1.0 - kDomainMargin))
    throw OutsideConvergenceDomain(condition + " violated: modulus " +
                                   std::to_string(modulus));
}

void check_genfn(const GenfnParams &p) {
  require_all_finite({p.x, p.y, p.z, p.s, p.t}, "generating function parameters");
}

void check_mehler(const MehlerParams &p) {
  require_all_finite({p.x1, p.y1, p.z1, p.x2, p.y2, p.z2, p.s, p.t},
                     "Mehler kernel parameters");
  require_inside(std::abs(p.s * p.t * p.z1 * p.z2), "|s t z1 z2| < 1");
}

void check_multilinear(const MultilinearParams &p) {
  const std::size_t r = p.xs.size();
  if (r == 0 || p.ys.size() != r || p.zs.size() != r || p.ss.size() != r ||
      p.ts.size() != r)
    throw ArityError("multilinear kernel needs r >= 1 equally sized coordinate lists");
  require_all_finite({p.x, p.y, p.z}, "multilinear kernel parameters");
  for (std::size_t j = 0; j < r; ++j)
    require_all_finite({p.xs[j], p.ys[j], p.zs[j], p.ss[j], p.ts[j]},
                       "multilinear kernel parameters");
  require_inside(multilinear_domain(p).cz, "|c z| < 1");
}

void check_mixed(const MixedParams &p) {
  require_all_finite({p.x, p.y, p.z, p.u, p.v, p.s, p.t}, "mixed kernel parameters");
  require_inside(std::abs(2.0 * p.s * p.t * p.z), "|2 s t z| < 1");
}

void check_classical(const ClassicalParams &p) {
  require_all_finite({p.u, p.v, p.t}, "classical Mehler parameters");
  require_inside(std::abs(2.0 * p.t), "|2t| < 1");
}

Complex finite_or_throw(Complex v, const char *what) {
  require_finite(v, what);
  return v;
}

// Shared exponent of the mixed kernels and its radicand D.
struct MixedPieces {
  Complex radicand;
  Complex root;
  Complex exponent;
};

MixedPieces mixed_pieces(const MixedParams &p) {
  const Complex stz = p.s * p.t * p.z;
  const Complex radicand = 1.0 - 4.0 * stz * stz;
  const Complex a = p.s * p.x + p.u;
  const Complex b = p.t * p.y + p.v;
  const Complex exponent =
      p.u * p.u + p.v * p.v + (4.0 * stz * a * b - a * a - b * b) / radicand;
  return {radicand, std::sqrt(radicand), exponent};
}

Complex integer_power(Complex base, std::uint32_t e) {
  Complex r = 1.0;
  for (std::uint32_t j = 0; j < e; ++j)
    r *= base;
  return r;
}

} // namespace

Complex hermite_eval_sqrt_normalized(std::uint32_t m, std::uint32_t n, Complex x,
                                     Complex y, Complex z) {
  require_all_finite({x, y, z}, "hermite_eval_sqrt_normalized");
  const std::uint32_t bound = m > n ? m : n;
  return finite_or_throw(
      sqrt_normalized_sum(m, n, powers(x, bound), powers(y, bound), powers(z, bound)),
      "hermite_eval_sqrt_normalized");
}

std::vector<Complex> classical_hermite_sqrt_normalized(std::uint32_t max_n,
                                                       Complex u) {
  std::vector<Complex> h(max_n + 1);
  h[0] = 1.0;
  if (max_n >= 1)
    h[1] = 2.0 * u;
  for (std::uint32_t n = 1; n < max_n; ++n)
    h[n + 1] = (2.0 * u * h[n] - 2.0 * std::sqrt(double(n)) * h[n - 1]) /
               std::sqrt(double(n + 1));
  return h;
}

MultilinearDomain multilinear_domain(const MultilinearParams &p) {
  Complex c = 0.0;
  for (std::size_t j = 0; j < p.zs.size(); ++j)
    c += p.ss.at(j) * p.ts.at(j) * p.zs.at(j);
  return {c, std::abs(c * p.z), std::abs(c) < 1.0};
}

KernelComparison compare_kernel(const Complex &closed, SeriesResult series,
                                double tol) {
  KernelComparison out{closed, std::move(series), 0.0, false};
  out.abs_diff = std::abs(out.series.value - closed);
  out.agrees = out.series.converged &&
               out.abs_diff <= tol * std::max(1.0, std::abs(closed));
  return out;
}

// Closed forms ----------------------------------------------------------------

Complex genfn_closed(const GenfnParams &p) {
  check_genfn(p);
  return finite_or_throw(std::exp(p.s * p.x + p.t * p.y + p.s * p.t * p.z),
                         "genfn_closed");
}

Complex mehler_closed(const MehlerParams &p) {
  check_mehler(p);
  const Complex st = p.s * p.t;
  const Complex denom = 1.0 - st * p.z1 * p.z2;
  const Complex num = p.s * p.x1 * p.x2 + p.t * p.y1 * p.y2 +
                      (p.z1 * p.x2 * p.y2 + p.z2 * p.x1 * p.y1) * st;
  return finite_or_throw(std::exp(num / denom) / denom, "mehler_closed");
}

Complex multilinear_closed(const MultilinearParams &p) {
  check_multilinear(p);
  Complex a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t j = 0; j < p.xs.size(); ++j) {
    a += p.ss[j] * p.xs[j];
    b += p.ts[j] * p.ys[j];
    c += p.ss[j] * p.ts[j] * p.zs[j];
  }
  const Complex denom = 1.0 - c * p.z;
  const Complex num = a * p.x + b * p.y + c * p.x * p.y + a * b * p.z;
  return finite_or_throw(std::exp(num / denom) / denom, "multilinear_closed");
}

Complex mixed_kernel_closed(const MixedParams &p) {
  check_mixed(p);
  const MixedPieces q = mixed_pieces(p);
  return finite_or_throw(std::exp(q.exponent) / q.root, "mixed_kernel_closed");
}

Complex mixed_kernel_shifted_closed(std::uint32_t k, const MixedParams &p) {
  check_mixed(p);
  const MixedPieces q = mixed_pieces(p);
  const Complex arg =
      (p.u + p.s * p.x - 2.0 * p.s * p.t * p.z * (p.v + p.t * p.y)) / q.root;
  return finite_or_throw(classical_hermite_eval(k, arg) * std::exp(q.exponent) /
                             integer_power(q.root, k + 1),
                         "mixed_kernel_shifted_closed");
}

Complex classical_mehler_closed(const ClassicalParams &p) {
  check_classical(p);
  const Complex radicand = 1.0 - 4.0 * p.t * p.t;
  const Complex exponent =
      (4.0 * p.t * p.u * p.v - 4.0 * (p.u * p.u + p.v * p.v) * p.t * p.t) / radicand;
  return finite_or_throw(std::exp(exponent) / std::sqrt(radicand),
                         "classical_mehler_closed");
}

Complex weisner_closed(std::uint32_t k, const ClassicalParams &p) {
  check_classical(p);
  const Complex radicand = 1.0 - 4.0 * p.t * p.t;
  const Complex root = std::sqrt(radicand);
  const Complex exponent =
      (4.0 * p.t * p.u * p.v - 4.0 * (p.u * p.u + p.v * p.v) * p.t * p.t) / radicand;
  const Complex arg = (p.u - 2.0 * p.t * p.v) / root;
  return finite_or_throw(classical_hermite_eval(k, arg) * std::exp(exponent) /
                             integer_power(root, k + 1),
                         "weisner_closed");
}

// Series ----------------------------------------------------------------------

SeriesResult genfn_series(const GenfnParams &p, const SeriesPolicy &policy) {
  check_genfn(p);
  const std::uint32_t bound = policy.max_order + 1;
  NormalizedHermiteTable g(p.x, p.y, p.z, bound);
  const auto sp = scaled_powers(p.s, bound);
  const auto tp = scaled_powers(p.t, bound);
  std::uint32_t d = 0;
  return adaptive_truncate(
      [&]() -> std::optional<Complex> {
        Complex block = 0.0;
        for (std::uint32_t m = 0; m <= d; ++m)
          block += g(m, d - m) * sp[m] * tp[d - m];
        ++d;
        return block;
      },
      policy);
}

SeriesResult mehler_series(const MehlerParams &p, const SeriesPolicy &policy) {
  check_mehler(p);
  const std::uint32_t bound = policy.max_order + 1;
  NormalizedHermiteTable g1(p.x1, p.y1, p.z1, bound);
  NormalizedHermiteTable g2(p.x2, p.y2, p.z2, bound);
  const auto sp = powers(p.s, bound);
  const auto tp = powers(p.t, bound);
  std::uint32_t d = 0;
  return adaptive_truncate(
      [&]() -> std::optional<Complex> {
        Complex block = 0.0;
        for (std::uint32_t m = 0; m <= d; ++m) {
          const std::uint32_t n = d - m;
          block += g1(m, n) * g2(m, n) * sp[m] * tp[n];
        }
        ++d;
        return block;
      },
      policy);
}

SeriesResult multilinear_series(const MultilinearParams &p,
                                const SeriesPolicy &policy) {
  check_multilinear(p);
  const std::size_t r = p.xs.size();
  const std::uint32_t bound = policy.max_order + 1;
  NormalizedHermiteTable g0(p.x, p.y, p.z, bound);
  std::vector<NormalizedHermiteTable> gj;
  std::vector<std::vector<Complex>> sp, tp;
  for (std::size_t j = 0; j < r; ++j) {
    gj.emplace_back(p.xs[j], p.ys[j], p.zs[j], bound);
    sp.push_back(scaled_powers(p.ss[j], bound));
    tp.push_back(scaled_powers(p.ts[j], bound));
  }

  std::uint32_t d = 0;
  return adaptive_truncate(
      [&]() -> std::optional<Complex> {
        Complex block = 0.0;
        // Slots 2j and 2j+1 hold m_j and n_j.
        Compositions c(d, static_cast<std::uint32_t>(2 * r));
        do {
          const auto &e = c.current();
          std::uint32_t K = 0, L = 0;
          Complex term = 1.0;
          for (std::size_t j = 0; j < r; ++j) {
            const std::uint32_t m = e[2 * j], n = e[2 * j + 1];
            K += m;
            L += n;
            term *= gj[j](m, n) * sp[j][m] * tp[j][n];
          }
          // H_{K,L} = sqrt(K! L!) * g0(K, L); the 1/sqrt(m_j! n_j!) halves are
          // already inside sp and tp.
          term *= g0(K, L) * std::exp(0.5 * (log_factorial(K) + log_factorial(L)));
          block += term;
        } while (c.advance());
        ++d;
        return block;
      },
      policy);
}

namespace {

SeriesResult mixed_series_impl(std::uint32_t k, const MixedParams &p,
                               const SeriesPolicy &policy) {
  check_mixed(p);
  const std::uint32_t bound = policy.max_order + 1;
  NormalizedHermiteTable g(p.x, p.y, p.z, bound);
  const auto hu = classical_hermite_sqrt_normalized(bound + k, p.u);
  const auto hv = classical_hermite_sqrt_normalized(bound, p.v);
  const auto sp = powers(-p.s, bound);
  const auto tp = powers(-p.t, bound);
  std::uint32_t d = 0;
  return adaptive_truncate(
      [&]() -> std::optional<Complex> {
        Complex block = 0.0;
        for (std::uint32_t m = 0; m <= d; ++m) {
          const std::uint32_t n = d - m;
          // H_{m+k}(u)/sqrt(m!) = hu[m+k] * sqrt((m+k)!/m!).
          const double shift =
              k == 0 ? 1.0
                     : std::exp(0.5 * (log_factorial(m + k) - log_factorial(m)));
          block += g(m, n) * hu[m + k] * shift * hv[n] * sp[m] * tp[n];
        }
        ++d;
        return block;
      },
      policy);
}

SeriesResult classical_series_impl(std::uint32_t k, const ClassicalParams &p,
                                   const SeriesPolicy &policy) {
  check_classical(p);
  const std::uint32_t bound = policy.max_order + 1;
  const auto hu = classical_hermite_sqrt_normalized(bound + k, p.u);
  const auto hv = classical_hermite_sqrt_normalized(bound, p.v);
  const auto tp = powers(p.t, bound);
  std::uint32_t n = 0;
  return adaptive_truncate(
      [&]() -> std::optional<Complex> {
        const double shift =
            k == 0 ? 1.0 : std::exp(0.5 * (log_factorial(n + k) - log_factorial(n)));
        const Complex block = hu[n + k] * shift * hv[n] * tp[n];
        ++n;
        return block;
      },
      policy);
}

} // namespace

SeriesResult mixed_kernel_series(const MixedParams &p, const SeriesPolicy &policy) {
  return mixed_series_impl(0, p, policy);
}

SeriesResult mixed_kernel_shifted_series(std::uint32_t k, const MixedParams &p,
                                         const SeriesPolicy &policy) {
  return mixed_series_impl(k, p, policy);
}

SeriesResult classical_mehler_series(const ClassicalParams &p,
                                     const SeriesPolicy &policy) {
  return classical_series_impl(0, p, policy);
}

SeriesResult weisner_series(std::uint32_t k, const ClassicalParams &p,
                            const SeriesPolicy &policy) {
  return classical_series_impl(k, p, policy);
}

} // namespace chermite
