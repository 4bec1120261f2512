#ifndef CHERMITE_SERIES_HPP
#define CHERMITE_SERIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chermite/poly.hpp"

namespace chermite {

struct SeriesPolicy {
  double tol = 1e-10;
  std::uint32_t max_order = 200;
  /// Number of consecutive negligible blocks required before stopping.
  std::uint32_t quiet_blocks = 3;
  /// Keep every block sum in SeriesResult::blocks.
  bool record_blocks = false;
};

struct SeriesResult {
  Complex value = 0.0;
  /// Number of order-blocks summed.
  std::uint32_t order_used = 0;
  /// |last block| / max(1, |partial sum|).
  double tail_estimate = 0.0;
  bool converged = false;
  std::vector<Complex> blocks;
};

/// Produces the next order-block sum, or nullopt when the series is finite
/// and exhausted.
using BlockSource = std::function<std::optional<Complex>()>;

/// One series term tagged with its order; orders must be non-decreasing.
struct SeriesTerm {
  std::uint32_t order = 0;
  Complex value = 0.0;
};
using TermSource = std::function<std::optional<SeriesTerm>()>;

/// Sums blocks until `quiet_blocks` consecutive blocks each fall below
/// tol * max(1, |partial sum|). Reaching max_order blocks first reports
/// converged = false; an exhausted source is converged with tail 0.
SeriesResult adaptive_truncate(const BlockSource &next_block,
                               const SeriesPolicy &policy = {});

/// Groups a term stream into blocks of equal order (missing orders count as
/// empty blocks) and sums it adaptively.
SeriesResult adaptive_truncate(TermSource terms, const SeriesPolicy &policy = {});

} // namespace chermite

#endif // CHERMITE_SERIES_HPP
