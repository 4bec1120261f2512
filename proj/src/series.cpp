#include "chermite/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chermite/errors.hpp"

namespace chermite {

SeriesResult adaptive_truncate(const BlockSource &next_block,
                               const SeriesPolicy &policy) {
  if (!(policy.tol > 0.0))
    throw std::invalid_argument("series tolerance must be positive");
  SeriesResult r;
  std::uint32_t quiet = 0;
  while (r.order_used < policy.max_order) {
    const std::optional<Complex> block = next_block();
    if (!block) {
      r.converged = true;
      r.tail_estimate = 0.0;
      return r;
    }
    ++r.order_used;
    r.value += *block;
    if (policy.record_blocks)
      r.blocks.push_back(*block);
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
      r.tail_estimate = std::abs(*block);
      return r;
    }
    const double scale = std::max(1.0, std::abs(r.value));
    r.tail_estimate = std::abs(*block) / scale;
    quiet = r.tail_estimate < policy.tol ? quiet + 1 : 0;
    if (quiet >= policy.quiet_blocks) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

SeriesResult adaptive_truncate(TermSource terms, const SeriesPolicy &policy) {
  std::optional<SeriesTerm> pending = terms();
  std::uint32_t order = pending ? pending->order : 0;
  BlockSource blocks = [&]() -> std::optional<Complex> {
    if (!pending)
      return std::nullopt;
    Complex sum = 0.0;
    while (pending && pending->order == order) {
      sum += pending->value;
      pending = terms();
      if (pending && pending->order < order)
        throw std::invalid_argument("series terms must come in non-decreasing order");
    }
    ++order;
    return sum;
  };
  return adaptive_truncate(blocks, policy);
}

} // namespace chermite
