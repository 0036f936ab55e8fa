#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ergolab/numeric.hpp"

namespace ergolab {

/// Process-wide worker count used by every parallel kernel (default 1).
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Runs body(i) for i in [0, count) across the configured workers.  Each
/// index must write only to its own output slot.  The first exception thrown
/// by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Terms per reduction block.  Block boundaries never depend on the worker
/// count, so block sums and their tree reduction are bit-identical for any
/// number of threads.
inline constexpr std::size_t kSumBlock = 1024;

/// Sum of term(i) for i in [0, count) using fixed blocks and pairwise sums.
template <class T, class Term>
T blocked_sum(std::uint64_t count, Term&& term) {
  if (count == 0) return T{};
  const std::size_t blocks = static_cast<std::size_t>((count + kSumBlock - 1) / kSumBlock);
  std::vector<T> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    std::array<T, kSumBlock> buffer;
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kSumBlock;
    const std::uint64_t last = std::min<std::uint64_t>(count, first + kSumBlock);
    std::size_t used = 0;
    for (std::uint64_t i = first; i < last; ++i) buffer[used++] = term(i);
    partial[b] = pairwise_sum(std::span<const T>(buffer.data(), used));
  });
  return pairwise_sum(std::span<const T>(partial));
}

}  // namespace ergolab
