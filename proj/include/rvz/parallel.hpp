#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rvz {

/// Resolve a thread-count request: 0 means "hardware concurrency".
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(block_index, begin, end) over a contiguous partition of [0, total)
/// into at most `threads` blocks. Blocks are fixed by (total, threads) only,
/// so callers can merge per-block results in block order and obtain reductions
/// that do not depend on scheduling.
template <typename Fn>
void for_blocks(std::size_t total, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  const std::size_t nblocks =
      std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(total, 1));
  if (nblocks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t begin = total * b / nblocks;
    const std::size_t end = total * (b + 1) / nblocks;
    pool.emplace_back([&fn, b, begin, end] { fn(b, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rvz
