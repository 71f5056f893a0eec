#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pb {

/// Worker cap: PHOTON_BUNDLE_THREADS when set, hardware concurrency otherwise.
inline unsigned max_threads() {
  if (const char* env = std::getenv("PHOTON_BUNDLE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Chunked parallel reduction with a deterministic result: chunk boundaries
/// are fixed by n and chunk_size alone, each chunk is mapped sequentially,
/// and partials are combined in chunk order regardless of thread count.
template <class V, class MapChunk, class Combine>
V parallel_chunk_reduce(std::size_t n, std::size_t chunk_size, V init, MapChunk map,
                        Combine combine) {
  if (n == 0) return init;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<V> partial(n_chunks, init);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(max_threads(), n_chunks));
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(begin + chunk_size, n);
      partial[c] = map(begin, end);
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  V acc = init;
  for (const V& p : partial) acc = combine(acc, p);
  return acc;
}

}  // namespace pb
