#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace coverlab {

/// Thread count from COVERLAB_THREADS, defaulting to 1.
inline unsigned default_threads() {
  if (const char* env = std::getenv("COVERLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    } catch (...) {
    }
  }
  return 1;
}

struct Chunk {
  size_t index = 0;
  uint64_t begin = 0;
  uint64_t end = 0;
};

/// Split [begin, end) into at most `parts` contiguous chunks in order.
inline std::vector<Chunk> split_range(uint64_t begin, uint64_t end, size_t parts) {
  std::vector<Chunk> chunks;
  if (end <= begin) return chunks;
  const uint64_t len = end - begin;
  parts = std::max<size_t>(1, std::min<uint64_t>(parts, len));
  for (size_t i = 0; i < parts; ++i) {
    uint64_t lo = begin + len * i / parts;
    uint64_t hi = begin + len * (i + 1) / parts;
    chunks.push_back({i, lo, hi});
  }
  return chunks;
}

/// Runs body(chunk) for every chunk on up to `threads` workers. Callers write
/// per-chunk results into slots indexed by chunk.index and merge in order, so
/// output never depends on the thread count.
template <class Body>
void for_each_chunk(const std::vector<Chunk>& chunks, unsigned threads, Body&& body) {
  if (threads <= 1 || chunks.size() <= 1) {
    for (const auto& c : chunks) body(c);
    return;
  }
  std::vector<std::thread> pool;
  const size_t workers = std::min<size_t>(threads, chunks.size());
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < chunks.size(); i += workers) body(chunks[i]);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace coverlab
