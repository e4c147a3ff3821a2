#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "eigenrand/rng.hpp"

namespace eigenrand::mc {

// Samples are processed in fixed chunks of this size; chunk c draws from
// stream (seed, c). The reduction runs in chunk order, so results do not
// depend on how chunks were assigned to threads.
inline constexpr int kChunkSize = 64;

struct MCEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t count = 0;
  std::uint64_t seed = 0;
  int chunk_size = kChunkSize;
};

struct Welford {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double d = o.mean - mean;
    std::int64_t tot = n + o.n;
    mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(tot);
    n = tot;
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_of_mean() const {
    return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

inline int hardware_threads() {
  if (const char* env = std::getenv("EIGENRAND_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs `body(chunk_index)` for chunk_index in [0, n_chunks) on a pool of
// `threads` workers. Chunk pickup order is arbitrary; callers must write
// their results into per-chunk slots and reduce in index order afterwards.
inline void parallel_chunks(std::int64_t n_chunks, int threads,
                            const std::function<void(std::int64_t)>& body) {
  if (threads <= 1 || n_chunks <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      body(c);
    }
  };
  std::vector<std::thread> pool;
  int nt = static_cast<int>(std::min<std::int64_t>(threads, n_chunks));
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// Scalar Monte Carlo mean of fn(sample_index, rng).
template <class F>
MCEstimate run(std::int64_t samples, std::uint64_t seed, int threads, F&& fn) {
  std::int64_t n_chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<Welford> acc(static_cast<std::size_t>(n_chunks));
  parallel_chunks(n_chunks, threads, [&](std::int64_t c) {
    Rng rng(seed, static_cast<std::uint64_t>(c));
    std::int64_t lo = c * kChunkSize;
    std::int64_t hi = std::min(samples, lo + kChunkSize);
    Welford w;
    for (std::int64_t i = lo; i < hi; ++i) w.add(fn(i, rng));
    acc[static_cast<std::size_t>(c)] = w;
  });
  Welford total;
  for (const auto& w : acc) total.merge(w);
  MCEstimate est;
  est.mean = total.mean;
  est.stderr_ = total.stderr_of_mean();
  est.count = total.n;
  est.seed = seed;
  return est;
}

// Vector-valued variant: fn fills a width-sized row per sample; one Welford
// per component, reduced in chunk order.
template <class F>
std::vector<MCEstimate> run_multi(std::int64_t samples, int width,
                                  std::uint64_t seed, int threads, F&& fn) {
  std::int64_t n_chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<Welford>> acc(
      static_cast<std::size_t>(n_chunks),
      std::vector<Welford>(static_cast<std::size_t>(width)));
  parallel_chunks(n_chunks, threads, [&](std::int64_t c) {
    Rng rng(seed, static_cast<std::uint64_t>(c));
    std::int64_t lo = c * kChunkSize;
    std::int64_t hi = std::min(samples, lo + kChunkSize);
    std::vector<double> row(static_cast<std::size_t>(width));
    auto& slot = acc[static_cast<std::size_t>(c)];
    for (std::int64_t i = lo; i < hi; ++i) {
      fn(i, rng, row.data());
      for (int k = 0; k < width; ++k) slot[static_cast<std::size_t>(k)].add(row[static_cast<std::size_t>(k)]);
    }
  });
  std::vector<Welford> total(static_cast<std::size_t>(width));
  for (const auto& chunk : acc)
    for (int k = 0; k < width; ++k) total[static_cast<std::size_t>(k)].merge(chunk[static_cast<std::size_t>(k)]);
  std::vector<MCEstimate> out(static_cast<std::size_t>(width));
  for (int k = 0; k < width; ++k) {
    auto& e = out[static_cast<std::size_t>(k)];
    const auto& w = total[static_cast<std::size_t>(k)];
    e.mean = w.mean;
    e.stderr_ = w.stderr_of_mean();
    e.count = w.n;
    e.seed = seed;
  }
  return out;
}

}  // namespace eigenrand::mc
