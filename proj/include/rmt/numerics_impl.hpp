#pragma once

#include <algorithm>
#include <thread>

namespace rmt::num {

template <class F>
void for_each_sample(const SampleConfig& cfg, int threads, F&& f) {
  cfg.validate();
  const long chunks = (cfg.samples + cfg.chunk - 1) / cfg.chunk;
  auto run_chunk = [&](long c) {
    std::mt19937_64 rng = chunk_stream(cfg.seed, static_cast<std::uint64_t>(c));
    const long begin = c * cfg.chunk;
    const long end = std::min(cfg.samples, begin + cfg.chunk);
    for (long i = begin; i < end; ++i) f(i, sample_gue(cfg, rng));
  };
  const long workers = std::max(1L, std::min<long>(threads, chunks));
  if (workers == 1) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::vector<std::thread> pool;
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (long c = w; c < chunks; c += workers) run_chunk(c);
    });
  for (auto& t : pool) t.join();
}

}  // namespace rmt::num
