#include "ntorus/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ntorus {

namespace {

std::atomic<int> g_threads{1};

constexpr std::size_t kBlock = 1024;

}  // namespace

void set_worker_threads(int threads) { g_threads = std::max(1, threads); }

int worker_threads() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(g_threads.load()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kBlock);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + kBlock);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<double> block_reduce(std::size_t count, std::size_t width,
                                 const std::function<void(std::size_t, std::span<double>)>& term) {
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  // partial[w * blocks + b] holds accumulator w of block b.
  std::vector<double> partial(width * blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<double> acc(width, 0.0);
    std::vector<double> scratch(width);
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      std::fill(scratch.begin(), scratch.end(), 0.0);
      term(i, scratch);
      for (std::size_t w = 0; w < width; ++w) acc[w] += scratch[w];
    }
    for (std::size_t w = 0; w < width; ++w) partial[w * blocks + b] = acc[w];
  });
  std::vector<double> out(width);
  for (std::size_t w = 0; w < width; ++w)
    out[w] = pairwise_sum(std::span<const double>(partial).subspan(w * blocks, blocks));
  return out;
}

}  // namespace ntorus
