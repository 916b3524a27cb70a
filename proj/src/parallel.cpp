#include "ramseyforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <thread>

namespace ramseyforge {

namespace {

std::atomic<int> g_workers{0};

int default_workers() {
  if (auto parsed = parse_worker_count(std::getenv("RAMSEYFORGE_WORKERS"))) return *parsed;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

}  // namespace

std::optional<int> parse_worker_count(const char* text) {
  if (text == nullptr || *text == '\0') return std::nullopt;
  int value = 0;
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value < 1) return std::nullopt;
  return value;
}

int worker_count() {
  int w = g_workers.load();
  if (w == 0) {
    w = default_workers();
    g_workers.store(w);
  }
  return w;
}

void set_worker_count(int workers) { g_workers.store(std::max(1, workers)); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::optional<std::size_t> parallel_find_first(std::size_t count,
                                               const std::function<bool(std::size_t)>& probe) {
  std::atomic<std::size_t> best{count};
  parallel_for(count, [&](std::size_t i) {
    // Indices above a known hit cannot change the answer.
    if (i > best.load()) return;
    if (probe(i)) {
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  });
  const std::size_t b = best.load();
  if (b == count) return std::nullopt;
  return b;
}

}  // namespace ramseyforge
