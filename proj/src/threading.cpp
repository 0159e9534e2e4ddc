#include "fextrem/threading.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fextrem {

namespace {

// Below this many items the spawn cost outweighs the work split.
constexpr std::size_t kInlineThreshold = 64;

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("FEXTREM_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  std::size_t workers = worker_count();
  if (workers > count) workers = count;
  if (workers <= 1 || count < kInlineThreshold) {
    body(0, count);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run_block = [&](std::size_t begin, std::size_t end) {
    try {
      body(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t end = begin + len;
    if (w + 1 == workers) {
      run_block(begin, end);
    } else {
      pool.emplace_back(run_block, begin, end);
    }
    begin = end;
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fextrem
