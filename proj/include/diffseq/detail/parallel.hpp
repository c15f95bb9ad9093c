#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace diffseq::detail {

inline int worker_count() {
  if (const char* env = std::getenv("DIFFSEQ_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Order-preserving parallel map: result i is f(xs[i]) no matter how the items
// get scheduled, so grid sweeps stay deterministic under any worker count.
template <class In, class F>
auto parallel_map(const std::vector<In>& xs, F f, int workers = worker_count()) {
  using Out = decltype(f(xs[std::size_t{0}]));
  std::vector<Out> out(xs.size());
  if (xs.empty()) return out;
  if (workers > static_cast<int>(xs.size()))
    workers = static_cast<int>(xs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= xs.size()) return;
        try {
          out[i] = f(xs[i]);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace diffseq::detail
