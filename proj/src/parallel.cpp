#include "irbath/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace irbath {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  std::size_t nt = static_cast<std::size_t>(std::max(1, threads));
  nt = std::min(nt, n);
  if (nt == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t w = 0; w < nt; ++w) {
    std::size_t lo = n * w / nt, hi = n * (w + 1) / nt;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace irbath
