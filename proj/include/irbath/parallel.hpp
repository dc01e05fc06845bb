#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace irbath {

/// Runs body(i) for i in [0, n) on up to `threads` workers.
/// Indices are split into contiguous blocks; each body writes only its own
/// slot, so results never depend on the worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int threads, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

/// Left-to-right sum. Callers reduce per-item results with this so the
/// summation order is fixed by index, not by scheduling.
template <class T>
T ordered_sum(const std::vector<T>& v) {
  T s{};
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace irbath
