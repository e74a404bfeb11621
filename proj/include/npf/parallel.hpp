#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace npf {

// Worker count for parallel_for; defaults to hardware concurrency.
void set_jobs(unsigned n);
unsigned jobs();

// Runs fn(i) for i in [0, n). Callers write into per-index slots, so results
// never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace npf
