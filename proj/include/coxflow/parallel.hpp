#ifndef COXFLOW_PARALLEL_HPP_
#define COXFLOW_PARALLEL_HPP_

#include <exception>
#include <thread>
#include <vector>

namespace coxflow {

// Static block partition over [0,n); each index is processed exactly once
// and writes only to its own preassigned slots, so results do not depend
// on the number of threads.
template <typename F>
void parallel_for(long n, int threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const int t = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    const long lo = n * w / t;
    const long hi = n * (w + 1) / t;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (long i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace coxflow

#endif  // COXFLOW_PARALLEL_HPP_
