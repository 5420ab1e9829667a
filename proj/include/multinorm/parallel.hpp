#ifndef MULTINORM_PARALLEL_HPP
#define MULTINORM_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace multinorm {

inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw ? static_cast<int>(hw) : 1;
  if (char const* cap = std::getenv("MULTINORM_THREADS")) {
    int c = std::atoi(cap);
    if (c >= 1 && c < n) n = c;
  }
  return n;
}

// Splits [begin,end) into contiguous tiles, one per worker; tile boundaries
// are independent of the worker count only in so far as each index is
// processed exactly once, so reductions must be tile-local and merged in
// index order by the caller.
template <class F>
void parallel_for(long long begin, long long end, F&& f) {
  int workers = worker_count();
  long long total = end - begin;
  if (workers <= 1 || total < 4096) {
    for (long long i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = begin + w * chunk;
    long long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (long long i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Chunked reduction: each worker folds into its own State, merged in chunk
// order so results do not depend on scheduling.
template <class State, class Fold, class Merge>
State parallel_reduce(long long begin, long long end, State init, Fold&& fold, Merge&& merge) {
  int workers = worker_count();
  long long total = end - begin;
  if (workers <= 1 || total < 4096) {
    State s = init;
    for (long long i = begin; i < end; ++i) fold(s, i);
    return s;
  }
  long long chunk = (total + workers - 1) / workers;
  std::vector<State> states;
  std::vector<std::thread> pool;
  states.reserve(workers);
  for (int w = 0; w < workers; ++w) states.push_back(init);
  for (int w = 0; w < workers; ++w) {
    long long lo = begin + w * chunk;
    long long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &states, w, &fold] {
      for (long long i = lo; i < hi; ++i) fold(states[w], i);
    });
  }
  for (auto& t : pool) t.join();
  State out = init;
  for (int w = 0; w < workers; ++w) merge(out, states[w]);
  return out;
}

}  // namespace multinorm

#endif
