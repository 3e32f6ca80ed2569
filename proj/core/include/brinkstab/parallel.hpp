#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace brinkstab {

/// Run fn(i) for i in [0, n) across worker threads; results land in order.
/// Items must be independent (every solve in this library is).
template <typename F>
void parallel_for(std::size_t n, F&& fn, unsigned max_threads = 0) {
  unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
  if (hw <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  hw = std::min<std::size_t>(hw, n);
  std::vector<std::thread> pool;
  pool.reserve(hw);
  std::mutex mu;
  std::size_t next = 0;
  for (unsigned t = 0; t < hw; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::scoped_lock lock(mu);
          if (next >= n) return;
          i = next++;
        }
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

/// Keyed insert-once memoization (first writer wins, later lookups reuse).
template <typename K, typename V>
class OnceCache {
 public:
  template <typename F>
  V get_or_compute(const K& key, F&& compute) {
    {
      std::scoped_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = compute();
    std::scoped_lock lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<K, V> map_;
};

}  // namespace brinkstab
