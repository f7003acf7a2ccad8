#pragma once

#include <map>
#include <memory>
#include <mutex>

namespace vansum::detail {

// Build-once cache keyed by modulus. The value is built outside the lock so
// builders may recurse into other cached lookups; a lost race discards the
// duplicate.
template <class Value, class Make>
const Value& cached(std::map<int, std::unique_ptr<Value>>& cache, std::mutex& mu, int key, Make make) {
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<Value>(make());
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace(key, std::move(value));
  return *it->second;
}

}  // namespace vansum::detail
