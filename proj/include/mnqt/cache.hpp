#pragma once

// Write-once concurrent memo: readers race freely, the first finished
// writer publishes, latecomers recompute idempotently and discard.

#include <functional>
#include <map>
#include <mutex>

namespace mnqt {

template <typename K, typename V>
class Cache {
  public:
    V get_or_compute(const K& key, const std::function<V()>& fn) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V value = fn();
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = map_.emplace(key, std::move(value));
        return it->second;
    }

  private:
    std::mutex mu_;
    std::map<K, V> map_;
};

}  // namespace mnqt
