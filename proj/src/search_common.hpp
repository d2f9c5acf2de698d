#pragma once

// Shared plumbing for the certify searchers. Not part of the public interface.

#include "zipcert/certify.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace zipcert::detail {

class Budget {
public:
    explicit Budget(std::size_t limit) : limit_(limit) {}
    // Counts one node; false once the limit is exceeded.
    bool tick() {
        if (nodes_.fetch_add(1, std::memory_order_relaxed) >= limit_) {
            hit_.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
    bool hit() const { return hit_.load(std::memory_order_relaxed); }
    std::size_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

private:
    std::size_t limit_;
    std::atomic<std::size_t> nodes_{0};
    std::atomic<bool> hit_{false};
};

// Mutex-guarded map from keys to definitive answers.
template <class Key, class Hash = std::hash<Key>>
class Memo {
public:
    std::optional<Truth> get(const Key& k) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        ++hits_;
        return it->second;
    }
    void put(const Key& k, Truth t) {
        if (t == Truth::unknown) return;
        std::lock_guard<std::mutex> lock(mu_);
        map_.emplace(k, t);
    }
    std::size_t hits() const { return hits_; }

private:
    std::mutex mu_;
    std::unordered_map<Key, Truth, Hash> map_;
    std::size_t hits_ = 0;
};

std::vector<std::string> sorted_labels(const Poset& p, const Mask& m);

// Elements x ≤ top of `cur` whose whole up-set in `cur` lies below top.
Mask free_region(const Poset& p, const Mask& cur, Index top);

// Calls f(U) for every subset U of `region` that contains `top` and is up-closed in `cur`.
// Stops when f returns true; returns whether it stopped. `include_first` orders the
// enumeration from large subsets to small ones.
bool for_each_upclosed(const Poset& p, const Mask& cur, const Mask& region, Index top, bool include_first,
                       const std::function<bool(const Mask&)>& f);

std::string chain_label(const Poset& p, std::vector<Index> chain);

}  // namespace zipcert::detail
