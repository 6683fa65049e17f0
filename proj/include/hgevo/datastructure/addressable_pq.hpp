#pragma once

#include <cassert>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace hgevo::ds {

// Binary max-heap over dense ids [0, capacity) with O(log n) key updates.
// Keys are compared with operator<; the largest key is on top.
template <typename Id, typename Key>
class AddressablePQ {
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

 public:
  explicit AddressablePQ(std::size_t capacity = 0) : position_(capacity, kAbsent) {}

  void clear() {
    for (const auto& [id, key] : heap_) {
      position_[id] = kAbsent;
    }
    heap_.clear();
  }

  void resize(std::size_t capacity) {
    clear();
    position_.assign(capacity, kAbsent);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Id id) const { return position_[id] != kAbsent; }

  Id top() const {
    assert(!empty());
    return heap_.front().first;
  }
  const Key& top_key() const {
    assert(!empty());
    return heap_.front().second;
  }
  const Key& key(Id id) const {
    assert(contains(id));
    return heap_[position_[id]].second;
  }

  void push(Id id, Key key) {
    assert(!contains(id));
    position_[id] = heap_.size();
    heap_.emplace_back(id, std::move(key));
    sift_up(heap_.size() - 1);
  }

  void update(Id id, Key key) {
    assert(contains(id));
    const std::size_t pos = position_[id];
    const bool increased = heap_[pos].second < key;
    heap_[pos].second = std::move(key);
    if (increased) {
      sift_up(pos);
    } else {
      sift_down(pos);
    }
  }

  void remove(Id id) {
    assert(contains(id));
    const std::size_t pos = position_[id];
    const std::size_t last = heap_.size() - 1;
    if (pos != last) {
      swap_entries(pos, last);
    }
    heap_.pop_back();
    position_[id] = kAbsent;
    if (pos < heap_.size()) {
      sift_up(pos);
      sift_down(pos);
    }
  }

  Id pop() {
    const Id id = top();
    remove(id);
    return id;
  }

 private:
  void swap_entries(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    position_[heap_[a].first] = a;
    position_[heap_[b].first] = b;
  }

  void sift_up(std::size_t pos) {
    while (pos > 0) {
      const std::size_t parent = (pos - 1) / 2;
      if (!(heap_[parent].second < heap_[pos].second)) {
        break;
      }
      swap_entries(parent, pos);
      pos = parent;
    }
  }

  void sift_down(std::size_t pos) {
    for (;;) {
      const std::size_t left = 2 * pos + 1;
      const std::size_t right = left + 1;
      std::size_t largest = pos;
      if (left < heap_.size() && heap_[largest].second < heap_[left].second) {
        largest = left;
      }
      if (right < heap_.size() && heap_[largest].second < heap_[right].second) {
        largest = right;
      }
      if (largest == pos) {
        break;
      }
      swap_entries(pos, largest);
      pos = largest;
    }
  }

  std::vector<std::pair<Id, Key>> heap_;
  std::vector<std::size_t> position_;
};

}  // namespace hgevo::ds
