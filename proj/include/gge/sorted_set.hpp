#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace gge {

// Flat ordered set backed by a sorted, duplicate-free vector. Contiguous
// storage keeps the alignment kernels indexable from OpenMP loops.
template <typename T>
class SortedSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  SortedSet() = default;
  SortedSet(std::initializer_list<T> init) : items_(init) { canonicalize(); }
  explicit SortedSet(std::vector<T> items) : items_(std::move(items)) { canonicalize(); }

  template <typename It>
  SortedSet(It first, It last) : items_(first, last) {
    canonicalize();
  }

  // Caller guarantees `items` is already sorted and unique.
  static SortedSet from_sorted(std::vector<T> items) {
    SortedSet s;
    s.items_ = std::move(items);
    return s;
  }

  [[nodiscard]] bool contains(const T& v) const {
    return std::binary_search(items_.begin(), items_.end(), v);
  }

  void insert(const T& v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) items_.insert(it, v);
  }

  bool erase(const T& v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) return false;
    items_.erase(it);
    return true;
  }

  template <typename Pred>
  std::size_t erase_if(Pred pred) {
    return std::erase_if(items_, pred);
  }

  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
  [[nodiscard]] const T& operator[](std::size_t i) const { return items_[i]; }
  [[nodiscard]] const_iterator begin() const noexcept { return items_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return items_.end(); }
  [[nodiscard]] const std::vector<T>& values() const noexcept { return items_; }

  friend bool operator==(const SortedSet&, const SortedSet&) = default;

 private:
  void canonicalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<T> items_;
};

template <typename T>
SortedSet<T> set_difference(const SortedSet<T>& a, const SortedSet<T>& b) {
  std::vector<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SortedSet<T>::from_sorted(std::move(out));
}

template <typename T>
SortedSet<T> set_union(const SortedSet<T>& a, const SortedSet<T>& b) {
  std::vector<T> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SortedSet<T>::from_sorted(std::move(out));
}

}  // namespace gge
