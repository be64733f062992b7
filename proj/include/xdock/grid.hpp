#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace xdock {

/// Dense row-major array with a fixed number of axes. All indices are 0-based.
template <typename T, std::size_t Rank>
class Grid {
 public:
  using Shape = std::array<int, Rank>;

  Grid() { dims_.fill(0); }

  explicit Grid(const Shape& dims, T fill = T{}) : dims_(dims) {
    std::size_t total = 1;
    for (int d : dims_) {
      assert(d >= 0);
      total *= static_cast<std::size_t>(d);
    }
    data_.assign(total, fill);
  }

  template <typename... Idx>
  T& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  template <typename... Idx>
  const T& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  const Shape& dims() const { return dims_; }
  int dim(std::size_t axis) const { return dims_[axis]; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  T sum() const { return std::accumulate(data_.begin(), data_.end(), T{}); }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t offset(const std::array<int, Rank>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < Rank; ++a) {
      assert(idx[a] >= 0 && idx[a] < dims_[a]);
      off = off * static_cast<std::size_t>(dims_[a]) + static_cast<std::size_t>(idx[a]);
    }
    return off;
  }

  Shape dims_;
  std::vector<T> data_;
};

}  // namespace xdock
