#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace softclique {

/// Dense square matrix stored row-major.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }

  /// Writes both (i,j) and (j,i).
  void set_symmetric(std::size_t i, std::size_t j, T value) noexcept {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }

  std::span<const T> row(std::size_t i) const noexcept {
    return std::span<const T>(data_).subspan(i * n_, n_);
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace softclique
