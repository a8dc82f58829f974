#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace cmaj {

// Ordered positive blocks summing to total().
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<std::size_t> blocks);

  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t operator[](std::size_t i) const { return blocks_[i]; }

  // Cumulative block ends: {0, b1, b1+b2, ..., total}.
  std::vector<std::size_t> boundaries() const;
  static Composition from_boundaries(const std::vector<std::size_t>& cuts);

  // Every block of `coarser` is a concatenation of consecutive blocks of *this.
  bool refines(const Composition& coarser) const;

  std::string str() const;

  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<std::size_t> blocks_;
  std::size_t total_ = 0;
};

// Non-increasing positive parts summing to total().
class Partition {
 public:
  Partition() = default;
  // Parts in any order; they are sorted non-increasing.
  explicit Partition(std::vector<std::size_t> parts);
  static Partition of(const Composition& c) { return Partition(c.blocks()); }

  const std::vector<std::size_t>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  std::size_t total() const noexcept { return total_; }
  // a[j] = number of parts equal to j, for j = 0..total() (a[0] = 0).
  std::vector<std::size_t> multiplicities() const;

  std::string str() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> parts_;
  std::size_t total_ = 0;
};

// All partitions of n, in reverse lexicographic order ((n) first).
std::vector<Partition> all_partitions(std::size_t n);
// All 2^(n-1) compositions of n (n <= 30).
std::vector<Composition> all_compositions(std::size_t n);

}  // namespace cmaj
