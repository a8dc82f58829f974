#include "cmaj/composition.hpp"

#include <algorithm>
#include <functional>

#include "cmaj/error.hpp"

namespace cmaj {
namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s + ")";
}

}  // namespace

Composition::Composition(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  for (auto b : blocks_) {
    if (b == 0) fail(ErrorCode::InvalidInput, "composition blocks must be positive");
    total_ += b;
  }
}

std::vector<std::size_t> Composition::boundaries() const {
  std::vector<std::size_t> cuts{0};
  for (auto b : blocks_) cuts.push_back(cuts.back() + b);
  return cuts;
}

Composition Composition::from_boundaries(const std::vector<std::size_t>& cuts) {
  std::vector<std::size_t> blocks;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) fail(ErrorCode::InvalidInput, "boundaries must be strictly increasing");
    blocks.push_back(cuts[i] - cuts[i - 1]);
  }
  return Composition(std::move(blocks));
}

bool Composition::refines(const Composition& coarser) const {
  if (total_ != coarser.total_) return false;
  const auto fine = boundaries();
  for (auto cut : coarser.boundaries())
    if (!std::binary_search(fine.begin(), fine.end(), cut)) return false;
  return true;
}

std::string Composition::str() const { return join(blocks_); }

Partition::Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (auto p : parts_) {
    if (p == 0) fail(ErrorCode::InvalidInput, "partition parts must be positive");
    total_ += p;
  }
}

std::vector<std::size_t> Partition::multiplicities() const {
  std::vector<std::size_t> a(total_ + 1, 0);
  for (auto p : parts_) ++a[p];
  return a;
}

std::string Partition::str() const { return join(parts_); }

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t rest, std::size_t cap) {
    if (rest == 0) {
      out.emplace_back(current);
      return;
    }
    for (std::size_t p = std::min(rest, cap); p >= 1; --p) {
      current.push_back(p);
      rec(rest - p, p);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Composition> all_compositions(std::size_t n) {
  if (n > 30) fail(ErrorCode::CapacityExceeded, "composition enumeration is limited to n <= 30");
  std::vector<Composition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::vector<std::size_t> blocks;
    std::size_t len = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (mask >> i & 1U) {
        blocks.push_back(len);
        len = 1;
      } else {
        ++len;
      }
    }
    blocks.push_back(len);
    out.emplace_back(std::move(blocks));
  }
  return out;
}

}  // namespace cmaj
