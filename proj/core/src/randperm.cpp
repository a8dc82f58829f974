#include "cmaj/randperm.hpp"

#include <cmath>

#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/parallel.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {
namespace {

constexpr std::size_t kMaxStirling = 64;

const std::vector<std::vector<BigInt>>& stirling_table() {
  static const auto table = [] {
    std::vector<std::vector<BigInt>> s(kMaxStirling + 1, std::vector<BigInt>(kMaxStirling + 1, 0));
    s[0][0] = 1;
    for (std::size_t n = 1; n <= kMaxStirling; ++n)
      for (std::size_t k = 1; k <= n; ++k) s[n][k] = s[n - 1][k - 1] + BigInt(static_cast<unsigned long>(n - 1)) * s[n - 1][k];
    return s;
  }();
  return table;
}

template <Scalar T, class Draw>
bool slopes_decreasing(const Composition& c, Draw&& draw) {
  T prev_sum(0);
  std::size_t prev_len = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    T sum(0);
    for (std::size_t j = 0; j < c[i]; ++j) sum = checked_add(sum, draw());
    if (i > 0 && compare_ratio(prev_sum, static_cast<std::int64_t>(prev_len), sum, static_cast<std::int64_t>(c[i])) <= 0)
      return false;
    prev_sum = sum;
    prev_len = c[i];
  }
  return true;
}

}  // namespace

Partition sample_cycle_lengths(std::size_t n, RngStream& rng) {
  if (n == 0) fail(ErrorCode::InvalidParameter, "cycle lengths need n >= 1");
  std::vector<std::size_t> parts;
  for (std::size_t rest = n; rest > 0;) {
    const std::size_t part = 1 + rng.uniform_index(rest);
    parts.push_back(part);
    rest -= part;
  }
  return Partition(std::move(parts));
}

Rational ewens_partition_prob(const Partition& p) { return ewens_partition_prob(p, Rational(1)); }

Rational ewens_partition_prob(const Partition& p, const Rational& theta) {
  if (theta <= 0) fail(ErrorCode::InvalidParameter, "Ewens parameter must be positive");
  const auto a = p.multiplicities();
  Rational prob = factorial(static_cast<unsigned>(p.total()));
  for (std::size_t i = 0; i < p.total(); ++i) prob /= theta + static_cast<long>(i);
  for (std::size_t j = 1; j < a.size(); ++j) {
    for (std::size_t r = 0; r < a[j]; ++r) prob *= theta / Rational(static_cast<long>(j));
    prob /= factorial(static_cast<unsigned>(a[j]));
  }
  return prob;
}

BigInt stirling_first(std::size_t n, std::size_t k) {
  if (n > kMaxStirling) fail(ErrorCode::CapacityExceeded, "Stirling numbers are tabulated for n <= 64");
  if (k > n) fail(ErrorCode::InvalidParameter, "Stirling numbers need k <= n");
  return stirling_table()[n][k];
}

Rational composition_prob_cauchy(const Composition& c) {
  Rational prob = 1 / factorial(static_cast<unsigned>(c.size()));
  for (auto b : c.blocks()) prob /= static_cast<long>(b);
  return prob;
}

Estimate composition_prob_mc(const IncrementModel& model, const Composition& c, std::size_t samples,
                             RngStream& rng) {
  if (!model.independent()) fail(ErrorCode::InvalidModel, "composition probabilities need i.i.d. increments");
  if (samples == 0) fail(ErrorCode::InvalidParameter, "at least one sample is required");
  const auto hits = run_chunked(samples, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::size_t h = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const bool ok = model.continuous()
                          ? slopes_decreasing<double>(c, [&] { return draw_real(model, s); })
                          : slopes_decreasing<Rational>(c, [&] { return draw_atom(model, s); });
      h += ok ? 1 : 0;
    }
    return h;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  double scale = 1;
  for (auto b : c.blocks()) scale /= static_cast<double>(b);
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {p * scale, scale * std::sqrt(p * (1 - p) / static_cast<double>(samples)), samples};
}

std::map<Composition, std::size_t> face_composition_counts(const IncrementModel& model, std::size_t n,
                                                           std::size_t samples, RngStream& rng) {
  using Counts = std::map<Composition, std::size_t>;
  const auto parts = run_chunked(samples, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    Counts counts;
    for (std::size_t i = 0; i < count; ++i) {
      if (model.continuous()) {
        const auto w = build_walk(sample_real(model, n, s));
        const auto m = concave_majorant(w);
        audit_max_identity(w, m);
        ++counts[m.face_composition()];
      } else {
        const auto w = build_walk(sample_exact(model, n, s));
        const auto m = concave_majorant(w);
        audit_max_identity(w, m);
        ++counts[m.face_composition()];
      }
    }
    return counts;
  });
  Counts total;
  for (const auto& part : parts)
    for (const auto& [c, k] : part) total[c] += k;
  return total;
}

}  // namespace cmaj
