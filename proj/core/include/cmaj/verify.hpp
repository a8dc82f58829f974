#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rational.hpp"

namespace cmaj {

// Outcome to exact probability; emitted distributions sum to exactly 1.
template <class K>
using ExactDistribution = std::map<K, Rational>;

template <class K>
Rational total_mass(const ExactDistribution<K>& d) {
  Rational s = 0;
  for (const auto& [k, p] : d) s += p;
  return s;
}

// Exact output law of the transform when the given values are fed in a
// uniformly random order. Independent of the transform module: segment
// sizes come from the cycle types of all n! permutations, valid rotations
// from direct partial-sum comparison, tie orders and rotations uniformly.
// n <= 7, or n <= 6 when some subset means coincide; CapacityExceeded
// otherwise.
ExactDistribution<std::vector<Rational>> enumerate_transform_distribution(const std::vector<Rational>& increments);

// Exchangeable law of the arrangements of a multiset: multiplicity / n!.
ExactDistribution<std::vector<Rational>> exchangeable_law(const std::vector<Rational>& increments);

struct HFDistribution {
  ExactDistribution<std::size_t> H;
  ExactDistribution<std::size_t> F;
};

// Laws of H_n and F_n by enumerating every path of an atomic model
// (Rademacher by default); at most 2^16 paths.
HFDistribution enumerate_H_F_distribution(std::size_t n);
HFDistribution enumerate_H_F_distribution(std::size_t n, const IncrementModel& model);

// Law of the increment sequence given its majorant, over all paths of an
// atomic model (n <= 12 and at most 2^20 paths). NotInSupport when no path
// has this majorant.
ExactDistribution<std::vector<Rational>> exhaustive_conditional_law(const Majorant<Rational>& majorant,
                                                                    const IncrementModel& model);

struct BijectionReport {
  std::size_t n = 0;
  std::size_t pairs = 0;        // n * n!
  std::size_t distinct_images = 0;
  std::size_t round_trip_failures = 0;
  bool bijective = false;
};

// Runs the 3214 transform on every (U, arrangement) of the given values
// (strict assumption A required) and checks that the images (k, order)
// are pairwise distinct and that inversion recovers each input.
BijectionReport verify_3214_bijection(const std::vector<Rational>& increments);

// Total variation distance between a sample frequency table and a law.
template <class K>
double total_variation(const std::map<K, std::size_t>& counts, const ExactDistribution<K>& law) {
  double n = 0;
  for (const auto& [k, c] : counts) n += static_cast<double>(c);
  double tv = 0;
  for (const auto& [k, p] : law) {
    const auto it = counts.find(k);
    const double f = it == counts.end() ? 0.0 : static_cast<double>(it->second) / n;
    tv += std::abs(f - p.get_d());
  }
  for (const auto& [k, c] : counts)
    if (!law.count(k)) tv += static_cast<double>(c) / n;
  return tv / 2;
}

// Distinct rationals satisfying strict assumption A (no two distinct
// subsets with equal mean), for exact tests.
std::vector<Rational> generic_increments(std::size_t n);

}  // namespace cmaj
