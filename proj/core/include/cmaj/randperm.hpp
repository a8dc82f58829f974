#pragma once

#include <cstddef>
#include <map>

#include "cmaj/composition.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rational.hpp"
#include "cmaj/rng.hpp"

namespace cmaj {

// Cycle type of a uniform permutation of [n] by discrete uniform stick
// breaking: the first part is uniform on {1..n}, then recurse on the rest.
Partition sample_cycle_lengths(std::size_t n, RngStream& rng);

// prod_j 1 / (j^{a_j} a_j!).
Rational ewens_partition_prob(const Partition& p);
// Ewens law with parameter theta:
// theta^K n! / (theta (theta+1) ... (theta+n-1)) prod_j 1 / (j^{a_j} a_j!).
Rational ewens_partition_prob(const Partition& p, const Rational& theta);

// Unsigned Stirling numbers of the first kind, 0 <= k <= n <= 64.
BigInt stirling_first(std::size_t n, std::size_t k);

// (1/k!) prod 1/n_i.
Rational composition_prob_cauchy(const Composition& c);

struct Estimate {
  double value = 0;
  double se = 0;
  std::size_t samples = 0;
};

// P(S^(1)/n_1 > ... > S^(k)/n_k) * prod 1/n_i from independent block sums.
Estimate composition_prob_mc(const IncrementModel& model, const Composition& c, std::size_t samples,
                             RngStream& rng);

// Frequencies of the face composition over `samples` simulated walks of
// length n. Every walk also goes through the maximum-identity audit.
std::map<Composition, std::size_t> face_composition_counts(const IncrementModel& model, std::size_t n,
                                                           std::size_t samples, RngStream& rng);

}  // namespace cmaj
