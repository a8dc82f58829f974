#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cmaj/composition.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/randperm.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {

struct FacePoint {
  std::size_t length = 0;
  double increment = 0;
  std::vector<double> path;  // increments of the segment, when requested
};

struct FacePointProcess {
  double q = 0;
  std::vector<FacePoint> points;
  bool with_paths = false;

  std::size_t total_length() const;
};

// Independent A_j ~ Poisson(q^j / j) for every j >= 1. Lengths beyond a
// cutoff are handled exactly: the number of such points is Poisson with the
// tail mass and each is placed by the normalised tail law.
std::map<std::size_t, std::size_t> sample_face_counts(double q, RngStream& rng);

// Marks each length-j point with an independent S_j; with paths, the j
// increments are rotated by their unique valid cyclic shift. Continuous
// models only (UseLatticeModule otherwise).
FacePointProcess sample_face_point_process(double q, const IncrementModel& model, RngStream& rng,
                                           bool with_paths);

// Segments in strictly decreasing slope order; an exact tie raises
// DegenerateInput.
Walk<double> assemble_walk_from_faces(const FacePointProcess& process);

// Faces of the infinite-horizon majorant restricted to slopes above mu and
// to lengths j <= j_max: counts Poisson(P(S_j > j mu) / j), increments from
// S_j given S_j > j mu by rejection (at most 10^6 tries per point). Sorted by
// decreasing slope, with start times accumulated along the list. Needs a
// model with a finite mean, mu >= that mean, and a closed-form law of S_j.
std::vector<Face<double>> sample_infinite_majorant(const IncrementModel& model, double mu, std::size_t j_max,
                                                   RngStream& rng);

// P(S_j > j mu) for the families with a closed form.
double prob_sum_exceeds(const IncrementModel& model, std::size_t j, double mu);

// sum_{l=1}^n E(S_l^+) / l. Closed form for Gaussian, exact for atomic
// models; Unsupported otherwise (use hunt_rhs_mc).
Numeric hunt_rhs(const IncrementModel& model, std::size_t n);
Estimate hunt_rhs_mc(const IncrementModel& model, std::size_t n, std::size_t samples, RngStream& rng);

// Monte Carlo E(M_n) over walks of length n; every walk is audited.
Estimate mean_maximum_mc(const IncrementModel& model, std::size_t n, std::size_t samples, RngStream& rng);

// M = sum over Poisson(q^k/k) copies of S_k^+, with the tail handled as in
// sample_face_counts.
double spitzer_compound_poisson_sample(double q, const IncrementModel& model, RngStream& rng);

struct WalkSummary {
  std::size_t n = 0;
  double S = 0;
  double M = 0;
  std::size_t L = 0;
  std::size_t F = 0;
  std::size_t positive_faces = 0;
  std::size_t nonpositive_faces = 0;
  Composition faces;
};

// Summary of a walk (n = 0 allowed); the maximum identity is audited.
WalkSummary summarize_walk(const Walk<double>& walk);

// Walk of geometric length n(q) with increments from the model.
Walk<double> sample_geometric_walk(double q, const IncrementModel& model, RngStream& rng);

// P(S_j > 0), when it is the same for every j: 1/2 for continuous models
// symmetric about 0.
std::optional<Rational> constant_positive_probability(const IncrementModel& model);

struct MaxSplitResult {
  std::size_t samples = 0;
  std::size_t conditioned = 0;  // walks with L = ell
  std::map<Partition, std::size_t> observed;  // positive-face partitions given L = ell
  std::map<Partition, Rational> expected;     // Ewens(p+) on ell
  double correlation = 0;  // between numbers of positive and nonpositive faces
  double correlation_se = 0;
};

// Geometric-length walks conditioned on the argmax time ell.
MaxSplitResult max_split_conditional_test(const IncrementModel& model, double q, std::size_t ell,
                                          std::size_t samples, RngStream& rng);

}  // namespace cmaj
