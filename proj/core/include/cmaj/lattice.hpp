#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cmaj/composition.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/model.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/series.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {

inline constexpr std::size_t kMaxPointMassOrder = 64;

// rows[k] maps v to P(S_k = v), k = 0..k_max.
class PointMassTable {
 public:
  PointMassTable() = default;
  explicit PointMassTable(std::vector<std::map<Rational, Rational>> rows) : rows_(std::move(rows)) {}

  std::size_t k_max() const noexcept { return rows_.size() - 1; }
  const std::map<Rational, Rational>& row(std::size_t k) const { return rows_.at(k); }
  Rational mass(std::size_t k, const Rational& v) const;

 private:
  std::vector<std::map<Rational, Rational>> rows_;
};

// Exact convolution powers of an atomic model; k_max <= 64.
PointMassTable point_mass_table(const IncrementModel& model, std::size_t k_max);

// Distinct slopes v/k over the atoms of rows 1..k_max, ordered by reduced
// denominator and then by value (integers first, then halves, thirds, ...).
std::vector<Rational> slope_index(const PointMassTable& table);

// mu_x(q) = sum_{k=1}^{order} q^k P(S_k = k x) / k.
UnivariateSeries mu_series(const PointMassTable& table, const Rational& x, std::size_t order);
UnivariateSeries mu_series(const IncrementModel& model, const Rational& x, std::size_t order);
// -log(1 - q) minus the sum of mu_x over every slope reachable within `order`.
UnivariateSeries mu0_series(const PointMassTable& table, std::size_t order);

struct HKFSeries {
  BivariateSeries H;  // [s^n t^m] = P(H_n = m)
  BivariateSeries K;  // (1 - s)^(-t)
  BivariateSeries F;  // [s^n t^m] = P(F_n = m)
};

HKFSeries gf_HKF(const IncrementModel& model, std::size_t order_s, std::size_t order_t);

struct SlopeLaws {
  Rational slope;
  double mu = 0;                   // mu_x(q)
  double geometric = 0;            // P(H = h) = (1 - g) g^h
  double poisson_mean = 0;         // K ~ Poisson(mu)
  double bernoulli = 0;            // P(F = 1)
  double log_series = 0;           // P(E = i) = p^i / (i mu)
  std::vector<double> segment_length;    // P(L^K = l), index l
  std::vector<double> excursion_length;  // P(L^H = l), index l
  double expected_face_length = 0;
  double no_face_probability = 0;  // exp(-mu)
};

// Series truncated where the neglected mass sum_{k>K} q^k/k is below 1e-15
// (CapacityExceeded when that needs K > 64).
SlopeLaws face_slope_laws(double q, const IncrementModel& model, const Rational& x);

std::size_t series_order_for(double q);

struct NestedFace {
  Rational slope;
  std::vector<std::vector<std::size_t>> segments;  // excursion lengths per segment
};

struct NestedCompositions {
  std::vector<NestedFace> faces;  // decreasing slope
  Composition excursions;
  Composition segments;
  Composition faces_composition;
};

// Per-slope laws are evaluated once; draws are then cheap.
class NestedCompositionSampler {
 public:
  NestedCompositionSampler(double q, const IncrementModel& model);
  NestedCompositions operator()(RngStream& rng) const;
  const std::vector<SlopeLaws>& laws() const noexcept { return laws_; }

 private:
  std::vector<SlopeLaws> laws_;  // decreasing slope
};

NestedCompositions sample_nested_compositions(double q, const IncrementModel& model, RngStream& rng);

// Face list (length, increment) to a majorant; slopes must decrease strictly.
Majorant<Rational> majorant_from_faces(const std::vector<std::pair<std::size_t, Rational>>& faces);

// Joint probability that the transform produces segment composition c and
// majorant `majorant`: zero unless every face is a concatenation of blocks
// of c, else prod_i P(S_{n_i} = n_i x_i) / n_i over the blocks, divided by
// prod_f k_f! where k_f counts the blocks of face f. Summed over c this is
// P(majorant).
Rational conditional_composition_weight(const Majorant<Rational>& majorant, const Composition& c,
                                        const IncrementModel& model);

// Normalised law of the segment composition given the majorant, by
// enumeration of the compositions refining the faces (n <= 24).
std::map<Composition, Rational> conditional_composition_law(const Majorant<Rational>& majorant,
                                                            const IncrementModel& model);

// Walk given its majorant: composition drawn face by face from the
// normalised weights, blocks drawn as exact bridges, and a uniform valid
// rotation per block. NotInSupport when the majorant has zero probability.
Walk<Rational> conditioned_walk_given_majorant(const Majorant<Rational>& majorant, const IncrementModel& model,
                                               RngStream& rng);

// Reusable form of the sampler above: the per-face composition tables are
// built once.
class ConditionedWalkSampler {
 public:
  ConditionedWalkSampler(const Majorant<Rational>& majorant, const IncrementModel& model);
  Walk<Rational> operator()(RngStream& rng) const;

 private:
  struct FaceTable {
    std::size_t length;
    Rational slope;
    std::vector<Rational> block_weight;               // g(m) = P(S_m = m x) / m
    std::vector<std::vector<Rational>> ways;          // ways[k][r]
    std::vector<double> count_law;                    // P(k blocks)
  };
  IncrementModel model_;
  PointMassTable table_;
  std::vector<FaceTable> faces_;

  std::vector<Rational> bridge(std::size_t m, const Rational& target, RngStream& rng) const;
};

// Walk given a single face of slope 0; NoMass when impossible.
Walk<Rational> conditioned_trivial_walk(const IncrementModel& model, std::size_t n, RngStream& rng);

}  // namespace cmaj
