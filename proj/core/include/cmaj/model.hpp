#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmaj/numeric.hpp"
#include "cmaj/rational.hpp"
#include "cmaj/rng.hpp"

namespace cmaj {

enum class Family {
  Gaussian,
  Cauchy,
  Uniform,
  SymmetricStable,
  Rademacher,
  Bernoulli,
  FiniteSupport,
  Empirical,
};

struct Atom {
  Rational value;
  Rational probability;
};

// Law of the increments X_1, X_2, ... . Continuous families are i.i.d. and
// satisfy the distinct-subset-mean assumption almost surely; atomic families
// carry exact rational atoms; Empirical is a fixed list drawn without
// replacement (an exchangeable, non-independent model).
class IncrementModel {
 public:
  static IncrementModel gaussian(double mean = 0.0, double sd = 1.0);
  static IncrementModel cauchy(double location = 0.0, double scale = 1.0);
  static IncrementModel uniform(double a, double b);
  // Chambers-Mallows-Stuck symmetric alpha-stable, alpha in (0, 2].
  static IncrementModel symmetric_stable(double alpha, double scale = 1.0);
  static IncrementModel rademacher();
  // P(X = +1) = p, P(X = -1) = 1 - p.
  static IncrementModel bernoulli(const Rational& p);
  static IncrementModel finite_support(std::vector<Atom> atoms);
  static IncrementModel empirical(std::vector<Rational> values);

  // "gaussian[:mean,sd]", "cauchy[:loc,scale]", "uniform:a,b",
  // "stable:alpha", "rademacher", "bernoulli:p",
  // "finite:v@p;v@p;...", "empirical:v,v,...".
  static IncrementModel parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  bool continuous() const noexcept;
  bool atomic() const noexcept;
  bool independent() const noexcept { return family_ != Family::Empirical; }
  // Symmetric about the mean/centre, so P(S_j > j * centre) = 1/2.
  bool symmetric() const;

  const std::vector<Atom>& atoms() const;
  const std::vector<Rational>& empirical_values() const;

  double param(std::size_t i) const { return params_.at(i); }
  std::optional<double> mean() const;
  std::optional<Rational> exact_mean() const;
  std::string name() const;

 private:
  Family family_ = Family::Gaussian;
  std::vector<double> params_;
  std::vector<Atom> atoms_;
  std::vector<Rational> values_;
  std::vector<std::uint64_t> cumulative_;  // integer CDF over atoms_
  std::uint64_t denominator_ = 0;          // 0: fall back to binary64 inversion

  friend double draw_real(const IncrementModel&, RngStream&);
  friend const Rational& draw_atom(const IncrementModel&, RngStream&);
};

// Continuous draws are rounded to the grid 2^-32 and redrawn when
// |x| >= 2^16, so that prefix sums of up to 2^5 arbitrary draws (and of far
// longer walks for light-tailed laws) are exact in binary64.
inline constexpr double kSampleGrid = 0x1.0p-32;
inline constexpr double kSampleCap = 0x1.0p16;

double draw_real(const IncrementModel& model, RngStream& rng);
const Rational& draw_atom(const IncrementModel& model, RngStream& rng);

std::vector<double> sample_real(const IncrementModel& model, std::size_t n, RngStream& rng);
std::vector<Rational> sample_exact(const IncrementModel& model, std::size_t n, RngStream& rng);

// Representation follows the model: binary64 for continuous families,
// exact rationals for atomic and empirical ones.
std::vector<Numeric> sample_increments(const IncrementModel& model, std::size_t n, RngStream& rng);

// n(q) with P(n(q) >= k) = q^k.
std::size_t sample_geometric_length(double q, RngStream& rng);

// P(S_j <= x) where closed forms exist (Gaussian, Cauchy, Uniform with j <= 30).
std::optional<double> sum_cdf(const IncrementModel& model, int j, double x);

double standard_normal_cdf(double z);

}  // namespace cmaj
