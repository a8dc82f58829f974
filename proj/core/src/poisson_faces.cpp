#include "cmaj/poisson_faces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "cmaj/error.hpp"
#include "cmaj/lattice.hpp"
#include "cmaj/parallel.hpp"
#include "cmaj/transform.hpp"

namespace cmaj {
namespace {

constexpr std::size_t kHeadLengths = 32;
constexpr std::size_t kRejectionCap = 1000000;

void check_q(double q) {
  if (!(q > 0 && q < 1)) fail(ErrorCode::InvalidParameter, "q must lie in (0, 1)");
}

std::size_t draw_poisson(double mean, RngStream& rng) {
  if (!(mean > 0)) return 0;
  return std::poisson_distribution<std::size_t>(mean)(rng);
}

// Calls emit(j) once per point of the process with intensity q^j / j.
template <class Emit>
void for_each_face_length(double q, RngStream& rng, Emit&& emit) {
  check_q(q);
  double qj = 1;
  for (std::size_t j = 1; j <= kHeadLengths; ++j) {
    qj *= q;
    const std::size_t a = draw_poisson(qj / static_cast<double>(j), rng);
    for (std::size_t i = 0; i < a; ++i) emit(j);
  }
  const double q_head = qj;
  double tail = 0;
  for (std::size_t j = kHeadLengths + 1;; ++j) {
    qj *= q;
    const double term = qj / static_cast<double>(j);
    tail += term;
    if (term <= tail * 1e-18 || qj == 0) break;
  }
  const std::size_t extra = draw_poisson(tail, rng);
  for (std::size_t i = 0; i < extra; ++i) {
    double u = rng.uniform01() * tail;
    double p = q_head;
    std::size_t j = kHeadLengths;
    while (true) {
      ++j;
      p *= q;
      u -= p / static_cast<double>(j);
      if (u < 0 || p == 0) break;
    }
    emit(j);
  }
}

double sum_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s = checked_add(s, x);
  return s;
}

double positive_part_mean_gaussian(double mean, double sd) {
  const double z = mean / sd;
  return mean * standard_normal_cdf(z) + sd * std::exp(-0.5 * z * z) / std::sqrt(2 * std::numbers::pi);
}

}  // namespace

std::size_t FacePointProcess::total_length() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.length;
  return n;
}

std::map<std::size_t, std::size_t> sample_face_counts(double q, RngStream& rng) {
  std::map<std::size_t, std::size_t> counts;
  for_each_face_length(q, rng, [&](std::size_t j) { ++counts[j]; });
  return counts;
}

FacePointProcess sample_face_point_process(double q, const IncrementModel& model, RngStream& rng,
                                           bool with_paths) {
  if (!model.continuous())
    fail(ErrorCode::UseLatticeModule, model.name() + " is not continuous; use the lattice samplers");
  FacePointProcess out;
  out.q = q;
  out.with_paths = with_paths;
  const auto counts = sample_face_counts(q, rng);
  for (const auto& [j, count] : counts) {
    for (std::size_t c = 0; c < count; ++c) {
      auto xs = sample_real(model, j, rng);
      FacePoint p;
      p.length = j;
      p.increment = sum_of(xs);
      if (with_paths) {
        const auto shifts = valid_cyclic_shifts(xs);
        if (shifts.size() != 1) fail(ErrorCode::DegenerateInput, "segment without a unique valid rotation");
        p.path = rotate_block(xs, shifts.front());
      }
      out.points.push_back(std::move(p));
    }
  }
  return out;
}

Walk<double> assemble_walk_from_faces(const FacePointProcess& process) {
  if (!process.with_paths && !process.points.empty())
    fail(ErrorCode::InvalidInput, "assembly needs a process sampled with paths");
  std::vector<std::size_t> order(process.points.size());
  std::iota(order.begin(), order.end(), 0);
  auto slope_cmp = [&](std::size_t a, std::size_t b) {
    const auto& pa = process.points[a];
    const auto& pb = process.points[b];
    return compare_ratio(pa.increment, static_cast<std::int64_t>(pa.length), pb.increment,
                         static_cast<std::int64_t>(pb.length));
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return slope_cmp(a, b) > 0; });
  std::vector<double> xs;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && slope_cmp(order[i - 1], order[i]) == 0)
      fail(ErrorCode::DegenerateInput, "two faces share a slope");
    const auto& path = process.points[order[i]].path;
    xs.insert(xs.end(), path.begin(), path.end());
  }
  return build_walk(std::move(xs));
}

double prob_sum_exceeds(const IncrementModel& model, std::size_t j, double mu) {
  if (j == 0) fail(ErrorCode::InvalidParameter, "face lengths start at 1");
  const double jj = static_cast<double>(j);
  if (model.family() == Family::Gaussian)
    return standard_normal_cdf((jj * model.param(0) - jj * mu) / (model.param(1) * std::sqrt(jj)));
  const auto cdf = sum_cdf(model, static_cast<int>(j), jj * mu);
  if (!cdf) fail(ErrorCode::Unsupported, "no closed form for the law of S_j under " + model.name());
  return 1.0 - *cdf;
}

std::vector<Face<double>> sample_infinite_majorant(const IncrementModel& model, double mu, std::size_t j_max,
                                                   RngStream& rng) {
  if (!model.continuous()) fail(ErrorCode::UseLatticeModule, model.name() + " is not continuous");
  const auto mean = model.mean();
  if (!mean) fail(ErrorCode::InvalidModel, model.name() + " has no finite mean");
  if (mu < *mean) fail(ErrorCode::InvalidParameter, "mu must be at least the increment mean");

  std::vector<Face<double>> faces;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const double p = prob_sum_exceeds(model, j, mu);
    const std::size_t count = draw_poisson(p / static_cast<double>(j), rng);
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t tries = 0;
      while (true) {
        if (++tries > kRejectionCap) fail(ErrorCode::SamplingFailed, "rejection cap exceeded for S_j > j mu");
        const double s = sum_of(sample_real(model, j, rng));
        if (sign_det(1, s, 0.0, static_cast<std::int64_t>(j), mu, 0.0) > 0) {
          faces.push_back({j, s, 0, 0});
          break;
        }
      }
    }
  }
  std::sort(faces.begin(), faces.end(), [](const Face<double>& a, const Face<double>& b) { return steeper(a, b); });
  std::size_t t = 0;
  for (auto& f : faces) {
    f.start_time = t;
    t += f.length;
    f.end_time = t;
  }
  return faces;
}

Numeric hunt_rhs(const IncrementModel& model, std::size_t n) {
  if (model.family() == Family::Gaussian) {
    double total = 0;
    for (std::size_t l = 1; l <= n; ++l) {
      const double ll = static_cast<double>(l);
      total += positive_part_mean_gaussian(ll * model.param(0), model.param(1) * std::sqrt(ll)) / ll;
    }
    return total;
  }
  if (model.atomic()) {
    Rational total = 0;
    if (n == 0) return total;
    const auto table = point_mass_table(model, n);
    for (std::size_t l = 1; l <= n; ++l) {
      Rational e = 0;
      for (const auto& [v, p] : table.row(l))
        if (v > 0) e += v * p;
      total += e / static_cast<long>(l);
    }
    return total;
  }
  if (n == 0) return 0.0;
  fail(ErrorCode::Unsupported, "no closed form for E(S_l^+) under " + model.name());
}

Estimate hunt_rhs_mc(const IncrementModel& model, std::size_t n, std::size_t samples, RngStream& rng) {
  if (!model.continuous()) fail(ErrorCode::UseLatticeModule, model.name() + " is not continuous");
  if (samples == 0) fail(ErrorCode::InvalidParameter, "at least one sample is required");
  struct Acc {
    double sum = 0, sum_sq = 0;
  };
  const auto parts = run_chunked(samples, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    Acc acc;
    for (std::size_t i = 0; i < count; ++i) {
      double path = 0, value = 0;
      for (std::size_t l = 1; l <= n; ++l) {
        path = checked_add(path, draw_real(model, s));
        value += std::max(path, 0.0) / static_cast<double>(l);
      }
      acc.sum += value;
      acc.sum_sq += value * value;
    }
    return acc;
  });
  Acc total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double N = static_cast<double>(samples);
  const double mean = total.sum / N;
  const double var = std::max(0.0, total.sum_sq / N - mean * mean);
  return {mean, std::sqrt(var / N), samples};
}

Estimate mean_maximum_mc(const IncrementModel& model, std::size_t n, std::size_t samples, RngStream& rng) {
  if (!model.continuous()) fail(ErrorCode::UseLatticeModule, model.name() + " is not continuous");
  if (samples == 0 || n == 0) fail(ErrorCode::InvalidParameter, "need n >= 1 and at least one sample");
  struct Acc {
    double sum = 0, sum_sq = 0;
  };
  const auto parts = run_chunked(samples, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    Acc acc;
    for (std::size_t i = 0; i < count; ++i) {
      const auto w = build_walk(sample_real(model, n, s));
      const auto m = concave_majorant(w);
      const auto d = argmax_decomposition(w, m);
      record_identity(d.identity_holds);
      acc.sum += d.M;
      acc.sum_sq += d.M * d.M;
    }
    return acc;
  });
  Acc total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double N = static_cast<double>(samples);
  const double mean = total.sum / N;
  const double var = std::max(0.0, total.sum_sq / N - mean * mean);
  return {mean, std::sqrt(var / N), samples};
}

double spitzer_compound_poisson_sample(double q, const IncrementModel& model, RngStream& rng) {
  if (!model.continuous()) fail(ErrorCode::UseLatticeModule, model.name() + " is not continuous");
  double M = 0;
  for_each_face_length(q, rng, [&](std::size_t k) {
    const double s = sum_of(sample_real(model, k, rng));
    if (s > 0) M = checked_add(M, s);
  });
  return M;
}

WalkSummary summarize_walk(const Walk<double>& walk) {
  WalkSummary s;
  s.n = walk.size();
  if (s.n == 0) return s;
  const auto m = concave_majorant(walk);
  const auto d = argmax_decomposition(walk, m);
  record_identity(d.identity_holds);
  s.S = walk.values.back();
  s.M = d.M;
  s.L = d.L;
  s.F = m.F();
  s.positive_faces = d.pre_faces.size();
  s.nonpositive_faces = d.post_faces.size();
  s.faces = m.face_composition();
  return s;
}

Walk<double> sample_geometric_walk(double q, const IncrementModel& model, RngStream& rng) {
  const std::size_t n = sample_geometric_length(q, rng);
  return build_walk(sample_real(model, n, rng));
}

std::optional<Rational> constant_positive_probability(const IncrementModel& model) {
  switch (model.family()) {
    case Family::Gaussian:
    case Family::Cauchy:
      if (model.param(0) == 0) return Rational(1, 2);
      return std::nullopt;
    case Family::Uniform:
      if (model.param(0) == -model.param(1)) return Rational(1, 2);
      return std::nullopt;
    case Family::SymmetricStable:
      return Rational(1, 2);
    default:
      return std::nullopt;
  }
}

MaxSplitResult max_split_conditional_test(const IncrementModel& model, double q, std::size_t ell,
                                          std::size_t samples, RngStream& rng) {
  const auto p_plus = constant_positive_probability(model);
  if (!p_plus) fail(ErrorCode::InvalidModel, "P(S_j > 0) is not constant under " + model.name());
  check_q(q);
  struct Acc {
    std::map<Partition, std::size_t> observed;
    std::size_t conditioned = 0;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  };
  const auto parts = run_chunked(samples, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    Acc acc;
    for (std::size_t i = 0; i < count; ++i) {
      const auto w = sample_geometric_walk(q, model, s);
      std::size_t L = 0, pre = 0, post = 0;
      std::vector<std::size_t> pre_lengths;
      if (w.size() > 0) {
        const auto m = concave_majorant(w);
        const auto d = argmax_decomposition(w, m);
        record_identity(d.identity_holds);
        L = d.L;
        pre = d.pre_faces.size();
        post = d.post_faces.size();
        for (const auto& f : d.pre_faces) pre_lengths.push_back(f.length);
      }
      const double x = static_cast<double>(pre), y = static_cast<double>(post);
      acc.sx += x;
      acc.sy += y;
      acc.sxx += x * x;
      acc.syy += y * y;
      acc.sxy += x * y;
      if (L == ell) {
        ++acc.conditioned;
        ++acc.observed[Partition(std::move(pre_lengths))];
      }
    }
    return acc;
  });

  MaxSplitResult r;
  r.samples = samples;
  Acc total;
  for (const auto& p : parts) {
    for (const auto& [k, v] : p.observed) total.observed[k] += v;
    total.conditioned += p.conditioned;
    total.sx += p.sx;
    total.sy += p.sy;
    total.sxx += p.sxx;
    total.syy += p.syy;
    total.sxy += p.sxy;
  }
  r.observed = std::move(total.observed);
  r.conditioned = total.conditioned;
  for (const auto& part : all_partitions(ell)) r.expected[part] = ewens_partition_prob(part, *p_plus);
  const double N = static_cast<double>(samples);
  const double cov = total.sxy / N - (total.sx / N) * (total.sy / N);
  const double vx = total.sxx / N - (total.sx / N) * (total.sx / N);
  const double vy = total.syy / N - (total.sy / N) * (total.sy / N);
  r.correlation = (vx > 0 && vy > 0) ? cov / std::sqrt(vx * vy) : 0.0;
  r.correlation_se = 1.0 / std::sqrt(N);
  return r;
}

}  // namespace cmaj
