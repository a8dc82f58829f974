#include "cmaj/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "cmaj/composition.hpp"
#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/lattice.hpp"
#include "cmaj/model.hpp"
#include "cmaj/parallel.hpp"
#include "cmaj/poisson_faces.hpp"
#include "cmaj/randperm.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/stats.hpp"
#include "cmaj/transform.hpp"
#include "cmaj/verify.hpp"

namespace cmaj {
namespace {

using Outcomes = std::vector<std::size_t>;

Check exact_check(std::string label, std::size_t mismatches, std::uint64_t cases) {
  Check c;
  c.label = std::move(label);
  c.statistic = static_cast<double>(mismatches);
  c.threshold = 0;
  c.samples = cases;
  c.pass = mismatches == 0;
  return c;
}

Check z_check(std::string label, double value, double target, double se, std::uint64_t samples, double k = 3.0) {
  Check c;
  c.label = std::move(label);
  c.effect_size = value - target;
  c.statistic = se > 0 ? std::abs(value - target) / se : (value == target ? 0.0 : INFINITY);
  c.threshold = k;
  c.samples = samples;
  c.pass = c.statistic <= k;
  return c;
}

Check test_check(std::string label, const TestResult& t) {
  Check c;
  c.label = std::move(label);
  c.statistic = t.statistic;
  c.threshold = t.threshold;
  c.effect_size = t.effect_size;
  c.samples = t.samples;
  c.pass = t.pass;
  return c;
}

Check below_check(std::string label, double value, double bound, std::uint64_t samples) {
  Check c;
  c.label = std::move(label);
  c.statistic = value;
  c.threshold = bound;
  c.effect_size = value;
  c.samples = samples;
  c.pass = value < bound;
  return c;
}

std::function<double(std::size_t)> poisson_pmf(double mean) {
  return [mean](std::size_t k) {
    if (mean == 0) return k == 0 ? 1.0 : 0.0;
    const double kk = static_cast<double>(k);
    return std::exp(-mean + kk * std::log(mean) - std::lgamma(kk + 1));
  };
}

std::function<double(std::size_t)> geometric_pmf(double p) {
  return [p](std::size_t k) { return (1 - p) * std::pow(p, static_cast<double>(k)); };
}

std::vector<double> histogram(const Outcomes& xs, std::size_t cells) {
  std::vector<double> h(cells, 0.0);
  for (auto x : xs) ++h[std::min(x, cells - 1)];
  return h;
}

std::size_t max_of(const Outcomes& a, const Outcomes& b) {
  std::size_t m = 0;
  for (auto x : a) m = std::max(m, x);
  for (auto x : b) m = std::max(m, x);
  return m;
}

template <class K>
std::size_t law_mismatches(const ExactDistribution<K>& a, const ExactDistribution<K>& b) {
  std::set<K> keys;
  for (const auto& [k, p] : a) keys.insert(k);
  for (const auto& [k, p] : b) keys.insert(k);
  std::size_t bad = 0;
  for (const auto& k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const Rational pa = ia == a.end() ? Rational(0) : ia->second;
    const Rational pb = ib == b.end() ? Rational(0) : ib->second;
    if (pa != pb) ++bad;
  }
  return bad;
}

// Concatenates per-chunk vectors in chunk order.
template <class T>
std::vector<T> flatten(const std::vector<std::vector<T>>& parts) {
  std::vector<T> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::string str_n(std::size_t n) { return std::to_string(n); }

// 1. Exact transform law.
void criterion_transform_exact(CriterionResult& r) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto xs = generic_increments(n);
    const auto law = enumerate_transform_distribution(xs);
    std::size_t bad = law_mismatches(law, exchangeable_law(xs));
    if (total_mass(law) != 1) ++bad;
    r.checks.push_back(exact_check("distinct means n=" + str_n(n) + ": mass 1/n! on every order", bad, law.size()));
  }
  const std::vector<std::vector<Rational>> tied = {ints({1, 1}),           ints({0, 0, 0}),
                                                   ints({1, -1, 1, -1}),   ints({2, -1, -1, 2, -1}),
                                                   ints({2, -1, -1, 2, -1, -1}), ints({1, -1, 1, -1, 1, -1}),
                                                   ints({3, 1, -1, -3, 1, -1})};
  for (const auto& xs : tied) {
    const auto law = enumerate_transform_distribution(xs);
    std::size_t bad = law_mismatches(law, exchangeable_law(xs));
    if (total_mass(law) != 1) ++bad;
    std::string name;
    for (const auto& x : xs) name += (name.empty() ? "" : ",") + to_string(x);
    r.checks.push_back(exact_check("tied [" + name + "]: multiplicity/n! on every sequence", bad, law.size()));
  }
}

// 2. Face partition law of Gaussian walks.
void criterion_partition_law(CriterionResult& r, RngStream& rng) {
  const std::size_t n = 8, samples = 100000;
  const auto counts = face_composition_counts(IncrementModel::gaussian(), n, samples, rng);
  std::map<Partition, std::size_t> observed;
  for (const auto& [c, k] : counts) observed[Partition::of(c)] += k;
  std::map<Partition, Rational> expected;
  for (const auto& p : all_partitions(n)) expected[p] = ewens_partition_prob(p);
  r.checks.push_back(test_check("face partition n=8 vs Ewens(1)", chi_square_test(observed, expected)));
}

// 3. Composition probabilities.
void criterion_composition_table(CriterionResult& r, RngStream& rng) {
  const std::size_t N = 1000000;
  const double dN = static_cast<double>(N);
  const auto gauss = IncrementModel::gaussian();
  const std::vector<std::pair<Composition, Rational>> universal = {
      {Composition({1, 1}), Rational(1, 2)},    {Composition({2}), Rational(1, 2)},
      {Composition({3}), Rational(1, 3)},       {Composition({2, 1}), Rational(1, 4)},
      {Composition({1, 2}), Rational(1, 4)},    {Composition({1, 1, 1}), Rational(1, 6)},
      {Composition({4}), Rational(1, 4)},       {Composition({1, 3}), Rational(1, 6)},
      {Composition({3, 1}), Rational(1, 6)},    {Composition({2, 2}), Rational(1, 8)},
      {Composition({1, 1, 1, 1}), Rational(1, 24)}};
  std::map<std::size_t, std::map<Composition, std::size_t>> by_n;
  for (std::size_t n = 2; n <= 4; ++n) by_n[n] = face_composition_counts(gauss, n, N, rng);
  auto freq = [&](const std::map<Composition, std::size_t>& counts, const Composition& c) {
    const auto it = counts.find(c);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / dN;
  };
  for (const auto& [c, p] : universal) {
    const double target = p.get_d();
    r.checks.push_back(z_check("Gaussian p" + c.str() + " = " + to_string(p), freq(by_n[c.total()], c), target,
                               std::sqrt(target * (1 - target) / dN), N));
  }
  const Composition c121({1, 2, 1}), c112({1, 1, 2}), c211({2, 1, 1});
  auto tail_checks = [&](const std::string& model, const std::map<Composition, std::size_t>& counts,
                         double twice_p121) {
    const double p = freq(counts, c121);
    const double t = twice_p121 / 2;
    r.checks.push_back(z_check(model + " 2p(1,2,1)", 2 * p, twice_p121, 2 * std::sqrt(t * (1 - t) / dN), N));
    const double s = p + freq(counts, c112) + freq(counts, c211);
    r.checks.push_back(
        z_check(model + " p(1,1,2)+p(2,1,1)+p(1,2,1) = 1/4", s, 0.25, std::sqrt(0.25 * 0.75 / dN), N));
  };
  tail_checks("Gaussian", by_n[4], 0.195913276);
  const auto cauchy = face_composition_counts(IncrementModel::cauchy(), 4, N, rng);
  tail_checks("Cauchy", cauchy, Rational(2 * composition_prob_cauchy(c121)).get_d());
}

// 4. Poisson face counts at geometric length.
void criterion_poisson_structure(CriterionResult& r, RngStream& rng) {
  const std::size_t N = 100000;
  const auto gauss = IncrementModel::gaussian();
  for (double q : {0.3, 0.5, 0.8}) {
    struct Draw {
      std::size_t a[5] = {0, 0, 0, 0, 0};
      std::size_t F = 0;
      std::size_t total = 0;
    };
    const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
      std::vector<Draw> out(count);
      for (auto& d : out) {
        const auto w = sample_geometric_walk(q, gauss, s);
        if (w.size() > 0) {
          const auto m = concave_majorant(w);
          audit_max_identity(w, m);
          d.F = m.F();
          for (const auto& f : m.faces)
            if (f.length <= 4) ++d.a[f.length];
        }
        d.total = sample_face_point_process(q, gauss, s, false).total_length();
      }
      return out;
    });
    const auto draws = flatten(parts);
    const std::string tag = "q=" + std::to_string(q).substr(0, 3);
    for (std::size_t j = 1; j <= 4; ++j) {
      Outcomes a;
      for (const auto& d : draws) a.push_back(d.a[j]);
      const double mean = std::pow(q, static_cast<double>(j)) / static_cast<double>(j);
      r.checks.push_back(
          test_check(tag + " A_" + str_n(j) + " ~ Poisson(q^j/j)", chi_square_integer(a, poisson_pmf(mean), 12)));
    }
    Outcomes F, total;
    for (const auto& d : draws) {
      F.push_back(d.F);
      total.push_back(d.total);
    }
    r.checks.push_back(
        test_check(tag + " F ~ Poisson(-log(1-q))", chi_square_integer(F, poisson_pmf(-std::log1p(-q)), 30)));
    r.checks.push_back(
        test_check(tag + " point-process length ~ Geometric", chi_square_integer(total, geometric_pmf(q), 300)));
  }
}

// 5. Assembled walks vs direct geometric-length walks.
void criterion_poisson_assembly(CriterionResult& r, RngStream& rng) {
  const std::size_t N = 100000;
  const double q = 0.5;
  const auto gauss = IncrementModel::gaussian();
  struct Pair {
    WalkSummary assembled, direct;
  };
  const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::vector<Pair> out(count);
    for (auto& p : out) {
      p.assembled = summarize_walk(assemble_walk_from_faces(sample_face_point_process(q, gauss, s, true)));
      p.direct = summarize_walk(sample_geometric_walk(q, gauss, s));
    }
    return out;
  });
  const auto pairs = flatten(parts);
  Outcomes na, nd, fa, fd;
  std::vector<double> sa, sd, ma, md;
  for (const auto& p : pairs) {
    na.push_back(p.assembled.n);
    nd.push_back(p.direct.n);
    fa.push_back(p.assembled.F);
    fd.push_back(p.direct.F);
    sa.push_back(p.assembled.S);
    sd.push_back(p.direct.S);
    ma.push_back(p.assembled.M);
    md.push_back(p.direct.M);
  }
  const std::size_t ncells = max_of(na, nd) + 1, fcells = max_of(fa, fd) + 1;
  r.checks.push_back(
      test_check("length n homogeneity", chi_square_homogeneity(histogram(na, ncells), histogram(nd, ncells))));
  r.checks.push_back(test_check("S_n two-sample KS", ks_two_sample(sa, sd)));
  r.checks.push_back(test_check("M two-sample KS", ks_two_sample(ma, md)));
  r.checks.push_back(
      test_check("F homogeneity", chi_square_homogeneity(histogram(fa, fcells), histogram(fd, fcells))));
}

Check audit_check() {
  const auto a = identity_audit();
  Check c = exact_check("maximum identity on every audited walk", a.violations, a.checked);
  if (a.checked == 0) c.pass = false;
  return c;
}

// 6. Hunt identity and the pathwise maximum identity.
void criterion_hunt_identity(CriterionResult& r, RngStream& rng) {
  const auto gauss = IncrementModel::gaussian();
  const std::size_t N = 1000000;
  for (std::size_t n : {4, 16, 64}) {
    const auto est = mean_maximum_mc(gauss, n, N, rng);
    double rhs = 0;
    for (std::size_t l = 1; l <= n; ++l) rhs += 1 / std::sqrt(2 * 3.14159265358979323846 * static_cast<double>(l));
    const double rel = std::abs(est.value - rhs) / rhs;
    r.checks.push_back(below_check("E(M_" + str_n(n) + ") relative error", rel, 0.01, N));
  }
  r.checks.push_back(audit_check());
}

// 7. Compound Poisson law of the maximum.
void criterion_compound_poisson(CriterionResult& r, RngStream& rng) {
  const std::size_t N = 100000;
  const double q = 0.75;
  const auto gauss = IncrementModel::gaussian();
  const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::vector<std::pair<double, double>> out(count);
    for (auto& [compound, direct] : out) {
      compound = spitzer_compound_poisson_sample(q, gauss, s);
      direct = summarize_walk(sample_geometric_walk(q, gauss, s)).M;
    }
    return out;
  });
  std::vector<double> compound, direct;
  for (const auto& [c, d] : flatten(parts)) {
    compound.push_back(c);
    direct.push_back(d);
  }
  r.checks.push_back(test_check("compound Poisson vs direct M, two-sample KS", ks_two_sample(compound, direct)));
  const double target = std::sqrt(1 - q);
  const double se = std::sqrt(target * (1 - target) / static_cast<double>(N));
  auto zero_frac = [&](const std::vector<double>& xs) {
    return static_cast<double>(std::count(xs.begin(), xs.end(), 0.0)) / static_cast<double>(xs.size());
  };
  r.checks.push_back(z_check("P(M=0) = (1-q)^(1/2), direct walks", zero_frac(direct), target, se, N));
  r.checks.push_back(z_check("P(M=0) = (1-q)^(1/2), compound sampler", zero_frac(compound), target, se, N));
}

// 8. Infinite-horizon face counts.
void criterion_infinite_horizon(CriterionResult& r, RngStream& rng) {
  const std::size_t replicas = 10000, n = 10000, j_max = 3;
  const auto model = IncrementModel::gaussian(-1.0, 1.0);
  const double mu = -1.0;
  const auto parts = run_chunked(replicas, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::vector<std::array<std::size_t, 4>> out(count);
    for (auto& c : out) {
      c.fill(0);
      const auto w = build_walk(sample_real(model, n, s));
      const auto m = concave_majorant(w);
      audit_max_identity(w, m);
      for (const auto& f : m.faces)
        if (f.length <= j_max && f.increment > mu * static_cast<double>(f.length)) ++c[f.length];
    }
    return out;
  });
  const auto counts = flatten(parts);
  for (std::size_t j = 1; j <= j_max; ++j) {
    Outcomes a;
    for (const auto& c : counts) a.push_back(c[j]);
    const double mean = prob_sum_exceeds(model, j, mu) / static_cast<double>(j);
    r.checks.push_back(test_check("length-" + str_n(j) + " faces above slope -1 ~ Poisson(P(S_j>-j)/j)",
                                  chi_square_integer(a, poisson_pmf(mean), 12)));
  }
}

// 9. Ewens(p+) law of the pre-maximum faces and independence at the maximum.
void criterion_max_split(CriterionResult& r, RngStream& rng) {
  const auto gauss = IncrementModel::gaussian();
  const std::size_t N = 200000;
  for (std::size_t ell : {2, 3}) {
    const auto res = max_split_conditional_test(gauss, 0.8, ell, N, rng);
    auto t = chi_square_test(res.observed, res.expected);
    r.checks.push_back(test_check("positive faces given L=" + str_n(ell) + " ~ Ewens(1/2)", t));
    r.checks.push_back(z_check("pre/post-maximum face counts uncorrelated (L=" + str_n(ell) + " run)",
                               res.correlation, 0.0, res.correlation_se, N));
  }
}

// 10. Exact generating functions.
void criterion_generating_functions(CriterionResult& r) {
  const std::size_t order = 12;
  for (const auto& model : {IncrementModel::rademacher(), IncrementModel::bernoulli(Rational(1, 3))}) {
    const auto gf = gf_HKF(model, order, order);
    std::size_t bad_h = 0, bad_f = 0, bad_k = 0;
    if (gf.H.coeff(0, 0) != 1 || gf.F.coeff(0, 0) != 1 || gf.K.coeff(0, 0) != 1) ++bad_h;
    for (std::size_t n = 1; n <= order; ++n) {
      const auto hf = enumerate_H_F_distribution(n, model);
      const Rational n_fact = factorial(static_cast<unsigned>(n));
      for (std::size_t m = 0; m <= order; ++m) {
        const auto ih = hf.H.find(m);
        const auto iF = hf.F.find(m);
        if (gf.H.coeff(n, m) != (ih == hf.H.end() ? Rational(0) : ih->second)) ++bad_h;
        if (gf.F.coeff(n, m) != (iF == hf.F.end() ? Rational(0) : iF->second)) ++bad_f;
        const Rational k_exact = m <= n ? Rational(stirling_first(n, m)) / n_fact : Rational(0);
        if (gf.K.coeff(n, m) != k_exact) ++bad_k;
      }
    }
    const std::string tag = model.name();
    const std::uint64_t cells = order * (order + 1);
    r.checks.push_back(exact_check(tag + ": H rows n<=12 equal path enumeration", bad_h, cells));
    r.checks.push_back(exact_check(tag + ": F rows n<=12 equal path enumeration", bad_f, cells));
    r.checks.push_back(exact_check(tag + ": K rows equal Stirling/n!", bad_k, cells));
    const std::size_t mu_order = 32;
    const auto table = point_mass_table(model, mu_order);
    UnivariateSeries sum(mu_order);
    for (const auto& x : slope_index(table)) sum += mu_series(table, x, mu_order);
    const auto diff = sum - UnivariateSeries::minus_log_one_minus(mu_order);
    std::size_t bad_mu = 0;
    for (const auto& c : diff.coefficients()) bad_mu += c != 0 ? 1 : 0;
    r.checks.push_back(exact_check(tag + ": sum of mu_x = -log(1-q) to order 32", bad_mu, mu_order));
  }
}

// 11. Slope-wise laws at slope 0 for the Rademacher walk.
void criterion_slope_laws(CriterionResult& r, RngStream& rng) {
  const std::size_t N = 200000;
  const double q = 0.5;
  const auto model = IncrementModel::rademacher();
  const auto laws = face_slope_laws(q, model, Rational(0));
  struct Draw {
    std::size_t H = 0, K = 0, F = 0, face_length = 0;
    bool unique_min = true;
    std::vector<std::size_t> E;
  };
  const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::vector<Draw> out(count);
    for (auto& d : out) {
      const std::size_t n = sample_geometric_length(q, s);
      if (n == 0) continue;
      const auto xs = sample_exact(model, n, s);
      Rational level = 0, low = 0;
      std::size_t at_low = 1;
      for (const auto& x : xs) {
        level += x;
        if (level < low) {
          low = level;
          at_low = 1;
        } else if (level == low) {
          ++at_low;
        }
      }
      d.unique_min = at_low == 1;
      const auto t = theorem1_transform(xs, s);
      audit_max_identity(t.walk, t.majorant);
      const auto& touches = t.majorant.touch_times;
      auto touches_in = [&](std::size_t a, std::size_t b) {
        return static_cast<std::size_t>(std::count_if(touches.begin(), touches.end(),
                                                      [&](std::size_t u) { return u > a && u <= b; }));
      };
      for (const auto& f : t.majorant.faces) {
        if (f.increment != 0) continue;
        d.F = 1;
        d.face_length = f.length;
        d.H = touches_in(f.start_time, f.end_time);
      }
      std::size_t pos = 0;
      for (auto len : t.segments.blocks()) {
        if (t.walk.values[pos + len] == t.walk.values[pos]) {
          ++d.K;
          d.E.push_back(touches_in(pos, pos + len));
        }
        pos += len;
      }
    }
    return out;
  });
  const auto draws = flatten(parts);
  Outcomes H, K, F, E;
  double uniq = 0, len_sum = 0, len_sq = 0;
  for (const auto& d : draws) {
    H.push_back(d.H);
    K.push_back(d.K);
    F.push_back(d.F);
    E.insert(E.end(), d.E.begin(), d.E.end());
    uniq += d.unique_min ? 1 : 0;
    len_sum += static_cast<double>(d.face_length);
    len_sq += static_cast<double>(d.face_length * d.face_length);
  }
  const double pi = laws.geometric, mu = laws.mu;
  r.checks.push_back(test_check("H at slope 0 ~ Geometric", chi_square_integer(H, geometric_pmf(pi), 20)));
  r.checks.push_back(test_check("K at slope 0 ~ Poisson(mu)", chi_square_integer(K, poisson_pmf(mu), 10)));
  r.checks.push_back(test_check("F at slope 0 ~ Bernoulli", chi_square_integer(F, [&](std::size_t k) {
                                  return k == 0 ? 1 - laws.bernoulli : (k == 1 ? laws.bernoulli : 0.0);
                                }, 1)));
  r.checks.push_back(test_check("E per slope-0 segment ~ log-series", chi_square_integer(E, [&](std::size_t i) {
                                  return i == 0 ? 0.0 : std::pow(pi, static_cast<double>(i)) /
                                                            (static_cast<double>(i) * mu);
                                }, 20)));
  const double dN = static_cast<double>(N);
  const double p0 = laws.no_face_probability;
  r.checks.push_back(z_check("P(unique minimum) = exp(-mu_0)", uniq / dN, p0, std::sqrt(p0 * (1 - p0) / dN), N));
  const double mean_len = len_sum / dN;
  const double sd_len = std::sqrt(std::max(0.0, len_sq / dN - mean_len * mean_len));
  r.checks.push_back(
      z_check("E(slope-0 face length)", mean_len, laws.expected_face_length, sd_len / std::sqrt(dN), N));
}

// Distinct majorants of n-step paths with the number of paths attaining each.
std::vector<std::pair<Majorant<Rational>, std::size_t>> majorants_by_support(const IncrementModel& model,
                                                                             std::size_t n) {
  std::map<std::vector<std::pair<std::size_t, Rational>>, std::size_t> support;
  const auto& atoms = model.atoms();
  std::vector<std::size_t> digit(n, 0);
  for (;;) {
    std::vector<Rational> xs;
    for (auto d : digit) xs.push_back(atoms[d].value);
    std::vector<std::pair<std::size_t, Rational>> key;
    for (const auto& f : concave_majorant(build_walk(xs)).faces) key.push_back({f.length, f.increment});
    ++support[key];
    std::size_t i = 0;
    for (; i < n && ++digit[i] == atoms.size(); ++i) digit[i] = 0;
    if (i == n) break;
  }
  std::vector<std::pair<Majorant<Rational>, std::size_t>> out;
  for (const auto& [key, count] : support) out.push_back({majorant_from_faces(key), count});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

bool faces_equal(const Majorant<Rational>& a, const Majorant<Rational>& b) {
  if (a.faces.size() != b.faces.size()) return false;
  for (std::size_t i = 0; i < a.faces.size(); ++i)
    if (a.faces[i].length != b.faces[i].length || a.faces[i].increment != b.faces[i].increment) return false;
  return true;
}

std::string faces_str(const Majorant<Rational>& m) {
  std::string s;
  for (const auto& f : m.faces) s += (s.empty() ? "" : " ") + str_n(f.length) + ":" + to_string(f.increment);
  return "[" + s + "]";
}

// 12. Conditioned walks.
void criterion_conditioned_walks(CriterionResult& r, RngStream& rng) {
  const auto rad = IncrementModel::rademacher();
  const auto lazy = IncrementModel::finite_support(
      {{Rational(-1), Rational(1, 4)}, {Rational(0), Rational(1, 4)}, {Rational(1), Rational(1, 2)}});

  {
    const std::size_t N = 100000;
    const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
      std::map<std::vector<Rational>, std::size_t> c;
      for (std::size_t i = 0; i < count; ++i) ++c[conditioned_trivial_walk(rad, 4, s).increments];
      return c;
    });
    std::map<std::vector<Rational>, std::size_t> counts;
    for (const auto& p : parts)
      for (const auto& [k, v] : p) counts[k] += v;
    const double dN = static_cast<double>(N), se = std::sqrt(0.25 / dN);
    std::size_t stray = 0;
    for (const auto& [k, v] : counts)
      if (k != ints({-1, -1, 1, 1}) && k != ints({-1, 1, -1, 1})) stray += v;
    r.checks.push_back(z_check("trivial n=4: (-1,-1,1,1) at 1/2",
                               static_cast<double>(counts[ints({-1, -1, 1, 1})]) / dN, 0.5, se, N));
    r.checks.push_back(z_check("trivial n=4: (-1,1,-1,1) at 1/2",
                               static_cast<double>(counts[ints({-1, 1, -1, 1})]) / dN, 0.5, se, N));
    r.checks.push_back(exact_check("trivial n=4: no other path", stray, N));
  }
  {
    const auto law = conditional_composition_law(majorant_from_faces({{4, Rational(0)}}), rad);
    const auto it = law.find(Composition({4}));
    const bool ok = it != law.end() && it->second == Rational(3, 4);
    r.checks.push_back(exact_check("normalised q((4)) = 3/4", ok ? 0 : 1, 1));
  }

  std::vector<std::pair<const IncrementModel*, Majorant<Rational>>> tv_cases;
  for (const auto* model : {&rad, &lazy})
    for (std::size_t n : {4, 6}) {
      std::size_t taken = 0;
      for (const auto& [m, support] : majorants_by_support(*model, n)) {
        if (support < 2 || taken == 2) continue;
        tv_cases.push_back({model, m});
        ++taken;
      }
    }
  std::size_t hull_draws = 0, hull_bad = 0;
  for (const auto& [model, majorant] : tv_cases) {
    const auto law = exhaustive_conditional_law(majorant, *model);
    const std::size_t N = law.size() <= 20 ? 100000 : 200000;
    const ConditionedWalkSampler sampler(majorant, *model);
    struct Acc {
      std::map<std::vector<Rational>, std::size_t> counts;
      std::size_t bad = 0;
    };
    const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
      Acc a;
      for (std::size_t i = 0; i < count; ++i) {
        auto w = sampler(s);
        if (!faces_equal(concave_majorant(w), majorant)) ++a.bad;
        ++a.counts[std::move(w.increments)];
      }
      return a;
    });
    std::map<std::vector<Rational>, std::size_t> counts;
    for (const auto& p : parts) {
      hull_bad += p.bad;
      for (const auto& [k, v] : p.counts) counts[k] += v;
    }
    hull_draws += N;
    r.checks.push_back(below_check(model->name() + " " + faces_str(majorant) + " TV to exhaustive law",
                                   total_variation(counts, law), 0.01, N));
  }
  // Larger majorants, checked for the hull property only.
  for (const auto& [model, increments] :
       std::vector<std::pair<const IncrementModel*, std::vector<Rational>>>{
           {&rad, ints({1, 1, -1, 1, -1, -1, 1, -1, -1, -1, 1, -1, -1, -1, -1, 1, -1, -1, -1, -1})},
           {&lazy, ints({1, 0, 1, 1, -1, 0, 1, 0, -1, 0, 0, 1, -1, -1, 0, 1, -1, 0, -1, -1, 0, 1, -1, -1})}}) {
    const auto majorant = concave_majorant(build_walk(increments));
    const ConditionedWalkSampler sampler(majorant, *model);
    const std::size_t N = 10000;
    const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
      std::size_t bad = 0;
      for (std::size_t i = 0; i < count; ++i)
        if (!faces_equal(concave_majorant(sampler(s)), majorant)) ++bad;
      return bad;
    });
    for (auto b : parts) hull_bad += b;
    hull_draws += N;
  }
  r.checks.push_back(exact_check("conditioned draws have the conditioning majorant", hull_bad, hull_draws));
}

// 13. The 3214 bijection.
void criterion_bijection(CriterionResult& r, RngStream& rng) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto rep = verify_3214_bijection(generic_increments(n));
    const std::size_t bad = (rep.pairs - rep.distinct_images) + rep.round_trip_failures;
    r.checks.push_back(exact_check("n=" + str_n(n) + ": bijection of [n] x S_n", bad, rep.pairs));
  }
  const std::size_t N = 10000, n = 20;
  const auto gauss = IncrementModel::gaussian();
  const auto parts = run_chunked(N, rng, [&](std::size_t count, RngStream& s, std::size_t) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto w = build_walk(sample_real(gauss, n, s));
      const std::size_t U = 1 + s.uniform_index(n);
      try {
        const auto t = path_transform_3214(w, U);
        const auto back = invert_3214(t.k, t.walk);
        if (back.U != U || back.walk != w) ++bad;
      } catch (const Error&) {
        ++bad;
      }
    }
    return bad;
  });
  std::size_t bad = 0;
  for (auto b : parts) bad += b;
  r.checks.push_back(exact_check("round trip on Gaussian walks, n=20", bad, N));
}

}  // namespace

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& acceptance_names() {
  static const std::vector<std::string> names = {
      "transform-exact",  "partition-law",   "composition-table",    "poisson-structure", "poisson-assembly",
      "hunt-identity",    "compound-poisson", "infinite-horizon",    "max-split",         "generating-functions",
      "slope-laws",       "conditioned-walks", "bijection-3214"};
  return names;
}

int acceptance_id(const std::string& name) {
  const auto& names = acceptance_names();
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? 0 : static_cast<int>(it - names.begin()) + 1;
}

std::vector<int> acceptance_suite(const std::string& suite) {
  std::vector<int> ids;
  if (suite == "all" || suite == "fast") {
    for (int i = 1; i <= 13; ++i)
      if (suite == "all" || i != 8) ids.push_back(i);
    return ids;
  }
  const int id = acceptance_id(suite);
  if (id == 0) fail(ErrorCode::InvalidParameter, "unknown suite '" + suite + "'");
  return {id};
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > 13) fail(ErrorCode::InvalidParameter, "criteria are numbered 1 to 13");
  CriterionResult r;
  r.id = id;
  r.name = acceptance_names()[static_cast<std::size_t>(id - 1)];
  RngStream rng = RngStream(seed).fork(r.name);
  const auto start = std::chrono::steady_clock::now();
  switch (id) {
    case 1: criterion_transform_exact(r); break;
    case 2: criterion_partition_law(r, rng); break;
    case 3: criterion_composition_table(r, rng); break;
    case 4: criterion_poisson_structure(r, rng); break;
    case 5: criterion_poisson_assembly(r, rng); break;
    case 6: criterion_hunt_identity(r, rng); break;
    case 7: criterion_compound_poisson(r, rng); break;
    case 8: criterion_infinite_horizon(r, rng); break;
    case 9: criterion_max_split(r, rng); break;
    case 10: criterion_generating_functions(r); break;
    case 11: criterion_slope_laws(r, rng); break;
    case 12: criterion_conditioned_walks(r, rng); break;
    case 13: criterion_bijection(r, rng); break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  reset_identity_audit();
  std::vector<int> order;
  for (int id : ids)
    if (id != 6) order.push_back(id);
  if (std::find(ids.begin(), ids.end(), 6) != ids.end()) order.push_back(6);
  std::vector<CriterionResult> out;
  for (int id : order) {
    out.push_back(run_criterion(id, seed));
    if (on_result) on_result(out.back());
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace cmaj
