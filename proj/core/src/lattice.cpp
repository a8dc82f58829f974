#include "cmaj/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cmaj/error.hpp"
#include "cmaj/transform.hpp"

namespace cmaj {
namespace {

// Inversion over a finite list of weights (need not be normalised).
std::size_t draw_index(const std::vector<double>& weights, RngStream& rng) {
  double total = 0;
  for (double w : weights) total += w;
  if (!(total > 0)) fail(ErrorCode::SamplingFailed, "no positive weight to sample from");
  double u = rng.uniform01() * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last = i;
    u -= weights[i];
    if (u < 0) return i;
  }
  return last;
}

std::size_t draw_index(const std::vector<Rational>& weights, RngStream& rng) {
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (total <= 0) fail(ErrorCode::SamplingFailed, "no positive weight to sample from");
  std::vector<double> p;
  p.reserve(weights.size());
  for (const auto& w : weights) p.push_back(Rational(w / total).get_d());
  return draw_index(p, rng);
}

void require_atomic(const IncrementModel& model) {
  if (!model.atomic()) fail(ErrorCode::InvalidModel, model.name() + " is not an atomic model");
}

Rational slope_of(const Face<Rational>& f) { return f.increment / Rational(static_cast<long>(f.length)); }

// Truncated power series in double precision; exp via f' = g' f.
std::vector<double> exp_series(const std::vector<double>& g) {
  std::vector<double> f(g.size(), 0.0);
  f[0] = std::exp(g[0]);
  for (std::size_t n = 1; n < g.size(); ++n) {
    double acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * g[k] * f[n - k];
    f[n] = acc / static_cast<double>(n);
  }
  return f;
}

SlopeLaws laws_from_table(double q, const PointMassTable& table, const Rational& x, std::size_t order) {
  SlopeLaws laws;
  laws.slope = x;
  std::vector<double> mu_terms(order + 1, 0.0);  // q^k P(S_k = kx) / k
  double qk = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    qk *= q;
    const double p = table.mass(k, x * static_cast<long>(k)).get_d();
    mu_terms[k] = qk * p / static_cast<double>(k);
    laws.mu += mu_terms[k];
    laws.expected_face_length += qk * p;
  }
  const double mu = laws.mu;
  laws.no_face_probability = std::exp(-mu);
  const double pi = -std::expm1(-mu);
  laws.geometric = pi;
  laws.poisson_mean = mu;
  laws.bernoulli = pi;
  laws.log_series = pi;
  laws.segment_length.assign(order + 1, 0.0);
  laws.excursion_length.assign(order + 1, 0.0);
  if (mu > 0) {
    for (std::size_t l = 1; l <= order; ++l) laws.segment_length[l] = mu_terms[l] / mu;
    std::vector<double> neg(order + 1, 0.0);
    for (std::size_t l = 1; l <= order; ++l) neg[l] = -mu_terms[l];
    const auto e = exp_series(neg);  // e^{-mu(zq)} coefficients in z
    for (std::size_t l = 1; l <= order; ++l) laws.excursion_length[l] = -e[l] / pi;
  }
  return laws;
}

}  // namespace

Rational PointMassTable::mass(std::size_t k, const Rational& v) const {
  const auto& r = rows_.at(k);
  const auto it = r.find(v);
  return it == r.end() ? Rational(0) : it->second;
}

PointMassTable point_mass_table(const IncrementModel& model, std::size_t k_max) {
  require_atomic(model);
  if (k_max > kMaxPointMassOrder)
    fail(ErrorCode::CapacityExceeded, "point-mass tables are limited to k <= " + std::to_string(kMaxPointMassOrder));
  std::vector<std::map<Rational, Rational>> rows(k_max + 1);
  rows[0][Rational(0)] = 1;
  for (std::size_t k = 1; k <= k_max; ++k)
    for (const auto& [v, p] : rows[k - 1])
      for (const auto& a : model.atoms()) rows[k][Rational(v + a.value)] += p * a.probability;
  return PointMassTable(std::move(rows));
}

std::vector<Rational> slope_index(const PointMassTable& table) {
  std::set<Rational> seen;
  for (std::size_t k = 1; k <= table.k_max(); ++k)
    for (const auto& entry : table.row(k)) seen.insert(Rational(entry.first / static_cast<long>(k)));
  std::vector<Rational> slopes(seen.begin(), seen.end());
  std::stable_sort(slopes.begin(), slopes.end(),
                   [](const Rational& a, const Rational& b) { return a.get_den() < b.get_den(); });
  return slopes;
}

UnivariateSeries mu_series(const PointMassTable& table, const Rational& x, std::size_t order) {
  if (order > table.k_max()) fail(ErrorCode::InvalidParameter, "series order exceeds the point-mass table");
  UnivariateSeries s(order);
  for (std::size_t k = 1; k <= order; ++k) s[k] = table.mass(k, x * static_cast<long>(k)) / static_cast<long>(k);
  return s;
}

UnivariateSeries mu_series(const IncrementModel& model, const Rational& x, std::size_t order) {
  return mu_series(point_mass_table(model, order), x, order);
}

UnivariateSeries mu0_series(const PointMassTable& table, std::size_t order) {
  UnivariateSeries s = UnivariateSeries::minus_log_one_minus(order);
  for (const auto& x : slope_index(table)) s -= mu_series(table, x, order);
  return s;
}

HKFSeries gf_HKF(const IncrementModel& model, std::size_t order_s, std::size_t order_t) {
  if (model.continuous()) {
    // Every slope has probability zero: H = F = K = (1 - s)^(-t).
    const auto K = BivariateSeries::exp_t_times(UnivariateSeries::minus_log_one_minus(order_s), order_t);
    return {K, K, K};
  }
  const auto table = point_mass_table(model, order_s);
  const auto mu0 = mu0_series(table, order_s);
  HKFSeries out{BivariateSeries::exp_t_times(mu0, order_t),
                BivariateSeries::exp_t_times(UnivariateSeries::minus_log_one_minus(order_s), order_t),
                BivariateSeries::exp_t_times(mu0, order_t)};
  for (const auto& x : slope_index(table)) {
    const auto mu = mu_series(table, x, order_s);
    UnivariateSeries minus_mu = mu * Rational(-1);
    UnivariateSeries a = minus_mu.exp();
    a[0] -= 1;
    out.H.divide_by_one_plus_t(a);
    UnivariateSeries b = mu.exp();
    b[0] -= 1;
    out.F.multiply_by_one_plus_t(b);
  }
  return out;
}

std::size_t series_order_for(double q) {
  if (!(q > 0 && q < 1)) fail(ErrorCode::InvalidParameter, "q must lie in (0, 1)");
  double qk = q;
  for (std::size_t K = 1; K <= kMaxPointMassOrder; ++K) {
    qk *= q;  // q^{K+1}
    if (qk / (static_cast<double>(K + 1) * (1 - q)) < 1e-15) return K;
  }
  fail(ErrorCode::CapacityExceeded, "q is too close to 1 for a 64-term series");
}

SlopeLaws face_slope_laws(double q, const IncrementModel& model, const Rational& x) {
  const std::size_t order = series_order_for(q);
  return laws_from_table(q, point_mass_table(model, order), x, order);
}

NestedCompositionSampler::NestedCompositionSampler(double q, const IncrementModel& model) {
  const std::size_t order = series_order_for(q);
  const auto table = point_mass_table(model, order);
  auto slopes = slope_index(table);
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  for (const auto& x : slopes) laws_.push_back(laws_from_table(q, table, x, order));
}

NestedCompositions NestedCompositionSampler::operator()(RngStream& rng) const {
  NestedCompositions out;
  std::vector<std::size_t> h, k, f;
  for (const auto& law : laws_) {
    if (!(rng.uniform01() < law.bernoulli)) continue;
    // Poisson(mu) given at least one, by inversion.
    std::size_t segments = 1;
    {
      double term = law.mu * std::exp(-law.mu) / law.bernoulli;
      double u = rng.uniform01() - term;
      while (u >= 0 && term > 0) {
        ++segments;
        term *= law.mu / static_cast<double>(segments);
        u -= term;
      }
    }
    NestedFace face;
    face.slope = law.slope;
    std::size_t face_length = 0;
    for (std::size_t s = 0; s < segments; ++s) {
      // Log-series(pi) by inversion.
      std::size_t excursions = 1;
      double term = law.log_series / law.mu;
      double u = rng.uniform01() - term;
      while (u >= 0 && term > 0) {
        term *= law.log_series * static_cast<double>(excursions) / static_cast<double>(excursions + 1);
        ++excursions;
        u -= term;
      }
      std::vector<std::size_t> lengths;
      std::size_t segment_length = 0;
      for (std::size_t e = 0; e < excursions; ++e) {
        const std::size_t len = draw_index(law.excursion_length, rng);
        lengths.push_back(len);
        h.push_back(len);
        segment_length += len;
      }
      k.push_back(segment_length);
      face_length += segment_length;
      face.segments.push_back(std::move(lengths));
    }
    f.push_back(face_length);
    out.faces.push_back(std::move(face));
  }
  out.excursions = Composition(std::move(h));
  out.segments = Composition(std::move(k));
  out.faces_composition = Composition(std::move(f));
  return out;
}

NestedCompositions sample_nested_compositions(double q, const IncrementModel& model, RngStream& rng) {
  return NestedCompositionSampler(q, model)(rng);
}

Majorant<Rational> majorant_from_faces(const std::vector<std::pair<std::size_t, Rational>>& faces) {
  if (faces.empty()) fail(ErrorCode::EmptyWalk, "a majorant needs at least one face");
  Majorant<Rational> m;
  m.vertex_times.push_back(0);
  for (const auto& [len, inc] : faces) {
    if (len == 0) fail(ErrorCode::InvalidInput, "face lengths must be positive");
    const std::size_t start = m.vertex_times.back();
    Face<Rational> face{len, inc, start, start + len};
    if (!m.faces.empty() && !steeper(m.faces.back(), face))
      fail(ErrorCode::InvalidInput, "face slopes must decrease strictly");
    m.faces.push_back(face);
    m.vertex_times.push_back(start + len);
  }
  m.touch_times = m.vertex_times;
  return m;
}

Rational conditional_composition_weight(const Majorant<Rational>& majorant, const Composition& c,
                                        const IncrementModel& model) {
  require_atomic(model);
  if (!c.refines(majorant.face_composition())) return 0;
  std::size_t longest = 0;
  for (auto b : c.blocks()) longest = std::max(longest, b);
  const auto table = point_mass_table(model, longest);
  Rational weight = 1;
  std::size_t face = 0, in_face = 0, pos = 0;
  for (auto b : c.blocks()) {
    const auto& f = majorant.faces[face];
    weight *= table.mass(b, slope_of(f) * static_cast<long>(b)) / static_cast<long>(b);
    if (weight == 0) return 0;
    ++in_face;
    pos += b;
    if (pos == f.end_time) {
      weight /= factorial(static_cast<unsigned>(in_face));
      ++face;
      in_face = 0;
    }
  }
  return weight;
}

std::map<Composition, Rational> conditional_composition_law(const Majorant<Rational>& majorant,
                                                            const IncrementModel& model) {
  const std::size_t n = majorant.n();
  if (n > 24) fail(ErrorCode::CapacityExceeded, "composition enumeration is limited to n <= 24");
  std::map<Composition, Rational> law;
  Rational total = 0;
  for (const auto& c : all_compositions(n)) {
    const Rational w = conditional_composition_weight(majorant, c, model);
    if (w == 0) continue;
    law[c] = w;
    total += w;
  }
  if (total == 0) fail(ErrorCode::NotInSupport, "the majorant has probability zero");
  for (auto& [c, w] : law) w /= total;
  return law;
}

ConditionedWalkSampler::ConditionedWalkSampler(const Majorant<Rational>& majorant, const IncrementModel& model)
    : model_(model) {
  require_atomic(model);
  std::size_t longest = 0;
  for (const auto& f : majorant.faces) longest = std::max(longest, f.length);
  table_ = point_mass_table(model, longest);
  for (const auto& f : majorant.faces) {
    FaceTable t;
    t.length = f.length;
    t.slope = slope_of(f);
    const std::size_t L = f.length;
    t.block_weight.assign(L + 1, Rational(0));
    for (std::size_t m = 1; m <= L; ++m)
      t.block_weight[m] = table_.mass(m, t.slope * static_cast<long>(m)) / static_cast<long>(m);
    // ways[k][r]: sum over compositions of r into k blocks of prod g.
    t.ways.assign(L + 1, std::vector<Rational>(L + 1, Rational(0)));
    t.ways[0][0] = 1;
    for (std::size_t k = 1; k <= L; ++k)
      for (std::size_t r = k; r <= L; ++r)
        for (std::size_t m = 1; m <= r - (k - 1); ++m)
          if (t.block_weight[m] != 0 && t.ways[k - 1][r - m] != 0) t.ways[k][r] += t.block_weight[m] * t.ways[k - 1][r - m];
    std::vector<Rational> by_count(L + 1, Rational(0));
    Rational total = 0;
    for (std::size_t k = 1; k <= L; ++k) {
      by_count[k] = t.ways[k][L] / factorial(static_cast<unsigned>(k));
      total += by_count[k];
    }
    if (total == 0) fail(ErrorCode::NotInSupport, "a face of the majorant has probability zero");
    for (const auto& w : by_count) t.count_law.push_back(Rational(w / total).get_d());
    faces_.push_back(std::move(t));
  }
}

std::vector<Rational> ConditionedWalkSampler::bridge(std::size_t m, const Rational& target, RngStream& rng) const {
  std::vector<Rational> xs;
  Rational rest = target;
  const auto& atoms = model_.atoms();
  for (std::size_t r = m; r > 0; --r) {
    std::vector<Rational> w;
    for (const auto& a : atoms) w.push_back(a.probability * table_.mass(r - 1, Rational(rest - a.value)));
    const auto& a = atoms[draw_index(w, rng)];
    xs.push_back(a.value);
    rest -= a.value;
  }
  return xs;
}

Walk<Rational> ConditionedWalkSampler::operator()(RngStream& rng) const {
  std::vector<Rational> out;
  for (const auto& t : faces_) {
    std::size_t k = draw_index(t.count_law, rng);
    std::size_t rest = t.length;
    while (k > 0) {
      std::vector<Rational> w(rest + 1, Rational(0));
      for (std::size_t m = 1; m + (k - 1) <= rest; ++m) w[m] = t.block_weight[m] * t.ways[k - 1][rest - m];
      const std::size_t m = draw_index(w, rng);
      auto block = bridge(m, t.slope * static_cast<long>(m), rng);
      const auto shifts = valid_cyclic_shifts(block);
      const std::size_t r = shifts.size() == 1 ? shifts.front() : shifts[rng.uniform_index(shifts.size())];
      const auto rotated = rotate_block(block, r);
      out.insert(out.end(), rotated.begin(), rotated.end());
      rest -= m;
      --k;
    }
  }
  return build_walk(std::move(out));
}

Walk<Rational> conditioned_walk_given_majorant(const Majorant<Rational>& majorant, const IncrementModel& model,
                                               RngStream& rng) {
  return ConditionedWalkSampler(majorant, model)(rng);
}

Walk<Rational> conditioned_trivial_walk(const IncrementModel& model, std::size_t n, RngStream& rng) {
  if (n == 0) fail(ErrorCode::EmptyWalk, "the conditioned walk needs n >= 1");
  const auto majorant = majorant_from_faces({{n, Rational(0)}});
  try {
    return conditioned_walk_given_majorant(majorant, model, rng);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInSupport)
      fail(ErrorCode::NoMass, "P(S_j = 0) vanishes for the block lengths available up to n");
    throw;
  }
}

}  // namespace cmaj
