#include "cmaj/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cmaj/error.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/transform.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {
namespace {

std::size_t factorial_size(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Cycle types (non-increasing) of all permutations of [n], with counts.
std::map<std::vector<std::size_t>, std::size_t> cycle_type_counts(std::size_t n) {
  std::map<std::vector<std::size_t>, std::size_t> counts;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> type;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    ++counts[type];
  } while (std::next_permutation(p.begin(), p.end()));
  return counts;
}

// Rotations r for which the rotated block stays weakly below its chord.
std::vector<std::size_t> rotations_below_chord(const std::vector<Rational>& block) {
  const std::size_t m = block.size();
  Rational total = 0;
  for (const auto& x : block) total += x;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < m; ++r) {
    Rational partial = 0;
    bool ok = true;
    for (std::size_t j = 1; j < m && ok; ++j) {
      partial += block[(r + j - 1) % m];
      ok = partial * static_cast<long>(m) <= total * static_cast<long>(j);
    }
    if (ok) out.push_back(r);
  }
  return out;
}

struct Segment {
  std::vector<Rational> values;
  Rational mean;
};

// Calls emit(order, weight) for every uniform tie order of the segments
// sorted by decreasing mean.
template <class Emit>
void for_each_tie_order(std::vector<Segment> segs, Emit emit) {
  std::stable_sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.mean > b.mean; });
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [first, last)
  for (std::size_t i = 0; i < segs.size();) {
    std::size_t j = i + 1;
    while (j < segs.size() && segs[j].mean == segs[i].mean) ++j;
    groups.push_back({i, j});
    i = j;
  }
  std::vector<std::size_t> order(segs.size());
  std::iota(order.begin(), order.end(), 0);
  Rational weight = 1;
  for (const auto& [a, b] : groups) weight /= factorial(static_cast<unsigned>(b - a));
  // Odometer over the permutations of each tie group.
  for (;;) {
    std::vector<const Segment*> arranged;
    for (auto i : order) arranged.push_back(&segs[i]);
    emit(arranged, weight);
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      auto first = order.begin() + static_cast<std::ptrdiff_t>(groups[g].first);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(groups[g].second);
      if (std::next_permutation(first, last)) break;
    }
    if (g == groups.size()) return;
  }
}

void require_paths(const IncrementModel& model, std::size_t n, std::size_t limit) {
  if (!model.atomic()) fail(ErrorCode::InvalidModel, model.name() + " is not an atomic model");
  double paths = std::pow(static_cast<double>(model.atoms().size()), static_cast<double>(n));
  if (paths > static_cast<double>(limit))
    fail(ErrorCode::CapacityExceeded, "path enumeration limited to " + std::to_string(limit) + " paths");
}

// Calls visit(increments, probability) for every path of length n.
template <class Visit>
void for_each_path(const IncrementModel& model, std::size_t n, Visit visit) {
  const auto& atoms = model.atoms();
  std::vector<std::size_t> digit(n, 0);
  std::vector<Rational> xs(n);
  for (;;) {
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = atoms[digit[i]].value;
      p *= atoms[digit[i]].probability;
    }
    visit(xs, p);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++digit[i] < atoms.size()) break;
      digit[i] = 0;
    }
    if (i == n) return;
  }
}

bool same_faces(const Majorant<Rational>& a, const Majorant<Rational>& b) {
  if (a.faces.size() != b.faces.size()) return false;
  for (std::size_t i = 0; i < a.faces.size(); ++i)
    if (a.faces[i].length != b.faces[i].length || a.faces[i].increment != b.faces[i].increment) return false;
  return true;
}

}  // namespace

ExactDistribution<std::vector<Rational>> enumerate_transform_distribution(const std::vector<Rational>& increments) {
  const std::size_t n = increments.size();
  if (n == 0) fail(ErrorCode::EmptyWalk, "the transform needs n >= 1");
  if (n > 7) fail(ErrorCode::CapacityExceeded, "transform enumeration is limited to n <= 7");
  if (n == 7 && !check_assumption_a(increments))
    fail(ErrorCode::CapacityExceeded, "with tied subset means the enumeration is limited to n <= 6");

  const Rational n_fact = factorial(static_cast<unsigned>(n));
  const auto types = cycle_type_counts(n);
  ExactDistribution<std::vector<Rational>> law;
  std::vector<std::size_t> arrangement(n);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  do {
    for (const auto& [type, count] : types) {
      const Rational base = Rational(static_cast<long>(count)) / (n_fact * n_fact);
      std::vector<Segment> segs;
      std::size_t pos = 0;
      for (auto len : type) {
        Segment s;
        Rational sum = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
          s.values.push_back(increments[arrangement[i]]);
          sum += s.values.back();
        }
        s.mean = sum / static_cast<long>(len);
        segs.push_back(std::move(s));
        pos += len;
      }
      for_each_tie_order(std::move(segs), [&](const std::vector<const Segment*>& order, const Rational& w) {
        std::vector<std::vector<std::size_t>> choices;
        Rational weight = base * w;
        for (const auto* s : order) {
          choices.push_back(rotations_below_chord(s->values));
          weight /= static_cast<long>(choices.back().size());
        }
        std::vector<std::size_t> pick(order.size(), 0);
        for (;;) {
          std::vector<Rational> out;
          out.reserve(n);
          for (std::size_t b = 0; b < order.size(); ++b) {
            const auto& v = order[b]->values;
            const std::size_t r = choices[b][pick[b]];
            for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[(r + i) % v.size()]);
          }
          law[std::move(out)] += weight;
          std::size_t b = 0;
          for (; b < order.size(); ++b) {
            if (++pick[b] < choices[b].size()) break;
            pick[b] = 0;
          }
          if (b == order.size()) break;
        }
      });
    }
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return law;
}

ExactDistribution<std::vector<Rational>> exchangeable_law(const std::vector<Rational>& increments) {
  const Rational n_fact = factorial(static_cast<unsigned>(increments.size()));
  ExactDistribution<std::vector<Rational>> law;
  std::vector<std::size_t> idx(increments.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<Rational> xs;
    for (auto i : idx) xs.push_back(increments[i]);
    law[std::move(xs)] += 1 / n_fact;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return law;
}

HFDistribution enumerate_H_F_distribution(std::size_t n) {
  return enumerate_H_F_distribution(n, IncrementModel::rademacher());
}

HFDistribution enumerate_H_F_distribution(std::size_t n, const IncrementModel& model) {
  if (n == 0) fail(ErrorCode::EmptyWalk, "H_n and F_n need n >= 1");
  require_paths(model, n, std::size_t{1} << 16);
  HFDistribution out;
  for_each_path(model, n, [&](const std::vector<Rational>& xs, const Rational& p) {
    const auto m = concave_majorant(build_walk(xs));
    out.H[m.H()] += p;
    out.F[m.F()] += p;
  });
  return out;
}

ExactDistribution<std::vector<Rational>> exhaustive_conditional_law(const Majorant<Rational>& majorant,
                                                                    const IncrementModel& model) {
  const std::size_t n = majorant.n();
  if (n == 0) fail(ErrorCode::EmptyWalk, "the majorant is empty");
  if (n > 12) fail(ErrorCode::CapacityExceeded, "conditional enumeration is limited to n <= 12");
  require_paths(model, n, std::size_t{1} << 20);
  ExactDistribution<std::vector<Rational>> law;
  Rational total = 0;
  for_each_path(model, n, [&](const std::vector<Rational>& xs, const Rational& p) {
    if (!same_faces(concave_majorant(build_walk(xs)), majorant)) return;
    law[xs] += p;
    total += p;
  });
  if (total == 0) fail(ErrorCode::NotInSupport, "no path has this majorant");
  for (auto& [k, p] : law) p /= total;
  return law;
}

BijectionReport verify_3214_bijection(const std::vector<Rational>& increments) {
  const std::size_t n = increments.size();
  if (n == 0) fail(ErrorCode::EmptyWalk, "the bijection check needs n >= 1");
  if (n > 8) fail(ErrorCode::CapacityExceeded, "the bijection check is limited to n <= 8");
  if (!check_assumption_a(increments)) fail(ErrorCode::DegenerateInput, "increments violate assumption A");
  BijectionReport rep;
  rep.n = n;
  rep.pairs = n * factorial_size(n);
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> images;
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<Rational> xs;
    for (auto i : sigma) xs.push_back(increments[i]);
    const auto walk = build_walk(xs);
    for (std::size_t U = 1; U <= n; ++U) {
      std::size_t k = 0;
      const auto order = transform_3214_order(walk, U, &k);
      std::vector<std::size_t> image;
      std::vector<Rational> ys;
      for (auto i : order) {
        image.push_back(sigma[i]);
        ys.push_back(xs[i]);
      }
      images.insert({k, std::move(image)});
      const auto back = invert_3214(k, build_walk(ys));
      if (back.U != U || back.walk != walk) ++rep.round_trip_failures;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  rep.distinct_images = images.size();
  rep.bijective = rep.distinct_images == rep.pairs && rep.round_trip_failures == 0;
  return rep;
}

std::vector<Rational> generic_increments(std::size_t n) {
  RngStream rng(0x9e3779b97f4a7c15ULL);
  for (;;) {
    std::vector<Rational> xs;
    std::set<Rational> seen;
    while (xs.size() < n) {
      const long v = static_cast<long>(rng.uniform_index(2000001)) - 1000000;
      if (v == 0 || !seen.insert(Rational(v)).second) continue;
      xs.push_back(Rational(v, 1000));
    }
    if (n <= 24 && check_assumption_a(xs)) return xs;
    if (n > 24) fail(ErrorCode::CapacityExceeded, "assumption A can only be certified for n <= 24");
  }
}

}  // namespace cmaj
