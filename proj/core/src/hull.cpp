#include "cmaj/hull.hpp"

#include <atomic>

namespace cmaj {
namespace {

std::atomic<std::uint64_t> g_identity_checked{0};
std::atomic<std::uint64_t> g_identity_violations{0};

template <Scalar T>
int orient(const Walk<T>& w, std::size_t a, std::size_t b, std::size_t c) {
  return orientation(static_cast<std::int64_t>(a), w.values[a], static_cast<std::int64_t>(b), w.values[b],
                     static_cast<std::int64_t>(c), w.values[c]);
}

}  // namespace

IdentityAudit identity_audit() { return {g_identity_checked.load(), g_identity_violations.load()}; }

void reset_identity_audit() {
  g_identity_checked = 0;
  g_identity_violations = 0;
}

void record_identity(bool holds) {
  ++g_identity_checked;
  if (!holds) ++g_identity_violations;
}

template <Scalar T>
Majorant<T> concave_majorant(const Walk<T>& walk) {
  const std::size_t n = walk.size();
  if (n == 0) fail(ErrorCode::EmptyWalk, "the concave majorant needs n >= 1");

  std::vector<std::size_t> hull;
  hull.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    while (hull.size() >= 2 && orient(walk, hull[hull.size() - 2], hull.back(), j) >= 0) hull.pop_back();
    hull.push_back(j);
  }

  Majorant<T> m;
  m.vertex_times = hull;
  m.touch_times.push_back(0);
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const std::size_t a = hull[i - 1];
    const std::size_t b = hull[i];
    for (std::size_t j = a + 1; j < b; ++j)
      if (orient(walk, a, j, b) == 0) m.touch_times.push_back(j);
    m.touch_times.push_back(b);
    m.faces.push_back({b - a, checked_sub(walk.values[b], walk.values[a]), a, b});
  }
  return m;
}

template <Scalar T>
ExcursionDecomposition<T> excursion_decomposition(const Walk<T>& walk) {
  const auto m = concave_majorant(walk);
  ExcursionDecomposition<T> d;
  d.blocks = m.excursion_composition();
  std::size_t face = 0;
  for (std::size_t i = 1; i < m.touch_times.size(); ++i) {
    const std::size_t a = m.touch_times[i - 1];
    const std::size_t b = m.touch_times[i];
    while (m.faces[face].end_time < b) ++face;
    d.excursions.push_back(sub_walk(walk, a, b));
    d.face_of.push_back(face);
    d.slopes.push_back(ratio(checked_sub(walk.values[b], walk.values[a]), static_cast<std::int64_t>(b - a)));
  }
  return d;
}

template <Scalar T>
ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>& walk, const Majorant<T>& majorant) {
  ArgmaxDecomposition<T> d;
  d.M = walk.values[0];
  for (std::size_t j = 1; j < walk.values.size(); ++j) {
    if (compare(walk.values[j], d.M) > 0) {
      d.M = walk.values[j];
      d.L = j;
    }
  }
  T positive_sum(0);
  std::size_t positive_length = 0;
  for (const auto& f : majorant.faces) {
    const int sign = compare(f.increment, T(0));
    if (sign > 0) {
      d.pre_faces.push_back(f);
      positive_length += f.length;
    } else {
      d.post_faces.push_back(f);
    }
    if (sign >= 0) positive_sum = checked_add(positive_sum, f.increment);
  }
  d.identity_holds = compare(positive_sum, d.M) == 0 && positive_length == d.L;
  return d;
}

template <Scalar T>
ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>& walk) {
  return argmax_decomposition(walk, concave_majorant(walk));
}

template <Scalar T>
std::vector<std::size_t> brute_force_touch_times(const Walk<T>& walk) {
  const std::size_t n = walk.size();
  std::vector<std::size_t> touches;
  for (std::size_t j = 0; j <= n; ++j) {
    bool below = false;
    for (std::size_t a = 0; a < j && !below; ++a)
      for (std::size_t b = j + 1; b <= n && !below; ++b)
        if (orient(walk, a, j, b) > 0) below = true;
    if (!below) touches.push_back(j);
  }
  return touches;
}

#define CMAJ_INSTANTIATE(T)                                                                        \
  template Majorant<T> concave_majorant(const Walk<T>&);                                           \
  template ExcursionDecomposition<T> excursion_decomposition(const Walk<T>&);                      \
  template ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>&, const Majorant<T>&);        \
  template ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>&);                            \
  template std::vector<std::size_t> brute_force_touch_times(const Walk<T>&);

CMAJ_INSTANTIATE(double)
CMAJ_INSTANTIATE(Rational)

#undef CMAJ_INSTANTIATE

}  // namespace cmaj
