#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cmaj/composition.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {

template <Scalar T>
struct Face {
  std::size_t length = 0;
  T increment{};
  std::size_t start_time = 0;
  std::size_t end_time = 0;

  // Exact for rationals; rounded for binary64 (comparisons never use it).
  T slope() const { return ratio(increment, static_cast<std::int64_t>(length)); }
  friend bool operator==(const Face&, const Face&) = default;
};

// Slope of a strictly greater than slope of b, decided exactly.
template <Scalar T>
bool steeper(const Face<T>& a, const Face<T>& b) {
  return compare_ratio(a.increment, static_cast<std::int64_t>(a.length), b.increment,
                       static_cast<std::int64_t>(b.length)) > 0;
}

template <Scalar T>
struct Majorant {
  std::vector<Face<T>> faces;
  std::vector<std::size_t> vertex_times;  // face boundaries, 0 and n included
  std::vector<std::size_t> touch_times;   // all j with S_j on the majorant

  std::size_t F() const noexcept { return faces.size(); }
  std::size_t H() const noexcept { return touch_times.size() - 1; }
  std::size_t n() const noexcept { return vertex_times.back(); }
  Composition face_composition() const { return Composition::from_boundaries(vertex_times); }
  Composition excursion_composition() const { return Composition::from_boundaries(touch_times); }
  friend bool operator==(const Majorant&, const Majorant&) = default;
};

// Upper hull sweep; colinear points are merged into a face and reported in
// touch_times. EmptyWalk for n = 0.
template <Scalar T>
Majorant<T> concave_majorant(const Walk<T>& walk);

template <Scalar T>
struct ExcursionDecomposition {
  Composition blocks;              // excursion composition
  std::vector<Walk<T>> excursions; // each translated to start at 0
  std::vector<std::size_t> face_of;  // face index carrying each excursion
  std::vector<T> slopes;           // excursion increment / length
};

template <Scalar T>
ExcursionDecomposition<T> excursion_decomposition(const Walk<T>& walk);

template <Scalar T>
struct ArgmaxDecomposition {
  std::size_t L = 0;  // first argmax
  T M{};              // max S_j
  std::vector<Face<T>> pre_faces;   // positive slope
  std::vector<Face<T>> post_faces;  // slope <= 0
  // M == sum of nonnegative face increments and L == total length of the
  // positive faces.
  bool identity_holds = false;
};

template <Scalar T>
ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>& walk);

template <Scalar T>
ArgmaxDecomposition<T> argmax_decomposition(const Walk<T>& walk, const Majorant<T>& majorant);

// Process-wide tally of the pathwise maximum identity, fed by every sampler
// that computes a majorant.
struct IdentityAudit {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};
IdentityAudit identity_audit();
void reset_identity_audit();
void record_identity(bool holds);

// Checks and records the identity for one walk.
template <Scalar T>
bool audit_max_identity(const Walk<T>& walk, const Majorant<T>& majorant) {
  const bool holds = argmax_decomposition(walk, majorant).identity_holds;
  record_identity(holds);
  return holds;
}

// Reference oracle: j touches iff no chord (a, b), a < j < b, passes strictly
// above (j, S_j). Cubic time.
template <Scalar T>
std::vector<std::size_t> brute_force_touch_times(const Walk<T>& walk);

}  // namespace cmaj
