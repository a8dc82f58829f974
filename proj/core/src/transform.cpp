#include "cmaj/transform.hpp"

#include <algorithm>
#include <numeric>

#include "cmaj/randperm.hpp"

namespace cmaj {
namespace {

template <Scalar T>
T sum_of(const std::vector<T>& xs) {
  T s(0);
  for (const auto& x : xs) s = checked_add(s, x);
  return s;
}

template <Scalar T>
const Face<T>& face_containing(const Majorant<T>& m, std::size_t U) {
  for (const auto& f : m.faces)
    if (f.start_time < U && U <= f.end_time) return f;
  fail(ErrorCode::InvalidParameter, "U is outside [1, n]");
}

}  // namespace

template <Scalar T>
std::vector<std::size_t> valid_cyclic_shifts(const std::vector<T>& block) {
  const std::size_t m = block.size();
  if (m == 0) fail(ErrorCode::InvalidInput, "a block needs at least one increment");
  // D_j = m P_j - j T; shift r is valid iff D_r is maximal over j in [0, m).
  std::vector<T> prefix{T(0)};
  for (const auto& x : block) prefix.push_back(checked_add(prefix.back(), x));
  const T& total = prefix.back();
  const auto mm = static_cast<std::int64_t>(m);
  auto cmp = [&](std::size_t i, std::size_t j) {
    return sign_det(mm, prefix[i], prefix[j], static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j), total, T(0));
  };
  std::vector<std::size_t> best{0};
  for (std::size_t j = 1; j < m; ++j) {
    const int c = cmp(j, best.front());
    if (c > 0) best.assign(1, j);
    else if (c == 0) best.push_back(j);
  }
  return best;
}

template <Scalar T>
std::vector<T> rotate_block(const std::vector<T>& block, std::size_t r) {
  std::vector<T> out(block.begin() + static_cast<std::ptrdiff_t>(r), block.end());
  out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

template <Scalar T>
TransformResult<T> theorem1_transform(const std::vector<T>& increments, RngStream& rng) {
  const std::size_t n = increments.size();
  if (n == 0) fail(ErrorCode::EmptyWalk, "the transform needs n >= 1");
  RngStream tie_rng = rng.fork("tie-order");
  RngStream shift_rng = rng.fork("shift-choice");

  TransformResult<T> out;
  out.cycle_lengths = sample_cycle_lengths(n, rng);

  struct Block {
    std::size_t start, length;
    T sum;
  };
  std::vector<Block> blocks;
  std::size_t pos = 0;
  for (auto len : out.cycle_lengths.parts()) {
    T s(0);
    for (std::size_t i = pos; i < pos + len; ++i) s = checked_add(s, increments[i]);
    blocks.push_back({pos, len, s});
    pos += len;
  }

  // Uniform shuffle then a stable sort: equal means end up in uniform order.
  for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[tie_rng.uniform_index(i)]);
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    return compare_ratio(a.sum, static_cast<std::int64_t>(a.length), b.sum, static_cast<std::int64_t>(b.length)) > 0;
  });

  std::vector<std::size_t> segment_lengths;
  std::vector<T> output;
  output.reserve(n);
  for (const auto& b : blocks) {
    std::vector<T> xs(increments.begin() + static_cast<std::ptrdiff_t>(b.start),
                      increments.begin() + static_cast<std::ptrdiff_t>(b.start + b.length));
    const auto shifts = valid_cyclic_shifts(xs);
    const std::size_t r = shifts.size() == 1 ? shifts.front() : shifts[shift_rng.uniform_index(shifts.size())];
    for (std::size_t i = 0; i < b.length; ++i) {
      const std::size_t src = b.start + (r + i) % b.length;
      out.permutation.push_back(src);
      output.push_back(increments[src]);
    }
    segment_lengths.push_back(b.length);
  }
  out.walk = build_walk(std::move(output));
  out.segments = Composition(std::move(segment_lengths));
  out.majorant = concave_majorant(out.walk);
  out.faces = out.majorant.face_composition();
  out.excursions = out.majorant.excursion_composition();
  return out;
}

template <Scalar T>
std::vector<std::size_t> transform_3214_order(const Walk<T>& walk, std::size_t U, std::size_t* k_out) {
  const std::size_t n = walk.size();
  if (U < 1 || U > n) fail(ErrorCode::InvalidParameter, "U must lie in [1, n]");
  const auto m = concave_majorant(walk);
  if (m.touch_times != m.vertex_times)
    fail(ErrorCode::DegenerateInput, "the walk touches its majorant between vertices");
  const auto& face = face_containing(m, U);
  const std::size_t g = face.start_time;
  const std::size_t d = face.end_time;
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = U; i < d; ++i) order.push_back(i);
  for (std::size_t i = g; i < U; ++i) order.push_back(i);
  for (std::size_t i = 0; i < g; ++i) order.push_back(i);
  for (std::size_t i = d; i < n; ++i) order.push_back(i);
  if (k_out) *k_out = d - g;
  return order;
}

template <Scalar T>
Transform3214<T> path_transform_3214(const Walk<T>& walk, std::size_t U) {
  Transform3214<T> out;
  const auto order = transform_3214_order(walk, U, &out.k);
  std::vector<T> xs;
  xs.reserve(order.size());
  for (auto i : order) xs.push_back(walk.increments[i]);
  out.walk = build_walk(std::move(xs));
  return out;
}

template <Scalar T>
Inverse3214<T> invert_3214(std::size_t k, const Walk<T>& walk) {
  const std::size_t n = walk.size();
  if (k < 1 || k > n) fail(ErrorCode::InvalidParameter, "k must lie in [1, n]");
  const std::vector<T> head(walk.increments.begin(), walk.increments.begin() + static_cast<std::ptrdiff_t>(k));
  const std::vector<T> rest(walk.increments.begin() + static_cast<std::ptrdiff_t>(k), walk.increments.end());
  const auto shifts = valid_cyclic_shifts(head);
  if (shifts.size() != 1) fail(ErrorCode::DegenerateInput, "the leading block has no unique valid rotation");
  const std::size_t r = shifts.front();
  const T face_sum = sum_of(head);

  // The removed face slots in after the remaining faces that are steeper.
  std::size_t g = 0;
  if (!rest.empty()) {
    const auto rest_walk = build_walk(rest);
    const auto rm = concave_majorant(rest_walk);
    for (const auto& f : rm.faces) {
      const int c = compare_ratio(f.increment, static_cast<std::int64_t>(f.length), face_sum,
                                  static_cast<std::int64_t>(k));
      if (c == 0) fail(ErrorCode::DegenerateInput, "a remaining face has the slope of the leading block");
      if (c < 0) break;
      g += f.length;
    }
  }

  std::vector<T> original(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(g));
  const auto face = rotate_block(head, r);
  original.insert(original.end(), face.begin(), face.end());
  original.insert(original.end(), rest.begin() + static_cast<std::ptrdiff_t>(g), rest.end());
  return {g + k - r, build_walk(std::move(original))};
}

#define CMAJ_INSTANTIATE(T)                                                                              \
  template std::vector<std::size_t> valid_cyclic_shifts(const std::vector<T>&);                          \
  template std::vector<T> rotate_block(const std::vector<T>&, std::size_t);                              \
  template TransformResult<T> theorem1_transform(const std::vector<T>&, RngStream&);                     \
  template std::vector<std::size_t> transform_3214_order(const Walk<T>&, std::size_t, std::size_t*);     \
  template Transform3214<T> path_transform_3214(const Walk<T>&, std::size_t);                            \
  template Inverse3214<T> invert_3214(std::size_t, const Walk<T>&);

CMAJ_INSTANTIATE(double)
CMAJ_INSTANTIATE(Rational)

#undef CMAJ_INSTANTIATE

}  // namespace cmaj
