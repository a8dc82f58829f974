#pragma once

#include <cstddef>
#include <vector>

#include "cmaj/composition.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/walk.hpp"

namespace cmaj {

// Shift r in {0..m-1} means the rotation (x_{r+1}, ..., x_m, x_1, ..., x_r)
// (1-based increments). Returns every r whose rotation keeps all partial
// means weakly below the block mean, in increasing order; never empty.
template <Scalar T>
std::vector<std::size_t> valid_cyclic_shifts(const std::vector<T>& block);

template <Scalar T>
std::vector<T> rotate_block(const std::vector<T>& block, std::size_t r);

template <Scalar T>
struct TransformResult {
  std::vector<std::size_t> permutation;  // output position i holds input increment permutation[i]
  Walk<T> walk;
  Partition cycle_lengths;
  Composition segments;    // block boundaries in output order
  Composition faces;       // face composition of the output
  Composition excursions;  // excursion composition of the output
  Majorant<T> majorant;
};

// Cycle lengths by stick breaking; sequential cut into blocks; blocks sorted
// by decreasing mean with ties in uniform random order ("tie-order" fork);
// each block rotated by a uniform valid shift ("shift-choice" fork).
template <Scalar T>
TransformResult<T> theorem1_transform(const std::vector<T>& increments, RngStream& rng);

template <Scalar T>
struct Transform3214 {
  std::size_t k = 0;
  Walk<T> walk;
};

// U in [1..n] is an increment index. Needs every touch point of the
// majorant to be a vertex; otherwise DegenerateInput.
template <Scalar T>
Transform3214<T> path_transform_3214(const Walk<T>& walk, std::size_t U);

template <Scalar T>
struct Inverse3214 {
  std::size_t U = 0;
  Walk<T> walk;
};

template <Scalar T>
Inverse3214<T> invert_3214(std::size_t k, const Walk<T>& walk);

// Index form of the forward map used by the exhaustive bijection check:
// output position i holds original position result[i] (0-based).
template <Scalar T>
std::vector<std::size_t> transform_3214_order(const Walk<T>& walk, std::size_t U, std::size_t* k_out);

}  // namespace cmaj
