#pragma once

#include <span>
#include <vector>

#include "simpeval/types.hpp"

namespace simpeval {

// Base similarities with the positional penalty applied:
//   score(i, j) = base(i, j) - |pos_orig[i] - pos_simp[j]| * lambda
// `base` is kept alongside so links can report the raw similarity.
struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> base;
  double lambda = 0.0;

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }

  // Treats `values` as already-final scores (base == values, lambda 0).
  static ScoreMatrix from_values(std::size_t rows, std::size_t cols, std::vector<double> values);
};

// Throws LambdaOutOfRange, or DimensionMismatch when the position lists do
// not match the matrix shape.
ScoreMatrix score(const SimilarityMatrix& base, std::span<const double> orig_rel_pos,
                  std::span<const double> simp_rel_pos, double lambda);

// Many-to-one assignment: each column j picks the row with the highest score;
// ties go to the smallest |pos_orig[i] - pos_simp[j]|, then the smallest i.
// Returns one link per column, in column order.
std::vector<AlignmentLink> assign(const ScoreMatrix& scores, std::span<const double> orig_rel_pos,
                                  std::span<const double> simp_rel_pos);

// score + assign.
std::vector<AlignmentLink> align(const SimilarityMatrix& base, std::span<const double> orig_rel_pos,
                                 std::span<const double> simp_rel_pos, double lambda);

// Number of link pairs j1 < j2 whose originals are inverted.
std::size_t count_crossings(std::span<const AlignmentLink> links);

}  // namespace simpeval
