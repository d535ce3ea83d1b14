#include "simpeval/align/linearity.hpp"

#include <cmath>

#include "simpeval/error.hpp"
#include "simpeval/session.hpp"

namespace simpeval {

ScoreMatrix ScoreMatrix::from_values(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "score values do not match the declared shape");
  }
  ScoreMatrix m{rows, cols, values, values, 0.0};
  return m;
}

ScoreMatrix score(const SimilarityMatrix& base, std::span<const double> orig_rel_pos,
                  std::span<const double> simp_rel_pos, double lambda) {
  check_lambda(lambda);
  if (orig_rel_pos.size() != base.rows || simp_rel_pos.size() != base.cols ||
      base.values.size() != base.rows * base.cols) {
    throw Error(ErrorCode::DimensionMismatch, "relative positions do not match the matrix shape");
  }
  ScoreMatrix out{base.rows, base.cols, std::vector<double>(base.values.size()), base.values, lambda};
  for (std::size_t i = 0; i < base.rows; ++i) {
    for (std::size_t j = 0; j < base.cols; ++j) {
      const double penalty = std::abs(orig_rel_pos[i] - simp_rel_pos[j]) * lambda;
      out.values[i * base.cols + j] = base.at(i, j) - penalty;
    }
  }
  return out;
}

std::vector<AlignmentLink> assign(const ScoreMatrix& scores, std::span<const double> orig_rel_pos,
                                  std::span<const double> simp_rel_pos) {
  if (orig_rel_pos.size() != scores.rows || simp_rel_pos.size() != scores.cols) {
    throw Error(ErrorCode::DimensionMismatch, "relative positions do not match the matrix shape");
  }
  std::vector<AlignmentLink> links;
  if (scores.rows == 0) return links;
  links.reserve(scores.cols);
  for (std::size_t j = 0; j < scores.cols; ++j) {
    std::size_t best = 0;
    double best_score = scores.at(0, j);
    double best_distance = std::abs(orig_rel_pos[0] - simp_rel_pos[j]);
    for (std::size_t i = 1; i < scores.rows; ++i) {
      const double s = scores.at(i, j);
      const double distance = std::abs(orig_rel_pos[i] - simp_rel_pos[j]);
      if (s > best_score || (s == best_score && distance < best_distance)) {
        best = i;
        best_score = s;
        best_distance = distance;
      }
    }
    links.push_back({j, best, best_score, scores.base[best * scores.cols + j]});
  }
  return links;
}

std::vector<AlignmentLink> align(const SimilarityMatrix& base, std::span<const double> orig_rel_pos,
                                 std::span<const double> simp_rel_pos, double lambda) {
  return assign(score(base, orig_rel_pos, simp_rel_pos, lambda), orig_rel_pos, simp_rel_pos);
}

std::size_t count_crossings(std::span<const AlignmentLink> links) {
  std::size_t crossings = 0;
  for (std::size_t a = 0; a < links.size(); ++a) {
    for (std::size_t b = a + 1; b < links.size(); ++b) {
      const auto& first = links[a].simplified_index < links[b].simplified_index ? links[a] : links[b];
      const auto& second = &first == &links[a] ? links[b] : links[a];
      if (first.original_index > second.original_index) ++crossings;
    }
  }
  return crossings;
}

}  // namespace simpeval
