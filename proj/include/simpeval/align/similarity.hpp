#pragma once

#include <span>
#include <string>
#include <vector>

#include "simpeval/align/embedding.hpp"
#include "simpeval/types.hpp"

namespace simpeval {

// entry(i, j) = <v_i, w_j> / (|v_i| |w_j|), or 0 when either norm is 0.
// Throws DimensionMismatch on ragged input. The caller tags the tier.
SimilarityMatrix cosine_matrix(std::span<const EmbeddingVector> originals,
                               std::span<const EmbeddingVector> simplified,
                               SimilarityTier tier = SimilarityTier::Semantic);

// Hybrid lexical similarity: word unigrams and boundary-padded character
// 3-grams, TF-IDF weighted over the union of both sentence lists with
// idf = ln((1 + N) / (1 + df)) + 1. Each block is L2-normalized on its own
// and the two are concatenated with equal weight before taking cosines.
SimilarityMatrix tfidf_matrix(std::span<const std::string> originals,
                              std::span<const std::string> simplified);

SimilarityMatrix positional_matrix(std::size_t originals, std::size_t simplified);

struct CascadeOptions {
  bool lexical_enabled = true;  // false skips straight to the positional tier
};

// Semantic -> lexical -> positional. Never throws for non-empty input; the
// resulting matrix carries the tier that produced it.
SimilarityMatrix build_similarity(EmbeddingProvider& provider,
                                  std::span<const SentenceRecord> originals,
                                  std::span<const SentenceRecord> simplified,
                                  const CascadeOptions& options = {});

}  // namespace simpeval
