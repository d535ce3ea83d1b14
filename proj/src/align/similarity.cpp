#include "simpeval/align/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "../text/utf8.hpp"
#include "simpeval/error.hpp"
#include "simpeval/text/analysis.hpp"

namespace simpeval {

namespace {

using SparseVector = std::unordered_map<std::string, double>;

struct LexicalFeatures {
  SparseVector words;
  SparseVector chars;
};

LexicalFeatures extract_features(const std::string& sentence) {
  LexicalFeatures f;
  for (const auto& word : split_words(sentence)) {
    f.words[word] += 1.0;
    std::u32string padded = U"<" + utf8::to_u32(word) + U">";
    for (std::size_t k = 0; k + 3 <= padded.size(); ++k) {
      f.chars[utf8::from_u32(std::u32string_view(padded).substr(k, 3))] += 1.0;
    }
  }
  return f;
}

void weight_and_normalize(SparseVector& v, const std::unordered_map<std::string, double>& idf) {
  double norm = 0.0;
  for (auto& [term, tf] : v) {
    tf *= idf.at(term);
    norm += tf * tf;
  }
  if (norm == 0.0) return;
  norm = std::sqrt(norm);
  for (auto& [_, w] : v) w /= norm;
}

double dot(const SparseVector& a, const SparseVector& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [term, w] : small) {
    if (auto it = large.find(term); it != large.end()) sum += w * it->second;
  }
  return sum;
}

double squared_norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& [_, w] : v) sum += w * w;
  return sum;
}

std::unordered_map<std::string, double> inverse_document_frequency(
    const std::vector<const SparseVector*>& docs) {
  std::unordered_map<std::string, double> df;
  for (const auto* doc : docs) {
    for (const auto& [term, _] : *doc) df[term] += 1.0;
  }
  const double n = static_cast<double>(docs.size());
  for (auto& [_, value] : df) value = std::log((1.0 + n) / (1.0 + value)) + 1.0;
  return df;
}

}  // namespace

SimilarityMatrix cosine_matrix(std::span<const EmbeddingVector> originals,
                               std::span<const EmbeddingVector> simplified, SimilarityTier tier) {
  if (originals.empty() || simplified.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cosine_matrix needs two non-empty vector lists");
  }
  const std::size_t dim = originals.front().size();
  auto check = [dim](std::span<const EmbeddingVector> vs) {
    for (const auto& v : vs) {
      if (v.size() != dim) throw Error(ErrorCode::DimensionMismatch, "embedding dimensions differ");
    }
  };
  check(originals);
  check(simplified);

  auto norms = [](std::span<const EmbeddingVector> vs) {
    std::vector<double> out;
    for (const auto& v : vs) {
      double s = 0.0;
      for (double x : v) s += x * x;
      out.push_back(std::sqrt(s));
    }
    return out;
  };
  const auto orig_norms = norms(originals);
  const auto simp_norms = norms(simplified);

  auto m = SimilarityMatrix::zeros(originals.size(), simplified.size(), tier);
  for (std::size_t i = 0; i < originals.size(); ++i) {
    for (std::size_t j = 0; j < simplified.size(); ++j) {
      if (orig_norms[i] == 0.0 || simp_norms[j] == 0.0) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d += originals[i][k] * simplified[j][k];
      m.at(i, j) = std::clamp(d / (orig_norms[i] * simp_norms[j]), -1.0, 1.0);
    }
  }
  return m;
}

SimilarityMatrix tfidf_matrix(std::span<const std::string> originals,
                              std::span<const std::string> simplified) {
  std::vector<LexicalFeatures> docs;
  docs.reserve(originals.size() + simplified.size());
  for (const auto& s : originals) docs.push_back(extract_features(s));
  for (const auto& s : simplified) docs.push_back(extract_features(s));

  std::vector<const SparseVector*> word_docs, char_docs;
  for (const auto& d : docs) {
    word_docs.push_back(&d.words);
    char_docs.push_back(&d.chars);
  }
  const auto word_idf = inverse_document_frequency(word_docs);
  const auto char_idf = inverse_document_frequency(char_docs);
  for (auto& d : docs) {
    weight_and_normalize(d.words, word_idf);
    weight_and_normalize(d.chars, char_idf);
  }

  std::vector<double> norms;
  for (const auto& d : docs) norms.push_back(std::sqrt(squared_norm(d.words) + squared_norm(d.chars)));

  auto m = SimilarityMatrix::zeros(originals.size(), simplified.size(), SimilarityTier::Lexical);
  for (std::size_t i = 0; i < originals.size(); ++i) {
    for (std::size_t j = 0; j < simplified.size(); ++j) {
      const auto& a = docs[i];
      const auto& b = docs[originals.size() + j];
      const double denom = norms[i] * norms[originals.size() + j];
      if (denom == 0.0) continue;
      const double sim = (dot(a.words, b.words) + dot(a.chars, b.chars)) / denom;
      m.at(i, j) = std::clamp(sim, 0.0, 1.0);
    }
  }
  return m;
}

SimilarityMatrix positional_matrix(std::size_t originals, std::size_t simplified) {
  return SimilarityMatrix::zeros(originals, simplified, SimilarityTier::Positional);
}

SimilarityMatrix build_similarity(EmbeddingProvider& provider,
                                  std::span<const SentenceRecord> originals,
                                  std::span<const SentenceRecord> simplified,
                                  const CascadeOptions& options) {
  std::vector<std::string> orig_text, simp_text;
  for (const auto& s : originals) orig_text.push_back(s.text);
  for (const auto& s : simplified) simp_text.push_back(s.text);

  // Tier 1: one batch for both documents; any invalid vector fails the tier.
  std::vector<std::string> batch = orig_text;
  batch.insert(batch.end(), simp_text.begin(), simp_text.end());
  std::string reason;
  try {
    auto result = provider.embed_batch(batch);
    if (auto* vectors = std::get_if<std::vector<EmbeddingVector>>(&result)) {
      if (auto problem = check_batch(*vectors, batch.size())) {
        reason = *problem;
      } else {
        std::span<const EmbeddingVector> all(*vectors);
        return cosine_matrix(all.first(orig_text.size()), all.subspan(orig_text.size()),
                             SimilarityTier::Semantic);
      }
    } else {
      reason = std::get<Unavailable>(result).reason;
    }
  } catch (const std::exception& e) {
    reason = e.what();
  }
  spdlog::warn("semantic tier unavailable ({}), falling back", reason);

  // Tier 2 only counts as failed when nothing finite came out of it.
  if (options.lexical_enabled) {
    auto lexical = tfidf_matrix(orig_text, simp_text);
    const bool any_finite = std::any_of(lexical.values.begin(), lexical.values.end(),
                                        [](double v) { return std::isfinite(v); });
    if (any_finite) {
      for (auto& v : lexical.values) {
        if (!std::isfinite(v)) v = 0.0;
      }
      return lexical;
    }
  }
  return positional_matrix(originals.size(), simplified.size());
}

}  // namespace simpeval
