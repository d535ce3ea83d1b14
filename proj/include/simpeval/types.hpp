#pragma once

// Domain types shared by every module, the HTTP API and the on-disk format.
// All of them are plain value types; equality is field-wise.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace simpeval {

inline constexpr double kMinLambda = 0.0;
inline constexpr double kMaxLambda = 2.0;
inline constexpr double kDefaultLambda = 0.5;

inline constexpr double kMinCriterionWeight = 0.1;
inline constexpr double kMaxCriterionWeight = 10.0;

struct SentenceRecord {
  std::size_t index = 0;
  std::string text;
  double rel_pos = 0.0;  // index / max(N - 1, 1)
  std::size_t word_count = 0;
  std::size_t syllable_count = 0;

  bool operator==(const SentenceRecord&) const = default;
};

enum class SimilarityTier { Semantic, Lexical, Positional };

// Dense N_orig x N_simp matrix, row-major. Rows index original sentences,
// columns index simplified sentences.
struct SimilarityMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  SimilarityTier tier = SimilarityTier::Positional;

  static SimilarityMatrix zeros(std::size_t rows, std::size_t cols, SimilarityTier tier) {
    return {rows, cols, std::vector<double>(rows * cols, 0.0), tier};
  }

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
  double& at(std::size_t row, std::size_t col) { return values[row * cols + col]; }

  bool operator==(const SimilarityMatrix&) const = default;
};

struct AlignmentLink {
  std::size_t simplified_index = 0;
  std::size_t original_index = 0;
  double score = 0.0;            // penalized score at the lambda in effect
  double base_similarity = 0.0;  // raw similarity before the positional penalty

  bool operator==(const AlignmentLink&) const = default;
};

struct ReadabilityReport {
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  double avg_sentence_length = 0.0;
  std::size_t syllable_count = 0;
  double fk_grade = 0.0;
  double fre = 0.0;
  std::optional<double> compression_ratio;  // absent on a source document's own report

  bool operator==(const ReadabilityReport&) const = default;
};

struct PromptSpec {
  std::string prompt_id;
  std::string label;
  std::string body;

  bool operator==(const PromptSpec&) const = default;
};

struct ModelSpec {
  std::string model_id;  // provider registry identifier, sent verbatim
  std::string label;

  bool operator==(const ModelSpec&) const = default;
};

struct CriterionDefinition {
  std::string criterion_id;
  std::string name;
  int scale_min = 1;
  int scale_max = 5;
  double weight = 1.0;

  bool operator==(const CriterionDefinition&) const = default;
};

enum class VariantStatus { Pending, Succeeded, Failed };

struct SimplificationVariant {
  std::string prompt_id;
  std::string model_id;
  VariantStatus status = VariantStatus::Pending;
  std::string generated_text;
  std::optional<std::string> failure_reason;
  std::vector<SentenceRecord> sentences;
  std::optional<SimilarityMatrix> similarity;
  std::vector<AlignmentLink> alignments;
  std::optional<ReadabilityReport> metrics;
  std::int64_t duration_ms = 0;
  int attempts = 0;

  bool terminal() const { return status != VariantStatus::Pending; }
  bool operator==(const SimplificationVariant&) const = default;
};

struct AnnotationKey {
  std::string prompt_id;
  std::string model_id;
  std::string criterion_id;

  auto operator<=>(const AnnotationKey&) const = default;
  bool operator==(const AnnotationKey&) const = default;
};

struct EvaluationSession {
  std::string session_id;
  std::string created_at;  // ISO-8601 UTC with microseconds
  std::string source_text;
  std::vector<SentenceRecord> source_sentences;
  ReadabilityReport source_metrics;
  std::vector<PromptSpec> prompts;
  std::vector<ModelSpec> models;
  double lambda = kDefaultLambda;
  std::vector<SimplificationVariant> variants;
  // Definitions of every criterion referenced by `annotations`, captured when
  // the score was written so a session file is self-describing.
  std::vector<CriterionDefinition> criteria;
  std::map<AnnotationKey, double> annotations;

  bool terminal() const;
  const SimplificationVariant* find_variant(const std::string& prompt_id,
                                            const std::string& model_id) const;
  SimplificationVariant* find_variant(const std::string& prompt_id, const std::string& model_id);
  const CriterionDefinition* find_criterion(const std::string& criterion_id) const;

  bool operator==(const EvaluationSession&) const = default;
};

std::string to_string(SimilarityTier tier);
std::optional<SimilarityTier> parse_tier(const std::string& text);
std::string to_string(VariantStatus status);
std::optional<VariantStatus> parse_status(const std::string& text);

}  // namespace simpeval
