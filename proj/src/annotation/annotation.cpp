#include "simpeval/annotation/annotation.hpp"

#include <cmath>

#include "simpeval/error.hpp"

namespace simpeval {

void validate_criterion(const CriterionDefinition& criterion, const std::string& field_path) {
  if (criterion.criterion_id.empty()) {
    throw Error(ErrorCode::InvalidSettings, "criterion id is empty", field_path + ".criterion_id");
  }
  if (criterion.scale_max <= criterion.scale_min) {
    throw Error(ErrorCode::InvalidSettings, "scale_max must exceed scale_min",
                field_path + ".scale_max");
  }
  if (!(criterion.weight >= kMinCriterionWeight && criterion.weight <= kMaxCriterionWeight)) {
    throw Error(ErrorCode::InvalidSettings, "weight must lie in [0.1, 10.0]", field_path + ".weight");
  }
}

void upsert_score(EvaluationSession& session, std::span<const CriterionDefinition> criteria,
                  const AnnotationEntry& entry) {
  const CriterionDefinition* criterion = nullptr;
  for (const auto& c : criteria) {
    if (c.criterion_id == entry.criterion_id) criterion = &c;
  }
  if (criterion == nullptr) {
    throw Error(ErrorCode::UnknownCriterion, "unknown criterion '" + entry.criterion_id + "'",
                "criterion_id");
  }
  const auto* variant = session.find_variant(entry.prompt_id, entry.model_id);
  if (variant == nullptr || variant->status != VariantStatus::Succeeded) {
    throw Error(ErrorCode::VariantFailedOrMissing,
                "no succeeded variant for (" + entry.prompt_id + ", " + entry.model_id + ")",
                "model_id");
  }
  if (!std::isfinite(entry.raw_score) || entry.raw_score < criterion->scale_min ||
      entry.raw_score > criterion->scale_max) {
    throw Error(ErrorCode::OutOfScale,
                "score must lie in [" + std::to_string(criterion->scale_min) + ", " +
                    std::to_string(criterion->scale_max) + "]",
                "raw_score");
  }

  bool recorded = false;
  for (auto& c : session.criteria) {
    if (c.criterion_id == criterion->criterion_id) {
      c = *criterion;
      recorded = true;
    }
  }
  if (!recorded) session.criteria.push_back(*criterion);
  session.annotations[{entry.prompt_id, entry.model_id, entry.criterion_id}] = entry.raw_score;
}

void upsert_scores(EvaluationSession& session, std::span<const CriterionDefinition> criteria,
                   std::span<const AnnotationEntry> entries) {
  EvaluationSession draft = session;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    try {
      upsert_score(draft, criteria, entries[k]);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), "[" + std::to_string(k) + "]." + e.field_path());
    }
  }
  session = std::move(draft);
}

std::optional<double> overall_percentage(const EvaluationSession& session,
                                         const std::string& prompt_id, const std::string& model_id) {
  const auto* variant = session.find_variant(prompt_id, model_id);
  if (variant == nullptr || variant->status != VariantStatus::Succeeded) return std::nullopt;

  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& c : session.criteria) {
    const auto it = session.annotations.find({prompt_id, model_id, c.criterion_id});
    if (it == session.annotations.end()) continue;
    const double normalized = (it->second - c.scale_min) / static_cast<double>(c.scale_max - c.scale_min);
    weighted += c.weight * normalized;
    total_weight += c.weight;
  }
  if (total_weight == 0.0) return std::nullopt;
  return 100.0 * weighted / total_weight;
}

}  // namespace simpeval
