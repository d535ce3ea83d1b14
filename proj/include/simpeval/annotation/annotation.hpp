#pragma once

#include <optional>
#include <span>
#include <string>

#include "simpeval/types.hpp"

namespace simpeval {

struct AnnotationEntry {
  std::string prompt_id;
  std::string model_id;
  std::string criterion_id;
  double raw_score = 0.0;
};

// scale_max > scale_min and weight in [0.1, 10]. Throws InvalidSettings with
// `field_path` prefixed to the offending member.
void validate_criterion(const CriterionDefinition& criterion, const std::string& field_path = "criterion");

// Writes (or overwrites) one score. The criterion is looked up in `criteria`
// (the current settings) and its definition is recorded in session.criteria.
// Throws UnknownCriterion, VariantFailedOrMissing or OutOfScale.
void upsert_score(EvaluationSession& session, std::span<const CriterionDefinition> criteria,
                  const AnnotationEntry& entry);

// All-or-nothing batch: on any error the session is left untouched. The
// thrown error's field_path is "[k]" for the failing entry.
void upsert_scores(EvaluationSession& session, std::span<const CriterionDefinition> criteria,
                   std::span<const AnnotationEntry> entries);

// Weighted mean of min-max normalized scores over the criteria scored for
// this variant, times 100. nullopt when nothing is scored or the variant is
// missing or not Succeeded.
std::optional<double> overall_percentage(const EvaluationSession& session,
                                         const std::string& prompt_id, const std::string& model_id);

}  // namespace simpeval
