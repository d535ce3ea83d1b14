#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "simpeval/types.hpp"

namespace simpeval {

using Json = nlohmann::ordered_json;

inline constexpr int kSessionSchemaVersion = 1;

struct SettingsDocument {
  std::vector<PromptSpec> prompts;
  std::vector<ModelSpec> models;
  std::vector<CriterionDefinition> criteria;
  double default_lambda = kDefaultLambda;

  bool operator==(const SettingsDocument&) const = default;
};

// Five placeholder CEFR-oriented prompts, one example model, no criteria.
SettingsDocument default_settings();

// Unique ids per list, non-empty prompt bodies and model ids, criterion
// scale/weight bounds, lambda range. Throws InvalidSettings (or
// LambdaOutOfRange) with a path such as "criteria[1].weight".
void validate_settings(const SettingsDocument& settings);

Json settings_to_json(const SettingsDocument& settings);
// Throws InvalidSettings with the path of the malformed field.
SettingsDocument settings_from_json(const Json& doc);

// Full session document. Each variant also carries a derived
// "overall_percentage" which is ignored when reading.
Json session_to_json(const EvaluationSession& session);
// Throws InvalidDocument with the path of the malformed field. Does not run
// validate_session.
EvaluationSession session_from_json(const Json& doc);

Json similarity_to_json(const SimilarityMatrix& matrix);
Json links_to_json(const std::vector<AlignmentLink>& links);
Json report_to_json(const ReadabilityReport& report);

}  // namespace simpeval
