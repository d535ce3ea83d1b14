#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simpeval/types.hpp"

namespace simpeval {

// Full session document, pretty-printed. Throws SessionPending unless every
// variant is terminal.
std::string export_json(const EvaluationSession& session);

// Parses and validates an exported document. Throws InvalidDocument.
EvaluationSession import_json(std::string_view document);

// Fixed leading columns; one "criterion_<name>" column per recorded criterion
// follows.
const std::vector<std::string>& csv_base_columns();
std::vector<std::string> csv_columns(const EvaluationSession& session);

// One row per (variant, simplified sentence); a variant without sentences
// (i.e. a failed one) gets a single row with the sentence columns empty.
// Throws SessionPending.
std::string export_csv(const EvaluationSession& session);

// Shortest text that parses back to exactly `value`.
std::string format_real(double value);

// RFC 4180 quoting: wraps in double quotes when the field contains a comma,
// quote, CR or LF, doubling embedded quotes.
std::string csv_escape(std::string_view field);

}  // namespace simpeval
