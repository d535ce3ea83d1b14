#pragma once

#include <span>
#include <string>
#include <vector>

#include "simpeval/text/syllables.hpp"
#include "simpeval/types.hpp"

namespace simpeval {

// Relative position of sentence `index` in a document of `count` sentences.
// The first sentence sits at 0, the last at 1; a lone sentence sits at 0.
double relative_position(std::size_t index, std::size_t count);

std::vector<double> relative_positions(std::span<const SentenceRecord> sentences);

// Throws LambdaOutOfRange unless lambda is a finite value in [0, 2].
void check_lambda(double lambda, const std::string& field_path = "lambda");

// 128 random bits rendered as 32 lowercase hex characters.
std::string generate_session_id();

// Current UTC time, e.g. "2026-10-15T21:15:03.123456Z".
std::string utc_timestamp_now();

// Builds a session skeleton: segments and measures the source, and lays out
// one pending variant per (prompt, model) permutation, prompts outermost.
// Throws EmptySource, EmptyMatrix, LambdaOutOfRange, or InvalidArgument for a
// repeated prompt or model id.
EvaluationSession new_session(std::string source_text, std::vector<PromptSpec> prompts,
                              std::vector<ModelSpec> models, double lambda,
                              const SyllableCounter& counter = {});

// Checks the structural invariants of a stored session. Throws InvalidDocument
// naming the first violated field.
void validate_session(const EvaluationSession& session);

}  // namespace simpeval
