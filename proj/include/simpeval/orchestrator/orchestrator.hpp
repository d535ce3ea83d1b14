#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "simpeval/align/embedding.hpp"
#include "simpeval/align/similarity.hpp"
#include "simpeval/orchestrator/llm_client.hpp"
#include "simpeval/text/syllables.hpp"
#include "simpeval/types.hpp"

namespace simpeval {

struct GenerationTask {
  PromptSpec prompt;
  ModelSpec model;
  std::string source_text;
  std::int64_t timeout_ms = 120000;  // >= 1000
  int max_retries = 1;
};

struct GenerationResult {
  std::string text;
  std::int64_t duration_ms = 0;
  int attempts = 0;
};

// System message = prompt body, user message = source text.
ChatRequest build_chat_request(const GenerationTask& task, const ProviderConfig& config);

// One chat completion with the retry policy: timeouts and 5xx are retried up
// to task.max_retries times after a fixed backoff; anything else surfaces
// immediately as ProviderError. duration_ms covers all attempts.
GenerationResult generate(const GenerationTask& task, const ProviderConfig& config, LlmClient& client);

struct MatrixOptions {
  std::size_t concurrency_cap = 16;  // in-flight provider calls per run
  CascadeOptions cascade;
  SyllableCounter syllables;
};

// Runs every pending (prompt, model) permutation concurrently. Each task owns
// its own generate -> segment -> similarity -> align -> metrics pipeline and
// writes only its own result slot; the returned session is assembled after
// all tasks have finished. Task failures become Failed variants. Throws
// ProviderMisconfigured (before anything launches) for a bad config.
EvaluationSession run_matrix(EvaluationSession session, const ProviderConfig& config,
                             LlmClient& client, EmbeddingProvider& embedder,
                             const MatrixOptions& options = {});

}  // namespace simpeval
