#include "simpeval/orchestrator/orchestrator.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "simpeval/align/linearity.hpp"
#include "simpeval/session.hpp"
#include "simpeval/text/analysis.hpp"

namespace simpeval {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(std::size_t slots) : free_(slots == 0 ? 1 : slots) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [this] { return free_ > 0; });
    --free_;
  }
  void release() {
    {
      std::lock_guard lock(mutex_);
      ++free_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::size_t free_;
};

class SlotGuard {
 public:
  explicit SlotGuard(ConcurrencyLimiter& limiter) : limiter_(limiter) { limiter_.acquire(); }
  ~SlotGuard() { limiter_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  ConcurrencyLimiter& limiter_;
};

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

std::string attempt_generation(const GenerationTask& task, const ProviderConfig& config,
                               LlmClient& client, int& attempts) {
  const ChatRequest request = build_chat_request(task, config);
  const std::chrono::milliseconds timeout(task.timeout_ms);
  for (attempts = 1;; ++attempts) {
    try {
      return client.complete(request, timeout);
    } catch (const ProviderError& e) {
      if (!e.retryable() || attempts > task.max_retries) throw;
      spdlog::warn("{} / {}: attempt {} failed ({}), retrying", task.prompt.prompt_id,
                   task.model.model_id, attempts, e.what());
      std::this_thread::sleep_for(std::chrono::milliseconds(config.retry_backoff_ms));
    }
  }
}

struct MatrixContext {
  const EvaluationSession& session;
  const ProviderConfig& config;
  LlmClient& client;
  EmbeddingProvider& embedder;
  const MatrixOptions& options;
  ConcurrencyLimiter& limiter;
};

SimplificationVariant run_task(const MatrixContext& ctx, const GenerationTask& task) {
  SimplificationVariant v;
  v.prompt_id = task.prompt.prompt_id;
  v.model_id = task.model.model_id;

  auto fail = [&v](std::string reason) {
    v.status = VariantStatus::Failed;
    v.failure_reason = std::move(reason);
    v.generated_text.clear();
    v.sentences.clear();
    v.similarity.reset();
    v.alignments.clear();
    v.metrics.reset();
    return v;
  };

  std::string text;
  const auto started = Clock::now();
  try {
    SlotGuard slot(ctx.limiter);
    text = attempt_generation(task, ctx.config, ctx.client, v.attempts);
    v.duration_ms = elapsed_ms(started);
  } catch (const ProviderError& e) {
    v.duration_ms = elapsed_ms(started);
    return fail(e.what());
  } catch (const std::exception& e) {
    v.duration_ms = elapsed_ms(started);
    return fail(std::string("generation error: ") + e.what());
  }
  if (blank(text)) return fail("provider returned an empty generation");

  try {
    v.generated_text = std::move(text);
    v.sentences = segment(v.generated_text, ctx.options.syllables);
    if (v.sentences.empty()) return fail("generation contains no sentences");
    {
      SlotGuard slot(ctx.limiter);
      v.similarity = build_similarity(ctx.embedder, ctx.session.source_sentences, v.sentences,
                                      ctx.options.cascade);
    }
    v.alignments = align(*v.similarity, relative_positions(ctx.session.source_sentences),
                         relative_positions(v.sentences), ctx.session.lambda);
    v.metrics = readability(tokenize_all(v.sentences), ctx.session.source_metrics.word_count);
    v.status = VariantStatus::Succeeded;
  } catch (const std::exception& e) {
    return fail(std::string("analysis error: ") + e.what());
  }
  return v;
}

}  // namespace

ChatRequest build_chat_request(const GenerationTask& task, const ProviderConfig& config) {
  ChatRequest req;
  req.model = task.model.model_id;
  req.messages = {{"system", task.prompt.body}, {"user", task.source_text}};
  req.temperature = config.temperature;
  req.max_tokens = config.max_tokens;
  return req;
}

GenerationResult generate(const GenerationTask& task, const ProviderConfig& config, LlmClient& client) {
  GenerationResult result;
  const auto started = Clock::now();
  result.text = attempt_generation(task, config, client, result.attempts);
  result.duration_ms = elapsed_ms(started);
  return result;
}

EvaluationSession run_matrix(EvaluationSession session, const ProviderConfig& config,
                             LlmClient& client, EmbeddingProvider& embedder,
                             const MatrixOptions& options) {
  validate_provider_config(config);

  std::vector<std::size_t> pending;
  std::vector<GenerationTask> tasks;
  for (std::size_t k = 0; k < session.variants.size(); ++k) {
    const auto& v = session.variants[k];
    if (v.terminal()) continue;
    GenerationTask task;
    for (const auto& p : session.prompts) {
      if (p.prompt_id == v.prompt_id) task.prompt = p;
    }
    for (const auto& m : session.models) {
      if (m.model_id == v.model_id) task.model = m;
    }
    task.source_text = session.source_text;
    task.timeout_ms = config.default_timeout_ms;
    task.max_retries = config.max_retries;
    pending.push_back(k);
    tasks.push_back(std::move(task));
  }

  spdlog::info("session {}: launching {} generation tasks", session.session_id, tasks.size());
  const auto started = Clock::now();
  std::vector<std::optional<SimplificationVariant>> results(tasks.size());
  {
    ConcurrencyLimiter limiter(options.concurrency_cap);
    const MatrixContext ctx{session, config, client, embedder, options, limiter};
    std::vector<std::jthread> workers;
    workers.reserve(tasks.size());
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      workers.emplace_back([&ctx, &tasks, &results, t] { results[t] = run_task(ctx, tasks[t]); });
    }
  }  // joins every worker: nothing below runs until all tasks are done

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& slot = session.variants[pending[t]];
    slot = std::move(*results[t]);
    if (slot.status == VariantStatus::Failed) {
      spdlog::warn("session {}: {} / {} failed: {}", session.session_id, slot.prompt_id,
                   slot.model_id, slot.failure_reason.value_or(""));
    }
  }
  spdlog::info("session {}: matrix resolved in {} ms", session.session_id, elapsed_ms(started));
  return session;
}

}  // namespace simpeval
