#include "simpeval/session.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "simpeval/error.hpp"
#include "simpeval/text/analysis.hpp"

namespace simpeval {

namespace {

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::InvalidDocument, message, field);
}

void validate_sentences(const std::vector<SentenceRecord>& sentences, const std::string& field) {
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& s = sentences[i];
    const std::string path = field + "[" + std::to_string(i) + "]";
    if (s.index != i) invalid(path + ".index", "sentence indices must be contiguous from 0");
    if (blank(s.text)) invalid(path + ".text", "sentence text must not be blank");
    if (s.rel_pos != relative_position(i, sentences.size())) {
      invalid(path + ".rel_pos", "rel_pos must equal index / max(N - 1, 1)");
    }
  }
}

}  // namespace

std::string to_string(SimilarityTier tier) {
  switch (tier) {
    case SimilarityTier::Semantic: return "semantic";
    case SimilarityTier::Lexical: return "lexical";
    case SimilarityTier::Positional: return "positional";
  }
  return "positional";
}

std::optional<SimilarityTier> parse_tier(const std::string& text) {
  if (text == "semantic") return SimilarityTier::Semantic;
  if (text == "lexical") return SimilarityTier::Lexical;
  if (text == "positional") return SimilarityTier::Positional;
  return std::nullopt;
}

std::string to_string(VariantStatus status) {
  switch (status) {
    case VariantStatus::Pending: return "pending";
    case VariantStatus::Succeeded: return "succeeded";
    case VariantStatus::Failed: return "failed";
  }
  return "pending";
}

std::optional<VariantStatus> parse_status(const std::string& text) {
  if (text == "pending") return VariantStatus::Pending;
  if (text == "succeeded") return VariantStatus::Succeeded;
  if (text == "failed") return VariantStatus::Failed;
  return std::nullopt;
}

bool EvaluationSession::terminal() const {
  for (const auto& v : variants) {
    if (!v.terminal()) return false;
  }
  return true;
}

const SimplificationVariant* EvaluationSession::find_variant(const std::string& prompt_id,
                                                             const std::string& model_id) const {
  for (const auto& v : variants) {
    if (v.prompt_id == prompt_id && v.model_id == model_id) return &v;
  }
  return nullptr;
}

SimplificationVariant* EvaluationSession::find_variant(const std::string& prompt_id,
                                                       const std::string& model_id) {
  return const_cast<SimplificationVariant*>(
      std::as_const(*this).find_variant(prompt_id, model_id));
}

const CriterionDefinition* EvaluationSession::find_criterion(const std::string& criterion_id) const {
  for (const auto& c : criteria) {
    if (c.criterion_id == criterion_id) return &c;
  }
  return nullptr;
}

double relative_position(std::size_t index, std::size_t count) {
  const std::size_t denom = count > 1 ? count - 1 : 1;
  return static_cast<double>(index) / static_cast<double>(denom);
}

std::vector<double> relative_positions(std::span<const SentenceRecord> sentences) {
  std::vector<double> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.rel_pos);
  return out;
}

void check_lambda(double lambda, const std::string& field_path) {
  if (!std::isfinite(lambda) || lambda < kMinLambda || lambda > kMaxLambda) {
    throw Error(ErrorCode::LambdaOutOfRange, "lambda must lie in [0, 2]", field_path);
  }
}

std::string generate_session_id() {
  static thread_local std::mt19937_64 engine = [] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(engine()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

std::string utc_timestamp_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto micros = duration_cast<microseconds>(now.time_since_epoch()).count() % 1'000'000;
  const std::time_t seconds = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<long long>(micros));
  return buf;
}

namespace {

template <typename T>
void reject_duplicates(const std::vector<T>& items, std::string T::*id, const std::string& field) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!seen.insert(items[i].*id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate id '" + items[i].*id + "'",
                  field + "[" + std::to_string(i) + "]");
    }
  }
}

}  // namespace

EvaluationSession new_session(std::string source_text, std::vector<PromptSpec> prompts,
                              std::vector<ModelSpec> models, double lambda,
                              const SyllableCounter& counter) {
  if (blank(source_text)) throw Error(ErrorCode::EmptySource, "source text is empty", "source_text");
  if (prompts.empty()) throw Error(ErrorCode::EmptyMatrix, "at least one prompt is required", "prompt_ids");
  if (models.empty()) throw Error(ErrorCode::EmptyMatrix, "at least one model is required", "model_ids");
  check_lambda(lambda);
  reject_duplicates(prompts, &PromptSpec::prompt_id, "prompt_ids");
  reject_duplicates(models, &ModelSpec::model_id, "model_ids");

  EvaluationSession session;
  session.session_id = generate_session_id();
  session.created_at = utc_timestamp_now();
  auto analyzed = analyze_text(source_text, counter);
  session.source_sentences = std::move(analyzed.sentences);
  session.source_metrics = analyzed.report;
  session.source_text = std::move(source_text);
  session.lambda = lambda;
  for (const auto& p : prompts) {
    for (const auto& m : models) {
      SimplificationVariant v;
      v.prompt_id = p.prompt_id;
      v.model_id = m.model_id;
      session.variants.push_back(std::move(v));
    }
  }
  session.prompts = std::move(prompts);
  session.models = std::move(models);
  return session;
}

void validate_session(const EvaluationSession& session) {
  if (session.session_id.empty()) invalid("session_id", "session_id is empty");
  if (!std::isfinite(session.lambda) || session.lambda < kMinLambda || session.lambda > kMaxLambda) {
    invalid("lambda", "lambda must lie in [0, 2]");
  }
  if (session.prompts.empty()) invalid("prompts", "no prompts");
  if (session.models.empty()) invalid("models", "no models");
  validate_sentences(session.source_sentences, "source_sentences");

  std::set<std::string> prompt_ids, model_ids;
  for (std::size_t i = 0; i < session.prompts.size(); ++i) {
    if (!prompt_ids.insert(session.prompts[i].prompt_id).second) {
      invalid("prompts[" + std::to_string(i) + "].prompt_id", "duplicate prompt id");
    }
  }
  for (std::size_t i = 0; i < session.models.size(); ++i) {
    if (!model_ids.insert(session.models[i].model_id).second) {
      invalid("models[" + std::to_string(i) + "].model_id", "duplicate model id");
    }
  }

  if (session.variants.size() != session.prompts.size() * session.models.size()) {
    invalid("variants", "variant count must equal prompts x models");
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < session.variants.size(); ++i) {
    const auto& v = session.variants[i];
    const std::string path = "variants[" + std::to_string(i) + "]";
    if (!prompt_ids.contains(v.prompt_id) || !model_ids.contains(v.model_id) ||
        !seen.emplace(v.prompt_id, v.model_id).second) {
      invalid(path, "variants must cover each (prompt, model) permutation exactly once");
    }
    switch (v.status) {
      case VariantStatus::Succeeded:
        if (v.generated_text.empty()) invalid(path + ".generated_text", "succeeded variant has no text");
        if (!v.similarity || v.similarity->cols != v.sentences.size() ||
            v.similarity->rows != session.source_sentences.size() ||
            v.similarity->values.size() != v.similarity->rows * v.similarity->cols) {
          invalid(path + ".similarity", "similarity shape does not match the sentences");
        }
        if (v.alignments.size() != v.sentences.size()) {
          invalid(path + ".alignments", "exactly one link per simplified sentence is required");
        }
        if (!v.metrics) invalid(path + ".metrics", "succeeded variant has no metrics");
        validate_sentences(v.sentences, path + ".sentences");
        break;
      case VariantStatus::Failed:
        if (!v.failure_reason) invalid(path + ".failure_reason", "failed variant has no reason");
        if (!v.sentences.empty() || v.metrics) invalid(path, "failed variant carries results");
        break;
      case VariantStatus::Pending:
        break;
    }
  }

  for (const auto& [key, score] : session.annotations) {
    const auto* criterion = session.find_criterion(key.criterion_id);
    if (criterion == nullptr) invalid("annotations", "annotation references unknown criterion");
    if (!seen.contains({key.prompt_id, key.model_id})) {
      invalid("annotations", "annotation references unknown variant");
    }
    if (!(score >= criterion->scale_min && score <= criterion->scale_max)) {
      invalid("annotations", "annotation score outside the criterion scale");
    }
  }
}

}  // namespace simpeval
