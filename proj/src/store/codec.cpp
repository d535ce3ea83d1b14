#include "simpeval/store/codec.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "simpeval/annotation/annotation.hpp"
#include "simpeval/error.hpp"
#include "simpeval/session.hpp"

namespace simpeval {

namespace {

// Walks a JSON tree while tracking the path for error messages.
class Reader {
 public:
  Reader(const Json& node, std::string path, ErrorCode code)
      : node_(node), path_(std::move(path)), code_(code) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(code_, (path_.empty() ? std::string("document") : path_) + ": " + message, path_);
  }

  Reader at(const std::string& key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) Reader(node_, child(key), code_).fail("missing field");
    return Reader(*it, child(key), code_);
  }

  std::optional<Reader> optional(const std::string& key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end() || it->is_null()) return std::nullopt;
    return Reader(*it, child(key), code_);
  }

  std::vector<Reader> items() const {
    if (!node_.is_array()) fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
      out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]", code_);
    }
    return out;
  }

  std::string str() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::int64_t integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<std::int64_t>();
  }

  std::size_t count() const {
    const auto v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  int small_int() const {
    const auto v = integer();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail("integer out of range");
    }
    return static_cast<int>(v);
  }

 private:
  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json& node_;
  std::string path_;
  ErrorCode code_;
};

Json prompt_to_json(const PromptSpec& p) {
  return {{"prompt_id", p.prompt_id}, {"label", p.label}, {"body", p.body}};
}

PromptSpec prompt_from(const Reader& r) {
  return {r.at("prompt_id").str(), r.at("label").str(), r.at("body").str()};
}

Json model_to_json(const ModelSpec& m) { return {{"model_id", m.model_id}, {"label", m.label}}; }

ModelSpec model_from(const Reader& r) { return {r.at("model_id").str(), r.at("label").str()}; }

Json criterion_to_json(const CriterionDefinition& c) {
  return {{"criterion_id", c.criterion_id},
          {"name", c.name},
          {"scale_min", c.scale_min},
          {"scale_max", c.scale_max},
          {"weight", c.weight}};
}

CriterionDefinition criterion_from(const Reader& r) {
  return {r.at("criterion_id").str(), r.at("name").str(), r.at("scale_min").small_int(),
          r.at("scale_max").small_int(), r.at("weight").number()};
}

Json sentence_to_json(const SentenceRecord& s) {
  return {{"index", s.index},
          {"text", s.text},
          {"rel_pos", s.rel_pos},
          {"word_count", s.word_count},
          {"syllable_count", s.syllable_count}};
}

SentenceRecord sentence_from(const Reader& r) {
  return {r.at("index").count(), r.at("text").str(), r.at("rel_pos").number(),
          r.at("word_count").count(), r.at("syllable_count").count()};
}

std::vector<SentenceRecord> sentences_from(const Reader& r) {
  std::vector<SentenceRecord> out;
  for (const auto& item : r.items()) out.push_back(sentence_from(item));
  return out;
}

ReadabilityReport report_from(const Reader& r) {
  ReadabilityReport rep;
  rep.word_count = r.at("word_count").count();
  rep.sentence_count = r.at("sentence_count").count();
  rep.avg_sentence_length = r.at("avg_sentence_length").number();
  rep.syllable_count = r.at("syllable_count").count();
  rep.fk_grade = r.at("fk_grade").number();
  rep.fre = r.at("fre").number();
  if (auto c = r.optional("compression_ratio")) rep.compression_ratio = c->number();
  return rep;
}

SimilarityMatrix similarity_from(const Reader& r) {
  SimilarityMatrix m;
  m.rows = r.at("rows").count();
  m.cols = r.at("cols").count();
  const auto tier = parse_tier(r.at("tier").str());
  if (!tier) r.at("tier").fail("unknown tier");
  m.tier = *tier;
  const auto rows = r.at("values").items();
  if (rows.size() != m.rows) r.at("values").fail("row count does not match rows");
  for (const auto& row : rows) {
    const auto cells = row.items();
    if (cells.size() != m.cols) row.fail("column count does not match cols");
    for (const auto& cell : cells) m.values.push_back(cell.number());
  }
  return m;
}

AlignmentLink link_from(const Reader& r) {
  return {r.at("simplified_index").count(), r.at("original_index").count(), r.at("score").number(),
          r.at("base_similarity").number()};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

SettingsDocument default_settings() {
  SettingsDocument s;
  s.prompts = {
      {"cefr-a1", "CEFR A1",
       "Rewrite the text for a beginner reader at CEFR level A1. Use very short sentences, "
       "the most common everyday words, and the present tense where possible. Keep every key fact. "
       "Return only the rewritten text."},
      {"cefr-a2", "CEFR A2",
       "Rewrite the text for an elementary reader at CEFR level A2. Use short, direct sentences "
       "and frequent vocabulary; explain or replace rare words. Keep the original meaning and "
       "order of ideas. Return only the rewritten text."},
      {"cefr-b1", "CEFR B1",
       "Rewrite the text for an intermediate reader at CEFR level B1. Split long sentences, "
       "prefer active voice and familiar vocabulary, and keep all important information. "
       "Return only the rewritten text."},
      {"cefr-b2", "CEFR B2",
       "Rewrite the text for an upper-intermediate reader at CEFR level B2. Reduce sentence "
       "complexity and idiomatic density while keeping nuance and technical terms that matter. "
       "Return only the rewritten text."},
      {"plain-language", "Plain language",
       "Rewrite the text in plain language for a general adult audience. Use clear, concrete "
       "wording, one idea per sentence, and no jargon. Do not add new information. "
       "Return only the rewritten text."},
  };
  s.models = {{"meta-llama/Llama-3.3-70B-Instruct-Turbo", "Llama 3.3 70B Instruct Turbo"}};
  s.default_lambda = kDefaultLambda;
  return s;
}

void validate_settings(const SettingsDocument& settings) {
  auto bad = [](const std::string& path, const std::string& message) {
    throw Error(ErrorCode::InvalidSettings, path + ": " + message, path);
  };
  std::set<std::string> ids;
  for (std::size_t i = 0; i < settings.prompts.size(); ++i) {
    const auto& p = settings.prompts[i];
    const std::string path = "prompts[" + std::to_string(i) + "]";
    if (p.prompt_id.empty()) bad(path + ".prompt_id", "prompt id is empty");
    if (!ids.insert(p.prompt_id).second) bad(path + ".prompt_id", "duplicate prompt id");
    if (p.body.find_first_not_of(" \t\r\n") == std::string::npos) bad(path + ".body", "prompt body is empty");
  }
  ids.clear();
  for (std::size_t i = 0; i < settings.models.size(); ++i) {
    const auto& m = settings.models[i];
    const std::string path = "models[" + std::to_string(i) + "]";
    if (m.model_id.empty()) bad(path + ".model_id", "model id is empty");
    if (!ids.insert(m.model_id).second) bad(path + ".model_id", "duplicate model id");
  }
  ids.clear();
  for (std::size_t i = 0; i < settings.criteria.size(); ++i) {
    const std::string path = "criteria[" + std::to_string(i) + "]";
    try {
      validate_criterion(settings.criteria[i], path);
    } catch (const Error& e) {
      bad(e.field_path(), e.what());
    }
    if (!ids.insert(settings.criteria[i].criterion_id).second) {
      bad(path + ".criterion_id", "duplicate criterion id");
    }
  }
  check_lambda(settings.default_lambda, "default_lambda");
}

Json settings_to_json(const SettingsDocument& settings) {
  Json prompts = Json::array(), models = Json::array(), criteria = Json::array();
  for (const auto& p : settings.prompts) prompts.push_back(prompt_to_json(p));
  for (const auto& m : settings.models) models.push_back(model_to_json(m));
  for (const auto& c : settings.criteria) criteria.push_back(criterion_to_json(c));
  return {{"prompts", prompts},
          {"models", models},
          {"criteria", criteria},
          {"default_lambda", settings.default_lambda}};
}

SettingsDocument settings_from_json(const Json& doc) {
  const Reader root(doc, "", ErrorCode::InvalidSettings);
  SettingsDocument s;
  for (const auto& p : root.at("prompts").items()) s.prompts.push_back(prompt_from(p));
  for (const auto& m : root.at("models").items()) s.models.push_back(model_from(m));
  for (const auto& c : root.at("criteria").items()) s.criteria.push_back(criterion_from(c));
  s.default_lambda = root.optional("default_lambda") ? root.at("default_lambda").number() : kDefaultLambda;
  return s;
}

Json similarity_to_json(const SimilarityMatrix& matrix) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix.cols; ++j) row.push_back(matrix.at(i, j));
    rows.push_back(std::move(row));
  }
  return {{"rows", matrix.rows}, {"cols", matrix.cols}, {"tier", to_string(matrix.tier)}, {"values", rows}};
}

Json links_to_json(const std::vector<AlignmentLink>& links) {
  Json out = Json::array();
  for (const auto& l : links) {
    out.push_back({{"simplified_index", l.simplified_index},
                   {"original_index", l.original_index},
                   {"score", l.score},
                   {"base_similarity", l.base_similarity}});
  }
  return out;
}

Json report_to_json(const ReadabilityReport& r) {
  return {{"word_count", r.word_count},
          {"sentence_count", r.sentence_count},
          {"avg_sentence_length", r.avg_sentence_length},
          {"syllable_count", r.syllable_count},
          {"fk_grade", r.fk_grade},
          {"fre", r.fre},
          {"compression_ratio", optional_number(r.compression_ratio)}};
}

Json session_to_json(const EvaluationSession& session) {
  Json sources = Json::array();
  for (const auto& s : session.source_sentences) sources.push_back(sentence_to_json(s));
  Json prompts = Json::array(), models = Json::array(), criteria = Json::array();
  for (const auto& p : session.prompts) prompts.push_back(prompt_to_json(p));
  for (const auto& m : session.models) models.push_back(model_to_json(m));
  for (const auto& c : session.criteria) criteria.push_back(criterion_to_json(c));

  Json variants = Json::array();
  for (const auto& v : session.variants) {
    Json sentences = Json::array();
    for (const auto& s : v.sentences) sentences.push_back(sentence_to_json(s));
    variants.push_back(
        {{"prompt_id", v.prompt_id},
         {"model_id", v.model_id},
         {"status", to_string(v.status)},
         {"generated_text", v.generated_text},
         {"failure_reason", v.failure_reason ? Json(*v.failure_reason) : Json(nullptr)},
         {"duration_ms", v.duration_ms},
         {"attempts", v.attempts},
         {"sentences", sentences},
         {"similarity", v.similarity ? similarity_to_json(*v.similarity) : Json(nullptr)},
         {"alignments", links_to_json(v.alignments)},
         {"metrics", v.metrics ? report_to_json(*v.metrics) : Json(nullptr)},
         {"overall_percentage",
          optional_number(overall_percentage(session, v.prompt_id, v.model_id))}});
  }

  Json annotations = Json::array();
  for (const auto& [key, score] : session.annotations) {
    annotations.push_back({{"prompt_id", key.prompt_id},
                           {"model_id", key.model_id},
                           {"criterion_id", key.criterion_id},
                           {"raw_score", score}});
  }

  return {{"schema_version", kSessionSchemaVersion},
          {"session_id", session.session_id},
          {"created_at", session.created_at},
          {"lambda", session.lambda},
          {"source_text", session.source_text},
          {"source_sentences", sources},
          {"source_metrics", report_to_json(session.source_metrics)},
          {"prompts", prompts},
          {"models", models},
          {"variants", variants},
          {"criteria", criteria},
          {"annotations", annotations}};
}

EvaluationSession session_from_json(const Json& doc) {
  const Reader root(doc, "", ErrorCode::InvalidDocument);
  if (auto version = root.optional("schema_version"); version && version->integer() != kSessionSchemaVersion) {
    version->fail("unsupported schema version");
  }
  EvaluationSession s;
  s.session_id = root.at("session_id").str();
  s.created_at = root.at("created_at").str();
  s.lambda = root.at("lambda").number();
  s.source_text = root.at("source_text").str();
  s.source_sentences = sentences_from(root.at("source_sentences"));
  s.source_metrics = report_from(root.at("source_metrics"));
  for (const auto& p : root.at("prompts").items()) s.prompts.push_back(prompt_from(p));
  for (const auto& m : root.at("models").items()) s.models.push_back(model_from(m));

  for (const auto& item : root.at("variants").items()) {
    SimplificationVariant v;
    v.prompt_id = item.at("prompt_id").str();
    v.model_id = item.at("model_id").str();
    const auto status = parse_status(item.at("status").str());
    if (!status) item.at("status").fail("unknown status");
    v.status = *status;
    v.generated_text = item.at("generated_text").str();
    if (auto reason = item.optional("failure_reason")) v.failure_reason = reason->str();
    v.duration_ms = item.at("duration_ms").integer();
    if (auto attempts = item.optional("attempts")) v.attempts = attempts->small_int();
    v.sentences = sentences_from(item.at("sentences"));
    if (auto sim = item.optional("similarity")) v.similarity = similarity_from(*sim);
    for (const auto& l : item.at("alignments").items()) v.alignments.push_back(link_from(l));
    if (auto metrics = item.optional("metrics")) v.metrics = report_from(*metrics);
    s.variants.push_back(std::move(v));
  }

  if (auto criteria = root.optional("criteria")) {
    for (const auto& c : criteria->items()) s.criteria.push_back(criterion_from(c));
  }
  if (auto annotations = root.optional("annotations")) {
    for (const auto& a : annotations->items()) {
      s.annotations[{a.at("prompt_id").str(), a.at("model_id").str(), a.at("criterion_id").str()}] =
          a.at("raw_score").number();
    }
  }
  return s;
}

}  // namespace simpeval
