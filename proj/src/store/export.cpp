#include "simpeval/store/export.hpp"

#include <charconv>

#include "simpeval/annotation/annotation.hpp"
#include "simpeval/error.hpp"
#include "simpeval/session.hpp"
#include "simpeval/store/codec.hpp"

namespace simpeval {

namespace {

void require_terminal(const EvaluationSession& session) {
  if (!session.terminal()) {
    throw Error(ErrorCode::SessionPending, "session still has pending variants", "variants");
  }
}

std::string label_of_prompt(const EvaluationSession& s, const std::string& id) {
  for (const auto& p : s.prompts) {
    if (p.prompt_id == id) return p.label;
  }
  return {};
}

std::string label_of_model(const EvaluationSession& s, const std::string& id) {
  for (const auto& m : s.models) {
    if (m.model_id == id) return m.label;
  }
  return {};
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string();
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string export_json(const EvaluationSession& session) {
  require_terminal(session);
  return session_to_json(session).dump(2) + "\n";
}

EvaluationSession import_json(std::string_view document) {
  const auto doc = Json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::InvalidDocument, "document is not valid JSON");
  auto session = session_from_json(doc);
  validate_session(session);
  return session;
}

const std::vector<std::string>& csv_base_columns() {
  static const std::vector<std::string> columns = {
      "session_id",       "prompt_id",       "prompt_label",        "model_id",
      "model_label",      "status",          "similarity_tier",     "simplified_index",
      "original_index",   "alignment_score", "base_similarity",     "simplified_sentence",
      "original_sentence", "fk_grade",       "fre",                 "compression_ratio",
      "word_count",       "sentence_count",  "avg_sentence_length", "overall_percentage"};
  return columns;
}

std::vector<std::string> csv_columns(const EvaluationSession& session) {
  auto columns = csv_base_columns();
  for (const auto& c : session.criteria) columns.push_back("criterion_" + c.name);
  return columns;
}

std::string export_csv(const EvaluationSession& session) {
  require_terminal(session);
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k > 0) out.push_back(',');
      out += csv_escape(fields[k]);
    }
    out.push_back('\n');
  };
  emit_row(csv_columns(session));

  for (const auto& v : session.variants) {
    // Columns shared by every row of this variant.
    std::vector<std::string> metrics(6), annotations;
    if (v.metrics) {
      metrics = {format_real(v.metrics->fk_grade),
                 format_real(v.metrics->fre),
                 optional_real(v.metrics->compression_ratio),
                 std::to_string(v.metrics->word_count),
                 std::to_string(v.metrics->sentence_count),
                 format_real(v.metrics->avg_sentence_length)};
    }
    const std::string overall = optional_real(overall_percentage(session, v.prompt_id, v.model_id));
    for (const auto& c : session.criteria) {
      const auto it = session.annotations.find({v.prompt_id, v.model_id, c.criterion_id});
      annotations.push_back(it == session.annotations.end() ? std::string() : format_real(it->second));
    }
    const std::string tier = v.similarity ? to_string(v.similarity->tier) : std::string();

    auto row = [&](const std::vector<std::string>& sentence_fields) {
      std::vector<std::string> fields = {session.session_id, v.prompt_id,
                                         label_of_prompt(session, v.prompt_id), v.model_id,
                                         label_of_model(session, v.model_id), to_string(v.status), tier};
      fields.insert(fields.end(), sentence_fields.begin(), sentence_fields.end());
      fields.insert(fields.end(), metrics.begin(), metrics.end());
      fields.push_back(overall);
      fields.insert(fields.end(), annotations.begin(), annotations.end());
      emit_row(fields);
    };

    if (v.sentences.empty()) {
      row(std::vector<std::string>(6));
      continue;
    }
    for (std::size_t j = 0; j < v.sentences.size(); ++j) {
      std::vector<std::string> sentence_fields(6);
      sentence_fields[0] = std::to_string(j);
      sentence_fields[4] = v.sentences[j].text;
      if (j < v.alignments.size()) {
        const auto& link = v.alignments[j];
        sentence_fields[1] = std::to_string(link.original_index);
        sentence_fields[2] = format_real(link.score);
        sentence_fields[3] = format_real(link.base_similarity);
        if (link.original_index < session.source_sentences.size()) {
          sentence_fields[5] = session.source_sentences[link.original_index].text;
        }
      }
      row(sentence_fields);
    }
  }
  return out;
}

}  // namespace simpeval
