#include "simpeval/api/service.hpp"

#include <set>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "simpeval/align/linearity.hpp"
#include "simpeval/annotation/annotation.hpp"
#include "simpeval/session.hpp"
#include "simpeval/store/export.hpp"

namespace simpeval {

namespace {

[[noreturn]] void bad_request(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::InvalidArgument, message, field);
}

const Json& require(const Json& body, const std::string& key) {
  if (!body.is_object()) bad_request("", "request body must be a JSON object");
  const auto it = body.find(key);
  if (it == body.end()) bad_request(key, "missing field '" + key + "'");
  return *it;
}

std::vector<std::string> string_list(const Json& body, const std::string& key) {
  const auto& node = require(body, key);
  if (!node.is_array()) bad_request(key, "'" + key + "' must be an array of strings");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string path = key + "[" + std::to_string(i) + "]";
    if (!node[i].is_string()) bad_request(path, "expected a string");
    if (!seen.insert(node[i].get<std::string>()).second) bad_request(path, "duplicate id");
    out.push_back(node[i].get<std::string>());
  }
  return out;
}

double lambda_field(const Json& body, const std::string& key) {
  const auto& node = require(body, key);
  if (!node.is_number()) bad_request(key, "'" + key + "' must be a number");
  const double lambda = node.get<double>();
  check_lambda(lambda, key);
  return lambda;
}

std::vector<AnnotationEntry> annotation_entries(const Json& body) {
  const Json& list = body.is_object() && body.contains("annotations") ? body["annotations"] : body;
  if (!list.is_array()) bad_request("", "body must be a list of annotation entries");
  std::vector<AnnotationEntry> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto& item = list[k];
    const std::string path = "[" + std::to_string(k) + "]";
    if (!item.is_object()) bad_request(path, "expected an object");
    AnnotationEntry e;
    for (auto [field, target] : {std::pair{"prompt_id", &e.prompt_id}, std::pair{"model_id", &e.model_id},
                                 std::pair{"criterion_id", &e.criterion_id}}) {
      const auto it = item.find(field);
      if (it == item.end() || !it->is_string()) bad_request(path + "." + field, "expected a string");
      *target = it->get<std::string>();
    }
    const auto score = item.find("raw_score");
    if (score == item.end() || !score->is_number()) bad_request(path + ".raw_score", "expected a number");
    e.raw_score = score->get<double>();
    out.push_back(std::move(e));
  }
  return out;
}

Json parse_body(const httplib::Request& req) {
  auto doc = Json::parse(req.body, nullptr, false);
  if (doc.is_discarded()) bad_request("", "request body is not valid JSON");
  return doc;
}

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_body(e));
    } catch (const std::exception& e) {
      spdlog::error("{} {} failed: {}", req.method, req.path, e.what());
      send_json(res, 500, {{"code", "InternalError"}, {"message", e.what()}});
    }
  };
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::UnknownPrompt:
    case ErrorCode::UnknownModel:
      return 404;
    case ErrorCode::SessionPending:
      return 409;
    case ErrorCode::ProviderMisconfigured:
      return 502;
    case ErrorCode::IoError:
    case ErrorCode::InvalidDocument:
      return 500;
    default:
      return 400;
  }
}

Json error_body(const Error& error) {
  Json body = {{"code", std::string(to_string(error.code()))}, {"message", error.what()}};
  if (!error.field_path().empty()) body["field_path"] = error.field_path();
  return body;
}

void realign_session(EvaluationSession& session, double lambda) {
  check_lambda(lambda);
  const auto source_positions = relative_positions(session.source_sentences);
  for (auto& v : session.variants) {
    if (v.status != VariantStatus::Succeeded || !v.similarity) continue;
    v.alignments = align(*v.similarity, source_positions, relative_positions(v.sentences), lambda);
  }
  session.lambda = lambda;
}

ApiService::ApiService(SessionStore& store, LlmClient& llm, EmbeddingProvider& embedder,
                       ProviderConfig provider, MatrixOptions matrix_options, ServiceOptions options)
    : store_(store),
      llm_(llm),
      embedder_(embedder),
      provider_(std::move(provider)),
      matrix_options_(std::move(matrix_options)),
      options_(std::move(options)) {}

Json ApiService::simplify(const Json& body) {
  const auto& text_node = require(body, "source_text");
  if (!text_node.is_string()) bad_request("source_text", "'source_text' must be a string");
  const auto prompt_ids = string_list(body, "prompt_ids");
  const auto model_ids = string_list(body, "model_ids");
  const auto settings = store_.load_settings();
  const double lambda = body.contains("lambda") ? lambda_field(body, "lambda") : settings.default_lambda;

  std::vector<PromptSpec> prompts;
  for (std::size_t i = 0; i < prompt_ids.size(); ++i) {
    const auto it = std::find_if(settings.prompts.begin(), settings.prompts.end(),
                                 [&](const PromptSpec& p) { return p.prompt_id == prompt_ids[i]; });
    if (it == settings.prompts.end()) {
      throw Error(ErrorCode::UnknownPrompt, "unknown prompt '" + prompt_ids[i] + "'",
                  "prompt_ids[" + std::to_string(i) + "]");
    }
    prompts.push_back(*it);
  }
  std::vector<ModelSpec> models;
  for (std::size_t i = 0; i < model_ids.size(); ++i) {
    const auto it = std::find_if(settings.models.begin(), settings.models.end(),
                                 [&](const ModelSpec& m) { return m.model_id == model_ids[i]; });
    if (it == settings.models.end()) {
      throw Error(ErrorCode::UnknownModel, "unknown model '" + model_ids[i] + "'",
                  "model_ids[" + std::to_string(i) + "]");
    }
    models.push_back(*it);
  }

  auto session = new_session(text_node.get<std::string>(), std::move(prompts), std::move(models), lambda,
                             matrix_options_.syllables);
  validate_provider_config(provider_);
  session = run_matrix(std::move(session), provider_, llm_, embedder_, matrix_options_);
  store_.save_session(session);
  return session_to_json(session);
}

Json ApiService::list_sessions() const {
  Json out = Json::array();
  for (const auto& s : store_.list_sessions()) {
    out.push_back({{"session_id", s.session_id}, {"created_at", s.created_at}, {"source_preview", s.source_preview}});
  }
  return out;
}

Json ApiService::get_session(const std::string& session_id) const {
  return session_to_json(store_.load_session(session_id));
}

ExportPayload ApiService::export_session(const std::string& session_id, const std::string& format) const {
  if (format != "json" && format != "csv") bad_request("format", "format must be 'json' or 'csv'");
  const auto session = store_.load_session(session_id);
  if (format == "json") {
    return {export_json(session), "application/json; charset=utf-8", "session-" + session_id + ".json"};
  }
  return {export_csv(session), "text/csv; charset=utf-8", "session-" + session_id + ".csv"};
}

Json ApiService::get_settings() const { return settings_to_json(store_.load_settings()); }

Json ApiService::put_settings(const Json& body) {
  const auto settings = settings_from_json(body);
  store_.save_settings(settings);
  return settings_to_json(settings);
}

Json ApiService::put_annotations(const std::string& session_id, const Json& body) {
  const auto entries = annotation_entries(body);
  if (entries.empty()) return get_session(session_id);
  const auto criteria = store_.load_settings().criteria;
  const auto updated = store_.update_session(
      session_id, [&](EvaluationSession& s) { upsert_scores(s, criteria, entries); });
  return session_to_json(updated);
}

Json ApiService::put_lambda(const std::string& session_id, const Json& body) {
  const double lambda = lambda_field(body, "lambda");
  const auto updated =
      store_.update_session(session_id, [lambda](EvaluationSession& s) { realign_session(s, lambda); });
  return session_to_json(updated);
}

void ApiService::register_routes(httplib::Server& server) {
  constexpr const char* kId = "([0-9A-Za-z_-]+)";
  const std::string session_route = std::string("/api/sessions/") + kId;

  server.Post("/api/simplify", guarded([this](const httplib::Request& req, httplib::Response& res) {
                send_json(res, 200, simplify(parse_body(req)));
              }));
  server.Get("/api/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
               send_json(res, 200, list_sessions());
             }));
  server.Get(session_route, guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, get_session(req.matches[1]));
             }));
  server.Get(session_route + "/export", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const auto format = req.has_param("format") ? req.get_param_value("format") : "json";
               auto payload = export_session(req.matches[1], format);
               res.status = 200;
               res.set_header("Content-Disposition", "attachment; filename=\"" + payload.filename + "\"");
               res.set_content(std::move(payload.body), payload.content_type);
             }));
  server.Get("/api/settings", guarded([this](const httplib::Request&, httplib::Response& res) {
               send_json(res, 200, get_settings());
             }));
  server.Put("/api/settings", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, put_settings(parse_body(req)));
             }));
  server.Put(session_route + "/annotations",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, put_annotations(req.matches[1], parse_body(req)));
             }));
  server.Put(session_route + "/lambda", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, put_lambda(req.matches[1], parse_body(req)));
             }));

  if (!options_.allowed_origin.empty()) {
    const std::string origin = options_.allowed_origin;
    server.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });
  }
  if (!options_.static_dir.empty()) server.set_mount_point("/", options_.static_dir.string());
}

}  // namespace simpeval
