#pragma once

#include <filesystem>
#include <string>

#include "simpeval/align/embedding.hpp"
#include "simpeval/error.hpp"
#include "simpeval/orchestrator/llm_client.hpp"
#include "simpeval/orchestrator/orchestrator.hpp"
#include "simpeval/store/codec.hpp"
#include "simpeval/store/session_store.hpp"

namespace httplib {
class Server;
}

namespace simpeval {

struct ServiceOptions {
  std::string allowed_origin;         // CORS origin for the UI; empty disables CORS headers
  std::filesystem::path static_dir;   // served at "/" when set
};

struct ExportPayload {
  std::string body;
  std::string content_type;
  std::string filename;
};

int http_status(ErrorCode code);
Json error_body(const Error& error);

// REST surface over the store, orchestrator and alignment engine. The route
// methods are transport-independent (JSON in, JSON out, Error thrown);
// register_routes() binds them to an httplib server.
//
// Only simplify() talks to the LLM and embedding providers.
class ApiService {
 public:
  ApiService(SessionStore& store, LlmClient& llm, EmbeddingProvider& embedder,
             ProviderConfig provider, MatrixOptions matrix_options = {}, ServiceOptions options = {});

  // POST /api/simplify
  Json simplify(const Json& body);
  // GET /api/sessions
  Json list_sessions() const;
  // GET /api/sessions/{id}
  Json get_session(const std::string& session_id) const;
  // GET /api/sessions/{id}/export?format=json|csv
  ExportPayload export_session(const std::string& session_id, const std::string& format) const;
  // GET /api/settings
  Json get_settings() const;
  // PUT /api/settings
  Json put_settings(const Json& body);
  // PUT /api/sessions/{id}/annotations
  Json put_annotations(const std::string& session_id, const Json& body);
  // PUT /api/sessions/{id}/lambda
  Json put_lambda(const std::string& session_id, const Json& body);

  void register_routes(httplib::Server& server);

 private:
  SessionStore& store_;
  LlmClient& llm_;
  EmbeddingProvider& embedder_;
  ProviderConfig provider_;
  MatrixOptions matrix_options_;
  ServiceOptions options_;
};

// Recomputes every succeeded variant's links from its stored matrix at
// `lambda` and stores the new lambda on the session.
void realign_session(EvaluationSession& session, double lambda);

}  // namespace simpeval
