#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>

#include "simpeval/align/embedding.hpp"
#include "simpeval/orchestrator/llm_client.hpp"

namespace simpeval {

// Environment variables (all optional):
//   SIMPEVAL_HOST, SIMPEVAL_PORT                      listen address (127.0.0.1:8000)
//   SIMPEVAL_DATA_DIR                                 ./data
//   SIMPEVAL_LLM_BASE_URL, SIMPEVAL_LLM_API_KEY       chat-completion provider
//   SIMPEVAL_REQUEST_TIMEOUT_MS, SIMPEVAL_MAX_RETRIES
//   SIMPEVAL_CONCURRENCY_CAP                          16
//   SIMPEVAL_EMBEDDING_URL                            empty: lexical tier only; "mock": hashed vectors
//   SIMPEVAL_EMBEDDING_MODEL, SIMPEVAL_EMBEDDING_API_KEY
//   SIMPEVAL_ALLOWED_ORIGIN                           CORS origin of the UI
//   SIMPEVAL_STATIC_DIR                               built UI assets
//   SIMPEVAL_LANGUAGE, SIMPEVAL_HYPHENATION_DIR       syllable counting
struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8000;
  std::filesystem::path data_dir = "data";
  ProviderConfig provider;
  std::string embedding_url;
  std::string embedding_model = "paraphrase-multilingual-MiniLM-L12-v2";
  std::string embedding_api_key;
  std::size_t concurrency_cap = 16;
  std::string allowed_origin;
  std::filesystem::path static_dir;
  std::string language = "en";
  std::filesystem::path hyphenation_dir;
};

using EnvLookup = std::function<const char*(const char*)>;

// Throws InvalidArgument naming the variable when a numeric value is malformed.
ServerConfig server_config_from_env(const EnvLookup& lookup);

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const ServerConfig& config);

}  // namespace simpeval
