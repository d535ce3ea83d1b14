#include "simpeval/api/config.hpp"

#include <charconv>
#include <string_view>

#include "simpeval/error.hpp"

namespace simpeval {

namespace {

template <typename T>
T parse_number(const char* name, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a number", name);
  }
  return value;
}

}  // namespace

ServerConfig server_config_from_env(const EnvLookup& lookup) {
  ServerConfig c;
  auto get = [&](const char* name) -> std::string_view {
    const char* v = lookup(name);
    return v == nullptr ? std::string_view{} : std::string_view(v);
  };
  auto set_string = [&](const char* name, auto& target) {
    if (const auto v = get(name); !v.empty()) target = std::string(v);
  };

  set_string("SIMPEVAL_HOST", c.host);
  if (const auto v = get("SIMPEVAL_PORT"); !v.empty()) c.port = parse_number<int>("SIMPEVAL_PORT", v);
  set_string("SIMPEVAL_DATA_DIR", c.data_dir);
  set_string("SIMPEVAL_LLM_BASE_URL", c.provider.base_url);
  set_string("SIMPEVAL_LLM_API_KEY", c.provider.api_key);
  if (const auto v = get("SIMPEVAL_REQUEST_TIMEOUT_MS"); !v.empty()) {
    c.provider.default_timeout_ms = parse_number<std::int64_t>("SIMPEVAL_REQUEST_TIMEOUT_MS", v);
  }
  if (const auto v = get("SIMPEVAL_MAX_RETRIES"); !v.empty()) {
    c.provider.max_retries = parse_number<int>("SIMPEVAL_MAX_RETRIES", v);
  }
  if (const auto v = get("SIMPEVAL_CONCURRENCY_CAP"); !v.empty()) {
    c.concurrency_cap = parse_number<std::size_t>("SIMPEVAL_CONCURRENCY_CAP", v);
  }
  set_string("SIMPEVAL_EMBEDDING_URL", c.embedding_url);
  set_string("SIMPEVAL_EMBEDDING_MODEL", c.embedding_model);
  set_string("SIMPEVAL_EMBEDDING_API_KEY", c.embedding_api_key);
  set_string("SIMPEVAL_ALLOWED_ORIGIN", c.allowed_origin);
  set_string("SIMPEVAL_STATIC_DIR", c.static_dir);
  set_string("SIMPEVAL_LANGUAGE", c.language);
  set_string("SIMPEVAL_HYPHENATION_DIR", c.hyphenation_dir);
  return c;
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const ServerConfig& config) {
  if (config.embedding_url.empty()) return std::make_unique<DisabledEmbeddingProvider>();
  if (config.embedding_url == "mock") return std::make_unique<MockEmbeddingProvider>();
  RemoteEmbeddingConfig remote;
  remote.url = config.embedding_url;
  remote.model = config.embedding_model;
  remote.api_key = config.embedding_api_key;
  remote.timeout_ms = config.provider.default_timeout_ms;
  return std::make_unique<RemoteEmbeddingProvider>(std::move(remote));
}

}  // namespace simpeval
