#include "simpeval/orchestrator/llm_client.hpp"

#include <json.hpp>

#include "simpeval/net/http_client.hpp"

namespace simpeval {

using nlohmann::json;

void validate_provider_config(const ProviderConfig& config) {
  auto fail = [](const char* field, const std::string& message) {
    throw Error(ErrorCode::ProviderMisconfigured, message, field);
  };
  if (!net::parse_http_url(config.base_url)) fail("base_url", "LLM base URL is not a valid http(s) URL");
  if (config.default_timeout_ms < 1000) fail("default_timeout_ms", "timeout must be at least 1000 ms");
  if (config.max_retries < 0) fail("max_retries", "max_retries must be non-negative");
  if (config.retry_backoff_ms < 0) fail("retry_backoff_ms", "backoff must be non-negative");
  if (config.max_tokens <= 0) fail("max_tokens", "max_tokens must be positive");
}

std::string encode_chat_request(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return json{{"model", request.model},
              {"messages", messages},
              {"temperature", request.temperature},
              {"max_tokens", request.max_tokens}}
      .dump();
}

ChatRequest decode_chat_request(const std::string& body) {
  const auto doc = json::parse(body);
  ChatRequest req;
  req.model = doc.at("model").get<std::string>();
  for (const auto& m : doc.at("messages")) {
    req.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  }
  req.temperature = doc.value("temperature", 0.3);
  req.max_tokens = doc.value("max_tokens", 2048);
  return req;
}

std::string decode_chat_response(const std::string& body) {
  const auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ProviderError(ProviderError::Kind::MalformedResponse, "response is not a JSON object");
  }
  const auto choices = doc.find("choices");
  if (choices == doc.end() || !choices->is_array() || choices->empty()) {
    throw ProviderError(ProviderError::Kind::MalformedResponse, "response has no choices");
  }
  const auto& first = choices->front();
  if (!first.is_object() || !first.contains("message") || !first["message"].is_object() ||
      !first["message"].contains("content") || !first["message"]["content"].is_string()) {
    throw ProviderError(ProviderError::Kind::MalformedResponse, "first choice has no message content");
  }
  return first["message"]["content"].get<std::string>();
}

HttpLlmClient::HttpLlmClient(ProviderConfig config) : config_(std::move(config)) {}

std::string HttpLlmClient::complete(const ChatRequest& request, std::chrono::milliseconds timeout) {
  auto base = net::parse_http_url(config_.base_url);
  if (!base) throw ProviderError(ProviderError::Kind::Transport, "invalid base URL");
  base->path = net::join_path(base->path, "/chat/completions");

  net::Headers headers;
  if (!config_.api_key.empty()) headers.emplace_back("Authorization", "Bearer " + config_.api_key);
  const auto result = net::post_json(*base, encode_chat_request(request), headers, timeout);
  switch (result.outcome) {
    case net::HttpResult::Outcome::Timeout:
      throw ProviderError(ProviderError::Kind::Timeout, "request timed out: " + result.error);
    case net::HttpResult::Outcome::Transport:
      throw ProviderError(ProviderError::Kind::Transport, "request failed: " + result.error);
    case net::HttpResult::Outcome::Ok:
      break;
  }
  if (result.status < 200 || result.status >= 300) {
    std::string detail = result.body.substr(0, 300);
    throw ProviderError(ProviderError::Kind::Http,
                        "HTTP " + std::to_string(result.status) + (detail.empty() ? "" : ": " + detail),
                        result.status);
  }
  return decode_chat_response(result.body);
}

}  // namespace simpeval
