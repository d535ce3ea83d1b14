#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "simpeval/error.hpp"

namespace simpeval {

struct ProviderConfig {
  std::string base_url;  // OpenAI-compatible root, e.g. https://api.together.xyz/v1
  std::string api_key;
  std::int64_t default_timeout_ms = 120000;
  int max_retries = 1;
  std::int64_t retry_backoff_ms = 500;
  double temperature = 0.3;
  int max_tokens = 2048;
};

// Throws ProviderMisconfigured naming the bad field.
void validate_provider_config(const ProviderConfig& config);

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.3;
  int max_tokens = 2048;
};

class ProviderError : public std::runtime_error {
 public:
  enum class Kind { Timeout, Http, MalformedResponse, Transport };

  ProviderError(Kind kind, const std::string& message, int status = 0)
      : std::runtime_error(message), kind_(kind), status_(status) {}

  Kind kind() const noexcept { return kind_; }
  int status() const noexcept { return status_; }

  // Timeouts and 5xx may heal on their own; client errors will not.
  bool retryable() const noexcept {
    return kind_ == Kind::Timeout || (kind_ == Kind::Http && status_ >= 500);
  }

 private:
  Kind kind_;
  int status_;
};

// Chat-completion backend. complete() returns the first choice's message
// content verbatim or throws ProviderError. Must be callable concurrently.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const ChatRequest& request, std::chrono::milliseconds timeout) = 0;
};

// POST {base_url}/chat/completions with a bearer token.
class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(ProviderConfig config);
  std::string complete(const ChatRequest& request, std::chrono::milliseconds timeout) override;

 private:
  ProviderConfig config_;
};

// Serialization of the chat exchange, shared with test doubles.
std::string encode_chat_request(const ChatRequest& request);
ChatRequest decode_chat_request(const std::string& body);
std::string decode_chat_response(const std::string& body);  // throws ProviderError

}  // namespace simpeval
