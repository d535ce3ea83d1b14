#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "simpeval/net/url.hpp"

namespace simpeval::net {

struct HttpResult {
  enum class Outcome { Ok, Timeout, Transport };

  Outcome outcome = Outcome::Transport;
  int status = 0;
  std::string body;
  std::string error;  // transport-level description when outcome != Ok
};

using Headers = std::vector<std::pair<std::string, std::string>>;

// Blocking JSON POST on a fresh connection. `timeout` bounds connect, write
// and read separately. Never throws for network conditions.
HttpResult post_json(const HttpUrl& url, const std::string& body, const Headers& headers,
                     std::chrono::milliseconds timeout);

}  // namespace simpeval::net
