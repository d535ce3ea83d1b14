#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace simpeval::net {

// "https://api.example.com:8443/v1" -> origin "https://api.example.com:8443",
// path "/v1". Only http and https are accepted.
struct HttpUrl {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string path;  // always starts with '/'

  std::string origin() const;
};

std::optional<HttpUrl> parse_http_url(std::string_view url);

// Joins a base path and a route without doubling the slash.
std::string join_path(std::string_view base, std::string_view route);

}  // namespace simpeval::net
