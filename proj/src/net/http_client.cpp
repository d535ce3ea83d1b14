#include "simpeval/net/http_client.hpp"

#include <httplib.h>

namespace simpeval::net {

HttpResult post_json(const HttpUrl& url, const std::string& body, const Headers& headers,
                     std::chrono::milliseconds timeout) {
  HttpResult result;
  httplib::Client client(url.origin());
  if (!client.is_valid()) {
    result.error = "cannot create client for " + url.origin();
    return result;
  }
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers h;
  for (const auto& [name, value] : headers) h.emplace(name, value);

  const auto started = std::chrono::steady_clock::now();
  auto res = client.Post(url.path, h, body, "application/json");
  if (!res) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    const auto err = res.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && elapsed >= timeout * 9 / 10);
    result.outcome = timed_out ? HttpResult::Outcome::Timeout : HttpResult::Outcome::Transport;
    result.error = httplib::to_string(err);
    return result;
  }
  result.outcome = HttpResult::Outcome::Ok;
  result.status = res->status;
  result.body = std::move(res->body);
  return result;
}

}  // namespace simpeval::net
