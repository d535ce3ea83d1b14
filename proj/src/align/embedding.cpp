#include "simpeval/align/embedding.hpp"

#include <cmath>

#include <json.hpp>

#include "simpeval/net/http_client.hpp"
#include "simpeval/text/analysis.hpp"

namespace simpeval {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void accumulate_hashed(EmbeddingVector& v, std::string_view key, std::uint64_t seed) {
  std::uint64_t state = fnv1a(key, seed);
  for (double& x : v) {
    // 53 random bits mapped onto [-1, 1).
    const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    x += 2.0 * unit - 1.0;
  }
}

}  // namespace

std::optional<std::string> check_batch(std::span<const EmbeddingVector> vectors,
                                       std::size_t expected_count) {
  if (vectors.size() != expected_count) {
    return "expected " + std::to_string(expected_count) + " vectors, got " +
           std::to_string(vectors.size());
  }
  if (vectors.empty()) return std::nullopt;
  const std::size_t dim = vectors.front().size();
  if (dim == 0) return "empty embedding vector";
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (v.size() != dim) return "dimension mismatch at vector " + std::to_string(i);
    bool all_zero = true;
    for (double x : v) {
      if (!std::isfinite(x)) return "non-finite entry in vector " + std::to_string(i);
      if (x != 0.0) all_zero = false;
    }
    if (all_zero) return "null vector at index " + std::to_string(i);
  }
  return std::nullopt;
}

EmbeddingVector MockEmbeddingProvider::embed(const std::string& sentence) const {
  EmbeddingVector v(dimension_, 0.0);
  const auto words = split_words(sentence);
  if (words.empty()) {
    accumulate_hashed(v, sentence, seed_);
  } else {
    for (const auto& w : words) accumulate_hashed(v, w, seed_);
  }
  return v;
}

EmbeddingResult MockEmbeddingProvider::embed_batch(std::span<const std::string> sentences) {
  std::vector<EmbeddingVector> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(embed(s));
  return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingConfig config)
    : config_(std::move(config)) {}

EmbeddingResult RemoteEmbeddingProvider::embed_batch(std::span<const std::string> sentences) {
  const auto url = net::parse_http_url(config_.url);
  if (!url) return Unavailable{"malformed embedding url: " + config_.url};

  nlohmann::json request = {
      {"input", std::vector<std::string>(sentences.begin(), sentences.end())},
      {"model", config_.model}};
  net::Headers headers;
  if (!config_.api_key.empty()) headers.emplace_back("Authorization", "Bearer " + config_.api_key);

  const auto response = net::post_json(*url, request.dump(), headers,
                                       std::chrono::milliseconds(config_.timeout_ms));
  if (response.outcome != net::HttpResult::Outcome::Ok) {
    return Unavailable{"embedding request failed: " + response.error};
  }
  if (response.status < 200 || response.status >= 300) {
    return Unavailable{"embedding endpoint returned HTTP " + std::to_string(response.status)};
  }

  // NaN cannot appear in JSON; a null entry is the usual stand-in and fails
  // the number check below.
  const auto doc = nlohmann::json::parse(response.body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("data") || !doc["data"].is_array()) {
    return Unavailable{"malformed embedding response"};
  }
  std::vector<EmbeddingVector> vectors;
  for (const auto& item : doc["data"]) {
    if (!item.is_object() || !item.contains("embedding") || !item["embedding"].is_array()) {
      return Unavailable{"malformed embedding item"};
    }
    EmbeddingVector v;
    for (const auto& x : item["embedding"]) {
      if (!x.is_number()) return Unavailable{"non-numeric embedding entry"};
      v.push_back(x.get<double>());
    }
    vectors.push_back(std::move(v));
  }
  if (auto problem = check_batch(vectors, sentences.size())) return Unavailable{*problem};
  return vectors;
}

}  // namespace simpeval
