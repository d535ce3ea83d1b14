#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace simpeval {

using EmbeddingVector = std::vector<double>;

struct Unavailable {
  std::string reason;
};

using EmbeddingResult = std::variant<std::vector<EmbeddingVector>, Unavailable>;

enum class EmbeddingProviderKind { RemoteSemantic, DeterministicMock };

// Sentence embedding backend for the semantic tier. Implementations must be
// safe to call from many threads at once.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual EmbeddingProviderKind kind() const = 0;
  virtual EmbeddingResult embed_batch(std::span<const std::string> sentences) = 0;
};

// Returns the reason a batch is unusable, or nullopt when every vector is
// finite, non-zero and of one shared, non-zero dimension, and there is exactly
// one vector per input.
std::optional<std::string> check_batch(std::span<const EmbeddingVector> vectors,
                                       std::size_t expected_count);

// Hash-derived vectors: each word contributes a pseudo-random unit-range
// vector seeded from its text, so sentences sharing words land close together.
// Identical input always yields identical output.
class MockEmbeddingProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 16;

  explicit MockEmbeddingProvider(std::size_t dimension = kDefaultDimension,
                                 std::uint64_t seed = 0x5eed5eedULL)
      : dimension_(dimension), seed_(seed) {}

  EmbeddingProviderKind kind() const override { return EmbeddingProviderKind::DeterministicMock; }
  EmbeddingResult embed_batch(std::span<const std::string> sentences) override;

  EmbeddingVector embed(const std::string& sentence) const;
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
};

struct RemoteEmbeddingConfig {
  std::string url;  // full endpoint, e.g. http://localhost:8080/v1/embeddings
  std::string model = "paraphrase-multilingual-MiniLM-L12-v2";
  std::string api_key;
  std::int64_t timeout_ms = 30000;
};

// Speaks the common embeddings exchange:
//   POST {"input": [...], "model": "..."}  ->  {"data": [{"embedding": [...]}, ...]}
// Every failure (transport, status, shape, NaN) is reported as Unavailable.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteEmbeddingConfig config);

  EmbeddingProviderKind kind() const override { return EmbeddingProviderKind::RemoteSemantic; }
  EmbeddingResult embed_batch(std::span<const std::string> sentences) override;

 private:
  RemoteEmbeddingConfig config_;
};

// Always Unavailable. Used when no embedding endpoint is configured, which
// sends every alignment to the lexical tier.
class DisabledEmbeddingProvider final : public EmbeddingProvider {
 public:
  EmbeddingProviderKind kind() const override { return EmbeddingProviderKind::RemoteSemantic; }
  EmbeddingResult embed_batch(std::span<const std::string>) override {
    return Unavailable{"no embedding endpoint configured"};
  }
};

}  // namespace simpeval
