#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>

#include "arcs/label_cache.hpp"
#include "arcs/labeling.hpp"

namespace arcs {

struct EndpointConfig {
  /// Scheme, host and optional port, e.g. "http://localhost:8080".
  std::string base_url;
  std::string path = "/v1/completions";
  std::string model;
  double temperature = 0.7;
  int max_tokens = 512;
  /// JSON pointer to the reply text inside the response body.
  std::string reply_pointer = "/choices/0/text";
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  unsigned max_in_flight = 4;
  std::chrono::seconds timeout{60};
  std::string api_key_env = "LABELER_API_KEY";
};

/// Anything that turns a prompt into a completion.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  /// Throws TransportError on failure.
  virtual std::string complete(const std::string& prompt) = 0;
};

/// POSTs {model, prompt, temperature, max_tokens} as JSON and extracts the text at
/// `reply_pointer`. Retries with exponential backoff and bounds concurrent requests.
class HttpCompletionClient final : public CompletionClient {
 public:
  /// Throws ConfigError when the API key variable is unset or empty, or the URL is empty.
  explicit HttpCompletionClient(EndpointConfig config);
  ~HttpCompletionClient() override;

  std::string complete(const std::string& prompt) override;

  /// Number of HTTP requests issued, including retries.
  std::size_t requests() const { return requests_.load(); }
  const EndpointConfig& config() const { return config_; }

 private:
  std::string attempt(const std::string& body);

  EndpointConfig config_;
  std::string api_key_;
  std::counting_semaphore<> in_flight_;
  std::atomic<std::size_t> requests_{0};
};

struct EndpointLabelerOptions {
  std::string model_id;
  std::string belief_template = "belief-zero";
  std::string practice_template = "practice-zero";
  std::string content_template = "content-zero";
  int samples = 5;
};

/// Self-consistency: `k` samples of `tmpl` for one aspect, majority vote,
/// ties to Other. Cached samples are reused and new ones stored.
VoteOutcome self_consistent_label(const Segment& segment, CompletionClient& client,
                                  const PromptTemplate& tmpl, Aspect aspect, int k,
                                  LabelCache* cache = nullptr, std::string_view model_id = {});

/// "testimony#seq", used to tag transport errors.
std::string segment_id(const Segment& segment);

class EndpointLabeler final : public ValenceLabeler, public ContentClassifier {
 public:
  /// Throws ConfigError for an even or non-positive sample count or an unknown template.
  EndpointLabeler(CompletionClient& client, EndpointLabelerOptions options,
                  LabelCache* cache = nullptr);

  ValenceLabel label(const Segment& segment) override;
  bool contains_religious_content(const Segment& segment) override;

  /// Completion calls made (cache hits excluded).
  std::size_t calls() const { return calls_.load(); }

 private:
  CompletionClient& client_;
  EndpointLabelerOptions options_;
  LabelCache* cache_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace arcs
