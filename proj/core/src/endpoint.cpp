#include "arcs/endpoint.hpp"

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "arcs/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace arcs {

using nlohmann::json;

namespace {

class SemaphoreGuard {
 public:
  explicit SemaphoreGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SemaphoreGuard() { s_.release(); }
  SemaphoreGuard(const SemaphoreGuard&) = delete;
  SemaphoreGuard& operator=(const SemaphoreGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

}  // namespace

HttpCompletionClient::HttpCompletionClient(EndpointConfig config)
    : config_(std::move(config)), in_flight_(std::max(1u, config_.max_in_flight)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError(config_.api_key_env + " is not set");
  }
  api_key_ = key;
  if (config_.base_url.empty()) throw ConfigError("endpoint base_url is empty");
  if (config_.max_attempts < 1) throw ConfigError("endpoint max_attempts must be >= 1");
}

HttpCompletionClient::~HttpCompletionClient() = default;

std::string HttpCompletionClient::attempt(const std::string& body) {
  httplib::Client cli(config_.base_url);
  cli.set_connection_timeout(config_.timeout);
  cli.set_read_timeout(config_.timeout);
  cli.set_write_timeout(config_.timeout);
  httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
  ++requests_;
  auto res = cli.Post(config_.path, headers, body, "application/json");
  if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("HTTP " + std::to_string(res->status));
  }
  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::exception& e) {
    throw TransportError(std::string("reply is not JSON: ") + e.what());
  }
  const json::json_pointer ptr(config_.reply_pointer);
  if (!reply.contains(ptr) || !reply.at(ptr).is_string()) {
    throw TransportError("reply has no text at " + config_.reply_pointer);
  }
  return reply.at(ptr).get<std::string>();
}

std::string HttpCompletionClient::complete(const std::string& prompt) {
  const std::string body = json{{"model", config_.model},
                                {"prompt", prompt},
                                {"temperature", config_.temperature},
                                {"max_tokens", config_.max_tokens}}
                               .dump();
  SemaphoreGuard guard(in_flight_);
  auto backoff = config_.initial_backoff;
  for (int i = 1;; ++i) {
    try {
      return attempt(body);
    } catch (const TransportError& e) {
      if (i >= config_.max_attempts) {
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(i) +
                             " attempts)");
      }
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

std::string segment_id(const Segment& segment) {
  return segment.testimony_id + "#" + std::to_string(segment.seq_index);
}

namespace {

std::string fetch_sample(CompletionClient& client, const PromptTemplate& tmpl,
                         const Segment& segment, std::size_t index, LabelCache* cache,
                         std::string_view model_id, std::atomic<std::size_t>* calls,
                         const std::function<std::optional<std::string>(const std::string&)>& token) {
  std::string key;
  if (cache != nullptr) {
    key = cache_key(tmpl.id(), model_id, segment.text, index);
    if (auto hit = cache->get(key)) return hit->response;
  }
  std::string response;
  try {
    response = client.complete(render_prompt(tmpl, segment));
  } catch (const TransportError& e) {
    throw TransportError(e.what(), segment_id(segment));
  }
  if (calls != nullptr) ++*calls;
  if (cache != nullptr) cache->put({key, response, token(response)});
  return response;
}

std::optional<std::string> token_of(const std::string& response) {
  auto r = extract_classification(response);
  return r.ok() ? r.value : std::nullopt;
}

VoteOutcome vote(const Segment& segment, CompletionClient& client, const PromptTemplate& tmpl,
                 Aspect aspect, int k, LabelCache* cache, std::string_view model_id,
                 std::atomic<std::size_t>* calls) {
  if (k < 1 || k % 2 == 0) throw DomainError("self-consistency sample count must be odd and >= 1");
  std::vector<ParseResult<Polarity>> parsed;
  for (int i = 0; i < k; ++i) {
    const std::string response = fetch_sample(client, tmpl, segment, static_cast<std::size_t>(i),
                                              cache, model_id, calls, token_of);
    parsed.push_back(parse_model_response(response, aspect));
  }
  try {
    return aggregate_votes(parsed);
  } catch (const LabelingError& e) {
    throw LabelingError(segment_id(segment) + ": " + e.what());
  }
}

}  // namespace

VoteOutcome self_consistent_label(const Segment& segment, CompletionClient& client,
                                  const PromptTemplate& tmpl, Aspect aspect, int k,
                                  LabelCache* cache, std::string_view model_id) {
  return vote(segment, client, tmpl, aspect, k, cache, model_id, nullptr);
}

EndpointLabeler::EndpointLabeler(CompletionClient& client, EndpointLabelerOptions options,
                                 LabelCache* cache)
    : client_(client), options_(std::move(options)), cache_(cache) {
  if (options_.samples < 1 || options_.samples % 2 == 0) {
    throw ConfigError("samples must be odd and >= 1, got " + std::to_string(options_.samples));
  }
  for (const std::string* id :
       {&options_.belief_template, &options_.practice_template, &options_.content_template}) {
    try {
      builtin_template(*id);
    } catch (const TemplateError& e) {
      throw ConfigError(e.what());
    }
  }
}

ValenceLabel EndpointLabeler::label(const Segment& segment) {
  ValenceLabel out;
  out.source.kind = LabelSource::Kind::Endpoint;
  out.source.model_id = options_.model_id;
  out.source.template_id = options_.belief_template + "+" + options_.practice_template;
  const VoteOutcome belief = vote(segment, client_, builtin_template(options_.belief_template),
                                  Aspect::Belief, options_.samples, cache_, options_.model_id,
                                  &calls_);
  const VoteOutcome practice =
      vote(segment, client_, builtin_template(options_.practice_template), Aspect::Practice,
           options_.samples, cache_, options_.model_id, &calls_);
  out.belief = belief.label;
  out.belief_votes = belief.tally;
  out.practice = practice.label;
  out.practice_votes = practice.tally;
  return out;
}

bool EndpointLabeler::contains_religious_content(const Segment& segment) {
  const PromptTemplate& tmpl = builtin_template(options_.content_template);
  std::vector<ParseResult<bool>> parsed;
  for (int i = 0; i < options_.samples; ++i) {
    const std::string response = fetch_sample(client_, tmpl, segment, static_cast<std::size_t>(i),
                                              cache_, options_.model_id, &calls_, token_of);
    parsed.push_back(parse_content_response(response));
  }
  try {
    return aggregate_content_votes(parsed);
  } catch (const LabelingError& e) {
    throw LabelingError(segment_id(segment) + ": " + e.what());
  }
}

}  // namespace arcs
