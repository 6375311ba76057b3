#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "benchaudit/errors.hpp"
#include "benchaudit/prompt.hpp"

namespace benchaudit {

enum class Outcome { correct, incorrect, abstain, unparseable };

std::string outcome_name(Outcome o);
Outcome outcome_from_name(const std::string& name);

struct Verdict {
  Outcome outcome = Outcome::unparseable;
  std::string raw;
  std::optional<std::string> parsed;  // present whenever outcome == correct
};

// Black-box completion endpoint.
class EndpointClient {
 public:
  virtual ~EndpointClient() = default;
  virtual std::string complete(const ModelRequest& request) = 0;
};

// Chat-completion wire client. Sends a message array with the image (as a
// data URI for local files) followed by the prompt text, temperature 0.
class HttpEndpointClient : public EndpointClient {
 public:
  struct Options {
    std::string base_url;
    std::string auth_env;  // env var holding the bearer token; empty = none
    std::string path = "/v1/chat/completions";
    int timeout_s = 120;
  };
  explicit HttpEndpointClient(Options opts);
  std::string complete(const ModelRequest& request) override;

 private:
  Options opts_;
};

// Line-delimited (request hash, raw response, timestamp) records.
// Thread-safe; an empty path keeps the cache in memory only.
class ResponseCache {
 public:
  explicit ResponseCache(std::string path);
  std::optional<std::string> lookup(const std::string& key) const;
  void store(const std::string& key, const std::string& response);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> entries_;
};

struct RetryPolicy {
  int max_attempts = 3;
  int base_delay_ms = 200;
  int max_delay_ms = 5000;
};

// Digest of the payload the request would carry: file bytes for local
// files, the reference text otherwise.
std::string image_digest(const std::optional<std::string>& image_ref);

// hash(model_id, prompt text, image digest)
std::string request_cache_key(const ModelRequest& request);

struct QueryStats {
  int attempts = 0;
  bool cache_hit = false;
};

// Cache-first query with exponential backoff on transient failures.
// Auth failures propagate immediately; exhausted retries rethrow the
// last transient error.
std::string query(const ModelRequest& request, EndpointClient& client,
                  ResponseCache* cache = nullptr, const RetryPolicy& retry = {},
                  QueryStats* stats = nullptr);

// Reply beginning with "I don't know" / "I do not know" after normalization.
bool is_abstention(const std::string& raw);

// Three-rule cascade over a lettered-options reply:
//   1. leading/isolated option letter ("C", "c.", "(B)", "Answer: D", ...)
//   2. full-text equality with one option after normalization
//   3. substring containment of exactly one option text
// An exact "I don't know" is an abstention; anything else unparseable.
Verdict parse_choice_answer(const std::string& raw, const std::vector<std::string>& options,
                            int answer_index);

// Lowercase, strip surrounding punctuation/quotes, collapse whitespace,
// first remaining token. Empty replies yield nothing.
std::optional<std::string> normalize_slot_answer(const std::string& raw);

// Exact match of normalized forms; no synonym credit.
Verdict grade_slot(const std::string& parsed_token, const std::string& masked_keyword);
Verdict grade_slot_response(const std::string& raw, const std::string& masked_keyword);

}  // namespace benchaudit
