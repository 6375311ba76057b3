#include "benchaudit/gateway.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "benchaudit/text.hpp"

namespace benchaudit {

namespace {

// UTF-8 curly quotes fold to ASCII before normalization.
std::string fold_smart_quotes(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80) {
      unsigned char third = static_cast<unsigned char>(s[i + 2]);
      if (third == 0x98 || third == 0x99) {  // ‘ ’
        out.push_back('\'');
        i += 2;
        continue;
      }
      if (third == 0x9C || third == 0x9D) {  // “ ”
        out.push_back('"');
        i += 2;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Case-insensitive word match at position i; advances past the word and
// trailing whitespace when it matches.
bool consume_word(const std::string& s, std::size_t& i, std::string_view word) {
  std::size_t p = i;
  for (char expected : word) {
    if (p >= s.size() ||
        std::tolower(static_cast<unsigned char>(s[p])) != static_cast<unsigned char>(expected)) {
      return false;
    }
    ++p;
  }
  if (p < s.size() && std::isalnum(static_cast<unsigned char>(s[p]))) return false;
  i = p;
  while (i < s.size() && is_ws(s[i])) ++i;
  return true;
}

// Rule 1 of the cascade. Returns the option index when a letter fires.
std::optional<int> parse_option_letter(const std::string& reply, int m) {
  const std::string s = trim(reply);
  std::size_t i = 0;

  bool had_prefix = false;
  {
    std::size_t p = i;
    consume_word(s, p, "the");
    bool saw_answer = consume_word(s, p, "answer") || consume_word(s, p, "final answer");
    if (saw_answer) {
      consume_word(s, p, "is");
      if (p < s.size() && s[p] == ':') {
        ++p;
        while (p < s.size() && is_ws(s[p])) ++p;
      }
      had_prefix = true;
      i = p;
    }
  }

  char open = 0;
  if (i < s.size() && (s[i] == '(' || s[i] == '[')) {
    open = s[i];
    ++i;
    while (i < s.size() && is_ws(s[i])) ++i;
  }

  if (i >= s.size() || std::isalpha(static_cast<unsigned char>(s[i])) == 0) return std::nullopt;
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
  const int idx = letter - 'A';
  std::size_t after = i + 1;
  if (after < s.size() && std::isalnum(static_cast<unsigned char>(s[after])) != 0) {
    return std::nullopt;  // start of a longer word
  }
  if (idx < 0 || idx >= m) return std::nullopt;

  if (open != 0) {
    while (after < s.size() && is_ws(s[after])) ++after;
    const char close = open == '(' ? ')' : ']';
    if (after >= s.size() || s[after] != close) return std::nullopt;
    return idx;  // wrapped letter: trailing text allowed
  }
  if (had_prefix) return idx;  // "answer is X": trailing text allowed

  if (after >= s.size()) return idx;
  const char next = s[after];
  if (next == '.' || next == ':' || next == ',' || next == ';' || next == ')' || next == ']' ||
      next == '!' || next == '?') {
    return idx;
  }
  if (is_ws(next)) {
    if (trim(s.substr(after)).empty()) return idx;
    // A bare letter followed by more words is ambiguous for the English
    // words "a"/"I"; other letters read as "<letter> is correct".
    if (letter == 'A' || letter == 'I') return std::nullopt;
    return idx;
  }
  return std::nullopt;
}

std::optional<int> match_full_text(const std::string& norm_reply,
                                   const std::vector<std::string>& options) {
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (!norm_reply.empty() && normalize_text(options[i]) == norm_reply) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

std::optional<int> match_unique_substring(const std::string& norm_reply,
                                          const std::vector<std::string>& options) {
  std::optional<int> found;
  for (std::size_t i = 0; i < options.size(); ++i) {
    const std::string opt = normalize_text(options[i]);
    if (opt.empty() || norm_reply.find(opt) == std::string::npos) continue;
    if (found) return std::nullopt;  // ambiguous
    found = static_cast<int>(i);
  }
  return found;
}

std::string guess_mime(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  if (ext == ".bmp") return "image/bmp";
  return "application/octet-stream";
}

std::optional<std::string> read_file_bytes(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Local files travel as data URIs; data:/http(s) references pass through.
std::string image_url_for(const std::string& image_ref) {
  if (image_ref.rfind("data:", 0) == 0 || image_ref.rfind("http://", 0) == 0 ||
      image_ref.rfind("https://", 0) == 0) {
    return image_ref;
  }
  if (auto bytes = read_file_bytes(image_ref)) {
    return "data:" + guess_mime(image_ref) + ";base64," + base64_encode(*bytes);
  }
  return image_ref;  // opaque reference (e.g. synthetic:// in tests)
}

}  // namespace

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::correct: return "correct";
    case Outcome::incorrect: return "incorrect";
    case Outcome::abstain: return "abstain";
    case Outcome::unparseable: return "unparseable";
  }
  return "unparseable";
}

Outcome outcome_from_name(const std::string& name) {
  if (name == "correct") return Outcome::correct;
  if (name == "incorrect") return Outcome::incorrect;
  if (name == "abstain") return Outcome::abstain;
  if (name == "unparseable") return Outcome::unparseable;
  throw FatalError("unknown outcome: " + name);
}

HttpEndpointClient::HttpEndpointClient(Options opts) : opts_(std::move(opts)) {
  if (opts_.base_url.empty()) {
    throw std::invalid_argument("HttpEndpointClient: base_url required");
  }
}

std::string HttpEndpointClient::complete(const ModelRequest& request) {
  httplib::Client client(opts_.base_url);
  client.set_connection_timeout(opts_.timeout_s);
  client.set_read_timeout(opts_.timeout_s);

  httplib::Headers headers;
  if (!opts_.auth_env.empty()) {
    const char* token = std::getenv(opts_.auth_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw AuthError("endpoint auth env var '" + opts_.auth_env + "' is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  nlohmann::json content = nlohmann::json::array();
  if (request.image_ref) {
    content.push_back(
        {{"type", "image_url"}, {"image_url", {{"url", image_url_for(*request.image_ref)}}}});
  }
  content.push_back({{"type", "text"}, {"text", request.text}});
  nlohmann::json body = {{"model", request.model_id},
                         {"temperature", 0},
                         {"messages", {{{"role", "user"}, {"content", content}}}}};

  auto res = client.Post(opts_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransientError("endpoint request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status == 408 || res->status == 429 || res->status >= 500) {
    throw TransientError("endpoint HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw FatalError("endpoint HTTP " + std::to_string(res->status) + ": " + res->body);
  }

  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) throw FatalError("endpoint returned invalid JSON");
  try {
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw FatalError("endpoint response missing choices[0].message.content");
  }
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("key") || !rec.contains("response")) continue;
    entries_[rec["key"].get<std::string>()] = rec["response"].get<std::string>();
  }
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::store(const std::string& key, const std::string& response) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_[key] = response;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw FatalError("cannot append to response cache: " + path_);
  const auto ts = std::chrono::duration_cast<std::chrono::seconds>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
  nlohmann::json rec = {{"key", key}, {"response", response}, {"ts", ts}};
  out << rec.dump() << "\n";
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

std::string image_digest(const std::optional<std::string>& image_ref) {
  if (!image_ref) return "none";
  if (image_ref->rfind("data:", 0) != 0) {
    if (auto bytes = read_file_bytes(*image_ref)) return hex64(fnv1a64(*bytes));
  }
  return hex64(fnv1a64(*image_ref));
}

std::string request_cache_key(const ModelRequest& request) {
  return hex64(fnv1a64(
      {request.model_id, request.text, image_digest(request.image_ref), request.form_tag}));
}

std::string query(const ModelRequest& request, EndpointClient& client, ResponseCache* cache,
                  const RetryPolicy& retry, QueryStats* stats) {
  const std::string key = request_cache_key(request);
  if (cache != nullptr) {
    if (auto hit = cache->lookup(key)) {
      if (stats != nullptr) {
        stats->attempts = 0;
        stats->cache_hit = true;
      }
      return *hit;
    }
  }

  int attempt = 0;
  for (;;) {
    ++attempt;
    try {
      std::string response = client.complete(request);
      if (cache != nullptr) cache->store(key, response);
      if (stats != nullptr) {
        stats->attempts = attempt;
        stats->cache_hit = false;
      }
      return response;
    } catch (const TransientError&) {
      if (attempt >= retry.max_attempts) {
        if (stats != nullptr) stats->attempts = attempt;
        throw;
      }
      int delay = retry.base_delay_ms;
      for (int k = 1; k < attempt; ++k) delay *= 2;
      if (delay > retry.max_delay_ms) delay = retry.max_delay_ms;
      if (delay > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
  }
}

bool is_abstention(const std::string& raw) {
  const std::string norm = normalize_text(fold_smart_quotes(raw));
  return norm.rfind("i don't know", 0) == 0 || norm.rfind("i do not know", 0) == 0;
}

Verdict parse_choice_answer(const std::string& raw, const std::vector<std::string>& options,
                            int answer_index) {
  Verdict v;
  v.raw = raw;
  const std::string folded = fold_smart_quotes(raw);
  const std::string norm = normalize_text(folded);

  if (norm == "i don't know" || norm == "i do not know") {
    v.outcome = Outcome::abstain;
    return v;
  }

  std::optional<int> idx = parse_option_letter(folded, static_cast<int>(options.size()));
  if (!idx) idx = match_full_text(norm, options);
  if (!idx) idx = match_unique_substring(norm, options);
  if (!idx) {
    v.outcome = Outcome::unparseable;
    return v;
  }

  v.parsed = options[static_cast<std::size_t>(*idx)];
  v.outcome = *idx == answer_index ? Outcome::correct : Outcome::incorrect;
  return v;
}

std::optional<std::string> normalize_slot_answer(const std::string& raw) {
  const std::string norm = normalize_text(fold_smart_quotes(raw));
  if (norm.empty()) return std::nullopt;
  const std::size_t space = norm.find(' ');
  const std::string first = space == std::string::npos ? norm : norm.substr(0, space);
  const std::string token = normalize_token(first);
  if (token.empty()) return std::nullopt;
  return token;
}

Verdict grade_slot(const std::string& parsed_token, const std::string& masked_keyword) {
  Verdict v;
  v.raw = parsed_token;
  const std::string p = normalize_token(fold_smart_quotes(parsed_token));
  if (p.empty()) {
    v.outcome = Outcome::unparseable;
    return v;
  }
  v.parsed = p;
  v.outcome = p == normalize_token(masked_keyword) ? Outcome::correct : Outcome::incorrect;
  return v;
}

Verdict grade_slot_response(const std::string& raw, const std::string& masked_keyword) {
  const std::optional<std::string> parsed = normalize_slot_answer(raw);
  Verdict v;
  v.raw = raw;
  if (!parsed) {
    v.outcome = Outcome::unparseable;
    return v;
  }
  v.parsed = *parsed;
  v.outcome =
      *parsed == normalize_token(masked_keyword) ? Outcome::correct : Outcome::incorrect;
  return v;
}

}  // namespace benchaudit
