#include "benchaudit/translator.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

#include "benchaudit/errors.hpp"
#include "benchaudit/text.hpp"

namespace benchaudit {

namespace {

bool is_word_char_local(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;
  return std::isalnum(u) != 0 || c == '\'' || c == '-';
}

std::string match_capitalization(const std::string& pattern, std::string word) {
  if (!pattern.empty() && !word.empty() &&
      std::isupper(static_cast<unsigned char>(pattern[0]))) {
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  }
  return word;
}

}  // namespace

DictionaryTranslator::DictionaryTranslator(std::string name,
                                           std::map<std::string, std::string> synonyms,
                                           bool swap_coordinations)
    : name_(std::move(name)), synonyms_(std::move(synonyms)),
      swap_coordinations_(swap_coordinations) {}

std::string DictionaryTranslator::id() const { return "dict:" + name_; }

std::string DictionaryTranslator::paraphrase(const std::string& text) const {
  // Word-boundary synonym substitution, preserving everything else byte for byte.
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  std::vector<std::pair<std::size_t, std::size_t>> word_spans;  // spans in `out`
  while (i < text.size()) {
    if (!is_word_char_local(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t b = i;
    while (i < text.size() && is_word_char_local(text[i])) ++i;
    std::string word = text.substr(b, i - b);
    auto it = synonyms_.find(to_lower(word));
    std::string replacement =
        it == synonyms_.end() ? word : match_capitalization(word, it->second);
    word_spans.emplace_back(out.size(), out.size() + replacement.size());
    out += replacement;
  }

  if (swap_coordinations_) {
    // First "X and Y" becomes "Y and X"; articles block the swap.
    auto is_article = [](const std::string& w) { return w == "a" || w == "an" || w == "the"; };
    for (std::size_t k = 0; k + 2 < word_spans.size(); ++k) {
      auto [ab, ae] = word_spans[k + 1];
      if (to_lower(out.substr(ab, ae - ab)) != "and") continue;
      auto [xb, xe] = word_spans[k];
      auto [yb, ye] = word_spans[k + 2];
      std::string x = out.substr(xb, xe - xb);
      std::string y = out.substr(yb, ye - yb);
      if (is_article(to_lower(x)) || is_article(to_lower(y))) continue;
      out = out.substr(0, xb) + y + out.substr(xe, yb - xe) + x + out.substr(ye);
      break;
    }
  }
  return out;
}

std::string DictionaryTranslator::translate(const std::string& text,
                                            const std::string& /*source_lang*/,
                                            const std::string& target_lang) {
  if (target_lang == "en") return paraphrase(text);
  return text;  // pivot leg is the identity
}

std::unique_ptr<DictionaryTranslator> make_identity_translator() {
  return std::make_unique<DictionaryTranslator>("identity", std::map<std::string, std::string>{},
                                                false);
}

std::unique_ptr<DictionaryTranslator> make_default_dictionary_translator() {
  // Both sides of every entry stay inside the tagger's open-class lexicon so
  // back-translated captions keep extractable keywords.
  std::map<std::string, std::string> synonyms = {
      {"man", "person"},     {"woman", "lady"},     {"child", "kid"},
      {"kids", "children"},  {"bike", "bicycle"},   {"car", "automobile"},
      {"dog", "puppy"},      {"cat", "kitten"},     {"road", "street"},
      {"photo", "picture"},  {"house", "home"},     {"big", "large"},
      {"small", "little"},   {"quick", "fast"},     {"begins", "starts"},
      {"sea", "ocean"},      {"stone", "rock"},     {"couch", "sofa"},
      {"forest", "wood"},    {"plane", "airplane"},
  };
  return std::make_unique<DictionaryTranslator>("default", std::move(synonyms), true);
}

HttpTranslator::HttpTranslator(Options opts) : opts_(std::move(opts)) {
  if (opts_.base_url.empty()) throw std::invalid_argument("HttpTranslator: base_url required");
}

std::string HttpTranslator::id() const { return "http:" + opts_.base_url; }

std::string HttpTranslator::translate(const std::string& text, const std::string& source_lang,
                                      const std::string& target_lang) {
  httplib::Client client(opts_.base_url);
  client.set_connection_timeout(opts_.timeout_s);
  client.set_read_timeout(opts_.timeout_s);

  httplib::Headers headers;
  if (!opts_.auth_env.empty()) {
    const char* token = std::getenv(opts_.auth_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw AuthError("translator auth env var '" + opts_.auth_env + "' is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  nlohmann::json body = {{"source", source_lang}, {"target", target_lang}, {"text", text}};
  auto res = client.Post("/translate", headers, body.dump(), "application/json");
  if (!res) {
    throw TransientError("translator request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw AuthError("translator rejected credentials (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status == 408 || res->status == 429 || res->status >= 500) {
    throw TransientError("translator HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw FatalError("translator HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("text") || !reply["text"].is_string()) {
    throw FatalError("translator response missing 'text' field");
  }
  return reply["text"].get<std::string>();
}

TranslationCache::TranslationCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // cache starts cold
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("key")) continue;
    Entry entry;
    entry.pivot_text = rec.value("pivot_text", "");
    entry.back_translated = rec.value("back_translated", "");
    entries_[rec["key"].get<std::string>()] = std::move(entry);
  }
}

std::string TranslationCache::key_for(const std::string& translator_id, const std::string& pivot,
                                      const std::string& caption) {
  return hex64(fnv1a64({translator_id, pivot, caption}));
}

std::optional<TranslationCache::Entry> TranslationCache::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TranslationCache::store(const std::string& key, const Entry& entry) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_[key] = entry;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw FatalError("cannot append to translation cache: " + path_);
  nlohmann::json rec = {{"key", key},
                        {"pivot_text", entry.pivot_text},
                        {"back_translated", entry.back_translated}};
  out << rec.dump() << "\n";
}

std::size_t TranslationCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

BackTranslation back_translate(const std::string& caption, Translator& translator,
                               const std::string& pivot_language, TranslationCache* cache) {
  if (caption.empty()) throw std::invalid_argument("back_translate: caption is empty");

  BackTranslation out;
  out.original = caption;
  out.pivot_language = pivot_language;
  out.translator_id = translator.id();

  const std::string key = TranslationCache::key_for(out.translator_id, pivot_language, caption);
  if (cache != nullptr) {
    if (auto hit = cache->lookup(key)) {
      out.pivot_text = hit->pivot_text;
      out.back_translated = hit->back_translated;
      return out;
    }
  }

  out.pivot_text = translator.translate(caption, "en", pivot_language);
  out.back_translated = translator.translate(out.pivot_text, pivot_language, "en");
  if (out.back_translated.empty()) {
    throw FatalError("translator returned an empty back-translation");
  }
  if (cache != nullptr) cache->store(key, {out.pivot_text, out.back_translated});
  return out;
}

}  // namespace benchaudit
