#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace benchaudit {

// Wire contract: (source language, target language, text) -> text.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string id() const = 0;
  virtual std::string translate(const std::string& text, const std::string& source_lang,
                                const std::string& target_lang) = 0;
};

// Offline deterministic paraphraser shaped like a two-hop translator: the
// en->pivot leg is the identity, the pivot->en leg substitutes synonyms and
// swaps "X and Y" coordinations. An empty table with swapping off is the
// identity translator.
class DictionaryTranslator : public Translator {
 public:
  DictionaryTranslator(std::string name, std::map<std::string, std::string> synonyms,
                       bool swap_coordinations = true);
  std::string id() const override;
  std::string translate(const std::string& text, const std::string& source_lang,
                        const std::string& target_lang) override;
  std::string paraphrase(const std::string& text) const;

 private:
  std::string name_;
  std::map<std::string, std::string> synonyms_;
  bool swap_coordinations_;
};

std::unique_ptr<DictionaryTranslator> make_identity_translator();
std::unique_ptr<DictionaryTranslator> make_default_dictionary_translator();

// POST {base_url}/translate with {"source","target","text"}; expects
// {"text": "..."} back. 408/429/5xx and transport failures are retryable.
class HttpTranslator : public Translator {
 public:
  struct Options {
    std::string base_url;
    std::string auth_env;  // env var holding a bearer token; empty = no auth
    int timeout_s = 60;
  };
  explicit HttpTranslator(Options opts);
  std::string id() const override;
  std::string translate(const std::string& text, const std::string& source_lang,
                        const std::string& target_lang) override;

 private:
  Options opts_;
};

// Line-delimited (key, pivot_text, back_translated) records keyed by
// hash(translator_id, pivot, caption). Safe under concurrent read/write;
// values are deterministic per key so last-writer-wins is harmless.
class TranslationCache {
 public:
  struct Entry {
    std::string pivot_text;
    std::string back_translated;
  };

  explicit TranslationCache(std::string path);  // empty path = memory only

  static std::string key_for(const std::string& translator_id, const std::string& pivot,
                             const std::string& caption);
  std::optional<Entry> lookup(const std::string& key) const;
  void store(const std::string& key, const Entry& entry);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Entry> entries_;
};

struct BackTranslation {
  std::string original;
  std::string pivot_text;
  std::string back_translated;
  std::string pivot_language;
  std::string translator_id;
};

// Two-hop translation through the pivot (default Chinese). Results are
// cached when a cache is supplied; an empty back-translation of a
// non-empty caption is an error.
BackTranslation back_translate(const std::string& caption, Translator& translator,
                               const std::string& pivot_language = "zh",
                               TranslationCache* cache = nullptr);

}  // namespace benchaudit
