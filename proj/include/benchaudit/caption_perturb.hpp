#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "benchaudit/dataset.hpp"
#include "benchaudit/pos_tagger.hpp"
#include "benchaudit/prompt.hpp"
#include "benchaudit/translator.hpp"

namespace benchaudit {

inline constexpr const char* kMaskToken = "[MASK]";

struct Keyword {
  std::string token;     // surface form as it appears in the source
  std::size_t offset;    // index into tokenize(source)
  std::string pos_tag;
};

struct KeywordSet {
  std::string source;
  std::vector<Keyword> keywords;
};

// Content words: tags with NN/JJ/VB prefixes, minus the stopword list,
// in token order.
KeywordSet extract_keywords(const std::string& caption, const PosTagger& tagger);

enum class MaskStatus { ok, failed };

struct MaskedCaption {
  std::optional<std::string> masked_text;  // absent when failed
  std::string masked_keyword;
  std::size_t keyword_index = 0;  // which KeywordSet entry was drawn
  std::uint64_t rng_seed = 0;
  MaskStatus status = MaskStatus::failed;
  std::string fail_reason;  // no_keywords | mask_collision
};

// Draws one keyword uniformly (deterministic in seed) and replaces its
// first whole-token occurrence with [MASK]. Empty keyword sets and captions
// already containing the literal [MASK] fail in-band.
MaskedCaption mask_keyword(const std::string& caption, const KeywordSet& keywords,
                           std::uint64_t seed);

// Replaces the single [MASK] with the keyword; byte-equal to the source for
// every ok mask.
std::string unmask(const MaskedCaption& masked);

ModelRequest build_slot_prompt(const std::optional<std::string>& image_ref,
                               const MaskedCaption& masked, const PromptTemplate& tmpl);

struct PerturbedCaptionPair {
  CaptionInstance instance;
  BackTranslation bt;
  KeywordSet keywords_original;
  KeywordSet keywords_bt;
  MaskedCaption masked_original;
  MaskedCaption masked_bt;
  bool skipped = false;
  std::string skip_reason;  // no_keywords[_bt] | mask_collision[_bt]
};

// Full perturbation of one instance: back-translate, extract keywords on
// both versions, mask each side independently (draws derived from seed).
// The pair is skipped if either masking fails.
PerturbedCaptionPair perturb_caption_pair(const CaptionInstance& instance, Translator& translator,
                                          const PosTagger& tagger, std::uint64_t seed,
                                          const std::string& pivot_language = "zh",
                                          TranslationCache* cache = nullptr);

}  // namespace benchaudit
