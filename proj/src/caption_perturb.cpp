#include "benchaudit/caption_perturb.hpp"

#include <stdexcept>

namespace benchaudit {

namespace {

bool tag_selects_keyword(const std::string& tag) {
  return tag.rfind("NN", 0) == 0 || tag.rfind("JJ", 0) == 0 || tag.rfind("VB", 0) == 0;
}

}  // namespace

KeywordSet extract_keywords(const std::string& caption, const PosTagger& tagger) {
  KeywordSet out;
  out.source = caption;
  const std::vector<std::string> tokens = tokenize(caption);
  const std::vector<std::string> tags = tagger.tag(tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tag_selects_keyword(tags[i])) continue;
    if (is_keyword_stopword(to_lower(tokens[i]))) continue;
    out.keywords.push_back(Keyword{tokens[i], i, tags[i]});
  }
  return out;
}

MaskedCaption mask_keyword(const std::string& caption, const KeywordSet& keywords,
                           std::uint64_t seed) {
  MaskedCaption out;
  out.rng_seed = seed;
  if (caption.find(kMaskToken) != std::string::npos) {
    out.fail_reason = "mask_collision";
    return out;
  }
  if (keywords.keywords.empty()) {
    out.fail_reason = "no_keywords";
    return out;
  }

  SplitMix64 rng(seed);
  out.keyword_index =
      static_cast<std::size_t>(uniform_below(rng, keywords.keywords.size()));
  const Keyword& chosen = keywords.keywords[out.keyword_index];
  out.masked_keyword = chosen.token;

  const auto span = find_token_span(caption, chosen.token);
  if (!span) {
    // Keyword set was built for a different source text.
    throw std::invalid_argument("mask_keyword: keyword '" + chosen.token +
                                "' does not occur in the caption");
  }
  out.masked_text = caption.substr(0, span->begin) + kMaskToken + caption.substr(span->end);
  out.status = MaskStatus::ok;
  return out;
}

std::string unmask(const MaskedCaption& masked) {
  if (masked.status != MaskStatus::ok || !masked.masked_text) {
    throw std::invalid_argument("unmask: masked caption is not ok");
  }
  std::string text = *masked.masked_text;
  const std::size_t pos = text.find(kMaskToken);
  if (pos == std::string::npos) throw std::logic_error("unmask: no [MASK] present");
  text.replace(pos, std::string(kMaskToken).size(), masked.masked_keyword);
  return text;
}

ModelRequest build_slot_prompt(const std::optional<std::string>& image_ref,
                               const MaskedCaption& masked, const PromptTemplate& tmpl) {
  if (masked.status != MaskStatus::ok || !masked.masked_text) {
    throw std::invalid_argument("build_slot_prompt: masking failed (" + masked.fail_reason +
                                "); instance must be skipped upstream");
  }
  if (tmpl.kind != PromptKind::slot) {
    throw TemplateError("build_slot_prompt requires a slot template");
  }
  ModelRequest req;
  req.text = render_template(tmpl, *masked.masked_text);
  req.image_ref = image_ref;
  return req;
}

PerturbedCaptionPair perturb_caption_pair(const CaptionInstance& instance, Translator& translator,
                                          const PosTagger& tagger, std::uint64_t seed,
                                          const std::string& pivot_language,
                                          TranslationCache* cache) {
  PerturbedCaptionPair out;
  out.instance = instance;
  out.bt = back_translate(instance.caption, translator, pivot_language, cache);
  out.keywords_original = extract_keywords(instance.caption, tagger);
  out.keywords_bt = extract_keywords(out.bt.back_translated, tagger);

  out.masked_original =
      mask_keyword(instance.caption, out.keywords_original, derive_seed(seed, {"mask", "orig"}));
  out.masked_bt =
      mask_keyword(out.bt.back_translated, out.keywords_bt, derive_seed(seed, {"mask", "bt"}));

  if (out.masked_original.status != MaskStatus::ok) {
    out.skipped = true;
    out.skip_reason = out.masked_original.fail_reason;
  } else if (out.masked_bt.status != MaskStatus::ok) {
    out.skipped = true;
    out.skip_reason = out.masked_bt.fail_reason + "_bt";
  }
  return out;
}

}  // namespace benchaudit
