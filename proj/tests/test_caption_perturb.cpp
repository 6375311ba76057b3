#include "doctest.h"

#include <set>

#include "benchaudit/caption_perturb.hpp"
#include "test_support.hpp"

using namespace benchaudit;

namespace {

KeywordSet keywords_of(const std::string& caption) {
  RuleTagger tagger;
  return extract_keywords(caption, tagger);
}

std::set<std::string> keyword_tokens(const KeywordSet& set) {
  std::set<std::string> out;
  for (const auto& kw : set.keywords) out.insert(to_lower(kw.token));
  return out;
}

// Counts translator invocations to observe cache behavior.
class CountingTranslator : public Translator {
 public:
  explicit CountingTranslator(Translator& inner) : inner_(inner) {}
  std::string id() const override { return inner_.id(); }
  std::string translate(const std::string& text, const std::string& src,
                        const std::string& tgt) override {
    ++calls_;
    return inner_.translate(text, src, tgt);
  }
  int calls() const { return calls_; }

 private:
  Translator& inner_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("tagger matches the hand-tagged fixture") {
  RuleTagger tagger;
  CHECK(tagger.tag_one("red") == "JJ");
  CHECK(tagger.tag_one("car") == "NN");
  CHECK(tagger.tag_one("drives") == "VBZ");
  CHECK(tagger.tag_one("riding") == "VBG");
  CHECK(tagger.tag_one("woods") == "NNS");
  CHECK(tagger.tag_one("the") == "DT");
  CHECK(tagger.tag_one("of") == "IN");
  CHECK(tagger.tag_one("and") == "CC");
  CHECK(tagger.tag_one("quickly") == "RB");
  CHECK(tagger.tag_one("42") == "CD");
  CHECK(tagger.tag_one("is") == "VBZ");
}

TEST_CASE("keyword extraction keeps content words in token order") {
  auto set = keywords_of("A man riding a bike through the woods");
  auto tokens = keyword_tokens(set);
  CHECK(tokens.count("bike") == 1);
  CHECK(tokens.count("woods") == 1);
  CHECK(tokens.count("man") == 1);
  CHECK(tokens.count("the") == 0);
  CHECK(tokens.count("through") == 0);
  for (std::size_t i = 1; i < set.keywords.size(); ++i) {
    CHECK(set.keywords[i - 1].offset < set.keywords[i].offset);
  }
}

TEST_CASE("keyword extraction fixture: red car drives") {
  auto set = keywords_of("red car drives");
  REQUIRE(set.keywords.size() == 3);
  CHECK(set.keywords[0].pos_tag == "JJ");
  CHECK(set.keywords[1].pos_tag == "NN");
  CHECK(set.keywords[2].pos_tag.rfind("VB", 0) == 0);
}

TEST_CASE("stopword-only captions yield no keywords") {
  CHECK(keywords_of("the of and").keywords.empty());
  CHECK(keywords_of("is the of and to").keywords.empty());
}

TEST_CASE("keyword positions are verifiable against the tokenizer") {
  const std::string caption = "A red fox jumps over the lazy dog near the barn.";
  auto set = keywords_of(caption);
  auto tokens = tokenize(caption);
  REQUIRE(!set.keywords.empty());
  for (const auto& kw : set.keywords) {
    REQUIRE(kw.offset < tokens.size());
    CHECK(tokens[kw.offset] == kw.token);
  }
}

TEST_CASE("keyword tags always carry accepted prefixes") {
  auto set = keywords_of("A shiny vintage automobile parked near a crowded market in town.");
  REQUIRE(!set.keywords.empty());
  for (const auto& kw : set.keywords) {
    const bool ok = kw.pos_tag.rfind("NN", 0) == 0 || kw.pos_tag.rfind("JJ", 0) == 0 ||
                    kw.pos_tag.rfind("VB", 0) == 0;
    CHECK(ok);
  }
}

TEST_CASE("mask_keyword single keyword") {
  const std::string caption = "A man riding a bike";
  KeywordSet set;
  set.source = caption;
  set.keywords = {Keyword{"bike", 4, "NN"}};
  auto masked = mask_keyword(caption, set, 7);
  REQUIRE(masked.status == MaskStatus::ok);
  CHECK(*masked.masked_text == "A man riding a [MASK]");
  CHECK(masked.masked_keyword == "bike");
  CHECK(unmask(masked) == caption);
}

TEST_CASE("mask_keyword fails in-band on empty keyword sets") {
  auto masked = mask_keyword("the of and", KeywordSet{"the of and", {}}, 1);
  CHECK(masked.status == MaskStatus::failed);
  CHECK(masked.fail_reason == "no_keywords");
  CHECK(!masked.masked_text.has_value());
}

TEST_CASE("mask_keyword always masks the first occurrence") {
  const std::string caption = "a dog chases a dog";
  KeywordSet set;
  set.source = caption;
  set.keywords = {Keyword{"dog", 1, "NN"}, Keyword{"dog", 4, "NN"}};
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    auto masked = mask_keyword(caption, set, seed);
    REQUIRE(masked.status == MaskStatus::ok);
    CHECK(*masked.masked_text == "a [MASK] chases a dog");
    CHECK(unmask(masked) == caption);
  }
}

TEST_CASE("mask_keyword rejects captions already containing the placeholder") {
  const std::string caption = "A [MASK] token appears";
  auto set = keywords_of(caption);
  auto masked = mask_keyword(caption, set, 3);
  CHECK(masked.status == MaskStatus::failed);
  CHECK(masked.fail_reason == "mask_collision");
}

TEST_CASE("masking round-trips byte-exactly over a synthetic corpus") {
  RuleTagger tagger;
  const std::vector<std::string> adjs = {"red", "big", "old", "shiny", "quiet"};
  const std::vector<std::string> nouns = {"dog", "car", "tree", "house", "bird"};
  for (int i = 0; i < 500; ++i) {
    const std::string caption = "The " + adjs[i % adjs.size()] + " " +
                                nouns[(i / 5) % nouns.size()] + " waits near the " +
                                nouns[i % nouns.size()] + ".";
    auto set = extract_keywords(caption, tagger);
    auto masked = mask_keyword(caption, set, static_cast<std::uint64_t>(i));
    REQUIRE(masked.status == MaskStatus::ok);
    std::size_t occurrences = 0;
    for (std::size_t pos = masked.masked_text->find("[MASK]"); pos != std::string::npos;
         pos = masked.masked_text->find("[MASK]", pos + 1)) {
      ++occurrences;
    }
    CHECK(occurrences == 1);
    CHECK(unmask(masked) == caption);
  }
}

TEST_CASE("identity translator round-trips captions unchanged") {
  auto translator = make_identity_translator();
  auto bt = back_translate("A man riding a bike through the woods.", *translator);
  CHECK(bt.back_translated == bt.original);
  CHECK(bt.pivot_language == "zh");
  CHECK(bt.translator_id == "dict:identity");
}

TEST_CASE("one-word captions survive back-translation") {
  auto translator = make_identity_translator();
  auto bt = back_translate("dog", *translator);
  CHECK(!bt.back_translated.empty());
}

TEST_CASE("empty captions are rejected") {
  auto translator = make_identity_translator();
  CHECK_THROWS_AS(back_translate("", *translator), std::invalid_argument);
}

TEST_CASE("dictionary translator paraphrases while preserving concepts") {
  auto translator = make_default_dictionary_translator();
  auto bt = back_translate("A man riding a bike through the woods.", *translator);
  CHECK(bt.back_translated != bt.original);
  CHECK(bt.back_translated.find("bicycle") != std::string::npos);
  CHECK(bt.back_translated.find("woods") != std::string::npos);
  CHECK(bt.back_translated.find("person") != std::string::npos);
  // back-translated side still has extractable keywords
  CHECK(!keywords_of(bt.back_translated).keywords.empty());
}

TEST_CASE("dictionary translator swaps plain coordinations only") {
  DictionaryTranslator t("swap", {}, true);
  CHECK(t.paraphrase("cats and dogs sleep") == "dogs and cats sleep");
  // articles block the swap rather than producing garbled text
  CHECK(t.paraphrase("a cat and a dog") == "a cat and a dog");
}

TEST_CASE("translation cache avoids repeat translator calls and persists") {
  auto dir = testsupport::temp_dir("bt_cache");
  const std::string cache_path = (dir / "cache.jsonl").string();
  auto inner = make_default_dictionary_translator();
  CountingTranslator counting(*inner);
  {
    TranslationCache cache(cache_path);
    auto bt1 = back_translate("A man riding a bike.", counting, "zh", &cache);
    CHECK(counting.calls() == 2);  // two hops
    auto bt2 = back_translate("A man riding a bike.", counting, "zh", &cache);
    CHECK(counting.calls() == 2);  // served from cache
    CHECK(bt1.back_translated == bt2.back_translated);
  }
  // a fresh cache object reloads the persisted entry
  TranslationCache cache2(cache_path);
  CHECK(cache2.size() == 1);
  auto bt3 = back_translate("A man riding a bike.", counting, "zh", &cache2);
  CHECK(counting.calls() == 2);
  CHECK(!bt3.back_translated.empty());
}

TEST_CASE("perturb_caption_pair masks both sides independently") {
  CaptionInstance inst;
  inst.id = "c1";
  inst.image_ref = "img.png";
  inst.caption = "A red fox jumps over the lazy dog near the barn.";
  auto translator = make_identity_translator();
  RuleTagger tagger;

  auto pair = perturb_caption_pair(inst, *translator, tagger, 11);
  REQUIRE(!pair.skipped);
  CHECK(pair.bt.back_translated == inst.caption);
  CHECK(pair.masked_original.status == MaskStatus::ok);
  CHECK(pair.masked_bt.status == MaskStatus::ok);
  CHECK(unmask(pair.masked_original) == inst.caption);
  CHECK(unmask(pair.masked_bt) == inst.caption);

  // Independent draws: across seeds the two sides pick different keywords
  // at least once.
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 32 && !differs; ++seed) {
    auto p = perturb_caption_pair(inst, *translator, tagger, seed);
    REQUIRE(!p.skipped);
    if (p.masked_original.masked_keyword != p.masked_bt.masked_keyword) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("paraphrased captions mask cleanly on both sides") {
  CaptionInstance inst;
  inst.id = "fig";
  inst.image_ref = "img.png";
  inst.caption = "A man riding a bike through the woods.";
  auto translator = make_default_dictionary_translator();
  RuleTagger tagger;
  auto pair = perturb_caption_pair(inst, *translator, tagger, 21);
  REQUIRE(!pair.skipped);
  CHECK(pair.masked_original.status == MaskStatus::ok);
  CHECK(pair.masked_bt.status == MaskStatus::ok);
  CHECK(pair.masked_original.masked_text->find("[MASK]") != std::string::npos);
  CHECK(pair.masked_bt.masked_text->find("[MASK]") != std::string::npos);
  CHECK(unmask(pair.masked_original) == inst.caption);
  CHECK(unmask(pair.masked_bt) == pair.bt.back_translated);
  CHECK(pair.bt.back_translated != inst.caption);
}

TEST_CASE("every emitted tag belongs to the Penn tagset") {
  static const std::set<std::string> penn = {
      "CC", "CD", "DT", "EX", "IN", "JJ",  "MD",  "NN",  "NNS", "PRP", "PRP$", "RB",
      "RP", "TO", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP",  "WRB"};
  RuleTagger tagger;
  const std::vector<std::string> soup = {
      "the",    "a",     "and",   "dog",   "running", "jumped", "quickly", "berries",
      "is",     "will",  "to",    "there", "when",    "up",     "42",      "zxqv",
      "cats",   "drives","red",   "house", "itself",  "nobody", "walking", "walked",
      "glass",  "his",   "which", "who",   "not",     "through"};
  for (const auto& word : soup) {
    CAPTURE(word);
    CHECK(penn.count(tagger.tag_one(word)) == 1);
  }
}

TEST_CASE("perturb_caption_pair skips keyword-free captions with a reason") {
  CaptionInstance inst;
  inst.id = "c2";
  inst.image_ref = "img.png";
  inst.caption = "the of and";
  auto translator = make_identity_translator();
  RuleTagger tagger;
  auto pair = perturb_caption_pair(inst, *translator, tagger, 1);
  CHECK(pair.skipped);
  CHECK(pair.skip_reason == "no_keywords");
}

TEST_CASE("perturbation is deterministic in (caption, seed)") {
  CaptionInstance inst;
  inst.id = "c3";
  inst.image_ref = "img.png";
  inst.caption = "A small boat crosses the quiet lake at dawn.";
  auto translator = make_default_dictionary_translator();
  RuleTagger tagger;
  auto a = perturb_caption_pair(inst, *translator, tagger, 5);
  auto b = perturb_caption_pair(inst, *translator, tagger, 5);
  REQUIRE(!a.skipped);
  CHECK(*a.masked_original.masked_text == *b.masked_original.masked_text);
  CHECK(*a.masked_bt.masked_text == *b.masked_bt.masked_text);
  CHECK(a.bt.back_translated == b.bt.back_translated);
}

TEST_CASE("slot prompt carries the fixed instruction and image") {
  KeywordSet set;
  set.source = "A man riding a bike";
  set.keywords = {Keyword{"bike", 4, "NN"}};
  auto masked = mask_keyword(set.source, set, 3);
  REQUIRE(masked.status == MaskStatus::ok);

  auto req = build_slot_prompt(std::optional<std::string>{"img.png"}, masked,
                               default_template(PromptKind::slot));
  CHECK(req.text.rfind("Fill in the [MASK] of the following sentence in one word:", 0) == 0);
  CHECK(req.text.find("in one word") != std::string::npos);
  CHECK(req.text.find("A man riding a [MASK]") != std::string::npos);
  CHECK(req.text.find("Only reply with the word you fill in the [MASK].") != std::string::npos);
  REQUIRE(req.image_ref.has_value());

  auto req3 = build_slot_prompt(std::optional<std::string>{"img.png"}, masked,
                                builtin_template("slot-3"));
  CHECK(req3.text.rfind("Provide one word to fill in the [MASK]", 0) == 0);

  MaskedCaption failed;
  failed.status = MaskStatus::failed;
  failed.fail_reason = "no_keywords";
  CHECK_THROWS_AS(build_slot_prompt(std::optional<std::string>{"img.png"}, failed,
                                    default_template(PromptKind::slot)),
                  std::invalid_argument);
}
