#pragma once

#include <string>
#include <vector>

namespace benchaudit {

// Emits Penn Treebank tags; the keyword filter keys on the NN/JJ/VB prefixes.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::string> tag(const std::vector<std::string>& tokens) const = 0;
};

// Lexicon + suffix-rule tagger. Closed-class words map to their function
// tags, open-class words hit the embedded lexicon, the rest fall through
// suffix heuristics (-ing/-ed -> VB*, -ly -> RB, -s -> VBZ/NNS) to NN.
class RuleTagger : public PosTagger {
 public:
  std::string id() const override { return "rule-tagger-v1"; }
  std::vector<std::string> tag(const std::vector<std::string>& tokens) const override;
  std::string tag_one(const std::string& token) const;
};

// Words never used as mask targets: auxiliaries/copulas and a small list of
// semantically empty fillers. Masking "is" is unguessable noise.
bool is_keyword_stopword(const std::string& lowercase_token);

}  // namespace benchaudit
