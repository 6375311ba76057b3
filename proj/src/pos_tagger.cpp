#include "benchaudit/pos_tagger.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "benchaudit/text.hpp"

namespace benchaudit {

namespace {

const std::unordered_map<std::string, std::string>& closed_class() {
  static const std::unordered_map<std::string, std::string> map = {
      // determiners / articles
      {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"that", "DT"},
      {"these", "DT"}, {"those", "DT"}, {"each", "DT"}, {"every", "DT"}, {"some", "DT"},
      {"any", "DT"}, {"no", "DT"}, {"another", "DT"}, {"both", "DT"}, {"all", "DT"},
      // prepositions / subordinating conjunctions
      {"of", "IN"}, {"in", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"}, {"for", "IN"},
      {"with", "IN"}, {"from", "IN"}, {"into", "IN"}, {"onto", "IN"}, {"over", "IN"},
      {"under", "IN"}, {"through", "IN"}, {"between", "IN"}, {"behind", "IN"},
      {"near", "IN"}, {"beside", "IN"}, {"above", "IN"}, {"below", "IN"}, {"across", "IN"},
      {"along", "IN"}, {"around", "IN"}, {"during", "IN"}, {"before", "IN"}, {"after", "IN"},
      {"against", "IN"}, {"as", "IN"}, {"because", "IN"}, {"while", "IN"}, {"if", "IN"},
      {"than", "IN"}, {"off", "IN"}, {"about", "IN"}, {"inside", "IN"}, {"outside", "IN"},
      {"beneath", "IN"}, {"toward", "IN"}, {"towards", "IN"}, {"upon", "IN"}, {"without", "IN"},
      {"next", "IN"},
      // coordinating conjunctions
      {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"}, {"yet", "CC"},
      // pronouns
      {"i", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"she", "PRP"}, {"it", "PRP"},
      {"we", "PRP"}, {"they", "PRP"}, {"them", "PRP"}, {"him", "PRP"}, {"her", "PRP"},
      {"us", "PRP"}, {"me", "PRP"}, {"who", "WP"}, {"what", "WP"}, {"which", "WDT"},
      {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"}, {"its", "PRP$"}, {"our", "PRP$"},
      {"their", "PRP$"}, {"something", "PRP"}, {"someone", "PRP"}, {"anything", "PRP"},
      // auxiliaries / copulas (stopworded out of keywords regardless)
      {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"}, {"were", "VBD"}, {"be", "VB"},
      {"been", "VBN"}, {"being", "VBG"}, {"am", "VBP"}, {"has", "VBZ"}, {"have", "VBP"},
      {"had", "VBD"}, {"do", "VBP"}, {"does", "VBZ"}, {"did", "VBD"},
      // modals
      {"will", "MD"}, {"would", "MD"}, {"can", "MD"}, {"could", "MD"}, {"shall", "MD"},
      {"should", "MD"}, {"may", "MD"}, {"might", "MD"}, {"must", "MD"},
      // particles / adverbs / misc function words
      {"to", "TO"}, {"not", "RB"}, {"very", "RB"}, {"too", "RB"}, {"also", "RB"},
      {"just", "RB"}, {"only", "RB"}, {"there", "EX"}, {"here", "RB"}, {"then", "RB"},
      {"when", "WRB"}, {"where", "WRB"}, {"why", "WRB"}, {"how", "WRB"},
      {"up", "RP"}, {"down", "RP"}, {"out", "RP"}, {"so", "RB"},
  };
  return map;
}

const std::unordered_set<std::string>& noun_lexicon() {
  static const std::unordered_set<std::string> set = {
      "man",        "woman",     "person",    "people",    "child",      "kid",
      "boy",        "girl",      "lady",      "baby",      "dog",        "puppy",
      "cat",        "kitten",    "bike",      "bicycle",   "car",        "automobile",
      "truck",      "bus",       "train",     "plane",     "airplane",   "boat",
      "ship",       "horse",     "bird",      "bear",      "cow",        "sheep",
      "elephant",   "zebra",     "giraffe",   "fox",       "deer",       "rabbit",
      "road",       "street",    "wood",      "forest",    "tree",       "field",
      "park",       "beach",     "mountain",  "river",     "lake",       "sky",
      "cloud",      "house",     "home",      "building",  "room",       "kitchen",
      "table",      "chair",     "bench",     "bed",       "window",     "door",
      "ball",       "bat",       "glove",     "kite",      "board",      "surfboard",
      "skateboard", "phone",     "computer",  "laptop",    "clock",      "sign",
      "light",      "food",      "pizza",     "sandwich",  "cake",       "fruit",
      "apple",      "banana",    "orange",    "plate",     "bowl",       "cup",
      "glass",      "bottle",    "water",     "snow",      "rain",       "grass",
      "flower",     "hat",       "shirt",     "jacket",    "dress",      "umbrella",
      "bag",        "group",     "crowd",     "team",      "player",     "rider",
      "driver",     "top",       "hill",      "city",      "town",       "barn",
      "fence",      "wall",      "floor",     "ground",    "air",        "sun",
      "moon",       "star",      "night",     "day",       "picture",    "photo",
      "image",      "camera",    "motorcycle","helmet",    "wave",       "ocean",
      "sea",        "sand",      "stone",     "rock",      "path",       "trail",
      "bridge",     "tower",     "church",    "castle",    "garden",     "market",
      "shop",       "store",     "station",   "airport",   "track",      "court",
      "pool",       "toy",       "book",      "painting",  "artwork",    "frame",
      "background", "scene",     "view",      "side",      "front",      "corner",
      "edge",       "middle",    "center",    "piece",     "slice",      "bunch",
      "pair",       "jersey",    "uniform",   "game",      "match",      "race",
      "fire",       "hydrant",   "traffic",   "lot",       "zoo",        "desk",
      "couch",      "sofa",      "television","tv",        "mirror",     "sink",
      "toilet",     "oven",      "stove",     "fridge",    "basket",     "box",
      "suitcase",   "backpack",  "scooter",   "wagon",     "tractor",    "leaf",
      "branch",     "bush",      "lawn",      "yard",      "pond",       "shore",
      "dock",       "pier",      "meal",      "dinner",    "lunch",      "breakfast",
  };
  return set;
}

const std::unordered_set<std::string>& verb_lexicon() {
  static const std::unordered_set<std::string> set = {
      "ride",  "drive", "run",    "walk",  "jump",  "sit",    "stand", "hold",
      "carry", "wear",  "eat",    "drink", "play",  "throw",  "catch", "hit",
      "kick",  "fly",   "swim",   "surf",  "ski",   "skate",  "climb", "chase",
      "watch", "look",  "see",    "smile", "laugh", "talk",   "speak", "read",
      "write", "draw",  "paint",  "cook",  "cut",   "pour",   "serve", "wait",
      "sleep", "lie",   "lean",   "hang",  "cross", "pass",   "reach", "point",
      "gather","travel","move",   "pull",  "push",  "lift",   "open",  "close",
      "feed",  "pet",   "graze",  "rest",  "stroll","glide",  "soar",  "leap",
      "begin", "start", "finish", "stop",  "turn",  "face",   "follow","lead",
      "stare", "gaze",  "pose",   "perch", "fill",  "share",  "enjoy",
  };
  return set;
}

const std::unordered_set<std::string>& adjective_lexicon() {
  static const std::unordered_set<std::string> set = {
      "red",     "blue",    "green",   "yellow",  "black",    "white",    "brown",
      "gray",    "grey",    "pink",    "purple",  "golden",   "silver",   "big",
      "small",   "large",   "little",  "old",     "young",    "new",      "tall",
      "short",   "long",    "high",    "low",     "busy",     "empty",    "full",
      "happy",   "sad",     "dark",    "bright",  "sunny",    "cloudy",   "rainy",
      "snowy",   "wet",     "dry",     "dirty",   "clean",    "beautiful","pretty",
      "colorful","wooden",  "metal",   "plastic", "vintage",  "modern",   "crowded",
      "quiet",   "lazy",    "quick",   "fast",    "slow",     "furry",    "fluffy",
      "striped", "spotted", "shiny",   "giant",   "tiny",     "huge",     "warm",
      "cold",    "hot",     "fresh",   "calm",    "rough",    "smooth",   "steep",
  };
  return set;
}

const std::unordered_set<std::string>& keyword_stopwords() {
  // Auxiliaries/copulas plus fillers that would make unguessable masks.
  static const std::unordered_set<std::string> set = {
      "is",   "are",  "was",  "were", "be",   "been", "being", "am",
      "has",  "have", "had",  "do",   "does", "did",  "thing", "things",
      "stuff","way",  "ways", "etc",
  };
  return set;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string RuleTagger::tag_one(const std::string& token) const {
  const std::string w = to_lower(token);
  if (w.empty()) return "NN";
  if (all_digits(w)) return "CD";

  if (auto it = closed_class().find(w); it != closed_class().end()) return it->second;
  if (noun_lexicon().count(w)) return "NN";
  if (verb_lexicon().count(w)) return "VB";
  if (adjective_lexicon().count(w)) return "JJ";

  if (w.size() >= 4 && ends_with(w, "ly")) return "RB";
  if (w.size() >= 5 && ends_with(w, "ing")) return "VBG";
  if (w.size() >= 4 && ends_with(w, "ed")) return "VBD";
  if (w.size() >= 5 && ends_with(w, "ies")) return "NNS";
  if (w.size() >= 3 && ends_with(w, "s") && !ends_with(w, "ss")) {
    const std::string stem = w.substr(0, w.size() - 1);
    if (verb_lexicon().count(stem)) return "VBZ";
    return "NNS";
  }
  return "NN";
}

std::vector<std::string> RuleTagger::tag(const std::vector<std::string>& tokens) const {
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (const auto& t : tokens) tags.push_back(tag_one(t));
  return tags;
}

bool is_keyword_stopword(const std::string& lowercase_token) {
  return keyword_stopwords().count(lowercase_token) > 0;
}

}  // namespace benchaudit
