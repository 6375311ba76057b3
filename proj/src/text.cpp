#include "benchaudit/text.hpp"

#include <array>
#include <cctype>

namespace benchaudit {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;  // UTF-8 continuation/lead bytes pass through
  return std::isalnum(u) != 0 || c == '\'' || c == '-';
}

bool is_edge_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '\'': case '"': case '`': case '(': case ')': case '[':
    case ']': case '{': case '}': case '*': case '-': case '_':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string normalize_text(std::string_view s) {
  std::string lowered = to_lower(s);
  std::size_t b = 0, e = lowered.size();
  while (b < e && (is_space(lowered[b]) || is_edge_punct(lowered[b]))) ++b;
  while (e > b && (is_space(lowered[e - 1]) || is_edge_punct(lowered[e - 1]))) --e;
  std::string out;
  out.reserve(e - b);
  bool in_ws = false;
  for (std::size_t i = b; i < e; ++i) {
    if (is_space(lowered[i])) {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out.push_back(' ');
    in_ws = false;
    out.push_back(lowered[i]);
  }
  return out;
}

std::string normalize_token(std::string_view s) {
  std::string lowered = to_lower(trim(s));
  std::size_t b = 0, e = lowered.size();
  while (b < e && is_edge_punct(lowered[b])) ++b;
  while (e > b && is_edge_punct(lowered[e - 1])) --e;
  return lowered.substr(b, e - b);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < text.size() && is_word_char(text[i])) ++i;
    std::string_view raw = text.substr(b, i - b);
    std::size_t tb = 0, te = raw.size();
    while (tb < te && (raw[tb] == '\'' || raw[tb] == '-')) ++tb;
    while (te > tb && (raw[te - 1] == '\'' || raw[te - 1] == '-')) --te;
    if (te > tb) tokens.emplace_back(raw.substr(tb, te - tb));
  }
  return tokens;
}

std::optional<TokenSpan> find_token_span(std::string_view text, std::string_view token,
                                         std::size_t from) {
  if (token.empty()) return std::nullopt;
  std::size_t pos = from;
  while (pos + token.size() <= text.size()) {
    std::size_t hit = text.find(token, pos);
    if (hit == std::string_view::npos) return std::nullopt;
    bool left_ok = hit == 0 || !is_word_char(text[hit - 1]);
    std::size_t after = hit + token.size();
    bool right_ok = after >= text.size() || !is_word_char(text[after]);
    if (left_ok && right_ok) return TokenSpan{hit, after};
    pos = hit + 1;
  }
  return std::nullopt;
}

namespace {
constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
}

void fnv_mix_u64(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
}

// FNV alone avalanches poorly in the high bits for short inputs, and
// unit_interval consumes exactly those bits.
std::uint64_t final_mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}
}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, bytes);
  return h;
}

std::uint64_t fnv1a64(std::initializer_list<std::string_view> parts) {
  std::uint64_t h = kFnvOffset;
  for (std::string_view p : parts) {
    fnv_mix_u64(h, p.size());
    fnv_mix(h, p);
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::string_view> parts) {
  std::uint64_t h = kFnvOffset;
  fnv_mix_u64(h, base);
  for (std::string_view p : parts) {
    fnv_mix_u64(h, p.size());
    fnv_mix(h, p);
  }
  return final_mix(h);
}

double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = rng.next();
  } while (r >= limit);
  return r % n;
}

std::string base64_encode(std::string_view bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                      static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back(kAlphabet[v & 63]);
    i += 3;
  }
  std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back('=');
    out.push_back('=');
  } else if (rest == 2) {
    std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                      (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(kAlphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace benchaudit
