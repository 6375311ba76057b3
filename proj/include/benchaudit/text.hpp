#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace benchaudit {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Lowercase, trim, strip punctuation off both ends, collapse runs of
// whitespace to single spaces. Used for reply/option comparisons.
std::string normalize_text(std::string_view s);

// Lowercase a single token and strip punctuation/quotes from its edges.
std::string normalize_token(std::string_view s);

// Word tokens: maximal runs of alnum / bytes >= 0x80 / ' / -, with
// quotes and hyphens stripped from the edges. Empty results dropped.
std::vector<std::string> tokenize(std::string_view text);

// Character span [begin, end) of the first occurrence of `token` in `text`
// delimited by non-word characters, starting the scan at `from`.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::optional<TokenSpan> find_token_span(std::string_view text, std::string_view token,
                                         std::size_t from = 0);

// FNV-1a 64-bit. Parts are length-prefixed so ("ab","c") != ("a","bc").
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(std::initializer_list<std::string_view> parts);
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::string_view> parts);

// Map a 64-bit hash to [0, 1).
double unit_interval(std::uint64_t h);

// Deterministic cross-platform PRNG helpers (std::shuffle is not
// reproducible across standard libraries).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// Unbiased uniform draw in [0, n) via rejection sampling.
std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n);

std::string base64_encode(std::string_view bytes);

std::string hex64(std::uint64_t v);

}  // namespace benchaudit
