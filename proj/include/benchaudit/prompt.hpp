#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace benchaudit {

enum class PromptKind { multi_choice, slot, unimodal_probe };

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prompt body with a {question} or {caption} placeholder, depending on kind.
struct PromptTemplate {
  std::string id;
  std::string body;
  PromptKind kind = PromptKind::multi_choice;
};

// Throws TemplateError unless the body carries exactly the placeholder the
// kind requires ({question} for choice/probe, {caption} for slot).
void validate_template(const PromptTemplate& tmpl);

// Built-in templates: choice-1..3 and slot-1..3. choice-1 / slot-1 are the
// defaults; probe prompts reuse the choice bodies.
const PromptTemplate& builtin_template(const std::string& id);
const PromptTemplate& default_template(PromptKind kind);
std::vector<std::string> builtin_template_ids();

// Decoding is pinned deterministic (temperature-free) so reruns reproduce.
enum class Decode { deterministic };

struct ModelRequest {
  std::string text;
  std::optional<std::string> image_ref;
  Decode decode = Decode::deterministic;
  std::string model_id;
  // Which side of a perturbed pair this request belongs to ("orig"/"pert").
  // Not part of the wire payload; it keeps the two forms distinct in the
  // response cache even when a perturbation happens to reproduce the
  // original text byte for byte.
  std::string form_tag;
};

char option_letter(int index);

// "A. first\nB. second" ... lettered lines, one per option.
std::string render_options_block(const std::vector<std::string>& options);

// Substitute `value` for the single {placeholder} occurrence in body.
std::string render_template(const PromptTemplate& tmpl, const std::string& value);

// Appended to probe prompts to suppress lucky guessing.
extern const char* const kUncertaintyClause;

}  // namespace benchaudit
