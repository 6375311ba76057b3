#include "benchaudit/prompt.hpp"

#include <array>

namespace benchaudit {

const char* const kUncertaintyClause = "If you do not know the answer, output I don't know";

namespace {

const char* placeholder_for(PromptKind kind) {
  return kind == PromptKind::slot ? "{caption}" : "{question}";
}

const std::array<PromptTemplate, 6>& builtin_templates() {
  static const std::array<PromptTemplate, 6> templates = {{
      {"choice-1",
       "Please answer the following multichoice question.\n"
       "Question: {question}\n"
       "Reply with answer only.",
       PromptKind::multi_choice},
      {"choice-2",
       "Please respond to the following multiple-choice question.\n"
       "Question: {question}\n"
       "Provide only the answer.",
       PromptKind::multi_choice},
      {"choice-3",
       "Answer the multiple-choice question below.\n"
       "Question: {question}\n"
       "Reply with your answer only.",
       PromptKind::multi_choice},
      {"slot-1",
       "Fill in the [MASK] of the following sentence in one word:\n"
       "{caption}\n"
       "Only reply with the word you fill in the [MASK].",
       PromptKind::slot},
      {"slot-2",
       "Complete the [MASK] in the sentence below with a single word:\n"
       "{caption}\n"
       "Respond only with the word you used to replace [MASK].",
       PromptKind::slot},
      {"slot-3",
       "Provide one word to fill in the [MASK] in the following sentence:\n"
       "{caption}\n"
       "Your reply should only include the word you have selected for [MASK].",
       PromptKind::slot},
  }};
  return templates;
}

}  // namespace

void validate_template(const PromptTemplate& tmpl) {
  const std::string required = placeholder_for(tmpl.kind);
  std::size_t first = tmpl.body.find(required);
  if (first == std::string::npos) {
    throw TemplateError("template '" + tmpl.id + "' lacks required placeholder " + required);
  }
  if (tmpl.body.find(required, first + 1) != std::string::npos) {
    throw TemplateError("template '" + tmpl.id + "' repeats placeholder " + required);
  }
  const std::string other =
      required == "{question}" ? std::string("{caption}") : std::string("{question}");
  if (tmpl.body.find(other) != std::string::npos) {
    throw TemplateError("template '" + tmpl.id + "' contains foreign placeholder " + other);
  }
}

const PromptTemplate& builtin_template(const std::string& id) {
  for (const auto& tmpl : builtin_templates()) {
    if (tmpl.id == id) return tmpl;
  }
  throw TemplateError("unknown template id: " + id);
}

const PromptTemplate& default_template(PromptKind kind) {
  return builtin_template(kind == PromptKind::slot ? "slot-1" : "choice-1");
}

std::vector<std::string> builtin_template_ids() {
  std::vector<std::string> ids;
  for (const auto& tmpl : builtin_templates()) ids.push_back(tmpl.id);
  return ids;
}

char option_letter(int index) {
  if (index < 0 || index > 25) throw TemplateError("option index out of letter range A-Z");
  return static_cast<char>('A' + index);
}

std::string render_options_block(const std::vector<std::string>& options) {
  std::string out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i != 0) out.push_back('\n');
    out.push_back(option_letter(static_cast<int>(i)));
    out += ". ";
    out += options[i];
  }
  return out;
}

std::string render_template(const PromptTemplate& tmpl, const std::string& value) {
  validate_template(tmpl);
  const std::string placeholder = placeholder_for(tmpl.kind);
  std::string out = tmpl.body;
  out.replace(out.find(placeholder), placeholder.size(), value);
  return out;
}

}  // namespace benchaudit
