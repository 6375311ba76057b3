#include "benchaudit/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "json.hpp"

namespace benchaudit {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(std::size_t line_no, const std::string& what) {
  throw SchemaError("line " + std::to_string(line_no) + ": " + what);
}

ordered_json parse_line(const std::string& line, std::size_t line_no) {
  ordered_json rec = ordered_json::parse(line, nullptr, false);
  if (rec.is_discarded()) schema_fail(line_no, "invalid JSON record");
  if (!rec.is_object()) schema_fail(line_no, "record is not an object");
  return rec;
}

std::string require_string(const ordered_json& rec, const char* field, std::size_t line_no) {
  if (!rec.contains(field) || !rec[field].is_string()) {
    schema_fail(line_no, std::string("field '") + field + "' missing or not a string");
  }
  return rec[field].get<std::string>();
}

std::string default_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open dataset file: " + path);
  return in;
}

}  // namespace

std::string task_kind_name(TaskKind kind) {
  return kind == TaskKind::multi_choice ? "multi_choice" : "caption";
}

TaskKind task_kind_from_name(const std::string& name) {
  if (name == "multi_choice") return TaskKind::multi_choice;
  if (name == "caption") return TaskKind::caption;
  throw SchemaError("unknown task_kind: " + name);
}

ChoiceDataset load_choice_dataset(const std::string& path, const std::string& name,
                                  const std::string& split) {
  std::ifstream in = open_or_throw(path);
  ChoiceDataset out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ordered_json rec = parse_line(line, line_no);

    ChoiceInstance inst;
    inst.id = require_string(rec, "id", line_no);
    if (inst.id.empty()) schema_fail(line_no, "field 'id' is empty");
    if (!ids.insert(inst.id).second) schema_fail(line_no, "duplicate id '" + inst.id + "'");

    if (rec.contains("image") && !rec["image"].is_null()) {
      if (!rec["image"].is_string()) schema_fail(line_no, "field 'image' must be string or null");
      inst.image_ref = rec["image"].get<std::string>();
    }
    inst.question = require_string(rec, "question", line_no);

    if (!rec.contains("choices") || !rec["choices"].is_array()) {
      schema_fail(line_no, "field 'choices' missing or not an array");
    }
    for (const auto& opt : rec["choices"]) {
      if (!opt.is_string()) schema_fail(line_no, "field 'choices' must contain strings");
      inst.options.push_back(opt.get<std::string>());
    }
    if (inst.options.size() < 2) schema_fail(line_no, "field 'choices' needs at least 2 options");
    if (inst.options.size() > 26) {
      schema_fail(line_no, "field 'choices' exceeds 26 options (letter labels A-Z)");
    }
    for (const auto& opt : inst.options) {
      if (trim(opt).empty()) schema_fail(line_no, "field 'choices' contains an empty option");
    }

    if (!rec.contains("answer_index") || !rec["answer_index"].is_number_integer()) {
      schema_fail(line_no, "field 'answer_index' missing or not an integer");
    }
    inst.answer_index = rec["answer_index"].get<int>();
    if (inst.answer_index < 0 || inst.answer_index >= static_cast<int>(inst.options.size())) {
      schema_fail(line_no, "field 'answer_index' (" + std::to_string(inst.answer_index) +
                               ") out of range for " + std::to_string(inst.options.size()) +
                               " options");
    }
    out.instances.push_back(std::move(inst));
  }

  out.manifest.name = name.empty() ? default_name(path) : name;
  out.manifest.split = split;
  out.manifest.task_kind = TaskKind::multi_choice;
  out.manifest.size = static_cast<std::int64_t>(out.instances.size());
  out.manifest.sample_count = out.manifest.size;
  return out;
}

CaptionDataset load_caption_dataset(const std::string& path, const std::string& name,
                                    const std::string& split) {
  std::ifstream in = open_or_throw(path);
  CaptionDataset out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ordered_json rec = parse_line(line, line_no);

    CaptionInstance inst;
    inst.id = require_string(rec, "id", line_no);
    if (inst.id.empty()) schema_fail(line_no, "field 'id' is empty");
    if (!ids.insert(inst.id).second) schema_fail(line_no, "duplicate id '" + inst.id + "'");
    inst.image_ref = require_string(rec, "image", line_no);
    inst.caption = require_string(rec, "caption", line_no);
    if (tokenize(inst.caption).empty()) {
      schema_fail(line_no, "field 'caption' has no whitespace-delimited tokens");
    }
    out.instances.push_back(std::move(inst));
  }

  out.manifest.name = name.empty() ? default_name(path) : name;
  out.manifest.split = split;
  out.manifest.task_kind = TaskKind::caption;
  out.manifest.size = static_cast<std::int64_t>(out.instances.size());
  out.manifest.sample_count = out.manifest.size;
  return out;
}

std::string serialize_choice_line(const ChoiceInstance& inst) {
  ordered_json rec;
  rec["id"] = inst.id;
  if (inst.image_ref) {
    rec["image"] = *inst.image_ref;
  } else {
    rec["image"] = nullptr;
  }
  rec["question"] = inst.question;
  rec["choices"] = inst.options;
  rec["answer_index"] = inst.answer_index;
  return rec.dump();
}

std::string serialize_caption_line(const CaptionInstance& inst) {
  ordered_json rec;
  rec["id"] = inst.id;
  rec["image"] = inst.image_ref;
  rec["caption"] = inst.caption;
  return rec.dump();
}

void write_choice_dataset(const std::string& path, const std::vector<ChoiceInstance>& instances) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open file for writing: " + path);
  for (const auto& inst : instances) out << serialize_choice_line(inst) << "\n";
}

void write_caption_dataset(const std::string& path,
                           const std::vector<CaptionInstance>& instances) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open file for writing: " + path);
  for (const auto& inst : instances) out << serialize_caption_line(inst) << "\n";
}

}  // namespace benchaudit
